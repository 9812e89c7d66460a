#include <catch2/catch.hpp>

#include "support.hpp"

using namespace maxline;
using namespace testsupport;

TEST_CASE("validate counts the desk instance") {
    LineDescription line = uniform_line(3, 5, 5, 120, 30);
    // alternating occupancy, 6 trains total
    line.occ[0] = {1, 0, 1};
    line.occ[1] = {0, 1, 0, 1, 0};
    line.occ[2] = {1, 0, 1, 0, 0};
    TrainCounts tc = validate(line);
    CHECK(line.num_vars() == 12);
    CHECK(tc.m == 6);
    CHECK(tc.m_u[0] == 2);
    CHECK(tc.m_u[1] == 2);
    CHECK(tc.m_u[2] == 2);
    CHECK(tc.dm == 0);
    CHECK(tc.capacity == 13);
    CHECK(tc.m_bar == 7);
    CHECK(tc.dm_bar == 0);
    CHECK(tc.T[0] == Approx(360.0));
    CHECK(tc.T[1] == Approx(600.0));
    CHECK(tc.S[0] == Approx(90.0));
}

TEST_CASE("validate rejects malformed lines") {
    LineDescription bad_topo = uniform_line(3, 1, 5, 10, 1);
    CHECK_THROWS_AS(validate(bad_topo), BadTopology);

    LineDescription bad_occ = uniform_line(2, 3, 3, 10, 1);
    bad_occ.occ[1][0] = 2;
    CHECK_THROWS_AS(validate(bad_occ), BadOccupancy);

    LineDescription bad_t = uniform_line(2, 3, 3, 10, 1);
    bad_t.seg[0][0].t_lower = 0;
    CHECK_THROWS_AS(validate(bad_t), BadTopology);
}

TEST_CASE("empty line validates with zero trains") {
    LineDescription line = uniform_line(2, 3, 3, 10, 1);
    TrainCounts tc = validate(line);
    CHECK(tc.m == 0);
    // downstream: zero frequency, not an error here
    PhaseReport r = headway(line, 0, 0);
    CHECK(r.f0 == 0.0);
}

TEST_CASE("node indexing is a bijection") {
    LineDescription line = uniform_line(4, 6, 3, 10, 1);
    for (int i = 0; i < line.num_vars(); ++i) {
        auto [u, j] = line.node_of(i);
        CHECK(line.var(u, j) == i);
    }
    CHECK(line.node_name(0) == "(0,0)");
    CHECK(line.node_name(line.num_vars() - 1) == "(2,2)");
}

TEST_CASE("shorthand placement fills the highest segments first") {
    CHECK(spread_occupancy(5, 2) == std::vector<int>{0, 0, 0, 1, 1});
    CHECK(spread_occupancy(3, 0) == std::vector<int>{0, 0, 0});
    CHECK(spread_occupancy(3, 3) == std::vector<int>{1, 1, 1});
}

TEST_CASE("parity matrices have the junction block structure") {
    std::mt19937 rng = seeded_rng(40);
    for (int it = 0; it < 12; ++it) {
        LineDescription line = random_line(rng, {.require_finite_headway = false});
        auto [A1, A2] = build_parity_matrices(line);
        auto part_of = [&](int idx) { return line.node_of(idx).first; };
        for (int l = A1.lo(); l <= A1.hi(); ++l)
            for (int i = 0; i < A1.dim(); ++i)
                for (int j = 0; j < A1.dim(); ++j) {
                    if (A1.at(i, j, l).finite()) {
                        // odd steps leave branch 2 decoupled
                        bool cross2 = (part_of(i) == 2) != (part_of(j) == 2);
                        CHECK(!cross2);
                    }
                    if (A2.at(i, j, l).finite()) {
                        bool cross1 = (part_of(i) == 1) != (part_of(j) == 1);
                        CHECK(!cross1);
                    }
                }
    }
}

TEST_CASE("parity matrix entries sit at the expected delays") {
    LineDescription line = uniform_line(3, 5, 5, 7, 2);
    line.occ[0] = {0, 1, 0};
    line.occ[1] = {1, 0, 0, 1, 0};
    line.occ[2] = {0, 0, 1, 0, 1};
    auto [A1, A2] = build_parity_matrices(line);

    // central travel entry sits at delay b
    CHECK(A1.at(line.var(0, 1), line.var(0, 0), 0) == MaxPlusScalar(7)); // b(0,1)=0
    CHECK(A1.at(line.var(0, 2), line.var(0, 1), 1) == MaxPlusScalar(7)); // b(0,2)=1
    // central separation at delay 1-b
    CHECK(A2.at(line.var(0, 1), line.var(0, 2), 0) == MaxPlusScalar(2)); // b(0,2)=1
    // branch tridiagonal: travel at 2b, separation at 2(1-b)
    CHECK(A1.at(line.var(1, 2), line.var(1, 1), 0) == MaxPlusScalar(7)); // b(1,2)=0
    CHECK(A1.at(line.var(1, 4), line.var(1, 3), 2) == MaxPlusScalar(7)); // b(1,4)=1
    CHECK(A2.at(line.var(2, 2), line.var(2, 3), 0) == MaxPlusScalar(2)); // b(2,3)=1
    // junction coupling rows carry the signed delays
    CHECK(A1.at(line.var(0, 3), line.var(1, 1), -1) == MaxPlusScalar(2)); // b(1,1)=1
    CHECK(A1.at(line.var(1, 1), line.var(0, 3), 3) == MaxPlusScalar(7));
    CHECK(A1.at(line.var(0, 0), line.var(1, 4), -1) == MaxPlusScalar(7)); // b(1,5)=0
    CHECK(A1.at(line.var(1, 4), line.var(0, 0), 3) == MaxPlusScalar(2));
    CHECK(A2.at(line.var(0, 3), line.var(2, 1), 2) == MaxPlusScalar(2)); // b(2,1)=0
    CHECK(A2.at(line.var(2, 1), line.var(0, 3), 0) == MaxPlusScalar(7));
    CHECK(A2.at(line.var(0, 0), line.var(2, 4), 2) == MaxPlusScalar(7)); // b(2,5)=1
    CHECK(A2.at(line.var(2, 4), line.var(0, 0), 0) == MaxPlusScalar(2));
}

TEST_CASE("constraint count is conserved in the parity matrices") {
    std::mt19937 rng = seeded_rng(41);
    for (int it = 0; it < 12; ++it) {
        LineDescription line = random_line(rng, {.require_finite_headway = false});
        auto [A1, A2] = build_parity_matrices(line);
        auto count = [](const PolyMatrix& P) {
            int c = 0;
            for (int l = P.lo(); l <= P.hi(); ++l)
                for (int i = 0; i < P.dim(); ++i)
                    for (int j = 0; j < P.dim(); ++j)
                        if (P.at(i, j, l).finite()) ++c;
            return c;
        };
        const int expected =
            2 * line.n0 + 2 * (line.n1 - 2) + 2 * (line.n2 - 2) + 4; // per matrix
        CHECK(count(A1) == expected);
        CHECK(count(A2) == expected);
    }
}

TEST_CASE("zero-delay parts of the parity matrices are acyclic") {
    std::mt19937 rng = seeded_rng(42);
    for (int it = 0; it < 30; ++it) {
        LineDescription line = random_line(rng, {.require_finite_headway = false});
        auto [A1, A2] = build_parity_matrices(line);
        if (A1.has_delay(0)) CHECK_FALSE(detail::entry_graph_has_cycle(A1.coeff(0)));
        if (A2.has_delay(0)) CHECK_FALSE(detail::entry_graph_has_cycle(A2.coeff(0)));
    }
}
