#include <catch2/catch.hpp>

#include <random>

#include "support.hpp"

using namespace maxline;
using namespace testsupport;

namespace {

MaxPlusScalar random_scalar(std::mt19937& rng) {
    std::uniform_real_distribution<double> val(-50, 50);
    std::uniform_int_distribution<int> eps(0, 4);
    return eps(rng) == 0 ? MaxPlusScalar::eps() : MaxPlusScalar(val(rng));
}

MaxPlusMatrix random_matrix(std::mt19937& rng, int n) {
    MaxPlusMatrix A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = random_scalar(rng);
    return A;
}

} // namespace

TEST_CASE("scalar operations") {
    CHECK(scalar_add(MaxPlusScalar(3), MaxPlusScalar(5)) == MaxPlusScalar(5));
    CHECK(scalar_add(MaxPlusScalar::eps(), MaxPlusScalar(7)) == MaxPlusScalar(7));
    CHECK(scalar_add(MaxPlusScalar(-2), MaxPlusScalar(-2)) == MaxPlusScalar(-2));
    CHECK(scalar_mul(MaxPlusScalar(3), MaxPlusScalar(5)) == MaxPlusScalar(8));
    CHECK(scalar_mul(MaxPlusScalar::eps(), MaxPlusScalar(7)) == MaxPlusScalar::eps());
    CHECK(scalar_mul(MaxPlusScalar::one(), MaxPlusScalar(9)) == MaxPlusScalar(9));
}

TEST_CASE("semiring laws hold on random samples") {
    std::mt19937 rng = seeded_rng(1);
    for (int i = 0; i < 1200; ++i) {
        MaxPlusScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + a == a);
        // addition reassociates only up to rounding
        MaxPlusScalar l = (a * b) * c, r = a * (b * c);
        CHECK(l.is_eps() == r.is_eps());
        if (l.finite()) CHECK(l.v == Approx(r.v).margin(1e-9));
        CHECK(a * (b + c) == a * b + a * c); // max commutes with translation exactly
        CHECK(a + MaxPlusScalar::eps() == a);
        CHECK(a * MaxPlusScalar::eps() == MaxPlusScalar::eps());
        CHECK(a * MaxPlusScalar::one() == a);
    }
}

TEST_CASE("matrix add and mul") {
    MaxPlusMatrix A(2), B(2);
    A(0, 0) = 1;
    A(1, 0) = 0;
    A(1, 1) = 2;
    B(0, 0) = 0;
    B(0, 1) = 3;
    B(1, 1) = 1;
    MaxPlusMatrix S = A + B;
    CHECK(S(0, 0) == MaxPlusScalar(1));
    CHECK(S(0, 1) == MaxPlusScalar(3));
    CHECK(S(1, 0) == MaxPlusScalar(0));
    CHECK(S(1, 1) == MaxPlusScalar(2));

    MaxPlusMatrix C(2), D(2);
    C(0, 0) = 1;
    C(0, 1) = 2;
    C(1, 1) = 0;
    D(0, 0) = 0;
    D(1, 0) = 3;
    D(1, 1) = 1;
    MaxPlusMatrix P = C * D;
    CHECK(P(0, 0) == MaxPlusScalar(5));
    CHECK(P(0, 1) == MaxPlusScalar(3));
    CHECK(P(1, 0) == MaxPlusScalar(3));
    CHECK(P(1, 1) == MaxPlusScalar(1));

    std::mt19937 rng = seeded_rng(2);
    for (int i = 0; i < 50; ++i) {
        MaxPlusMatrix M = random_matrix(rng, 4);
        CHECK(M + MaxPlusMatrix::all_eps(4) == M);
        CHECK(M + M == M);
        CHECK(M * MaxPlusMatrix::identity(4) == M);
        CHECK(MaxPlusMatrix::identity(4) * M == M);
        CHECK((M * MaxPlusMatrix::all_eps(4)) == MaxPlusMatrix::all_eps(4));
    }
    CHECK_THROWS_AS(MaxPlusMatrix(2) + MaxPlusMatrix(3), DimensionMismatch);
    CHECK_THROWS_AS(MaxPlusMatrix(2) * MaxPlusMatrix(3), DimensionMismatch);
}

TEST_CASE("matrix laws on random samples") {
    std::mt19937 rng = seeded_rng(3);
    auto approx_equal = [](const MaxPlusMatrix& A, const MaxPlusMatrix& B) {
        for (int i = 0; i < A.dim(); ++i)
            for (int j = 0; j < A.dim(); ++j) {
                if (A(i, j).is_eps() != B(i, j).is_eps()) return false;
                if (A(i, j).finite() && std::abs(A(i, j).v - B(i, j).v) > 1e-9) return false;
            }
        return true;
    };
    for (int i = 0; i < 120; ++i) {
        MaxPlusMatrix A = random_matrix(rng, 3), B = random_matrix(rng, 3),
                      C = random_matrix(rng, 3);
        CHECK(A + B == B + A);
        CHECK((A + B) + C == A + (B + C));
        CHECK(approx_equal((A * B) * C, A * (B * C)));
        CHECK(A * (B + C) == A * B + A * C);
    }
}

TEST_CASE("kleene star") {
    SECTION("empty graph gives the identity") {
        CHECK(kleene_star(MaxPlusMatrix::all_eps(3)) == MaxPlusMatrix::identity(3));
    }
    SECTION("single path") {
        MaxPlusMatrix A(2);
        A(1, 0) = 4;
        MaxPlusMatrix S = kleene_star(A);
        CHECK(S(0, 0) == MaxPlusScalar(0));
        CHECK(S(0, 1) == MaxPlusScalar::eps());
        CHECK(S(1, 0) == MaxPlusScalar(4));
        CHECK(S(1, 1) == MaxPlusScalar(0));
    }
    SECTION("matches the longest-path closure on random acyclic matrices") {
        std::mt19937 rng = seeded_rng(4);
        std::uniform_real_distribution<double> w(-10, 10);
        std::uniform_int_distribution<int> fill(0, 2);
        for (int it = 0; it < 200; ++it) {
            MaxPlusMatrix A(6);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < i; ++j) // strictly lower triangular: acyclic
                    if (fill(rng) == 0) A(i, j) = w(rng);
            CHECK(kleene_star(A) == longest_path_closure(A));
        }
    }
    SECTION("fixed point A0 (x) A0* + I = A0*") {
        std::mt19937 rng = seeded_rng(5);
        std::uniform_real_distribution<double> w(-10, 10);
        std::uniform_int_distribution<int> fill(0, 2);
        for (int it = 0; it < 200; ++it) {
            MaxPlusMatrix A(5);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < i; ++j)
                    if (fill(rng) == 0) A(i, j) = w(rng);
            MaxPlusMatrix S = kleene_star(A);
            CHECK(A * S + MaxPlusMatrix::identity(5) == S);
        }
    }
    SECTION("a zero-delay cycle is rejected") {
        MaxPlusMatrix A(2);
        A(0, 1) = 1;
        A(1, 0) = 1;
        CHECK_THROWS_AS(kleene_star(A), CyclicZeroDelay);
    }
}
