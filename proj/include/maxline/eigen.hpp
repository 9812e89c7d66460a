#pragma once

#include <vector>

#include "maxline/cycle_ratio.hpp"
#include "maxline/graph.hpp"
#include "maxline/poly.hpp"

namespace maxline {

struct EigenResult {
    double mu = 0;                 // seconds per event
    MaxPlusVector v;               // finite eigenvector, first component 0
    std::vector<int> critical_cycle;
};

/// Generalized eigenproblem A(mu^-1) (x) v = v for an irreducible polynomial
/// matrix with acyclic zero-delay part. mu is the maximum cycle ratio of the
/// precedence graph; v is the critical column of the transitive closure of
/// the matrix evaluated at mu.
inline EigenResult generalized_eigen(const PolyMatrix& A) {
    PrecedenceGraph g = to_graph(A);
    if (!detail::strongly_connected_on_used(g))
        throw NotIrreducible("generalized_eigen: precedence graph not strongly connected");
    if (A.has_delay(0) && detail::entry_graph_has_cycle(A.coeff(0)))
        throw CyclicZeroDelay("generalized_eigen: zero-delay subgraph has a cycle");

    CycleRatioResult cr = max_cycle_ratio(g);

    const int n = A.dim();
    MaxPlusMatrix E = A.eval_at_rate(cr.ratio);
    // closure: no positive cycles remain at the critical rate
    MaxPlusMatrix S = E;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const MaxPlusScalar sik = S(i, k);
            if (sik.is_eps()) continue;
            for (int j = 0; j < n; ++j) S(i, j) += sik * S(k, j);
        }
    MaxPlusMatrix star = S + MaxPlusMatrix::identity(n);

    EigenResult r;
    r.mu = cr.ratio;
    r.critical_cycle = cr.cycle;
    const int c = cr.cycle.front();
    r.v.resize(n);
    for (int i = 0; i < n; ++i) r.v[i] = star(i, c);
    // scaling freedom: pin the first finite component to 0
    double shift = 0;
    for (int i = 0; i < n; ++i)
        if (r.v[i].finite()) {
            shift = r.v[i].v;
            break;
        }
    for (auto& x : r.v)
        if (x.finite()) x = MaxPlusScalar(x.v - shift);
    return r;
}

} // namespace maxline
