#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "maxline/errors.hpp"

namespace maxline {

/// An element of the max-plus semiring (R u {-inf}, max, +).
/// operator+ is the semiring addition (max), operator* the multiplication (+).
struct MaxPlusScalar {
    double v = -std::numeric_limits<double>::infinity();

    constexpr MaxPlusScalar() = default;
    constexpr MaxPlusScalar(double x) : v(x) {}

    static constexpr MaxPlusScalar eps() { return MaxPlusScalar(); }
    static constexpr MaxPlusScalar one() { return MaxPlusScalar(0.0); }

    constexpr bool is_eps() const { return std::isinf(v) && v < 0; }
    constexpr bool finite() const { return !is_eps(); }

    friend constexpr MaxPlusScalar operator+(MaxPlusScalar a, MaxPlusScalar b) {
        return MaxPlusScalar(a.v > b.v ? a.v : b.v);
    }
    friend constexpr MaxPlusScalar operator*(MaxPlusScalar a, MaxPlusScalar b) {
        // -inf absorbs; IEEE gives -inf + x = -inf for finite x
        if (a.is_eps() || b.is_eps()) return eps();
        return MaxPlusScalar(a.v + b.v);
    }
    MaxPlusScalar& operator+=(MaxPlusScalar b) { *this = *this + b; return *this; }
    MaxPlusScalar& operator*=(MaxPlusScalar b) { *this = *this * b; return *this; }

    friend constexpr bool operator==(MaxPlusScalar a, MaxPlusScalar b) {
        return (a.is_eps() && b.is_eps()) || a.v == b.v;
    }
    friend constexpr bool operator!=(MaxPlusScalar a, MaxPlusScalar b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, MaxPlusScalar a) {
        if (a.is_eps()) return os << "eps";
        return os << a.v;
    }
};

inline MaxPlusScalar scalar_add(MaxPlusScalar a, MaxPlusScalar b) { return a + b; }
inline MaxPlusScalar scalar_mul(MaxPlusScalar a, MaxPlusScalar b) { return a * b; }

using MaxPlusVector = std::vector<MaxPlusScalar>;

/// Square max-plus matrix.
class MaxPlusMatrix {
public:
    MaxPlusMatrix() = default;
    explicit MaxPlusMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    static MaxPlusMatrix identity(int n) {
        MaxPlusMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = MaxPlusScalar::one();
        return m;
    }
    static MaxPlusMatrix all_eps(int n) { return MaxPlusMatrix(n); }

    int dim() const { return n_; }

    MaxPlusScalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    MaxPlusScalar operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    bool all_entries_eps() const {
        return std::all_of(a_.begin(), a_.end(), [](MaxPlusScalar x) { return x.is_eps(); });
    }

    friend MaxPlusMatrix operator+(const MaxPlusMatrix& A, const MaxPlusMatrix& B) {
        if (A.n_ != B.n_) throw DimensionMismatch("matrix add: dimension mismatch");
        MaxPlusMatrix C(A.n_);
        for (size_t k = 0; k < A.a_.size(); ++k) C.a_[k] = A.a_[k] + B.a_[k];
        return C;
    }

    friend MaxPlusMatrix operator*(const MaxPlusMatrix& A, const MaxPlusMatrix& B) {
        if (A.n_ != B.n_) throw DimensionMismatch("matrix mul: dimension mismatch");
        const int n = A.n_;
        MaxPlusMatrix C(n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const MaxPlusScalar aik = A(i, k);
                if (aik.is_eps()) continue;
                for (int j = 0; j < n; ++j) {
                    C(i, j) += aik * B(k, j);
                }
            }
        }
        return C;
    }

    friend bool operator==(const MaxPlusMatrix& A, const MaxPlusMatrix& B) {
        return A.n_ == B.n_ && A.a_ == B.a_;
    }

    /// y = A (x) v
    MaxPlusVector apply(const MaxPlusVector& x) const {
        if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("matrix apply: dimension mismatch");
        MaxPlusVector y(n_);
        for (int i = 0; i < n_; ++i) {
            MaxPlusScalar acc;
            for (int j = 0; j < n_; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

private:
    int n_ = 0;
    std::vector<MaxPlusScalar> a_;
};

namespace detail {

// DFS cycle check among the non-eps entries of A (arc j -> i for entry (i,j)).
inline bool entry_graph_has_cycle(const MaxPlusMatrix& A) {
    const int n = A.dim();
    std::vector<int> state(n, 0); // 0 unseen, 1 on stack, 2 done
    std::vector<int> stack, iter(n, 0);
    for (int s = 0; s < n; ++s) {
        if (state[s]) continue;
        stack.push_back(s);
        state[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            bool advanced = false;
            for (int& j = iter[u]; j < n; ++j) {
                if (A(j, u).is_eps()) continue; // successor of u is any j with entry (j,u)
                if (state[j] == 1) return true;
                if (state[j] == 0) {
                    state[j] = 1;
                    stack.push_back(j);
                    ++j;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                state[u] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

} // namespace detail

/// A0* = I + A0 + A0^2 + ... + A0^(n-1). Requires the entry graph of A0 to be
/// acyclic; a cycle means the zero-delay part of a system cannot be resolved.
///
/// Computed as a left-multiplied fixed-point iteration, so every entry is a
/// single chain of arc additions and A0 (x) A0* + I reproduces A0* without
/// rounding slack.
inline MaxPlusMatrix kleene_star(const MaxPlusMatrix& A0) {
    if (detail::entry_graph_has_cycle(A0))
        throw CyclicZeroDelay("kleene_star: zero-delay graph has a cycle");
    const int n = A0.dim();
    MaxPlusMatrix S = MaxPlusMatrix::identity(n);
    for (int it = 0; it < n; ++it) {
        MaxPlusMatrix next = A0 * S + MaxPlusMatrix::identity(n);
        if (next == S) break;
        S = next;
    }
    return S;
}

} // namespace maxline
