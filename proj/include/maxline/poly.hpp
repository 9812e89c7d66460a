#pragma once

#include <vector>

#include "maxline/maxplus.hpp"

namespace maxline {

/// Square matrix of max-plus polynomials in the backshift operator.
/// Coefficient matrices cover delays lo .. lo + coeffs.size() - 1.
/// lo is normally 0; the parity matrices of a junction line carry a
/// transient -1 delay that must vanish after composition.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int n, int lo, int hi)
        : n_(n), lo_(lo), coeffs_(static_cast<size_t>(hi - lo + 1), MaxPlusMatrix(n)) {}

    static PolyMatrix identity(int n) {
        PolyMatrix p(n, 0, 0);
        p.coeffs_[0] = MaxPlusMatrix::identity(n);
        return p;
    }

    int dim() const { return n_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }

    bool has_delay(int l) const { return l >= lo_ && l <= hi(); }

    const MaxPlusMatrix& coeff(int l) const { return coeffs_[static_cast<size_t>(l - lo_)]; }
    MaxPlusMatrix& coeff_mut(int l) { return coeffs_[static_cast<size_t>(l - lo_)]; }

    MaxPlusScalar at(int i, int j, int l) const {
        if (!has_delay(l)) return MaxPlusScalar::eps();
        return coeff(l)(i, j);
    }

    /// Record entry (i,j) at delay l, keeping the max on duplicates.
    void accumulate(int i, int j, int l, MaxPlusScalar w) {
        if (w.is_eps()) return;
        grow_to(l);
        coeff_mut(l)(i, j) += w;
    }

    /// Drop all-eps coefficient matrices at both ends.
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back().all_entries_eps()) coeffs_.pop_back();
        while (coeffs_.size() > 1 && coeffs_.front().all_entries_eps()) {
            coeffs_.erase(coeffs_.begin());
            ++lo_;
        }
        if (coeffs_.size() == 1 && coeffs_.front().all_entries_eps()) lo_ = 0;
    }

    /// Evaluate at a scalar rate: entry (i,j) -> max_l (A_l)_ij - l*rate.
    MaxPlusMatrix eval_at_rate(double rate) const {
        MaxPlusMatrix E(n_);
        for (int l = lo_; l <= hi(); ++l) {
            const MaxPlusMatrix& C = coeff(l);
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    MaxPlusScalar c = C(i, j);
                    if (c.is_eps()) continue;
                    E(i, j) += MaxPlusScalar(c.v - l * rate);
                }
        }
        return E;
    }

    friend PolyMatrix operator+(const PolyMatrix& A, const PolyMatrix& B) {
        if (A.n_ != B.n_) throw DimensionMismatch("poly add: dimension mismatch");
        PolyMatrix C(A.n_, std::min(A.lo_, B.lo_), std::max(A.hi(), B.hi()));
        for (int l = C.lo_; l <= C.hi(); ++l) {
            if (A.has_delay(l)) C.coeff_mut(l) = C.coeff(l) + A.coeff(l);
            if (B.has_delay(l)) C.coeff_mut(l) = C.coeff(l) + B.coeff(l);
        }
        C.trim();
        return C;
    }

    /// Polynomial product: delays add, coefficients convolve with max.
    friend PolyMatrix operator*(const PolyMatrix& A, const PolyMatrix& B) {
        if (A.n_ != B.n_) throw DimensionMismatch("poly mul: dimension mismatch");
        PolyMatrix C(A.n_, A.lo_ + B.lo_, A.hi() + B.hi());
        for (int la = A.lo_; la <= A.hi(); ++la)
            for (int lb = B.lo_; lb <= B.hi(); ++lb)
                C.coeff_mut(la + lb) = C.coeff(la + lb) + A.coeff(la) * B.coeff(lb);
        C.trim();
        return C;
    }

    /// Degree-shift similarity: entry (i,j) delays become l + c_i - c_j.
    /// Re-bases per-node event counters; cycle weights and durations are unchanged.
    PolyMatrix conjugate(const std::vector<int>& c) const {
        PolyMatrix R(n_, lo_ - 1, hi() + 1);
        for (int l = lo_; l <= hi(); ++l) {
            const MaxPlusMatrix& C = coeff(l);
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    if (C(i, j).is_eps()) continue;
                    R.accumulate(i, j, l + c[i] - c[j], C(i, j));
                }
        }
        R.trim();
        return R;
    }

    bool all_entries_eps() const {
        for (const auto& c : coeffs_)
            if (!c.all_entries_eps()) return false;
        return true;
    }

private:
    void grow_to(int l) {
        if (coeffs_.empty()) {
            lo_ = l;
            coeffs_.emplace_back(MaxPlusMatrix(n_));
            return;
        }
        while (l < lo_) {
            coeffs_.insert(coeffs_.begin(), MaxPlusMatrix(n_));
            --lo_;
        }
        while (l > hi()) coeffs_.emplace_back(MaxPlusMatrix(n_));
    }

    int n_ = 0;
    int lo_ = 0;
    std::vector<MaxPlusMatrix> coeffs_;
};

inline PolyMatrix poly_mul(const PolyMatrix& A, const PolyMatrix& B) { return A * B; }

} // namespace maxline
