#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "repot/detail/scalar.hpp"

namespace repot::detail {

/// Result of a multi-marginal transport LP. x has one entry per cell of the
/// M^N product grid; inactive cells carry zero.
template <class Scalar>
struct LpSolution {
    bool feasible = false;
    std::vector<Scalar> x;
    Scalar objective = 0;
    long iterations = 0;
};

/// Revised primal simplex on the N-axial transportation polytope
///   { x >= 0 : every axis-k marginal of x equals `marginal` }.
///
/// Cells are indexed row-major over M^N tuples (axis 0 most significant).
/// The constraint matrix is never stored: a cell's column has a one in the
/// row of each of its N coordinates. One constraint per axis beyond the
/// first is dropped to remove the N - 1 mass-balance redundancies. Inactive
/// cells are deleted variables. The basis inverse is kept explicitly and,
/// in floating point, rebuilt from scratch every kRefactorPeriod pivots.
/// Pricing is Dantzig's rule, falling back to Bland's rule permanently after
/// a run of degenerate pivots.
template <class Scalar>
class TransportSimplex {
    using Traits = ScalarTraits<Scalar>;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    static constexpr long kRefactorPeriod = 64;

  public:
    TransportSimplex(std::size_t m_atoms, std::size_t n_marginals, std::span<const Scalar> marginal,
                     std::span<const char> active)
        : M_(m_atoms), N_(n_marginals), ncells_(active.size()),
          rows_(m_atoms + (n_marginals - 1) * (m_atoms - 1)), active_(active.begin(), active.end()) {
        b_.assign(rows_, Scalar(0));
        for (std::size_t i = 0; i < M_; ++i) b_[i] = marginal[i];
        for (std::size_t k = 1; k < N_; ++k) {
            for (std::size_t i = 0; i + 1 < M_; ++i) b_[row_of(k, i)] = marginal[i];
        }
        col_rows_.assign(ncells_ * N_, npos);
        std::vector<std::size_t> digits(N_);
        for (std::size_t c = 0; c < ncells_; ++c) {
            std::size_t rem = c;
            for (std::size_t k = N_; k-- > 0;) {
                digits[k] = rem % M_;
                rem /= M_;
            }
            for (std::size_t k = 0; k < N_; ++k) col_rows_[c * N_ + k] = row_of(k, digits[k]);
        }
    }

    /// Phase one only when cost is empty; otherwise minimizes cost·x.
    LpSolution<Scalar> solve(std::span<const Scalar> cost) {
        LpSolution<Scalar> out;
        init_artificial_basis();
        cost_.assign(ncells_, Scalar(0));
        phase_ = 1;
        run();
        Scalar infeasibility = 0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (is_artificial(basis_[r])) infeasibility += xB_[r];
        }
        out.iterations = iterations_;
        if (infeasibility > feasibility_tol()) return out;
        out.feasible = true;
        drive_out_artificials();
        if (!cost.empty()) {
            cost_.assign(cost.begin(), cost.end());
            phase_ = 2;
            run();
        }
        if constexpr (!Traits::exact) refactor();
        out.x.assign(ncells_, Scalar(0));
        for (std::size_t r = 0; r < rows_; ++r) {
            if (is_artificial(basis_[r])) continue;
            Scalar v = xB_[r];
            if (v < Scalar(0)) v = Scalar(0);
            out.x[basis_[r]] = v;
        }
        out.objective = 0;
        if (!cost.empty()) {
            for (std::size_t c = 0; c < ncells_; ++c) {
                if (out.x[c] != Scalar(0)) out.objective += cost_[c] * out.x[c];
            }
        }
        out.iterations = iterations_;
        return out;
    }

  private:
    std::size_t row_of(std::size_t axis, std::size_t i) const {
        if (axis == 0) return i;
        if (i + 1 == M_) return npos;
        return M_ + (axis - 1) * (M_ - 1) + i;
    }

    bool is_artificial(std::size_t col) const { return col >= ncells_; }

    static Scalar feasibility_tol() {
        if constexpr (Traits::exact) {
            return Scalar(0);
        } else {
            return 1e-10;
        }
    }

    void init_artificial_basis() {
        binv_.assign(rows_ * rows_, Scalar(0));
        for (std::size_t r = 0; r < rows_; ++r) binv_[r * rows_ + r] = Scalar(1);
        basis_.resize(rows_);
        pos_.assign(ncells_, npos);
        for (std::size_t r = 0; r < rows_; ++r) basis_[r] = ncells_ + r;
        xB_ = b_;
        iterations_ = 0;
        bland_ = false;
        degenerate_run_ = 0;
    }

    Scalar column_cost(std::size_t col) const {
        if (phase_ == 1) return is_artificial(col) ? Scalar(1) : Scalar(0);
        return is_artificial(col) ? Scalar(0) : cost_[col];
    }

    // u = B^{-1} A_col
    void ftran(std::size_t col, std::vector<Scalar>& u) const {
        u.assign(rows_, Scalar(0));
        if (is_artificial(col)) {
            const std::size_t c = col - ncells_;
            for (std::size_t r = 0; r < rows_; ++r) u[r] = binv_[r * rows_ + c];
            return;
        }
        for (std::size_t k = 0; k < N_; ++k) {
            const std::size_t c = col_rows_[col * N_ + k];
            if (c == npos) continue;
            for (std::size_t r = 0; r < rows_; ++r) u[r] += binv_[r * rows_ + c];
        }
    }

    void run() {
        std::vector<Scalar> y(rows_);
        std::vector<Scalar> u;
        const long max_iter = 50L * static_cast<long>(rows_ + ncells_) + 1000;
        for (;;) {
            if (iterations_ > max_iter) throw std::runtime_error("transport simplex: iteration limit");
            // Duals y = c_B B^{-1}.
            std::fill(y.begin(), y.end(), Scalar(0));
            for (std::size_t r = 0; r < rows_; ++r) {
                const Scalar cb = column_cost(basis_[r]);
                if (cb == Scalar(0)) continue;
                for (std::size_t c = 0; c < rows_; ++c) y[c] += cb * binv_[r * rows_ + c];
            }
            // Pricing.
            std::size_t entering = npos;
            Scalar best = -Traits::cost_tol();
            for (std::size_t col = 0; col < ncells_; ++col) {
                if (!active_[col] || pos_[col] != npos) continue;
                Scalar d = column_cost(col);
                for (std::size_t k = 0; k < N_; ++k) {
                    const std::size_t row = col_rows_[col * N_ + k];
                    if (row != npos) d -= y[row];
                }
                if (d < best) {
                    entering = col;
                    if (bland_) break;
                    best = d;
                }
            }
            if (entering == npos) return;

            ftran(entering, u);
            // Ratio test; ties go to the smallest basic column id.
            std::size_t leave = npos;
            Scalar theta = 0;
            for (std::size_t r = 0; r < rows_; ++r) {
                Scalar ratio;
                if (phase_ == 2 && is_artificial(basis_[r])) {
                    if (Traits::abs(u[r]) <= Traits::pivot_tol()) continue;
                    ratio = Scalar(0);
                } else {
                    if (!(u[r] > Traits::pivot_tol())) continue;
                    ratio = xB_[r] / u[r];
                    if (ratio < Scalar(0)) ratio = Scalar(0);
                }
                if (leave == npos || ratio < theta ||
                    (ratio == theta && basis_[r] < basis_[leave])) {
                    leave = r;
                    theta = ratio;
                }
            }
            if (leave == npos) throw std::runtime_error("transport simplex: unbounded direction");
            pivot(leave, entering, u);
            if (theta == Scalar(0)) {
                if (++degenerate_run_ > static_cast<long>(rows_)) bland_ = true;
            } else {
                degenerate_run_ = 0;
            }
        }
    }

    void pivot(std::size_t leave, std::size_t entering, const std::vector<Scalar>& u) {
        const Scalar piv = u[leave];
        Scalar* prow = &binv_[leave * rows_];
        for (std::size_t c = 0; c < rows_; ++c) prow[c] /= piv;
        xB_[leave] /= piv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == leave || u[r] == Scalar(0)) continue;
            const Scalar f = u[r];
            Scalar* row = &binv_[r * rows_];
            for (std::size_t c = 0; c < rows_; ++c) {
                if (prow[c] != Scalar(0)) row[c] -= f * prow[c];
            }
            xB_[r] -= f * xB_[leave];
        }
        if (!is_artificial(basis_[leave])) pos_[basis_[leave]] = npos;
        basis_[leave] = entering;
        if (!is_artificial(entering)) pos_[entering] = leave;
        ++iterations_;
        if constexpr (!Traits::exact) {
            if (iterations_ % kRefactorPeriod == 0) refactor();
        }
    }

    void drive_out_artificials() {
        std::vector<Scalar> u;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (!is_artificial(basis_[r])) continue;
            for (std::size_t col = 0; col < ncells_; ++col) {
                if (!active_[col] || pos_[col] != npos) continue;
                Scalar ur = 0;
                for (std::size_t k = 0; k < N_; ++k) {
                    const std::size_t c = col_rows_[col * N_ + k];
                    if (c != npos) ur += binv_[r * rows_ + c];
                }
                if (Traits::abs(ur) > Traits::pivot_tol()) {
                    ftran(col, u);
                    xB_[r] = Scalar(0);
                    pivot(r, col, u);
                    break;
                }
            }
        }
    }

    // Rebuilds B^{-1} by Gauss-Jordan elimination and resolves x_B = B^{-1} b.
    void refactor() {
        const std::size_t m = rows_;
        std::vector<Scalar> a(m * m, Scalar(0));
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t col = basis_[r];
            if (is_artificial(col)) {
                a[(col - ncells_) * m + r] = Scalar(1);
            } else {
                for (std::size_t k = 0; k < N_; ++k) {
                    const std::size_t row = col_rows_[col * N_ + k];
                    if (row != npos) a[row * m + r] = Scalar(1);
                }
            }
        }
        std::vector<Scalar> inv(m * m, Scalar(0));
        for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = Scalar(1);
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < m; ++r) {
                if (Traits::abs(a[r * m + c]) > Traits::abs(a[p * m + c])) p = r;
            }
            if (Traits::abs(a[p * m + c]) <= Traits::pivot_tol()) return; // keep the updated inverse
            if (p != c) {
                for (std::size_t k = 0; k < m; ++k) {
                    std::swap(a[p * m + k], a[c * m + k]);
                    std::swap(inv[p * m + k], inv[c * m + k]);
                }
            }
            const Scalar d = a[c * m + c];
            for (std::size_t k = 0; k < m; ++k) {
                a[c * m + k] /= d;
                inv[c * m + k] /= d;
            }
            for (std::size_t r = 0; r < m; ++r) {
                if (r == c) continue;
                const Scalar f = a[r * m + c];
                if (f == Scalar(0)) continue;
                for (std::size_t k = 0; k < m; ++k) {
                    a[r * m + k] -= f * a[c * m + k];
                    inv[r * m + k] -= f * inv[c * m + k];
                }
            }
        }
        binv_ = std::move(inv);
        for (std::size_t r = 0; r < m; ++r) {
            Scalar s = 0;
            for (std::size_t c = 0; c < m; ++c) s += binv_[r * m + c] * b_[c];
            xB_[r] = s;
        }
    }

    std::size_t M_;
    std::size_t N_;
    std::size_t ncells_;
    std::size_t rows_;
    std::vector<char> active_;
    std::vector<Scalar> b_;
    std::vector<std::size_t> col_rows_;

    std::vector<Scalar> cost_;
    std::vector<Scalar> binv_;
    std::vector<Scalar> xB_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> pos_;
    int phase_ = 1;
    long iterations_ = 0;
    bool bland_ = false;
    long degenerate_run_ = 0;
};

} // namespace repot::detail
