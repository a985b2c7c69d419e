#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "repot/measures.hpp"
#include "repot/rational.hpp"

namespace oracle {

using repot::Rational;

/// Solves the overdetermined system A x = b (rows x cols) by elimination.
/// Returns the unique solution, or nullopt when the columns are dependent
/// or the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_unique(std::vector<std::vector<Rational>> A,
                                                         std::vector<Rational> b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols; ++col, ++r) {
        std::size_t piv = r;
        while (piv < rows && A[piv][col] == 0) ++piv;
        if (piv == rows) return std::nullopt;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][col] == 0) continue;
            const Rational f = A[i][col] / A[r][col];
            for (std::size_t c = col; c < cols; ++c) A[i][c] -= f * A[r][c];
            b[i] -= f * b[r];
        }
    }
    for (std::size_t i = cols; i < rows; ++i) {
        if (b[i] != 0) return std::nullopt;
    }
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[i] = b[i] / A[i][i];
    return x;
}

/// Floating-point screen for solve_unique: false when the columns are
/// dependent, or the system is clearly inconsistent or has a clearly
/// negative solution.
/// The coefficient matrix is 0/1, so elimination in doubles decides the
/// rank reliably at this size.
inline bool maybe_positive_solution(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols; ++col, ++r) {
        std::size_t piv = r;
        for (std::size_t i = r; i < rows; ++i) {
            if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
        }
        if (std::abs(A[piv][col]) < 1e-9) return false;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][col] == 0.0) continue;
            const double f = A[i][col] / A[r][col];
            for (std::size_t c = col; c < cols; ++c) A[i][c] -= f * A[r][c];
            b[i] -= f * b[r];
        }
    }
    for (std::size_t i = cols; i < rows; ++i) {
        if (std::abs(b[i]) > 1e-9) return false;
    }
    for (std::size_t i = 0; i < cols; ++i) {
        if (b[i] / A[i][i] < -1e-9) return false;
    }
    return true;
}

/// All vertices of the 2-marginal transportation polytope {x >= 0 : row and
/// column sums of the M x M matrix x equal w}, restricted to allowed cells.
/// Brute force over every set of at most 2M-1 cells with independent
/// columns and a strictly positive solution.
inline std::vector<std::vector<Rational>> transport_vertices(const std::vector<Rational>& w,
                                                             const std::vector<char>& allowed) {
    const std::size_t M = w.size();
    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < M * M; ++c) {
        if (allowed[c]) cells.push_back(c);
    }
    const std::size_t rows = 2 * M;
    std::vector<Rational> b(rows);
    std::vector<double> bd(rows);
    for (std::size_t i = 0; i < M; ++i) {
        b[i] = b[M + i] = w[i];
        bd[i] = bd[M + i] = repot::to_double(w[i]);
    }
    std::vector<std::vector<Rational>> out;
    const std::size_t kmax = std::min(2 * M - 1, cells.size());
    for (std::size_t kk = 1; kk <= kmax; ++kk) {
        std::vector<std::size_t> pick(kk);
        for (std::size_t i = 0; i < kk; ++i) pick[i] = i;
        while (true) {
            std::vector<std::vector<double>> Ad(rows, std::vector<double>(kk, 0.0));
            for (std::size_t j = 0; j < kk; ++j) {
                const std::size_t cell = cells[pick[j]];
                Ad[cell / M][j] = 1.0;
                Ad[M + cell % M][j] = 1.0;
            }
            std::optional<std::vector<Rational>> x;
            if (maybe_positive_solution(Ad, bd)) {
                std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(kk, 0));
                for (std::size_t i = 0; i < rows; ++i) {
                    for (std::size_t j = 0; j < kk; ++j) A[i][j] = static_cast<int>(Ad[i][j]);
                }
                x = solve_unique(A, b);
            }
            if (x) {
                if (std::all_of(x->begin(), x->end(), [](const Rational& v) { return v > 0; })) {
                    std::vector<Rational> full(M * M, 0);
                    for (std::size_t j = 0; j < kk; ++j) full[cells[pick[j]]] = (*x)[j];
                    out.push_back(std::move(full));
                }
            }
            std::size_t i = kk;
            while (i > 0 && pick[i - 1] == cells.size() - kk + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < kk; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

inline std::vector<Rational> exact_weights(const repot::DiscreteMeasure& rho) {
    if (rho.has_exact_weights()) return rho.exact_weights();
    std::vector<Rational> w;
    for (double x : rho.weights()) w.emplace_back(x);
    return w;
}

/// Vertices of the unrestricted polytope. Restricting to a set of allowed
/// cells selects a face, whose vertices are those supported in the set.
inline std::vector<std::vector<Rational>> all_vertices(const repot::DiscreteMeasure& rho) {
    return transport_vertices(exact_weights(rho), std::vector<char>(rho.size() * rho.size(), 1));
}

inline bool supported_in_finite(const std::vector<Rational>& v, const std::vector<double>& cost) {
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] > 0 && !std::isfinite(cost[c])) return false;
    }
    return true;
}

/// min over vertices of Σ cost·x; vertices touching +inf cells are
/// excluded. nullopt when none remain.
inline std::optional<double> integral_by_vertices(const std::vector<std::vector<Rational>>& verts,
                                                  const std::vector<double>& cost) {
    std::optional<double> best;
    for (const auto& v : verts) {
        if (!supported_in_finite(v, cost)) continue;
        double s = 0.0;
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (v[c] > 0) s += repot::to_double(v[c]) * cost[c];
        }
        if (!best || s < *best) best = s;
    }
    return best;
}

inline std::optional<double> integral_by_vertices(const repot::DiscreteMeasure& rho, const std::vector<double>& cost) {
    return integral_by_vertices(all_vertices(rho), cost);
}

/// min over vertices of the largest cost on the vertex's support.
inline double supremal_by_vertices(const std::vector<std::vector<Rational>>& verts, const std::vector<double>& cost) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : verts) {
        double worst = 0.0;
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (v[c] > 0) worst = std::max(worst, cost[c]);
        }
        best = std::min(best, worst);
    }
    return best;
}

/// Largest closed-ball mass over a grid of candidate centres (plus the
/// atoms and all pairwise midpoints). A lower estimate of κ.
inline double kappa_grid_scan(const repot::DiscreteMeasure& rho, double alpha, std::size_t steps) {
    const std::size_t d = rho.dim();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const auto& p : rho.points()) {
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    auto mass_at = [&](const std::vector<double>& c) {
        double m = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += (rho.point(i)[k] - c[k]) * (rho.point(i)[k] - c[k]);
            if (std::sqrt(s) <= alpha + 1e-12) m += rho.weight(i);
        }
        return m;
    };
    double best = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        for (std::size_t j = i; j < rho.size(); ++j) {
            std::vector<double> c(d);
            for (std::size_t k = 0; k < d; ++k) c[k] = 0.5 * (rho.point(i)[k] + rho.point(j)[k]);
            best = std::max(best, mass_at(c));
        }
    }
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        std::vector<double> c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = lo[k] + (hi[k] - lo[k]) * static_cast<double>(idx[k]) / steps;
        best = std::max(best, mass_at(c));
        std::size_t k = 0;
        while (k < d && ++idx[k] > steps) idx[k++] = 0;
        if (k == d) break;
    }
    return best;
}

/// κ by brute force over subsets, using a dense grid search for the
/// smallest enclosing radius in 2D. Only for tiny instances.
inline double kappa_subsets_1d(const repot::DiscreteMeasure& rho, double alpha) {
    double best = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        double m = 0.0;
        for (std::size_t j = 0; j < rho.size(); ++j) {
            const double x = rho.point(j)[0] - rho.point(i)[0];
            if (x >= -1e-12 && x <= 2.0 * alpha + 1e-12) m += rho.weight(j);
        }
        best = std::max(best, m);
    }
    return best;
}

} // namespace oracle
