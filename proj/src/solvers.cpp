#include "repot/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "repot/detail/max_flow.hpp"
#include "repot/detail/transport_simplex.hpp"
#include "repot/errors.hpp"

namespace repot {
namespace {

using detail::LpSolution;
using detail::MaxFlow;
using detail::TransportSimplex;

std::vector<Rational> exact_marginal(const DiscreteMeasure& rho) {
    if (rho.has_exact_weights()) return rho.exact_weights();
    std::vector<Rational> out;
    out.reserve(rho.size());
    for (double w : rho.weights()) out.emplace_back(w);
    return out;
}

template <class Scalar>
Coupling make_coupling(const DiscreteMeasure& rho, std::size_t N, const std::vector<Scalar>& x) {
    std::vector<double> w(x.size());
    if constexpr (std::is_same_v<Scalar, double>) {
        w = x;
        return Coupling(rho.points(), N, std::move(w));
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) w[i] = to_double(x[i]);
        return Coupling(rho.points(), N, std::move(w), x);
    }
}

template <class Scalar>
std::optional<std::vector<Scalar>> two_marginal_flow(const std::vector<Scalar>& marginal,
                                                     const std::vector<char>& allowed, double slack) {
    const std::size_t M = marginal.size();
    const std::size_t source = 2 * M;
    const std::size_t sink = 2 * M + 1;
    MaxFlow<Scalar> net(2 * M + 2);
    std::vector<std::size_t> cell_edge(M * M, std::numeric_limits<std::size_t>::max());
    Scalar total = 0;
    for (std::size_t i = 0; i < M; ++i) {
        net.add_edge(source, i, marginal[i]);
        net.add_edge(M + i, sink, marginal[i]);
        total += marginal[i];
    }
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            if (allowed[i * M + j]) cell_edge[i * M + j] = net.add_edge(i, M + j, Scalar(1));
        }
    }
    const Scalar flow = net.run(source, sink);
    if constexpr (detail::ScalarTraits<Scalar>::exact) {
        if (flow != total) return std::nullopt;
    } else {
        if (flow < total - slack) return std::nullopt;
    }
    std::vector<Scalar> x(M * M, Scalar(0));
    for (std::size_t c = 0; c < M * M; ++c) {
        if (allowed[c]) x[c] = net.flow(cell_edge[c]);
    }
    return x;
}

template <class Scalar>
std::optional<Coupling> feasible_mask(const DiscreteMeasure& rho, std::size_t N,
                                      const std::vector<char>& allowed, const std::vector<Scalar>& marginal,
                                      double slack, long& iterations) {
    if (N == 2) {
        ++iterations;
        auto x = two_marginal_flow(marginal, allowed, slack);
        if (!x) return std::nullopt;
        return make_coupling(rho, N, *x);
    }
    TransportSimplex<Scalar> lp(rho.size(), N, marginal, allowed);
    auto sol = lp.solve({});
    iterations += sol.iterations;
    if (!sol.feasible) return std::nullopt;
    return make_coupling(rho, N, sol.x);
}

std::optional<Coupling> feasible_mask(const DiscreteMeasure& rho, std::size_t N,
                                      const std::vector<char>& allowed, const SolverOptions& opts,
                                      long& iterations) {
    if (opts.rational) {
        return feasible_mask(rho, N, allowed, exact_marginal(rho), opts.feasibility_slack, iterations);
    }
    return feasible_mask(rho, N, allowed, rho.weights(), opts.feasibility_slack, iterations);
}

template <class Scalar>
SolveReport solve_linear_impl(const DiscreteMeasure& rho, std::size_t N, std::span<const ExtReal> costs,
                              const std::vector<Scalar>& marginal) {
    std::vector<char> active(costs.size());
    std::vector<Scalar> c(costs.size(), Scalar(0));
    for (std::size_t i = 0; i < costs.size(); ++i) {
        active[i] = costs[i].is_finite() ? 1 : 0;
        if (active[i]) c[i] = Scalar(costs[i].value());
    }
    TransportSimplex<Scalar> lp(rho.size(), N, marginal, active);
    LpSolution<Scalar> sol = lp.solve(c);
    SolveReport report;
    report.iterations = sol.iterations;
    if (!sol.feasible) {
        report.value = ExtReal::infinity();
        report.status = SolveStatus::infeasible_finite;
        return report;
    }
    if constexpr (std::is_same_v<Scalar, double>) {
        report.value = sol.objective;
    } else {
        report.value = to_double(sol.objective);
    }
    report.coupling = make_coupling(rho, N, sol.x);
    report.status = SolveStatus::optimal;
    return report;
}

std::vector<double> pair_distances(const DiscreteMeasure& rho) {
    const std::size_t M = rho.size();
    std::vector<double> d(M * M, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = i + 1; j < M; ++j) {
            d[i * M + j] = d[j * M + i] = distance(rho.point(i), rho.point(j));
        }
    }
    return d;
}

} // namespace

// ---------------------------------------------------------------- TupleIndexer

TupleIndexer::TupleIndexer(std::size_t m_atoms, std::size_t n_marginals)
    : M_(m_atoms), N_(n_marginals), cells_(1) {
    for (std::size_t k = 0; k < N_; ++k) cells_ *= M_;
}

void TupleIndexer::decode(std::size_t flat, std::span<std::size_t> tuple) const {
    for (std::size_t k = N_; k-- > 0;) {
        tuple[k] = flat % M_;
        flat /= M_;
    }
}

std::vector<std::size_t> TupleIndexer::decode(std::size_t flat) const {
    std::vector<std::size_t> t(N_);
    decode(flat, t);
    return t;
}

std::size_t TupleIndexer::encode(std::span<const std::size_t> tuple) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < N_; ++k) flat = flat * M_ + tuple[k];
    return flat;
}

// ---------------------------------------------------------------- Coupling

Coupling::Coupling(std::vector<Point> support, std::size_t n_marginals, std::vector<double> weights,
                   std::optional<std::vector<Rational>> exact)
    : support_(std::move(support)), index_(support_.size(), n_marginals), weights_(std::move(weights)),
      exact_(std::move(exact)) {
    if (weights_.size() != index_.cells()) throw ValidationError("coupling weight tensor has wrong size");
    if (exact_ && exact_->size() != index_.cells()) {
        throw ValidationError("exact coupling weight tensor has wrong size");
    }
    for (double w : weights_) {
        if (!(w >= 0.0)) throw ValidationError("coupling weights must be nonnegative");
    }
}

const std::vector<Rational>& Coupling::exact_weights() const {
    if (!exact_) throw std::logic_error("coupling has no exact weights");
    return *exact_;
}

std::vector<double> Coupling::marginal(std::size_t axis) const {
    std::vector<double> m(M(), 0.0);
    std::vector<std::size_t> t(N());
    for (std::size_t c = 0; c < cells(); ++c) {
        if (weights_[c] == 0.0) continue;
        index_.decode(c, t);
        m[t[axis]] += weights_[c];
    }
    return m;
}

double Coupling::max_marginal_error(const DiscreteMeasure& rho) const {
    if (rho.size() != M()) throw DimensionMismatch("coupling and measure have different supports");
    double err = 0.0;
    for (std::size_t k = 0; k < N(); ++k) {
        const auto m = marginal(k);
        for (std::size_t i = 0; i < M(); ++i) err = std::max(err, std::abs(m[i] - rho.weight(i)));
    }
    return err;
}

Configuration Coupling::configuration(std::size_t flat) const {
    std::vector<Point> pts;
    pts.reserve(N());
    for (std::size_t i : index_.decode(flat)) pts.push_back(support_[i]);
    return Configuration(std::move(pts));
}

std::vector<std::size_t> Coupling::support_cells() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cells(); ++c) {
        if (weights_[c] > 0.0) out.push_back(c);
    }
    return out;
}

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible_finite: return "infeasible-finite";
    case SolveStatus::error: return "error";
    }
    return "error";
}

// ---------------------------------------------------------------- solvers

void check_instance_size(std::size_t m_atoms, std::size_t n_marginals) {
    if (n_marginals < 2) throw ValidationError("at least two marginals are required");
    if (n_marginals > kMaxMarginals) {
        throw InstanceTooLarge("at most " + std::to_string(kMaxMarginals) + " marginals are supported");
    }
    double cells = std::pow(static_cast<double>(m_atoms), static_cast<double>(n_marginals));
    if (cells > static_cast<double>(kMaxCells)) {
        throw InstanceTooLarge("M^N = " + format_real(cells) + " exceeds " + std::to_string(kMaxCells));
    }
}

std::vector<ExtReal> cell_costs(const DiscreteMeasure& rho, const HFunction& h, std::size_t N) {
    check_instance_size(rho.size(), N);
    const std::size_t M = rho.size();
    const auto d = pair_distances(rho);
    std::vector<ExtReal> hd(M * M);
    for (std::size_t i = 0; i < M * M; ++i) hd[i] = h.eval(d[i]);
    const TupleIndexer idx(M, N);
    std::vector<ExtReal> out(idx.cells());
    std::vector<std::size_t> t(N);
    for (std::size_t c = 0; c < idx.cells(); ++c) {
        idx.decode(c, t);
        ExtReal s = 0.0;
        for (std::size_t a = 0; a < N; ++a) {
            for (std::size_t b = a + 1; b < N; ++b) s = s + hd[t[a] * M + t[b]];
        }
        out[c] = s;
    }
    return out;
}

SolveReport solve_linear(const DiscreteMeasure& rho, std::size_t N, std::span<const ExtReal> costs,
                         const SolverOptions& opts) {
    check_instance_size(rho.size(), N);
    if (costs.size() != TupleIndexer(rho.size(), N).cells()) {
        throw ValidationError("cost tensor has wrong size");
    }
    if (opts.rational) return solve_linear_impl(rho, N, costs, exact_marginal(rho));
    return solve_linear_impl(rho, N, costs, rho.weights());
}

SolveReport solve_integral(const DiscreteMeasure& rho, const HFunction& h, std::size_t N,
                           const SolverOptions& opts) {
    const auto costs = cell_costs(rho, h, N);
    return solve_linear(rho, N, costs, opts);
}

std::optional<Coupling> feasible_on_support(const DiscreteMeasure& rho, std::size_t N,
                                            const CellPredicate& allowed, const SolverOptions& opts) {
    check_instance_size(rho.size(), N);
    const TupleIndexer idx(rho.size(), N);
    std::vector<char> mask(idx.cells());
    std::vector<std::size_t> t(N);
    for (std::size_t c = 0; c < idx.cells(); ++c) {
        idx.decode(c, t);
        mask[c] = allowed(std::span<const std::size_t>(t)) ? 1 : 0;
    }
    long iterations = 0;
    return feasible_mask(rho, N, mask, opts, iterations);
}

SolveReport solve_supremal(const DiscreteMeasure& rho, const HFunction& h, std::size_t N,
                           const SolverOptions& opts) {
    const auto costs = cell_costs(rho, h, N);
    std::vector<double> levels;
    for (const auto& c : costs) {
        if (c.is_finite()) levels.push_back(c.value());
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    SolveReport report;
    long iterations = 0;
    auto attempt = [&](double threshold) {
        std::vector<char> mask(costs.size());
        for (std::size_t c = 0; c < costs.size(); ++c) mask[c] = costs[c] <= ExtReal(threshold) ? 1 : 0;
        return feasible_mask(rho, N, mask, opts, iterations);
    };
    std::optional<Coupling> witness = levels.empty() ? std::nullopt : attempt(levels.back());
    if (!witness) {
        report.value = ExtReal::infinity();
        report.status = SolveStatus::infeasible_finite;
        report.iterations = iterations;
        return report;
    }
    // levels[hi] is feasible; find the first feasible level.
    std::size_t lo = 0;
    std::size_t hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (auto c = attempt(levels[mid])) {
            hi = mid;
            witness = std::move(c);
        } else {
            lo = mid + 1;
        }
    }
    // witness always corresponds to levels[hi].
    report.value = levels[lo];
    report.coupling = std::move(witness);
    report.status = SolveStatus::optimal;
    report.iterations = iterations;
    return report;
}

double min_bad_mass(const DiscreteMeasure& rho, std::size_t N, double beta, const SolverOptions& opts) {
    if (!(beta > 0.0)) throw ValidationError("beta must be positive");
    check_instance_size(rho.size(), N);
    const std::size_t M = rho.size();
    const auto d = pair_distances(rho);
    const TupleIndexer idx(M, N);
    std::vector<ExtReal> costs(idx.cells());
    std::vector<std::size_t> t(N);
    for (std::size_t c = 0; c < idx.cells(); ++c) {
        idx.decode(c, t);
        bool bad = false;
        for (std::size_t a = 0; a < N && !bad; ++a) {
            for (std::size_t b = a + 1; b < N && !bad; ++b) bad = d[t[a] * M + t[b]] < beta || t[a] == t[b];
        }
        costs[c] = bad ? 1.0 : 0.0;
    }
    return solve_linear(rho, N, costs, opts).value.value();
}

double bad_mass(const Coupling& lambda, double beta) {
    double mass = 0.0;
    for (std::size_t c : lambda.support_cells()) {
        if (in_B_beta(lambda.configuration(c), beta)) mass += lambda.weight(c);
    }
    return mass;
}

ExtReal coupling_cost(const Coupling& lambda, const HFunction& h) {
    ExtReal total = 0.0;
    for (std::size_t c : lambda.support_cells()) {
        total = total + config_cost(h, lambda.configuration(c)) * ExtReal(lambda.weight(c));
    }
    return total;
}

ExtReal coupling_sup_cost(const Coupling& lambda, const HFunction& h) {
    ExtReal best = 0.0;
    for (std::size_t c : lambda.support_cells()) best = std::max(best, config_cost(h, lambda.configuration(c)));
    return best;
}

} // namespace repot
