#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repot/cost.hpp"
#include "repot/ext_real.hpp"
#include "repot/measures.hpp"

namespace repot {

/// Largest product grid M^N the dense solvers accept.
inline constexpr std::size_t kMaxCells = 200000;
inline constexpr std::size_t kMaxMarginals = 4;

/// Maps between flat cell indices of the M^N grid and index tuples
/// (row-major, axis 0 most significant).
class TupleIndexer {
  public:
    TupleIndexer(std::size_t m_atoms, std::size_t n_marginals);

    [[nodiscard]] std::size_t atoms() const { return M_; }
    [[nodiscard]] std::size_t marginals() const { return N_; }
    [[nodiscard]] std::size_t cells() const { return cells_; }
    void decode(std::size_t flat, std::span<std::size_t> tuple) const;
    [[nodiscard]] std::vector<std::size_t> decode(std::size_t flat) const;
    [[nodiscard]] std::size_t encode(std::span<const std::size_t> tuple) const;

  private:
    std::size_t M_;
    std::size_t N_;
    std::size_t cells_;
};

/// N-marginal transport plan on the atoms of a discrete measure, stored as a
/// dense M^N weight tensor.
class Coupling {
  public:
    Coupling(std::vector<Point> support, std::size_t n_marginals, std::vector<double> weights,
             std::optional<std::vector<Rational>> exact = std::nullopt);

    [[nodiscard]] std::size_t N() const { return index_.marginals(); }
    [[nodiscard]] std::size_t M() const { return index_.atoms(); }
    [[nodiscard]] std::size_t cells() const { return index_.cells(); }
    [[nodiscard]] const TupleIndexer& indexer() const { return index_; }
    [[nodiscard]] const std::vector<Point>& support() const { return support_; }
    [[nodiscard]] double weight(std::size_t flat) const { return weights_[flat]; }
    [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
    [[nodiscard]] bool has_exact_weights() const { return exact_.has_value(); }
    [[nodiscard]] const std::vector<Rational>& exact_weights() const;

    [[nodiscard]] std::vector<double> marginal(std::size_t axis) const;
    /// Largest |marginal - ρ| over all axes and atoms.
    [[nodiscard]] double max_marginal_error(const DiscreteMeasure& rho) const;
    [[nodiscard]] Configuration configuration(std::size_t flat) const;
    /// Flat indices of cells with positive weight.
    [[nodiscard]] std::vector<std::size_t> support_cells() const;

  private:
    std::vector<Point> support_;
    TupleIndexer index_;
    std::vector<double> weights_;
    std::optional<std::vector<Rational>> exact_;
};

enum class SolveStatus { optimal, infeasible_finite, error };

std::string to_string(SolveStatus s);

struct SolveReport {
    ExtReal value;
    std::optional<Coupling> coupling;
    SolveStatus status = SolveStatus::error;
    long iterations = 0;
};

struct SolverOptions {
    /// Exact fractions throughout; the measure's exact weights are used when
    /// present, otherwise its double weights converted exactly.
    bool rational = false;
    /// Float-mode slack on the max-flow value when deciding feasibility.
    double feasibility_slack = 1e-12;
};

/// Cost of every cell of the M^N grid (+inf where h(0) = +inf and two
/// coordinates coincide).
std::vector<ExtReal> cell_costs(const DiscreteMeasure& rho, const HFunction& h, std::size_t N);

/// min over couplings of Σ cost·λ. Cells with infinite cost are deleted;
/// when that leaves no coupling the value is +inf (infeasible_finite).
SolveReport solve_linear(const DiscreteMeasure& rho, std::size_t N, std::span<const ExtReal> costs,
                         const SolverOptions& opts = {});

/// 𝒞(ρ) exactly, as a linear program over Π(ρ).
SolveReport solve_integral(const DiscreteMeasure& rho, const HFunction& h, std::size_t N,
                           const SolverOptions& opts = {});

using CellPredicate = std::function<bool(std::span<const std::size_t>)>;

/// A coupling supported inside `allowed`, or nullopt. Two marginals use a
/// bipartite max-flow; more use phase one of the simplex.
std::optional<Coupling> feasible_on_support(const DiscreteMeasure& rho, std::size_t N,
                                            const CellPredicate& allowed, const SolverOptions& opts = {});

/// 𝒞∞(ρ): binary search over the sorted distinct finite cell costs for the
/// smallest threshold B admitting a coupling supported in {c <= B}.
SolveReport solve_supremal(const DiscreteMeasure& rho, const HFunction& h, std::size_t N,
                           const SolverOptions& opts = {});

/// min over couplings of λ(𝓑_β).
double min_bad_mass(const DiscreteMeasure& rho, std::size_t N, double beta,
                    const SolverOptions& opts = {});

/// λ(𝓑_β) for a given coupling.
double bad_mass(const Coupling& lambda, double beta);
/// ∫ c dλ.
ExtReal coupling_cost(const Coupling& lambda, const HFunction& h);
/// Largest configuration cost over the support of λ.
ExtReal coupling_sup_cost(const Coupling& lambda, const HFunction& h);

/// Throws ValidationError / InstanceTooLarge when (M, N) is out of range.
void check_instance_size(std::size_t m_atoms, std::size_t n_marginals);

} // namespace repot
