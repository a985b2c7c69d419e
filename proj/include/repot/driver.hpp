#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "repot/measures.hpp"

namespace repot {

/// Deterministic per-instance random stream: mt19937_64 seeded through
/// splitmix64 from (seed, stream index). Conversions to floating point are
/// done here rather than with <random> distributions, whose output is not
/// specified across standard libraries.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard exponential.
    double exponential();
    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n);

  private:
    std::mt19937_64 engine_;
};

struct Cell {
    std::size_t N = 2;
    std::size_t M = 4;
    std::size_t d = 1;
    std::size_t count = 1;
};

struct RunConfig {
    std::uint64_t seed = 42;
    std::vector<Cell> cells;
    std::string h = "power:1";
    /// Reject weight draws until every atom carries mass below 1/N.
    bool condition_kappa = true;
    bool rational = false;
    /// Minimum pairwise distance between generated atoms.
    double min_separation = 1e-3;
    std::size_t rejection_budget = 100000;
};

/// Atoms uniform in [0,1]^d, weights uniform on the simplex.
DiscreteMeasure gen_instance(const RunConfig& cfg, const Cell& cell, std::uint64_t instance_index);

struct SweepSummary {
    std::size_t rows = 0;
    std::size_t failures = 0;
    std::size_t errors = 0;
};

/// Writes one CSV row per generated instance (header first). Instance
/// indices run consecutively across cells.
SweepSummary run_sweep(const RunConfig& cfg, std::ostream& csv);

struct ExampleResult {
    std::string id;
    std::string quantity;
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Every worked example, with its expected values.
std::vector<ExampleResult> run_paper_examples();
void print_examples(const std::vector<ExampleResult>& results, std::ostream& out);

/// ρ_ε = ½δ_0 + εδ_1 + (½-ε)δ_{1/ε}.
DiscreteMeasure example_rho_eps(double eps);
/// pδ_{x_1} + (1-p)/(N-1) Σ_{i>1} δ_{x_i} with x_i = i·spacing on a line.
DiscreteMeasure derangement_measure(std::size_t N, double p, double spacing);
/// Equal-mass atoms at quantile midpoints of three bumps of width delta at 0, 1, 2.
DiscreteMeasure three_bump_measure(double delta, std::size_t atoms_per_bump);

} // namespace repot
