#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "sics/bounds.hpp"
#include "sics/solver.hpp"

namespace sics {

// Success rate versus m. Every (scheme, m, trial) solves a fresh PerM
// ensemble with M = m rows drawn from
//   seed = derive_seed(master_seed, code(scheme) << 56 | m << 28 | trial)
// with code(cs) = 0, code(l1l1) = 1, code(l1l2) = 2.
struct PhaseConfig {
  std::vector<Index> m_grid;
  int trials = 50;
  double success_tol = 1e-2;
  std::vector<Objective> schemes;
  std::uint64_t master_seed = 1;
  SolverConfig solver;
  unsigned workers = 1;
};

struct ExperimentRecord {
  Scheme scheme = Scheme::CS;
  Index m = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double relative_error = 0.0;
  int iterations = 0;
  bool converged = false;
};

std::uint64_t phase_seed(std::uint64_t master_seed, Scheme scheme, Index m, int trial);

// Records sorted by (scheme, m, trial). Solver failures are recorded as
// unsuccessful trials.
std::vector<ExperimentRecord> run_phase(const SparseSignal& signal, const SideInformation& side_info,
                                        const PhaseConfig& config);

struct RateCell {
  Scheme scheme = Scheme::CS;
  Index m = 0;
  int successes = 0;
  int trials = 0;
  double rate = 0.0;
};

// Success-rate table keyed by (scheme, m), sorted.
std::vector<RateCell> aggregate(const std::vector<ExperimentRecord>& records);

// Smallest grid m whose rate is >= level, if any.
std::optional<Index> first_m_reaching(const std::vector<RateCell>& table, Scheme scheme, double level);

enum class ScanMode {
  Linear,     // m = 1, 2, 3, ... until success
  Bisection,  // doubling then bisection on the same nested prefixes
};

// Minimal m(beta) for l1-l1 using the first m rows of one square Unit-mode
// ensemble per replicate, seed = derive_seed(master_seed, replicate).
struct BetaSweepConfig {
  std::vector<double> betas;
  int replicates = 5;
  double success_tol = 1e-2;
  std::uint64_t master_seed = 1;
  SolverConfig solver;
  unsigned workers = 1;
  ScanMode scan = ScanMode::Bisection;
  // Solve with rho * (1 + beta). The minimizer is unchanged; it keeps the
  // splitting well scaled as beta grows.
  bool scale_rho_with_beta = true;
};

struct BetaSweepRecord {
  double beta = 1.0;
  int replicate = 0;
  Index m_min = 0;
  bool saturated = false;
  std::uint64_t seed = 0;
};

std::vector<BetaSweepRecord> run_beta_sweep(const SparseSignal& signal,
                                            const SideInformation& side_info,
                                            const BetaSweepConfig& config);

// n log-spaced points from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int count);
// lo, lo + step, ..., up to hi.
std::vector<Index> linear_grid(Index lo, Index hi, Index step);

// CSV with a header row; reals printed with 9 significant digits.
void write_phase_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_beta_csv(std::ostream& out, const std::vector<BetaSweepRecord>& records);
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& bounds);
void write_rates_csv(std::ostream& out, const std::vector<RateCell>& table);

// Runs fn(i) for i in [0, count) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn);

}  // namespace sics

#include "sics/detail/parallel.hpp"
