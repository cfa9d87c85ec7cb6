#include "sics/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "sics/error.hpp"
#include "sics/format.hpp"
#include "sics/rng.hpp"

namespace sics {

namespace {

std::uint64_t scheme_code(Scheme scheme) { return static_cast<std::uint64_t>(scheme); }

bool is_success(const RecoveryResult& r, double tol) {
  return std::isfinite(r.relative_error) && r.relative_error <= tol;
}

}  // namespace

std::uint64_t phase_seed(std::uint64_t master_seed, Scheme scheme, Index m, int trial) {
  constexpr std::uint64_t kFieldLimit = std::uint64_t{1} << 28;
  if (m < 0 || static_cast<std::uint64_t>(m) >= kFieldLimit || trial < 0 ||
      static_cast<std::uint64_t>(trial) >= kFieldLimit) {
    throw InvalidArgument("m and trial must lie in [0, 2^28)");
  }
  const std::uint64_t key = (scheme_code(scheme) << 56) | (static_cast<std::uint64_t>(m) << 28) |
                            static_cast<std::uint64_t>(trial);
  return derive_seed(master_seed, key);
}

std::vector<ExperimentRecord> run_phase(const SparseSignal& signal, const SideInformation& side_info,
                                        const PhaseConfig& config) {
  if (config.trials < 1) throw InvalidArgument("trials must be at least 1");
  if (config.m_grid.empty()) throw InvalidArgument("m grid is empty");
  if (config.schemes.empty()) throw InvalidArgument("no schemes requested");
  if (signal.n() != side_info.n()) throw InvalidArgument("signal and side information lengths differ");
  std::set<Scheme> seen;
  for (const auto& obj : config.schemes) {
    if (!seen.insert(obj.scheme()).second) {
      throw InvalidArgument("scheme '" + std::string(to_string(obj.scheme())) + "' listed twice");
    }
  }
  for (const Index m : config.m_grid) {
    if (m < 1 || m > signal.n()) throw InvalidArgument("grid value m = " + std::to_string(m) + " outside [1, n]");
  }

  const std::size_t per_scheme = config.m_grid.size() * static_cast<std::size_t>(config.trials);
  std::vector<ExperimentRecord> records(config.schemes.size() * per_scheme);
  parallel_for(records.size(), config.workers, [&](std::size_t task) {
    const std::size_t si = task / per_scheme;
    const std::size_t rest = task % per_scheme;
    const Index m = config.m_grid[rest / static_cast<std::size_t>(config.trials)];
    const int trial = static_cast<int>(rest % static_cast<std::size_t>(config.trials));
    const Objective& objective = config.schemes[si];

    ExperimentRecord rec;
    rec.scheme = objective.scheme();
    rec.m = m;
    rec.trial = trial;
    rec.seed = phase_seed(config.master_seed, rec.scheme, m, trial);
    try {
      const ProblemInstance instance =
          build_instance(signal, side_info, rec.seed, m, m, VarianceMode::PerM);
      const RecoveryResult result = solve(instance, objective, config.solver);
      rec.relative_error = result.relative_error;
      rec.iterations = result.iterations;
      rec.converged = result.converged;
      rec.success = result.converged && is_success(result, config.success_tol);
    } catch (const NumericalError&) {
      rec.relative_error = std::numeric_limits<double>::infinity();
      rec.success = false;
    }
    records[task] = rec;
  });
  std::sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    if (a.m != b.m) return a.m < b.m;
    return a.trial < b.trial;
  });
  return records;
}

std::vector<RateCell> aggregate(const std::vector<ExperimentRecord>& records) {
  std::map<std::pair<Scheme, Index>, RateCell> cells;
  for (const auto& r : records) {
    RateCell& c = cells[{r.scheme, r.m}];
    c.scheme = r.scheme;
    c.m = r.m;
    ++c.trials;
    if (r.success) ++c.successes;
  }
  std::vector<RateCell> out;
  out.reserve(cells.size());
  for (auto& [key, c] : cells) {
    c.rate = static_cast<double>(c.successes) / static_cast<double>(c.trials);
    out.push_back(c);
  }
  return out;
}

std::optional<Index> first_m_reaching(const std::vector<RateCell>& table, Scheme scheme, double level) {
  std::optional<Index> best;
  for (const auto& c : table) {
    if (c.scheme == scheme && c.rate >= level && (!best || c.m < *best)) best = c.m;
  }
  return best;
}

std::vector<BetaSweepRecord> run_beta_sweep(const SparseSignal& signal,
                                            const SideInformation& side_info,
                                            const BetaSweepConfig& config) {
  if (config.replicates < 1) throw InvalidArgument("replicates must be at least 1");
  if (config.betas.empty()) throw InvalidArgument("beta grid is empty");
  for (const double b : config.betas) {
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("beta values must be positive");
  }
  const Index n = signal.n();

  std::vector<std::shared_ptr<const MeasurementEnsemble>> ensembles;
  ensembles.reserve(static_cast<std::size_t>(config.replicates));
  for (int rep = 0; rep < config.replicates; ++rep) {
    ensembles.push_back(std::make_shared<const MeasurementEnsemble>(MeasurementEnsemble::generate(
        derive_seed(config.master_seed, static_cast<std::uint64_t>(rep)), n, n, VarianceMode::Unit)));
  }

  const std::size_t nb = config.betas.size();
  std::vector<BetaSweepRecord> records(nb * static_cast<std::size_t>(config.replicates));
  parallel_for(records.size(), config.workers, [&](std::size_t task) {
    const int rep = static_cast<int>(task / nb);
    const double beta = config.betas[task % nb];
    const auto& ensemble = ensembles[static_cast<std::size_t>(rep)];
    const Objective objective = Objective::l1l1(side_info.values(), beta);
    SolverConfig solver = config.solver;
    if (config.scale_rho_with_beta) solver.rho *= 1.0 + beta;

    std::map<Index, bool> cache;
    const auto succeeds = [&](Index m) {
      if (const auto it = cache.find(m); it != cache.end()) return it->second;
      bool ok = false;
      try {
        const ProblemInstance instance(signal, side_info, ensemble, m);
        ok = is_success(solve(instance, objective, solver), config.success_tol);
      } catch (const NumericalError&) {
        ok = false;
      }
      cache[m] = ok;
      return ok;
    };

    BetaSweepRecord rec;
    rec.beta = beta;
    rec.replicate = rep;
    rec.seed = ensemble->seed();
    if (config.scan == ScanMode::Linear) {
      Index m = 1;
      while (m < n && !succeeds(m)) ++m;
      rec.m_min = m;
      rec.saturated = m == n && !succeeds(n);
    } else {
      // Invariant after the doubling phase: lo fails (or is 0), hi succeeds.
      Index lo = 0;
      Index hi = 1;
      while (hi < n && !succeeds(hi)) {
        lo = hi;
        hi = std::min(n, 2 * hi);
      }
      if (!succeeds(hi)) {
        rec.m_min = n;
        rec.saturated = true;
      } else {
        while (hi - lo > 1) {
          const Index mid = lo + (hi - lo) / 2;
          if (succeeds(mid)) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        rec.m_min = hi;
      }
    }
    records[task] = rec;
  });
  std::sort(records.begin(), records.end(), [](const BetaSweepRecord& a, const BetaSweepRecord& b) {
    if (a.replicate != b.replicate) return a.replicate < b.replicate;
    return a.beta < b.beta;
  });
  return records;
}

std::vector<double> log_space(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw InvalidArgument("log_space needs 0 < lo <= hi, count >= 1");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = std::pow(10.0, a + (b - a) * k / (count - 1));
  }
  return out;
}

std::vector<Index> linear_grid(Index lo, Index hi, Index step) {
  if (step < 1 || lo < 1 || hi < lo) throw InvalidArgument("grid needs 1 <= lo <= hi and step >= 1");
  std::vector<Index> out;
  for (Index m = lo; m <= hi; m += step) out.push_back(m);
  return out;
}

void write_phase_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "scheme,m,trial,seed,success,relative_error,iterations\n";
  for (const auto& r : records) {
    out << to_string(r.scheme) << ',' << r.m << ',' << r.trial << ',' << r.seed << ','
        << (r.success ? 1 : 0) << ',' << format_real(r.relative_error) << ',' << r.iterations << '\n';
  }
}

void write_beta_csv(std::ostream& out, const std::vector<BetaSweepRecord>& records) {
  out << "beta,replicate,m_min,saturated\n";
  for (const auto& r : records) {
    out << format_real(r.beta) << ',' << r.replicate << ',' << r.m_min << ',' << (r.saturated ? 1 : 0)
        << '\n';
  }
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& bounds) {
  out << "scheme,width_sq_bound,minimal_m\n";
  for (const auto& b : bounds) {
    out << to_string(b.scheme) << ',' << format_real(b.width_sq_bound) << ',' << b.minimal_m << '\n';
  }
}

void write_rates_csv(std::ostream& out, const std::vector<RateCell>& table) {
  out << "scheme,m,successes,trials,rate\n";
  for (const auto& c : table) {
    out << to_string(c.scheme) << ',' << c.m << ',' << c.successes << ',' << c.trials << ','
        << format_real(c.rate) << '\n';
  }
}

}  // namespace sics
