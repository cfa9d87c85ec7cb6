#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "sics/bounds.hpp"
#include "sics/error.hpp"
#include "sics/experiments.hpp"
#include "sics/json_io.hpp"
#include "sics/partition.hpp"
#include "sics/rng.hpp"
#include "sics/solver.hpp"
#include "sics/width.hpp"

namespace sics::cli {

namespace {

using nlohmann::json;

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Output {
  std::string path;
  std::string format = "json";
};

// Writes `body` to --out (or the command's stdout) and the parameters to a
// sidecar `<out>.params.json` (or stderr).
void emit(const Output& o, const std::string& body, const json& params, std::ostream& out,
          std::ostream& err) {
  if (o.path.empty()) {
    out << body;
    err << "# params " << params.dump() << '\n';
    return;
  }
  std::ofstream f(o.path);
  if (!f) throw InvalidArgument("cannot open '" + o.path + "' for writing");
  f << body;
  std::ofstream meta(o.path + ".params.json");
  meta << params.dump(2) << '\n';
}

std::vector<Index> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    std::string a, b, c;
    std::getline(in, a, ':');
    std::getline(in, b, ':');
    std::getline(in, c, ':');
    try {
      return linear_grid(std::stoll(a), std::stoll(b), c.empty() ? 1 : std::stoll(c));
    } catch (const std::logic_error&) {
      throw InvalidArgument("--m expects lo:hi:step or a comma list, got '" + text + "'");
    }
  }
  std::vector<Index> out;
  std::istringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::logic_error&) {
      throw InvalidArgument("--m expects integers, got '" + tok + "'");
    }
  }
  return out;
}

std::vector<double> parse_betas(const std::string& text) {
  try {
    if (text.find(':') != std::string::npos) {
      std::istringstream in(text);
      std::string a, b, c;
      std::getline(in, a, ':');
      std::getline(in, b, ':');
      std::getline(in, c, ':');
      return log_space(std::stod(a), std::stod(b), std::stoi(c));
    }
    std::vector<double> out;
    std::istringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) out.push_back(std::stod(tok));
    return out;
  } catch (const std::logic_error&) {
    throw InvalidArgument("--betas expects lo:hi:count (log-spaced) or a comma list, got '" + text + "'");
  }
}

Objective parse_objective(const std::string& name, const SideInformation& side, double beta) {
  if (name == "l1" || name == "cs") return Objective::l1();
  if (name == "l1l1" || name == "f1") return Objective::l1l1(side.values(), beta);
  if (name == "l1l2" || name == "f2") return Objective::l1l2(side.values(), beta);
  throw InvalidArgument("unknown objective '" + name + "' (expected l1, l1l1 or l1l2)");
}

struct SolverFlags {
  SolverConfig config;
  void add(CLI::App* cmd) {
    cmd->add_option("--rho", config.rho, "splitting penalty")->capture_default_str();
    cmd->add_option("--max-iter", config.max_iter, "iteration limit")->capture_default_str();
    cmd->add_option("--eps-abs", config.eps_abs, "absolute tolerance")->capture_default_str();
    cmd->add_option("--eps-rel", config.eps_rel, "relative tolerance")->capture_default_str();
    cmd->add_flag("--adaptive-rho", config.adaptive_rho, "residual balancing of rho");
  }
  json params() const {
    return json{{"rho", config.rho},
                {"max_iter", config.max_iter},
                {"eps_abs", config.eps_abs},
                {"eps_rel", config.eps_rel},
                {"adaptive_rho", config.adaptive_rho}};
  }
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressed sensing with side information: solvers, bounds and experiments", "sics"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
  app.require_subcommand(1);
  Output output;
  const auto add_output = [&](CLI::App* cmd, bool csv) {
    cmd->add_option("--out", output.path, "output file (default: stdout)");
    if (csv) {
      output.format = "csv";
      cmd->add_option("--format", output.format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    }
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  Index gen_n = 0, gen_s = 0, gen_rows = 0, gen_m = 0;
  SideInfoSpec spec;
  std::optional<double> target_v;
  std::uint64_t gen_seed = 1;
  std::string magnitude = "sign", variance = "per_m";
  gen->add_option("--n", gen_n, "ambient dimension")->required();
  gen->add_option("--s", gen_s, "sparsity")->required();
  gen->add_option("--good", spec.n_good, "good components")->capture_default_str();
  gen->add_option("--bad", spec.n_bad, "bad components")->capture_default_str();
  gen->add_option("--equal", spec.n_equal, "components with w_i = x_i*")->capture_default_str();
  gen->add_option("--extra", spec.n_extra, "nonzeros of w outside the support")->capture_default_str();
  gen->add_option("--extra-large", spec.n_extra_large, "extras with |w_i| >= 1")->capture_default_str();
  gen->add_flag("--sign-flips", spec.allow_sign_flips, "bad deviations may flip the sign of w_i");
  gen->add_option("--target-v", target_v, "rescale bad deviations to reach this v");
  gen->add_option("--magnitude", magnitude, "sign or gaussian")
      ->check(CLI::IsMember({"sign", "gaussian"}))
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "master seed")->envname("SICS_SEED")->capture_default_str();
  gen->add_option("--M", gen_rows, "ensemble rows (default n)");
  gen->add_option("--m", gen_m, "rows in use (default M)");
  gen->add_option("--variance-mode", variance, "per_m or unit")
      ->check(CLI::IsMember({"per_m", "unit"}))
      ->capture_default_str();
  add_output(gen, false);

  // commands reading an instance
  std::string instance_path;
  const auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  };

  auto* prof = app.add_subcommand("profile", "side-information profile of an instance");
  double tolerance = 0.0;
  add_instance(prof);
  prof->add_option("--tolerance", tolerance, "equality tolerance for w_i = x_i*")->capture_default_str();
  add_output(prof, false);

  auto* bnd = app.add_subcommand("bounds", "measurement bounds for an instance");
  std::string scheme = "all";
  double beta = 1.0;
  add_instance(bnd);
  bnd->add_option("--scheme", scheme, "all, cs, l1l1 or l1l2")
      ->check(CLI::IsMember({"all", "cs", "l1l1", "l1l2"}))
      ->capture_default_str();
  bnd->add_option("--beta", beta, "side-information weight")->capture_default_str();
  bnd->add_option("--tolerance", tolerance, "equality tolerance for w_i = x_i*")->capture_default_str();
  add_output(bnd, false);

  auto* slv = app.add_subcommand("solve", "solve one recovery problem");
  std::string objective_name = "l1";
  Index solve_m = 0;
  SolverFlags solve_flags;
  add_instance(slv);
  slv->add_option("--objective", objective_name, "l1, l1l1 or l1l2")->capture_default_str();
  slv->add_option("--beta", beta, "side-information weight")->capture_default_str();
  slv->add_option("--m", solve_m, "rows in use (default: instance m)");
  solve_flags.add(slv);
  add_output(slv, false);

  auto* wid = app.add_subcommand("width", "Monte Carlo statistical dimension of the tangent cone");
  std::int64_t samples = 2000;
  std::uint64_t width_seed = 3;
  unsigned workers = default_workers();
  add_instance(wid);
  wid->add_option("--objective", objective_name, "l1, f1 (l1l1) or f2 (l1l2)")->capture_default_str();
  wid->add_option("--beta", beta, "side-information weight")->capture_default_str();
  wid->add_option("--samples", samples, "Gaussian samples")->capture_default_str();
  wid->add_option("--seed", width_seed, "sampling seed")->envname("SICS_SEED")->capture_default_str();
  wid->add_option("--workers", workers, "threads")->capture_default_str();
  add_output(wid, false);

  auto* phs = app.add_subcommand("phase", "success rate versus m for each scheme");
  std::string grid_text = "20:700:20";
  int trials = 50;
  std::uint64_t master_seed = 1;
  double success_tol = 1e-2;
  std::vector<std::string> schemes{"cs", "l1l1", "l1l2"};
  std::string bounds_out, rates_out;
  SolverFlags phase_flags;
  add_instance(phs);
  phs->add_option("--m", grid_text, "lo:hi:step or comma list")->capture_default_str();
  phs->add_option("--trials", trials, "trials per m")->capture_default_str();
  phs->add_option("--seed", master_seed, "master seed")->envname("SICS_SEED")->capture_default_str();
  phs->add_option("--tol", success_tol, "relative-error success threshold")->capture_default_str();
  phs->add_option("--schemes", schemes, "subset of cs l1l1 l1l2")->delimiter(',')->capture_default_str();
  phs->add_option("--beta", beta, "side-information weight")->capture_default_str();
  phs->add_option("--workers", workers, "threads")->capture_default_str();
  phs->add_option("--bounds-out", bounds_out, "bounds CSV (default: bounds.csv next to --out)");
  phs->add_option("--rates-out", rates_out, "aggregated success-rate CSV");
  phase_flags.add(phs);
  add_output(phs, true);

  auto* bsw = app.add_subcommand("beta-sweep", "minimal m(beta) for l1-l1 over nested row prefixes");
  std::string betas_text = "1e-2:1e2:9";
  int replicates = 5;
  std::string scan = "bisection";
  bool no_rho_scaling = false;
  SolverFlags beta_flags;
  add_instance(bsw);
  bsw->add_option("--betas", betas_text, "lo:hi:count (log-spaced) or comma list")->capture_default_str();
  bsw->add_option("--replicates", replicates, "square ensembles")->capture_default_str();
  bsw->add_option("--tol", success_tol, "relative-error success threshold")->capture_default_str();
  bsw->add_option("--seed", master_seed, "master seed")->envname("SICS_SEED")->capture_default_str();
  bsw->add_option("--scan", scan, "linear or bisection")
      ->check(CLI::IsMember({"linear", "bisection"}))
      ->capture_default_str();
  bsw->add_flag("--no-rho-scaling", no_rho_scaling, "use rho as given for every beta");
  bsw->add_option("--workers", workers, "threads")->capture_default_str();
  beta_flags.add(bsw);
  add_output(bsw, true);

  std::vector<std::string> argv_storage(args);
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInvalid;
  }

  try {
    json params;
    if (gen->parsed()) {
      const Index rows = gen_rows > 0 ? gen_rows : gen_n;
      const Index m = gen_m > 0 ? gen_m : rows;
      spec.target_v = target_v;
      const MagnitudeLaw law = parse_magnitude_law(magnitude);
      InstanceMetadata meta;
      meta.seed_signal = derive_seed(gen_seed, 0);
      meta.seed_side = derive_seed(gen_seed, 1);
      meta.magnitude_law = law;
      meta.side_spec = spec;
      const SparseSignal signal = generate_signal(gen_n, gen_s, law, meta.seed_signal);
      const SideInformation side = generate_side_info(signal, spec, meta.seed_side);
      const ProblemInstance inst = build_instance(signal, side, derive_seed(gen_seed, 2), rows, m,
                                                  parse_variance_mode(variance), meta);
      params = {{"command", "gen"}, {"n", gen_n}, {"s", gen_s}, {"seed", gen_seed},
                {"M", rows}, {"m", m}, {"variance_mode", variance}, {"magnitude", magnitude}};
      emit(output, instance_to_json(inst).dump(2) + "\n", params, out, err);
      return kExitOk;
    }

    const ProblemInstance instance = load_instance(instance_path);

    if (prof->parsed()) {
      json doc = to_json(profile(instance.signal(), instance.side_info(), tolerance));
      params = {{"command", "profile"}, {"instance", instance_path}, {"tolerance", tolerance}};
      doc["params"] = params;
      emit(output, doc.dump(2) + "\n", params, out, err);
      return kExitOk;
    }

    if (bnd->parsed()) {
      const SideInfoProfile p = profile(instance.signal(), instance.side_info(), tolerance);
      json arr = json::array();
      for (const auto& r : all_bounds(p, beta)) {
        if (scheme == "all" || scheme == to_string(r.scheme)) arr.push_back(to_json(r));
      }
      params = {{"command", "bounds"}, {"instance", instance_path}, {"scheme", scheme}, {"beta", beta}};
      emit(output, arr.dump(2) + "\n", params, out, err);
      return kExitOk;
    }

    if (slv->parsed()) {
      const ProblemInstance inst = solve_m > 0 ? instance.with_rows(solve_m) : instance;
      const Objective objective = parse_objective(objective_name, inst.side_info(), beta);
      const RecoveryResult result = solve(inst, objective, solve_flags.config);
      params = solve_flags.params();
      params.update({{"command", "solve"}, {"instance", instance_path}, {"objective", objective_name},
                     {"beta", beta}, {"m", inst.m()}});
      json doc = to_json(result);
      doc["params"] = params;
      emit(output, doc.dump(2) + "\n", params, out, err);
      return result.converged ? kExitOk : kExitNumerical;
    }

    if (wid->parsed()) {
      const Objective objective = parse_objective(objective_name, instance.side_info(), beta);
      const WidthEstimate est =
          estimate_statistical_dimension(objective, instance.signal(), samples, width_seed, workers);
      params = {{"command", "width"}, {"instance", instance_path}, {"objective", objective_name},
                {"beta", beta}, {"samples", samples}, {"seed", width_seed}};
      json doc = to_json(est);
      doc["params"] = params;
      emit(output, doc.dump(2) + "\n", params, out, err);
      return kExitOk;
    }

    if (phs->parsed()) {
      PhaseConfig config;
      config.m_grid = parse_grid(grid_text);
      config.trials = trials;
      config.success_tol = success_tol;
      config.master_seed = master_seed;
      config.solver = phase_flags.config;
      config.workers = workers;
      for (const auto& name : schemes) {
        config.schemes.push_back(Objective::for_scheme(parse_scheme(name), instance.side_info(), beta));
      }
      const auto records = run_phase(instance.signal(), instance.side_info(), config);
      const auto overlay = all_bounds(profile(instance.signal(), instance.side_info()), beta);

      params = phase_flags.params();
      params.update({{"command", "phase"}, {"instance", instance_path}, {"m", grid_text},
                     {"trials", trials}, {"seed", master_seed}, {"tol", success_tol},
                     {"schemes", schemes}, {"beta", beta}, {"workers", workers}});
      std::ostringstream body;
      if (output.format == "csv") {
        write_phase_csv(body, records);
      } else {
        json arr = json::array();
        for (const auto& r : records) {
          arr.push_back({{"scheme", std::string(to_string(r.scheme))}, {"m", r.m}, {"trial", r.trial},
                         {"seed", r.seed}, {"success", r.success},
                         {"relative_error", std::isfinite(r.relative_error) ? json(r.relative_error) : json()},
                         {"iterations", r.iterations}});
        }
        body << arr.dump(2) << '\n';
      }
      emit(output, body.str(), params, out, err);

      std::string bpath = bounds_out;
      if (bpath.empty() && !output.path.empty()) {
        bpath = (std::filesystem::path(output.path).parent_path() / "bounds.csv").string();
      }
      if (!bpath.empty()) {
        std::ofstream bf(bpath);
        if (!bf) throw InvalidArgument("cannot open '" + bpath + "' for writing");
        write_bounds_csv(bf, overlay);
      }
      if (!rates_out.empty()) {
        std::ofstream rf(rates_out);
        if (!rf) throw InvalidArgument("cannot open '" + rates_out + "' for writing");
        write_rates_csv(rf, aggregate(records));
      }
      return kExitOk;
    }

    if (bsw->parsed()) {
      BetaSweepConfig config;
      config.betas = parse_betas(betas_text);
      config.replicates = replicates;
      config.success_tol = success_tol;
      config.master_seed = master_seed;
      config.solver = beta_flags.config;
      config.workers = workers;
      config.scan = scan == "linear" ? ScanMode::Linear : ScanMode::Bisection;
      config.scale_rho_with_beta = !no_rho_scaling;
      const auto records = run_beta_sweep(instance.signal(), instance.side_info(), config);
      params = beta_flags.params();
      params.update({{"command", "beta-sweep"}, {"instance", instance_path}, {"betas", config.betas},
                     {"replicates", replicates}, {"tol", success_tol}, {"seed", master_seed},
                     {"scan", scan}, {"rho_scaling", config.scale_rho_with_beta}});
      std::ostringstream body;
      if (output.format == "csv") {
        write_beta_csv(body, records);
      } else {
        json arr = json::array();
        for (const auto& r : records) {
          arr.push_back({{"beta", r.beta}, {"replicate", r.replicate}, {"m_min", r.m_min},
                         {"saturated", r.saturated}});
        }
        body << arr.dump(2) << '\n';
      }
      emit(output, body.str(), params, out, err);
      return kExitOk;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const PreconditionViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInvalid;
}

}  // namespace sics::cli
