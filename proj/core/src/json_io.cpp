#include "sics/json_io.hpp"

#include <cmath>
#include <fstream>
#include <type_traits>
#include <string>

#include "sics/error.hpp"

namespace sics {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  if (!doc.is_object()) throw InvalidArgument("instance file: top level must be an object");
  const auto it = doc.find(name);
  if (it == doc.end()) throw InvalidArgument(std::string("instance file: missing field '") + name + "'");
  return *it;
}

template <typename T>
T get_field(const json& doc, const char* name) {
  const json& v = field(doc, name);
  try {
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw InvalidArgument("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw InvalidArgument("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("instance file: field '") + name + "' has the wrong type");
  }
}

Vector get_vector(const json& doc, const char* name, Index n) {
  const json& v = field(doc, name);
  if (!v.is_array()) throw InvalidArgument(std::string("instance file: field '") + name + "' must be an array");
  if (static_cast<Index>(v.size()) != n) {
    throw InvalidArgument(std::string("instance file: field '") + name + "' has " + std::to_string(v.size()) +
                          " entries, expected n = " + std::to_string(n));
  }
  Vector out(n);
  for (Index i = 0; i < n; ++i) {
    const json& e = v[static_cast<std::size_t>(i)];
    if (!e.is_number()) throw InvalidArgument(std::string("instance file: field '") + name + "' holds a non-number");
    out[i] = e.get<double>();
  }
  return out;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json index_list(const std::vector<Index>& v) {
  json arr = json::array();
  for (const Index i : v) arr.push_back(i);
  return arr;
}

// NaN and infinities become null.
json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json instance_to_json(const ProblemInstance& instance) {
  const MeasurementEnsemble& e = instance.ensemble();
  if (e.is_custom()) throw InvalidArgument("instances with a fixed custom matrix cannot be serialized");
  const InstanceMetadata& meta = instance.metadata();
  json doc;
  doc["n"] = instance.n();
  doc["s"] = instance.signal().s();
  doc["m"] = instance.m();
  doc["seed_signal"] = meta.seed_signal;
  doc["seed_side"] = meta.seed_side;
  doc["seed_ensemble"] = e.seed();
  doc["M"] = e.rows_available();
  doc["variance_mode"] = std::string(to_string(e.mode()));
  if (e.mode() == VarianceMode::PerM && e.design_m() != e.rows_available()) {
    doc["design_m"] = e.design_m();
  }
  doc["magnitude_law"] = std::string(to_string(meta.magnitude_law));
  if (meta.side_spec) {
    const SideInfoSpec& sp = *meta.side_spec;
    json spec{{"good", sp.n_good},   {"bad", sp.n_bad},
              {"equal", sp.n_equal}, {"extra", sp.n_extra},
              {"extra_large", sp.n_extra_large}, {"sign_flips", sp.allow_sign_flips}};
    if (sp.target_v) spec["target_v"] = *sp.target_v;
    doc["side_spec"] = spec;
  }
  doc["x_star"] = vector_to_json(instance.signal().values());
  doc["w"] = vector_to_json(instance.side_info().values());
  return doc;
}

ProblemInstance instance_from_json(const json& doc) {
  const auto n = get_field<Index>(doc, "n");
  if (n < 1) throw InvalidArgument("instance file: field 'n' must be positive");
  const auto rows = get_field<Index>(doc, "M");
  if (rows < 1) throw InvalidArgument("instance file: field 'M' must be positive");
  const Index m = doc.contains("m") ? get_field<Index>(doc, "m") : rows;
  if (m < 1 || m > rows) throw InvalidArgument("instance file: field 'm' must lie in [1, M]");

  InstanceMetadata meta;
  meta.seed_signal = get_field<std::uint64_t>(doc, "seed_signal");
  meta.seed_side = get_field<std::uint64_t>(doc, "seed_side");
  const auto seed_ensemble = get_field<std::uint64_t>(doc, "seed_ensemble");
  VarianceMode mode;
  try {
    mode = parse_variance_mode(get_field<std::string>(doc, "variance_mode"));
  } catch (const InvalidArgument&) {
    throw InvalidArgument("instance file: field 'variance_mode' must be 'per_m' or 'unit'");
  }
  if (doc.contains("magnitude_law")) {
    try {
      meta.magnitude_law = parse_magnitude_law(get_field<std::string>(doc, "magnitude_law"));
    } catch (const InvalidArgument&) {
      throw InvalidArgument("instance file: field 'magnitude_law' must be 'sign' or 'gaussian'");
    }
  }
  if (doc.contains("side_spec")) {
    const json& sp = doc["side_spec"];
    SideInfoSpec spec;
    spec.n_good = get_field<Index>(sp, "good");
    spec.n_bad = get_field<Index>(sp, "bad");
    spec.n_equal = get_field<Index>(sp, "equal");
    spec.n_extra = get_field<Index>(sp, "extra");
    if (sp.contains("extra_large")) spec.n_extra_large = get_field<Index>(sp, "extra_large");
    if (sp.contains("sign_flips")) spec.allow_sign_flips = field(sp, "sign_flips").get<bool>();
    if (sp.contains("target_v")) spec.target_v = field(sp, "target_v").get<double>();
    meta.side_spec = spec;
  }

  SparseSignal signal(get_vector(doc, "x_star", n));
  SideInformation side(get_vector(doc, "w", n));
  const auto s = get_field<Index>(doc, "s");
  if (s != signal.s()) {
    throw InvalidArgument("instance file: field 's' = " + std::to_string(s) + " but x_star has " +
                          std::to_string(signal.s()) + " nonzeros");
  }
  Index design_m = 0;
  if (mode == VarianceMode::PerM) design_m = doc.contains("design_m") ? get_field<Index>(doc, "design_m") : rows;
  auto ensemble = std::make_shared<const MeasurementEnsemble>(
      MeasurementEnsemble::generate(seed_ensemble, rows, n, mode, design_m));
  return ProblemInstance(std::move(signal), std::move(side), std::move(ensemble), m, std::move(meta));
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  out << instance_to_json(instance).dump(2) << '\n';
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("instance file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return instance_from_json(doc);
}

json to_json(const SideInfoProfile& p) {
  json doc;
  doc["n"] = p.n;
  doc["s"] = p.s;
  doc["h_bar"] = p.h_bar;
  doc["h"] = p.h;
  doc["r"] = p.r;
  doc["xi"] = p.xi;
  doc["n_overestimate"] = p.n_overestimate;
  doc["n_zero_both"] = p.n_zero_both;
  doc["q"] = p.q;
  doc["K"] = p.K;
  doc["w_bar"] = p.w_bar;
  doc["w_bar_defined"] = p.w_bar_defined;
  doc["v"] = p.v;
  doc["I"] = index_list(p.I);
  doc["J"] = index_list(p.J);
  doc["I_plus"] = index_list(p.I_plus);
  doc["I_minus"] = index_list(p.I_minus);
  return doc;
}

json to_json(const BoundReport& r) {
  return json{{"scheme", std::string(to_string(r.scheme))},
              {"width_sq_bound", real(r.width_sq_bound)},
              {"minimal_m", r.minimal_m},
              {"assumptions_ok", r.assumptions_ok},
              {"assumption_notes", r.assumption_notes}};
}

json to_json(const RecoveryResult& r) {
  return json{{"x_hat", vector_to_json(r.x_hat)},
              {"objective_value", real(r.objective_value)},
              {"feasibility_residual", real(r.feasibility_residual)},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"relative_error", real(r.relative_error)},
              {"primal_residual", real(r.primal_residual)},
              {"dual_residual", real(r.dual_residual)}};
}

json to_json(const WidthEstimate& e) {
  return json{{"delta_hat", e.delta_hat}, {"std_err", e.std_err}, {"samples", e.samples}};
}

}  // namespace sics
