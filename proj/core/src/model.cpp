#include "sics/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "sics/error.hpp"
#include "sics/rng.hpp"

namespace sics {

namespace {

// First k entries of a uniformly random permutation of `pool`.
std::vector<Index> sample_without_replacement(std::vector<Index> pool, Index k, Rng& rng) {
  const auto size = static_cast<Index>(pool.size());
  for (Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(size - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

double sign_of(double x) { return x > 0.0 ? 1.0 : -1.0; }

}  // namespace

std::string_view to_string(MagnitudeLaw law) noexcept {
  return law == MagnitudeLaw::SignOnly ? "sign" : "gaussian";
}

std::string_view to_string(VarianceMode mode) noexcept {
  return mode == VarianceMode::PerM ? "per_m" : "unit";
}

MagnitudeLaw parse_magnitude_law(std::string_view text) {
  if (text == "sign") return MagnitudeLaw::SignOnly;
  if (text == "gaussian") return MagnitudeLaw::Gaussian;
  throw InvalidArgument("unknown magnitude law '" + std::string(text) + "'");
}

VarianceMode parse_variance_mode(std::string_view text) {
  if (text == "per_m") return VarianceMode::PerM;
  if (text == "unit") return VarianceMode::Unit;
  throw InvalidArgument("unknown variance mode '" + std::string(text) + "'");
}

SparseSignal::SparseSignal(Vector values) : values_(std::move(values)) {
  if (values_.size() < 1) throw InvalidArgument("signal dimension must be at least 1");
  for (Index i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) support_.push_back(i);
  }
}

SideInformation::SideInformation(Vector values) : values_(std::move(values)) {
  if (values_.size() < 1) throw InvalidArgument("side information dimension must be at least 1");
}

MeasurementEnsemble MeasurementEnsemble::generate(std::uint64_t seed, Index rows, Index n,
                                                  VarianceMode mode, Index design_m) {
  if (rows < 1 || n < 1) throw InvalidArgument("ensemble needs at least one row and column");
  if (design_m < 0) throw InvalidArgument("design_m must be nonnegative");
  MeasurementEnsemble e;
  e.seed_ = seed;
  e.mode_ = mode;
  e.design_m_ = design_m == 0 ? rows : design_m;
  e.entries_.resize(rows, n);
  const double scale =
      mode == VarianceMode::PerM ? 1.0 / std::sqrt(static_cast<double>(e.design_m_)) : 1.0;
  // Row-major draw order keeps prefixes nested across different row counts.
  Rng rng(seed);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < n; ++j) e.entries_(i, j) = scale * rng.normal();
  }
  return e;
}

MeasurementEnsemble MeasurementEnsemble::from_matrix(Matrix entries) {
  if (entries.rows() < 1 || entries.cols() < 1) throw InvalidArgument("empty ensemble matrix");
  MeasurementEnsemble e;
  e.design_m_ = entries.rows();
  e.entries_ = std::move(entries);
  e.custom_ = true;
  return e;
}

Matrix MeasurementEnsemble::prefix(Index m) const {
  if (m < 1 || m > rows_available()) {
    throw InvalidArgument("prefix of " + std::to_string(m) + " rows requested from an ensemble with " +
                          std::to_string(rows_available()) + " rows");
  }
  if (custom_ || mode_ == VarianceMode::PerM) return entries_.topRows(m);
  return entries_.topRows(m) / std::sqrt(static_cast<double>(m));
}

ProblemInstance::ProblemInstance(SparseSignal signal, SideInformation side_info,
                                 std::shared_ptr<const MeasurementEnsemble> ensemble, Index m,
                                 InstanceMetadata metadata)
    : signal_(std::move(signal)),
      side_info_(std::move(side_info)),
      ensemble_(std::move(ensemble)),
      m_(m),
      metadata_(std::move(metadata)) {
  if (!ensemble_) throw InvalidArgument("instance requires an ensemble");
  if (side_info_.n() != signal_.n()) throw InvalidArgument("side information length differs from signal length");
  if (ensemble_->n() != signal_.n()) throw InvalidArgument("ensemble column count differs from signal length");
  if (m_ < 1 || m_ > ensemble_->rows_available()) {
    throw InvalidArgument("m = " + std::to_string(m_) + " outside [1, " +
                          std::to_string(ensemble_->rows_available()) + "]");
  }
  matrix_ = ensemble_->prefix(m_);
  measurements_ = matrix_ * signal_.values();
}

ProblemInstance ProblemInstance::with_rows(Index m) const {
  return ProblemInstance(signal_, side_info_, ensemble_, m, metadata_);
}

SparseSignal generate_signal(Index n, Index s, MagnitudeLaw law, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (s < 0 || s > n) {
    throw InvalidArgument("sparsity s = " + std::to_string(s) + " outside [0, " + std::to_string(n) + "]");
  }
  Rng rng(seed);
  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  const auto positions = sample_without_replacement(std::move(all), s, rng);
  Vector x = Vector::Zero(n);
  for (const Index i : positions) {
    if (law == MagnitudeLaw::SignOnly) {
      x[i] = rng.sign();
    } else {
      double v = 0.0;
      while (v == 0.0) v = rng.normal();
      x[i] = v;
    }
  }
  return SparseSignal(std::move(x));
}

SideInformation generate_side_info(const SparseSignal& signal, const SideInfoSpec& spec,
                                   std::uint64_t seed) {
  const Index n = signal.n();
  const Index s = signal.s();
  if (spec.n_good < 0 || spec.n_bad < 0 || spec.n_equal < 0 || spec.n_extra < 0 ||
      spec.n_extra_large < 0) {
    throw InvalidArgument("side information counts must be nonnegative");
  }
  if (spec.n_good + spec.n_bad + spec.n_equal != s) {
    throw InvalidArgument("good + bad + equal = " +
                          std::to_string(spec.n_good + spec.n_bad + spec.n_equal) +
                          " but the signal has s = " + std::to_string(s));
  }
  if (spec.n_extra > n - s) {
    throw InvalidArgument("extra = " + std::to_string(spec.n_extra) + " exceeds n - s = " +
                          std::to_string(n - s));
  }
  if (spec.n_extra_large > spec.n_extra) {
    throw InvalidArgument("extra_large exceeds extra");
  }

  Rng rng(seed);
  const Vector& x = signal.values();
  Vector w = x;  // equal components are exact copies

  const auto on_support = sample_without_replacement(signal.support(), s, rng);
  const auto equal_end = static_cast<std::size_t>(spec.n_equal);
  const auto good_end = equal_end + static_cast<std::size_t>(spec.n_good);

  double fixed_v = 0.0;
  for (std::size_t k = 0; k < equal_end; ++k) {
    const double a = std::abs(x[on_support[k]]);
    fixed_v += 1.0 + (a - 1.0) * (a - 1.0);
  }
  for (std::size_t k = equal_end; k < good_end; ++k) {
    const Index i = on_support[k];
    const double delta = rng.uniform(0.1, 1.0);
    w[i] = x[i] + sign_of(x[i]) * delta;
    const double d = std::abs(w[i] - x[i]);
    fixed_v += (1.0 - d) * (1.0 - d);
  }

  // Bad deviations: delta = c * u * |x_i| with u ~ U(0.1, 0.9). Without a v
  // target c is 1 (or up to 1.9/0.9 with sign flips, drawn per index).
  std::vector<Index> bad(on_support.begin() + static_cast<std::ptrdiff_t>(good_end), on_support.end());
  std::vector<double> base(bad.size());
  for (std::size_t k = 0; k < bad.size(); ++k) {
    const double u = spec.allow_sign_flips ? rng.uniform(0.1, 1.9) : rng.uniform(0.1, 0.9);
    base[k] = u * std::abs(x[bad[k]]);
  }
  double c = 1.0;
  if (spec.target_v) {
    const double target = *spec.target_v;
    if (bad.empty()) {
      if (std::abs(target - fixed_v) > 1e-9 * (1.0 + std::abs(target))) {
        throw InvalidArgument("target v unreachable without bad components (v = " +
                              std::to_string(fixed_v) + ")");
      }
    } else {
      // sum_b (1 + c a_b)^2 + fixed = target, solved for c > 0.
      double qa = 0.0;
      double qb = 0.0;
      for (const double a : base) {
        qa += a * a;
        qb += 2.0 * a;
      }
      const double qc = static_cast<double>(bad.size()) + fixed_v - target;
      if (qc >= 0.0) {
        throw InvalidArgument("target v must exceed " +
                              std::to_string(fixed_v + static_cast<double>(bad.size())));
      }
      c = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
    }
  }
  for (std::size_t k = 0; k < bad.size(); ++k) {
    const Index i = bad[k];
    w[i] = x[i] - sign_of(x[i]) * c * base[k];
  }

  std::vector<Index> off_support;
  off_support.reserve(static_cast<std::size_t>(n - s));
  for (Index i = 0; i < n; ++i) {
    if (x[i] == 0.0) off_support.push_back(i);
  }
  const auto extras = sample_without_replacement(std::move(off_support), spec.n_extra, rng);
  for (std::size_t k = 0; k < extras.size(); ++k) {
    const bool large = static_cast<Index>(k) < spec.n_extra_large;
    const double magnitude = large ? rng.uniform(1.5, 2.5) : rng.uniform(0.1, 1.0);
    w[extras[k]] = rng.sign() * magnitude;
  }
  return SideInformation(std::move(w));
}

ProblemInstance build_instance(const SparseSignal& signal, const SideInformation& side_info,
                               std::uint64_t seed, Index rows, Index m, VarianceMode mode,
                               InstanceMetadata metadata) {
  if (m < 1 || m > rows) {
    throw InvalidArgument("m = " + std::to_string(m) + " must lie in [1, M = " + std::to_string(rows) + "]");
  }
  const Index design_m = mode == VarianceMode::PerM ? m : 0;
  auto ensemble = std::make_shared<const MeasurementEnsemble>(
      MeasurementEnsemble::generate(seed, rows, signal.n(), mode, design_m));
  return ProblemInstance(signal, side_info, std::move(ensemble), m, std::move(metadata));
}

}  // namespace sics
