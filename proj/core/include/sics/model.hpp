#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace sics {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class MagnitudeLaw { SignOnly, Gaussian };
enum class VarianceMode { PerM, Unit };

std::string_view to_string(MagnitudeLaw law) noexcept;
std::string_view to_string(VarianceMode mode) noexcept;
MagnitudeLaw parse_magnitude_law(std::string_view text);
VarianceMode parse_variance_mode(std::string_view text);

// Target signal x*. The support is derived from the values on construction.
class SparseSignal {
 public:
  explicit SparseSignal(Vector values);

  const Vector& values() const noexcept { return values_; }
  Index n() const noexcept { return values_.size(); }
  Index s() const noexcept { return static_cast<Index>(support_.size()); }
  // Sorted indices of the nonzero entries.
  const std::vector<Index>& support() const noexcept { return support_; }

 private:
  Vector values_;
  std::vector<Index> support_;
};

// Side information w, a vector believed to be close to x*.
class SideInformation {
 public:
  explicit SideInformation(Vector values);

  const Vector& values() const noexcept { return values_; }
  Index n() const noexcept { return values_.size(); }

 private:
  Vector values_;
};

// Requested composition of w relative to x*. n_good + n_bad + n_equal must
// equal s; n_extra indices outside the support receive nonzero values.
struct SideInfoSpec {
  Index n_good = 0;
  Index n_bad = 0;
  Index n_equal = 0;
  Index n_extra = 0;
  // How many of the extra entries get |w_i| >= 1. The rest stay below 1.
  Index n_extra_large = 0;
  // Bad deviations may exceed |x_i*|, flipping the sign of w_i.
  bool allow_sign_flips = false;
  // If set, the bad deviations are rescaled so that the magnitude-dependent
  // quantity v of the profile equals this value. Implies sign flips may be
  // used when they are needed to reach it.
  std::optional<double> target_v;
};

// Gaussian measurement matrix identified by (seed, rows, n, mode). Entries
// are drawn row by row, so an ensemble with more rows extends one with fewer
// rows under the same seed.
class MeasurementEnsemble {
 public:
  // In PerM mode entries have variance 1/design_m (design_m = rows when 0).
  // In Unit mode entries have unit variance and prefix(m) rescales by 1/sqrt(m).
  static MeasurementEnsemble generate(std::uint64_t seed, Index rows, Index n,
                                      VarianceMode mode, Index design_m = 0);
  // Fixed matrix used as-is by prefix(); for fixtures.
  static MeasurementEnsemble from_matrix(Matrix entries);

  Index rows_available() const noexcept { return entries_.rows(); }
  Index n() const noexcept { return entries_.cols(); }
  std::uint64_t seed() const noexcept { return seed_; }
  VarianceMode mode() const noexcept { return mode_; }
  Index design_m() const noexcept { return design_m_; }
  bool is_custom() const noexcept { return custom_; }
  const Matrix& entries() const noexcept { return entries_; }

  // The first m rows, scaled as the variance mode prescribes.
  Matrix prefix(Index m) const;

 private:
  MeasurementEnsemble() = default;

  Matrix entries_;
  std::uint64_t seed_ = 0;
  VarianceMode mode_ = VarianceMode::PerM;
  Index design_m_ = 0;
  bool custom_ = false;
};

struct InstanceMetadata {
  std::uint64_t seed_signal = 0;
  std::uint64_t seed_side = 0;
  MagnitudeLaw magnitude_law = MagnitudeLaw::SignOnly;
  std::optional<SideInfoSpec> side_spec;
};

// (x*, w, A, y) with y = A_prefix x* computed once at construction.
class ProblemInstance {
 public:
  ProblemInstance(SparseSignal signal, SideInformation side_info,
                  std::shared_ptr<const MeasurementEnsemble> ensemble, Index m,
                  InstanceMetadata metadata = {});

  const SparseSignal& signal() const noexcept { return signal_; }
  const SideInformation& side_info() const noexcept { return side_info_; }
  const MeasurementEnsemble& ensemble() const noexcept { return *ensemble_; }
  const std::shared_ptr<const MeasurementEnsemble>& ensemble_ptr() const noexcept {
    return ensemble_;
  }
  const InstanceMetadata& metadata() const noexcept { return metadata_; }

  Index n() const noexcept { return signal_.n(); }
  Index m() const noexcept { return m_; }
  // m x n matrix in use (scaled prefix of the ensemble).
  const Matrix& matrix() const noexcept { return matrix_; }
  const Vector& measurements() const noexcept { return measurements_; }

  // Same signal and ensemble, first m rows.
  ProblemInstance with_rows(Index m) const;

 private:
  SparseSignal signal_;
  SideInformation side_info_;
  std::shared_ptr<const MeasurementEnsemble> ensemble_;
  Index m_;
  InstanceMetadata metadata_;
  Matrix matrix_;
  Vector measurements_;
};

// Exactly s nonzeros at uniformly random positions. SignOnly draws +-1,
// Gaussian draws standard normal magnitudes.
SparseSignal generate_signal(Index n, Index s, MagnitudeLaw law, std::uint64_t seed);

SideInformation generate_side_info(const SparseSignal& signal, const SideInfoSpec& spec,
                                   std::uint64_t seed);

ProblemInstance build_instance(const SparseSignal& signal, const SideInformation& side_info,
                               std::uint64_t seed, Index rows, Index m, VarianceMode mode,
                               InstanceMetadata metadata = {});

}  // namespace sics
