#pragma once

#include <string_view>
#include <vector>

#include "sics/model.hpp"

namespace sics {

// Per-index relation between w_i and x_i*.
//   Good / Bad           x_i* != 0 and w_i != x_i* (sign-based split)
//   EqualNonzero         w_i == x_i* != 0
//   OverestimateSupport  w_i != x_i* == 0
//   ZeroBoth             w_i == x_i* == 0
enum class ComponentClass { Good, Bad, EqualNonzero, ZeroBoth, OverestimateSupport };

std::string_view to_string(ComponentClass c) noexcept;

// `tolerance` is the threshold for treating w_i and x_i* as equal. The
// default 0 is exact comparison, which is what generated data requires.
std::vector<ComponentClass> classify(const SparseSignal& signal, const SideInformation& side_info,
                                     double tolerance = 0.0);

// Every count and scalar of (x*, w) that the measurement bounds consume.
struct SideInfoProfile {
  Index n = 0;
  Index s = 0;
  Index h_bar = 0;  // bad components
  Index h = 0;      // good components
  Index r = 0;      // |{i : w_i = x_i* != 0}|
  Index n_overestimate = 0;
  Index n_zero_both = 0;
  Index xi = 0;  // n_overestimate - r

  std::vector<Index> I;  // support of x*
  std::vector<Index> J;  // {i : w_i != x_i*}
  std::vector<Index> I_plus;
  std::vector<Index> I_minus;
  Index q = 0;  // |I u J|
  Index K = 0;  // |{i in I^c n J : |w_i| >= 1}|

  double w_bar = 0.0;  // max over I^c of |w_i|; 0 when I^c is empty
  bool w_bar_defined = false;
  double v = 0.0;

  // sign(x_i*) / (w_i - x_i*) over I n J. The l1-l2 subdifferential condition
  // holds for a given beta if w_bar < 1 or beta differs from one of these.
  std::vector<double> l1l2_critical_betas;
};

SideInfoProfile profile(const SparseSignal& signal, const SideInformation& side_info,
                        double tolerance = 0.0);

}  // namespace sics
