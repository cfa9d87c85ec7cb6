#include "sics/partition.hpp"

#include <algorithm>
#include <cmath>

#include "sics/error.hpp"

namespace sics {

std::string_view to_string(ComponentClass c) noexcept {
  switch (c) {
    case ComponentClass::Good: return "good";
    case ComponentClass::Bad: return "bad";
    case ComponentClass::EqualNonzero: return "equal_nonzero";
    case ComponentClass::ZeroBoth: return "zero_both";
    case ComponentClass::OverestimateSupport: return "overestimate_support";
  }
  return "unknown";
}

std::vector<ComponentClass> classify(const SparseSignal& signal, const SideInformation& side_info,
                                     double tolerance) {
  if (signal.n() != side_info.n()) {
    throw InvalidArgument("signal and side information lengths differ");
  }
  if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
  const Vector& x = signal.values();
  const Vector& w = side_info.values();
  std::vector<ComponentClass> out(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) {
    const bool equal = std::abs(w[i] - x[i]) <= tolerance;
    ComponentClass c;
    if (x[i] == 0.0) {
      c = equal ? ComponentClass::ZeroBoth : ComponentClass::OverestimateSupport;
    } else if (equal) {
      c = ComponentClass::EqualNonzero;
    } else if ((x[i] > 0.0 && x[i] < w[i]) || (x[i] < 0.0 && x[i] > w[i])) {
      c = ComponentClass::Good;
    } else {
      c = ComponentClass::Bad;
    }
    out[static_cast<std::size_t>(i)] = c;
  }
  return out;
}

SideInfoProfile profile(const SparseSignal& signal, const SideInformation& side_info,
                        double tolerance) {
  const auto classes = classify(signal, side_info, tolerance);
  const Vector& x = signal.values();
  const Vector& w = side_info.values();

  SideInfoProfile p;
  p.n = x.size();
  double sum_plus = 0.0;
  double sum_minus = 0.0;
  double sum_equal = 0.0;
  for (Index i = 0; i < p.n; ++i) {
    const ComponentClass c = classes[static_cast<std::size_t>(i)];
    const bool in_I = x[i] != 0.0;
    const bool in_J = c != ComponentClass::EqualNonzero && c != ComponentClass::ZeroBoth;
    if (in_I) p.I.push_back(i);
    if (in_J) p.J.push_back(i);
    if (x[i] > 0.0) {
      p.I_plus.push_back(i);
      sum_plus += (1.0 + x[i] - w[i]) * (1.0 + x[i] - w[i]);
    } else if (x[i] < 0.0) {
      p.I_minus.push_back(i);
      sum_minus += (1.0 + w[i] - x[i]) * (1.0 + w[i] - x[i]);
    }
    if (in_I || in_J) ++p.q;

    switch (c) {
      case ComponentClass::Good: ++p.h; break;
      case ComponentClass::Bad: ++p.h_bar; break;
      case ComponentClass::EqualNonzero: {
        ++p.r;
        const double d = std::abs(w[i]) - 1.0;
        sum_equal += d * d;
        break;
      }
      case ComponentClass::OverestimateSupport: ++p.n_overestimate; break;
      case ComponentClass::ZeroBoth: ++p.n_zero_both; break;
    }

    if (!in_I) {
      p.w_bar = p.w_bar_defined ? std::max(p.w_bar, std::abs(w[i])) : std::abs(w[i]);
      p.w_bar_defined = true;
      if (in_J && std::abs(w[i]) >= 1.0) ++p.K;
    } else if (in_J) {
      p.l1l2_critical_betas.push_back((x[i] > 0.0 ? 1.0 : -1.0) / (w[i] - x[i]));
    }
  }
  p.s = static_cast<Index>(p.I.size());
  p.xi = p.n_overestimate - p.r;
  p.v = sum_plus + sum_minus + sum_equal;
  return p;
}

}  // namespace sics
