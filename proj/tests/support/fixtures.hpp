#pragma once

#include <cstdint>

#include "sics/model.hpp"

namespace sics::fixture {

struct Pair {
  SparseSignal x;
  SideInformation w;
};

inline Pair make_pair(Index n, Index s, const SideInfoSpec& spec, std::uint64_t seed,
                      MagnitudeLaw law = MagnitudeLaw::SignOnly) {
  SparseSignal x = generate_signal(n, s, law, seed);
  SideInformation w = generate_side_info(x, spec, seed + 1);
  return {std::move(x), std::move(w)};
}

inline SideInfoSpec counts(Index good, Index bad, Index equal, Index extra, Index extra_large = 0) {
  SideInfoSpec spec;
  spec.n_good = good;
  spec.n_bad = bad;
  spec.n_equal = equal;
  spec.n_extra = extra;
  spec.n_extra_large = extra_large;
  return spec;
}

}  // namespace sics::fixture
