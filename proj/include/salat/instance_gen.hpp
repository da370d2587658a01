#pragma once

#include <cstdint>

#include "salat/sa_core.hpp"

namespace salat {

/// Entries uniform in [-k, k], resampled until det M != 0. The optional target
/// draws one denominator d uniform in [1, k] and numerators uniform in
/// [-k d, k d], so lcd(t) <= k. Deterministic in `seed`. k must fit in 32 bits.
GeneralInstance generate_instance(std::size_t n, const Int& k, std::uint64_t seed, bool with_target = false,
                                  const Gamma& gamma = {}, NormKind norm = NormKind::L2);

}  // namespace salat
