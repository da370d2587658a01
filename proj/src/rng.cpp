#include "salat/rng.hpp"

namespace salat {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

Int Rng::bits_exact(unsigned bits) {
  if (bits == 0) return 0;
  Int out = 0;
  unsigned remaining = bits - 1;  // top bit is forced to 1
  while (remaining > 0) {
    unsigned take = remaining >= 64 ? 64 : remaining;
    std::uint64_t chunk = engine_();
    if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
    Int c;
    mpz_import(c.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
    out = (out << take) + c;
    remaining -= take;
  }
  return out + (Int(1) << (bits - 1));
}

}  // namespace salat
