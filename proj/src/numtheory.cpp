#include "salat/numtheory.hpp"

#include <numeric>
#include <vector>

#include "salat/rng.hpp"

namespace salat {

BezoutResult ext_gcd(const Int& a, const Int& b) {
  if (a == 0 && b == 0) throw Error(ErrorKind::BothZero, "ext_gcd(0, 0) is undefined");
  BezoutResult r;
  if (b == 0) {
    r.g = ::abs(a);
    r.s = a > 0 ? 1 : -1;
    r.t = 0;
    return r;
  }
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // s is determined modulo |b/g|; pick the representative in (-m/2, m/2].
  const Int m = ::abs(Int(b / r.g));
  Int s = r.s % m;
  if (s < 0) s += m;
  if (2 * s > m) s -= m;
  r.s = s;
  r.t = (r.g - a * s) / b;
  return r;
}

std::uint64_t coprime_shift(const Int& a0, const Int& d1, const Int& b0, const Int& d2, std::uint64_t cap) {
  if (d1 == 0 && d2 == 0) throw Error(ErrorKind::HypothesisViolated, "both step coefficients are zero");
  BezoutResult st = ext_gcd(d1, d2);
  if (st.g != 1)
    throw Error(ErrorKind::HypothesisViolated, "gcd(d1, d2) = " + to_string(st.g) + " != 1");

  const Int D = d2 * a0 - d1 * b0;
  const Int u = st.s * a0 + st.t * b0;

  if (D == 0) {
    // gcd(0, u + x) = |u + x|, so x must hit u + x = +-1.
    for (const Int& target : {Int(-1), Int(1)}) {
      Int x = target - u;
      if (x >= 0) {
        if (!x.fits_ulong_p()) throw Error(ErrorKind::SearchCapExceeded, "closed-form shift does not fit");
        return x.get_ui();
      }
    }
    throw Error(ErrorKind::NoSolution, "the two progressions coincide and never become coprime for x >= 0");
  }

  Int g, cur = u;
  for (std::uint64_t x = 0; x <= cap; ++x, ++cur) {
    mpz_gcd(g.get_mpz_t(), D.get_mpz_t(), cur.get_mpz_t());
    if (g == 1) return x;
  }
  throw Error(ErrorKind::SearchCapExceeded, "no coprime shift found within " + std::to_string(cap) + " steps");
}

std::uint64_t jacobsthal(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "jacobsthal requires n >= 1");
  if (n > kJacobsthalCap)
    throw Error(ErrorKind::TooLarge, "jacobsthal scan is capped at n <= " + std::to_string(kJacobsthalCap));
  if (n == 1) return 1;

  std::vector<std::uint64_t> primes;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    primes.push_back(p);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) primes.push_back(rest);

  // blocked[v] for v in [0, n]; residues 1 and n+1 are always coprime.
  std::vector<bool> blocked(n + 2, false);
  for (auto p : primes)
    for (std::uint64_t v = 0; v <= n + 1; v += p) blocked[v] = true;

  std::uint64_t best = 1, last = 1;
  for (std::uint64_t v = 2; v <= n + 1; ++v) {
    if (blocked[v]) continue;
    best = std::max(best, v - last);
    last = v;
  }
  return best;
}

void GapHistogram::add(std::uint64_t x, std::uint64_t times) {
  counts[x] += times;
  samples += times;
}

void GapHistogram::merge(const GapHistogram& other) {
  for (const auto& [x, c] : other.counts) counts[x] += c;
  samples += other.samples;
}

Rat GapHistogram::mean() const {
  if (samples == 0) return 0;
  Int total = 0;
  for (const auto& [x, c] : counts) total += Int(static_cast<unsigned long>(x)) * Int(static_cast<unsigned long>(c));
  Rat m(total, Int(static_cast<unsigned long>(samples)));
  m.canonicalize();
  return m;
}

Rat GapHistogram::frequency(std::uint64_t x) const {
  auto it = counts.find(x);
  if (it == counts.end() || samples == 0) return 0;
  Rat f(Int(static_cast<unsigned long>(it->second)), Int(static_cast<unsigned long>(samples)));
  f.canonicalize();
  return f;
}

namespace {

constexpr std::uint64_t kBlockSize = 1u << 16;

GapHistogram gap_block(std::uint64_t count, unsigned bits, std::uint64_t seed) {
  GapHistogram h;
  Rng rng(seed);
  if (bits <= 62) {
    const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t a = lo + rng.below(lo);
      std::uint64_t b = lo + rng.below(lo);
      std::uint64_t x = 0;
      while (std::gcd(a + x, b) != 1) ++x;
      h.add(x);
    }
    return h;
  }
  Int g;
  for (std::uint64_t i = 0; i < count; ++i) {
    Int a = rng.bits_exact(bits);
    Int b = rng.bits_exact(bits);
    std::uint64_t x = 0;
    for (;; ++x, ++a) {
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (g == 1) break;
    }
    h.add(x);
  }
  return h;
}

}  // namespace

GapHistogram coprime_gap_experiment(std::uint64_t samples, unsigned bits, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorKind::InvalidInstance, "samples must be >= 1");
  if (bits < 2) throw Error(ErrorKind::InvalidInstance, "bit size must be >= 2");
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<GapHistogram> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::uint64_t count = std::min<std::uint64_t>(kBlockSize, samples - b * kBlockSize);
    parts[b] = gap_block(count, bits, derive_seed(seed, b));
  });
  GapHistogram out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace salat
