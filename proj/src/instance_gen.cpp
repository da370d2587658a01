#include "salat/instance_gen.hpp"

#include "salat/rng.hpp"

namespace salat {

GeneralInstance generate_instance(std::size_t n, const Int& k, std::uint64_t seed, bool with_target,
                                  const Gamma& gamma, NormKind norm) {
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "n must be at least 2");
  if (k < 1 || k > Int(0xffffffffUL)) throw Error(ErrorKind::InvalidInstance, "k must lie in [1, 2^32)");
  const auto kk = static_cast<std::int64_t>(k.get_ui());

  GeneralInstance inst;
  inst.n = n;
  inst.k = k;
  inst.gamma = gamma;
  inst.norm = norm;
  Rng rng(seed);
  do {
    inst.m = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inst.m(i, j) = Int(static_cast<long>(rng.range(-kk, kk)));
  } while (bareiss_det(inst.m) == 0);

  if (with_target) {
    const std::int64_t d = rng.range(1, kk);
    RatVector t(n);
    for (auto& e : t) {
      e = Rat(Int(static_cast<long>(rng.range(-kk * d, kk * d))), Int(static_cast<long>(d)));
      e.canonicalize();
    }
    inst.target = std::move(t);
  }
  return inst;
}

}  // namespace salat
