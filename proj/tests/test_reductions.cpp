#include "doctest.h"
#include "reference.hpp"
#include "salat/instance_gen.hpp"
#include "salat/reductions.hpp"

using namespace salat;

namespace {

const NormKind kNorms[] = {NormKind::L1, NormKind::L2, NormKind::LINF};

GeneralInstance diagonal(std::size_t n, long d, long k) {
  GeneralInstance inst;
  inst.n = n;
  inst.k = k;
  inst.m = scale(IntMatrix::identity(n), Int(d));
  return inst;
}

// v is in M Z^n iff M^-1 v is integral.
bool in_lattice(const IntMatrix& m, const IntVector& v) { return is_integral(mul(ref::inverse(m), to_rat(v))); }

}  // namespace

TEST_CASE("SVP on scaled identities") {
  ReductionOptions strict;
  strict.mode = Mode::strict;
  const ReductionResult r1 = reduce_svp(diagonal(8, 1, 1), strict);
  CHECK(r1.achieved == 1);
  CHECK(r1.problem == "svp");

  const ReductionResult r2 = reduce_svp(diagonal(8, 2, 2), strict);
  CHECK(r2.achieved == 4);  // squared L2
  CHECK(in_lattice(scale(IntMatrix::identity(8), Int(2)), r2.vectors[0]));
}

TEST_CASE("SVP matches the coefficient box") {
  for (std::size_t n : {3, 4}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const NormKind p = kNorms[seed % 3];
      const GeneralInstance inst = generate_instance(n, 3, seed, false, Gamma{}, p);
      const ReductionResult r = reduce_svp(inst);
      CHECK(r.achieved == ref::shortest(inst.m, p));
      CHECK(in_lattice(inst.m, r.vectors[0]));
      CHECK(mul(inst.m, r.z0[0]) == r.vectors[0]);
      CHECK_FALSE(ref::is_zero(r.vectors[0]));
    }
  }
}

TEST_CASE("SVP with an adversarial oracle stays within gamma") {
  const Gamma g = parse_gamma("3/2");
  ReductionOptions opts;
  opts.oracle = OracleMode::adversarial;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const NormKind p = kNorms[seed % 3];
    const GeneralInstance inst = generate_instance(3, 3, seed, false, g, p);
    const ReductionResult r = reduce_svp(inst, opts);
    CHECK(within_gamma(r.achieved, ref::shortest(inst.m, p), g, p));
    CHECK(in_lattice(inst.m, r.vectors[0]));
  }
}

TEST_CASE("SIVP matches the successive minima") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const NormKind p = kNorms[seed % 3];
    const GeneralInstance inst = generate_instance(3, 3, seed, false, Gamma{}, p);
    const ReductionResult r = reduce_sivp(inst);
    CHECK(r.achieved == ref::successive(inst.m, p).back());
    REQUIRE(r.vectors.size() == 3);
    std::vector<RatVector> vs;
    for (const auto& v : r.vectors) {
      CHECK(in_lattice(inst.m, v));
      vs.push_back(to_rat(v));
    }
    CHECK(ref::rank_of(vs, 3) == 3);
  }
}

TEST_CASE("CVP on simple targets") {
  ReductionOptions strict;
  strict.mode = Mode::strict;
  GeneralInstance half = diagonal(8, 1, 2);
  RatVector t(8, Rat(0));
  t[0] = Rat(1, 2);
  half.target = t;
  CHECK(reduce_cvp(half, strict).achieved == Rat(1, 4));

  GeneralInstance on = diagonal(3, 1, 2);
  on.target = RatVector{Rat(5), Rat(-1), Rat(2)};
  const ReductionResult r = reduce_cvp(on);
  CHECK(r.achieved == 0);
  CHECK(r.vectors[0] == IntVector{5, -1, 2});

  GeneralInstance none = diagonal(3, 1, 1);
  CHECK_THROWS_AS(reduce_cvp(none), Error);
}

TEST_CASE("CVP matches the coefficient box") {
  for (std::size_t n : {3, 4}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const NormKind p = kNorms[seed % 3];
      const GeneralInstance inst = generate_instance(n, 3, seed, true, Gamma{}, p);
      const ReductionResult r = reduce_cvp(inst);
      CHECK(r.achieved == ref::closest(inst.m, *inst.target, p));
      CHECK(in_lattice(inst.m, r.vectors[0]));
      CHECK(norm_value(sub(to_rat(r.vectors[0]), *inst.target), p) == r.achieved);
    }
  }
}

TEST_CASE("CVP with a rational target of denominator 3") {
  GeneralInstance inst = diagonal(3, 1, 3);
  inst.m(0, 1) = 1;
  inst.target = RatVector{Rat(1, 3), Rat(2, 3), Rat(-4, 3)};
  for (auto p : kNorms) {
    inst.norm = p;
    CHECK(reduce_cvp(inst).achieved == ref::closest(inst.m, *inst.target, p));
  }
}
