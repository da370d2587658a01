#include "doctest.h"
#include "reference.hpp"
#include "salat/instance_gen.hpp"
#include "salat/rng.hpp"
#include "salat/sa_core.hpp"

using namespace salat;

namespace {

GeneralInstance instance_of(const IntMatrix& m, long k) {
  GeneralInstance inst;
  inst.n = m.rows();
  inst.k = k;
  inst.m = m;
  return inst;
}

SAInstance with_pair(SAInstance sa, const Int& b1, const Int& b2) {
  sa.b1 = b1;
  sa.b2 = b2;
  return sa;
}

// Every postcondition of sa_approximate that does not need enumeration.
void check_invariants(const GeneralInstance& inst, const SAInstance& sa) {
  const std::size_t n = inst.n;
  const Int d1 = ref::det(b1_matrix(sa.m_tilde));
  const Int d2 = ref::det(b2_matrix(sa.m_tilde));
  CHECK(d1 == sa.det_b1);
  CHECK(d2 == sa.det_b2);
  CHECK(ref::gcd(d1, d2) == 1);
  CHECK(d1 * sa.b1 + d2 * sa.b2 == 1);
  if (d2 != 0) CHECK(::abs(sa.b1) <= ::abs(d2));

  // M~ x is the generator column: b1, -b2 and zeros.
  const RatVector mx = mul(sa.m_tilde, sa.x);
  CHECK(mx == to_rat(generator_column(sa)));
  for (std::size_t i = 2; i < n; ++i) CHECK(mx[i] == 0);

  const GenerationDetail g = generation_detail(inst.m, sa);
  CHECK(g.unimodular_replacement);
  CHECK(g.hnf_identity);
  CHECK(generation_check(inst.m, sa));

  const Int bound = entry_bound(n, inst.k, sa.c);
  CHECK(max_abs_entry(sa.m_tilde) <= bound);
  for (const auto& r : sa.trace.records) CHECK(r.max_entry <= bound);

  // A = M~ - c adj M: non-negative; one entry per row unless a bump fired.
  CHECK(sa.perturbation == sub(sa.m_tilde, scale(ref::adjugate(inst.m), sa.c)));
  unsigned bumps = 0;
  for (const auto& r : sa.trace.records)
    if (r.iteration > 0) bumps += r.bumps;
  std::size_t extra = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(sa.perturbation(i, j) >= 0);
      if (sa.perturbation(i, j) != 0) ++nonzero;
    }
    if (nonzero > 1) extra += nonzero - 1;
  }
  CHECK(extra <= bumps);
}

}  // namespace

TEST_CASE("multiplier c") {
  CHECK(multiplier_c(8, 2, Mode::strict) == 1728 * pow(Int(16), 39));
  CHECK(multiplier_c(8, 1, Mode::strict) == 1728 * pow(Int(8), 39));
  CHECK_THROWS_AS(multiplier_c(7, 1, Mode::strict), Error);

  const Int c = multiplier_c(3, 2, Mode::small_n);
  const Int l(static_cast<unsigned long>(ceil_log2(Int(12))));
  const Int t1 = 12 * pow(Int(2), 8) * pow(Int(3), 7) * l * l;
  const Int t2 = 1728 * pow(Int(2), 24) * pow(Int(3), 15);
  CHECK(c >= t2);
  CHECK(c > t1);
  CHECK(c >= 94);
  CHECK(c / 2 <= std::max(t1, t2));  // smallest power of two above the max
  CHECK((c & (c - 1)) == 0);
}

TEST_CASE("validation errors") {
  GeneralInstance inst = instance_of(IntMatrix::identity(4), 1);
  CHECK_THROWS_AS(validate(inst, Mode::strict), Error);
  CHECK_NOTHROW(validate(inst, Mode::small_n));
  try {
    validate(inst, Mode::strict);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooSmall);
  }

  inst.gamma = parse_gamma("2/1");
  CHECK_THROWS_AS(validate(inst, Mode::small_n), Error);  // gamma > k
  inst.gamma = Gamma{};

  inst.target = RatVector{Rat(1, 2), 0, 0, 0};
  try {
    validate(inst, Mode::small_n);
    FAIL("expected TargetDenominatorTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TargetDenominatorTooLarge);
  }
  inst.target.reset();

  inst.m(3, 3) = 0;
  CHECK_THROWS_AS(validate(inst, Mode::small_n), Error);
  inst.m(3, 3) = 2;
  CHECK_THROWS_AS(validate(inst, Mode::small_n), Error);  // entry above k
}

TEST_CASE("identity lattice hand trace") {
  const GeneralInstance inst = instance_of(IntMatrix::identity(8), 1);
  const SAInstance sa = sa_approximate(inst, Mode::strict);
  // (B1)_{1,1} = 0 differs from (B2)_{1,1} = c, so no bump; x_1 = 1 reaches gcd(1, c + 1) = 1.
  CHECK_FALSE(sa.trace.tie_bumped);
  REQUIRE(sa.trace.records.size() == 8);
  CHECK(sa.trace.records[1].shift == 1);
  CHECK(sa.trace.records[1].det_b1 == 1);
  CHECK(sa.trace.records[1].det_b2 == sa.c + 1);
  check_invariants(inst, sa);
}

TEST_CASE("scaled identity") {
  const GeneralInstance inst = instance_of(scale(IntMatrix::identity(8), 2), 2);
  const SAInstance sa = sa_approximate(inst, Mode::strict);
  CHECK(generation_check(inst.m, sa));
  check_invariants(inst, sa);
}

TEST_CASE("random strict instances satisfy every invariant") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const GeneralInstance inst = generate_instance(8, 1 + seed % 3, derive_seed(99, seed));
    const SAInstance sa = sa_approximate(inst, Mode::strict);
    check_invariants(inst, sa);
    // Incremental determinants agree with recomputation at every step.
    for (std::size_t i = 1; i < sa.trace.records.size(); ++i) CHECK(sa.trace.records[i].iteration == i);
  }
}

TEST_CASE("random small_n instances satisfy every invariant") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const GeneralInstance inst = generate_instance(n, 1 + seed % 3, derive_seed(7, seed));
    const SAInstance sa = sa_approximate(inst, Mode::small_n);
    check_invariants(inst, sa);
  }
}

TEST_CASE("tie-break bump fires on equal leading entries") {
  // adj of [[1,1],[-1,1]] is [[1,-1],[1,1]]; M~(1,0) == M~(0,0) after scaling.
  const GeneralInstance inst = instance_of(IntMatrix{{1, 1}, {-1, 1}}, 1);
  const SAInstance sa = sa_approximate(inst, Mode::small_n);
  CHECK(sa.trace.tie_bumped);
  check_invariants(inst, sa);
}

TEST_CASE("generation under alternative and tampered Bezout pairs") {
  const GeneralInstance inst = generate_instance(8, 2, 5);
  const SAInstance sa = sa_approximate(inst, Mode::strict);
  CHECK(generation_check(inst.m, with_pair(sa, sa.b1 + sa.det_b2, sa.b2 - sa.det_b1)));

  const bool unit = ::abs(sa.det_b1) == 1;
  CHECK(generation_check(inst.m, with_pair(sa, sa.b1, 0)) == unit);

  // The generator has to be (b1, -b2): the same pair with a plus sign gives
  // det = +-(b1 det B1 - b2 det B2), which is not +-1 here.
  IntMatrix replaced = sa.m_tilde;
  IntVector literal(8, 0);
  literal[0] = sa.b1;
  literal[1] = sa.b2;
  replaced.set_column(7, literal);
  CHECK(::abs(bareiss_det(replaced)) != 1);
}

TEST_CASE("recover_coefficient") {
  const RatVector x{Rat(1, 3), Rat(2, 5), Rat(3, 4)};
  CHECK(recover_coefficient(x, x) == 1);
  CHECK(recover_coefficient(RatVector(3, 0), x) == 0);

  Rng rng(60);
  for (int trial = 0; trial < 50; ++trial) {
    RatVector v(4);
    for (auto& e : v) {
      e = Rat(static_cast<long>(rng.range(-200, 200)), 60);
      e.canonicalize();
    }
    if (lcd(v) != 60) continue;
    const long b = rng.range(0, 500);
    const RatVector y = centered_frac(scale(v, Rat(b)));
    CHECK(recover_coefficient(y, v) == b % 60);
  }
  CHECK_THROWS_AS(recover_coefficient(RatVector{Rat(1, 2), 0, 0}, x), Error);
}

TEST_CASE("sa_approximate is deterministic") {
  const GeneralInstance inst = generate_instance(8, 3, 42);
  const SAInstance a = sa_approximate(inst, Mode::strict);
  const SAInstance b = sa_approximate(inst, Mode::strict);
  CHECK(a.x == b.x);
  CHECK(a.m_tilde == b.m_tilde);
}

TEST_CASE("proportional determinant pairs") {
  // Zero leading minors: D = 0 with lambda = 0, so shift 1 already works and
  // nothing is bumped.
  const GeneralInstance zero = generate_instance(8, 1, derive_seed(6007, 83));
  const SAInstance a = sa_approximate(zero, Mode::strict);
  check_invariants(zero, a);
  CHECK(a.trace.records.at(2).bumps == 0);
  CHECK(a.trace.records.at(2).shift == 1);

  // D = v (a u' - b u) with u = u' = v = 0: only a pair of bumps helps.
  const GeneralInstance pair = generate_instance(8, 1, derive_seed(6007, 288));
  const SAInstance b = sa_approximate(pair, Mode::strict);
  check_invariants(pair, b);
  CHECK(b.trace.records.at(2).bumps == 2);
}
