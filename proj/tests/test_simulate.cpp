#include <doctest.h>

#include <cmath>
#include <random>

#include "opcorr/error.hpp"
#include "opcorr/rng.hpp"
#include "opcorr/simulate.hpp"
#include "random_systems.hpp"

using namespace opcorr;
using namespace opcorr::testing;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

struct Bell {
  SpaceRef phase = FiniteSpace::make("W", {"psi", "phi"});
  SpaceRef bits1 = FiniteSpace::make("L", {"0", "1"});
  SpaceRef bits2 = FiniteSpace::make("R", {"0", "1"});
  SpaceRef pairs = FiniteSpace::product(bits1, bits2);
  Observable u1{"U1", phase, bits1, {uniform(bits1), uniform(bits1)}};
  Observable u2{"U2", phase, bits2, {uniform(bits2), uniform(bits2)}};
  ProbabilityMeasure diag =
      make_probability_measure(pairs, WeightMap{{pairs->join(0, 0), q(1, 2)}, {pairs->join(1, 1), q(1, 2)}});
  JointObservable j = make_joint(u1, u2, {diag, diag});
};

}  // namespace

TEST_CASE("counter rng is a pure function of (seed, stream, index)") {
  CounterRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  const auto a1 = a.next();
  CHECK(a1 == b.next());
  CHECK(a1 != c.next());
  CHECK(a1 != d.next());
  CHECK(a.next() == b.next());

  CounterRng r(1, 0);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(std::uint64_t{7}) < 7);
  const mpz_class big = mpz_class("340282366920938463463374607431768211507");  // > 2^128
  for (int i = 0; i < 100; ++i) {
    const auto x = r.below(big);
    CHECK(x >= 0);
    CHECK(x < big);
  }
}

TEST_CASE("discrete sampler honours exact weights") {
  auto s = FiniteSpace::make("S", {"a", "b", "c"});
  const auto m = make_probability_measure(s, {{"a", q(1, 4)}, {"b", q(0)}, {"c", q(3, 4)}});
  const DiscreteSampler draw(m);
  std::vector<int> counts(3, 0);
  for (std::uint64_t t = 0; t < 40000; ++t) {
    CounterRng rng(5, t);
    ++counts[draw(rng)];
  }
  CHECK(counts[1] == 0);
  CHECK(std::abs(counts[0] / 40000.0 - 0.25) < 4 * std::sqrt(0.25 * 0.75 / 40000) + 1e-9);

  // Denominators whose lcm exceeds 64 bits take the arbitrary-precision path.
  mpz_class p1("18446744073709551629");  // prime > 2^64
  const Rational w1(mpz_class(1), p1);
  const auto huge = make_probability_measure(s, WeightMap{{0, w1}, {2, 1 - w1}});
  const DiscreteSampler big(huge);
  for (std::uint64_t t = 0; t < 200; ++t) {
    CounterRng rng(9, t);
    CHECK(big(rng) == 2);  // point 0 has probability ~5e-20
  }
}

TEST_CASE("sample_state") {
  auto s = FiniteSpace::make("W", {"w1", "w2"});
  CHECK(sample_state(dirac(s, "w2"), 5, 123) == std::vector<std::size_t>(5, 1));
  CHECK(sample_state(uniform(s), 0, 1).empty());

  const auto draws = sample_state(uniform(s), 100000, 42);
  std::size_t ones = 0;
  for (auto d : draws) ones += d;
  CHECK(std::abs(ones / 100000.0 - 0.5) < 0.02);
  CHECK(draws == serial::sample_state(uniform(s), 100000, 42));
  CHECK(draws == sample_state(uniform(s), 100000, 42));
}

TEST_CASE("OpenMP kernels equal the serial reference bit for bit") {
  std::mt19937_64 rng(401);
  for (int trial = 0; trial < 30; ++trial) {
    const auto sys = random_system(rng);
    const std::uint64_t seed = rng();
    CHECK(measure_joint(sys.joint, sys.state, 5000, seed) == serial::measure_joint(sys.joint, sys.state, 5000, seed));
    const auto par = measure_alternating(sys.a1, sys.a2, sys.state, 4000, seed);
    const auto ser = serial::measure_alternating(sys.a1, sys.a2, sys.state, 4000, seed);
    CHECK(par.first == ser.first);
    CHECK(par.second == ser.second);
  }
}

TEST_CASE("measure_joint") {
  Bell b;
  const auto pure = dirac(b.phase, "psi");
  const auto e = measure_joint(b.j, pure, 20000, 7);
  CHECK(e.total == 20000);
  CHECK(e.counts[b.pairs->join(0, 1)] == 0);
  CHECK(e.counts[b.pairs->join(1, 0)] == 0);
  CHECK(check_binomial_band(e, apply(b.j.base(), pure)).within);

  std::mt19937_64 rng(409);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = random_system(rng);
    const auto pj = product_joint(sys.a1, sys.a2);
    const auto emp = measure_joint(pj, sys.state, 100000, 1000 + trial);
    const auto band = check_binomial_band(emp, apply(pj.base(), sys.state));
    CAPTURE(trial);
    CHECK(band.within);
  }
}

TEST_CASE("joint marginal agrees statistically with alternating A1 measurement") {
  Bell b;
  const auto mu = uniform(b.phase);
  const std::size_t n = 100000;
  const auto joint = measure_joint(b.j, mu, n, 77);
  const auto alt = measure_alternating(b.u1, b.u2, mu, n, 77);
  // Both estimate A1μ = (1/2, 1/2); their difference has sd ≤ sqrt(p(1-p)(1/n + 2/n)).
  const double f_joint = static_cast<double>(joint.counts[b.pairs->join(0, 0)] + joint.counts[b.pairs->join(0, 1)]) / n;
  const double f_alt = static_cast<double>(alt.first.counts[0]) / alt.first.total;
  CHECK(std::abs(f_joint - f_alt) < 4 * std::sqrt(0.25 * (3.0 / n)));
}

TEST_CASE("measure_alternating") {
  Bell b;
  auto phase = b.phase;
  auto vals = FiniteSpace::make("V", {"lo", "hi"});
  const Observable det("D", phase, vals, {dirac(vals, "hi"), dirac(vals, "lo")});
  const auto m = measure_alternating(det, b.u2, dirac(phase, "psi"), 1000, 3);
  CHECK(m.first.counts == std::vector<std::uint64_t>{0, 500});
  CHECK(m.first.total == 500);
  CHECK(m.second.total == 500);

  const auto big = measure_alternating(b.u1, b.u2, uniform(phase), 100000, 11);
  CHECK(check_binomial_band(big.first, apply(b.u1, uniform(phase))).within);
  CHECK(check_binomial_band(big.second, apply(b.u2, uniform(phase))).within);

  try {
    measure_alternating(b.u1, b.u2, uniform(phase), 7, 1);
    FAIL("expected OddEnsembleSize");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OddEnsembleSize);
  }
}

TEST_CASE("determinism under re-runs") {
  Bell b;
  const auto mu = make_probability_measure(b.phase, {{"psi", q(2, 7)}, {"phi", q(5, 7)}});
  CHECK(measure_joint(b.j, mu, 12345, 99) == measure_joint(b.j, mu, 12345, 99));
  CHECK_FALSE(measure_joint(b.j, mu, 12345, 99) == measure_joint(b.j, mu, 12345, 100));
}

TEST_CASE("deviation shrinks as n grows") {
  Bell b;
  const auto mu = uniform(b.phase);
  const auto exact = apply(b.j.base(), mu);
  double previous = 1.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    const auto e = measure_joint(b.j, mu, n, 2024);
    double worst = 0;
    for (std::size_t p = 0; p < e.counts.size(); ++p) {
      worst = std::max(worst, std::abs(static_cast<double>(e.counts[p]) / n - exact.weight(p).get_d()));
    }
    CAPTURE(n);
    CHECK(check_binomial_band(e, exact).within);
    CHECK(worst <= previous);
    previous = worst;
  }
}
