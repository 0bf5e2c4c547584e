#include <doctest.h>

#include <random>

#include "opcorr/coupling.hpp"
#include "opcorr/error.hpp"
#include "opcorr/observable.hpp"
#include "random_systems.hpp"

using namespace opcorr;
using namespace opcorr::testing;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

std::vector<Rational> dense(const Measure& m) {
  std::vector<Rational> out(m.space()->size(), 0);
  for (const auto& [p, w] : m.weights()) out[p] = w;
  return out;
}

std::vector<Rational> masses(const Measure& m) { return dense(m); }

}  // namespace

TEST_CASE("product_coupling") {
  auto bits = FiniteSpace::make("B", {"0", "1"});
  auto xyz = FiniteSpace::make("XYZ", {"x", "y", "z"});
  const auto c = product_coupling(uniform(bits), uniform(bits));
  CHECK(c.measure() == uniform(c.measure().space()));
  CHECK(marginal(c.measure(), 1) == uniform(bits));

  const auto nu2 = make_probability_measure(xyz, {{"x", q(1, 6)}, {"z", q(5, 6)}});
  const auto d = product_coupling(dirac(bits, "1"), nu2);
  CHECK(d.measure() == product(dirac(bits, "1"), nu2));
}

TEST_CASE("comonotone_coupling") {
  auto bits = FiniteSpace::make("B", {"0", "1"});
  const auto c = comonotone_coupling(uniform(bits), uniform(bits));
  const auto& s = c.measure().space();
  CHECK(c.measure().weights() == WeightMap{{s->join(0, 0), q(1, 2)}, {s->join(1, 1), q(1, 2)}});

  auto ab = FiniteSpace::make("AB", {"a", "b"});
  auto xy = FiniteSpace::make("XY", {"x", "y"});
  const auto nu1 = make_probability_measure(ab, {{"a", q(1, 3)}, {"b", q(2, 3)}});
  const auto nu2 = make_probability_measure(xy, {{"x", q(2, 3)}, {"y", q(1, 3)}});
  const auto m = comonotone_coupling(nu1, nu2);
  const auto& t = m.measure().space();
  CHECK(m.measure().weights() == WeightMap{{t->index_of_pair("a", "x"), q(1, 3)},
                                           {t->index_of_pair("b", "x"), q(1, 3)},
                                           {t->index_of_pair("b", "y"), q(1, 3)}});

  // Reversed order on the second factor gives the anti-diagonal.
  const auto anti = comonotone_coupling(uniform(bits), uniform(bits), {}, {1, 0});
  CHECK(anti.measure().weights() == WeightMap{{s->join(0, 1), q(1, 2)}, {s->join(1, 0), q(1, 2)}});

  auto xyz = FiniteSpace::make("XYZ", {"x", "y", "z"});
  const auto nu3 = make_probability_measure(xyz, {{"x", q(1, 5)}, {"y", q(0)}, {"z", q(4, 5)}});
  CHECK(comonotone_coupling(dirac(ab, "b"), nu3).measure() == product(dirac(ab, "b"), nu3));

  CHECK_THROWS_AS(comonotone_coupling(uniform(bits), uniform(bits), {0, 0}), Error);
}

TEST_CASE("vertex_couplings on the 2x2 Birkhoff polytope") {
  auto bits = FiniteSpace::make("B", {"0", "1"});
  const auto v = vertex_couplings(uniform(bits), uniform(bits));
  REQUIRE(v.size() == 2);
  const auto& s = v[0].measure().space();
  CHECK(v[0].measure().weights() == WeightMap{{s->join(0, 0), q(1, 2)}, {s->join(1, 1), q(1, 2)}});
  CHECK(v[1].measure().weights() == WeightMap{{s->join(0, 1), q(1, 2)}, {s->join(1, 0), q(1, 2)}});

  auto xyz = FiniteSpace::make("XYZ", {"x", "y", "z"});
  const auto one = vertex_couplings(dirac(bits, "0"), uniform(xyz));
  REQUIRE(one.size() == 1);
  CHECK(one[0].measure() == product(dirac(bits, "0"), uniform(xyz)));
}

TEST_CASE("vertex_couplings bound") {
  auto s5 = space_of("a", 5);
  auto s4 = space_of("b", 4);
  try {
    vertex_couplings(uniform(s5), uniform(s4));
    FAIL("expected EnumerationBoundExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EnumerationBoundExceeded);
  }
  CHECK(vertex_couplings(uniform(s5), uniform(s4), 20).size() > 0);
}

TEST_CASE("vertex_couplings match the subset-enumeration oracle") {
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 120; ++trial) {
    auto s1 = space_of("a", 1 + trial % 3);
    auto s2 = space_of("b", 1 + (trial / 3) % 4);
    const auto nu1 = random_measure(rng, s1, 0.05);
    const auto nu2 = random_measure(rng, s2, 0.05);
    const auto got = vertex_couplings(nu1, nu2);
    std::vector<std::vector<Rational>> got_dense;
    for (const auto& c : got) {
      got_dense.push_back(dense(c.measure()));
      // Basic feasible solutions have forest support.
      REQUIRE(c.measure().weights().size() <= s1->size() + s2->size() - 1);
    }
    auto sorted = got_dense;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    REQUIRE(sorted == oracle_vertices(masses(nu1), masses(nu2)));
  }
}

TEST_CASE("vertex couplings: Birkhoff polytope for n = 3 has n! vertices") {
  auto s = space_of("a", 3);
  CHECK(vertex_couplings(uniform(s), uniform(s)).size() == 6);
}

TEST_CASE("convex combinations of vertices are couplings (property)") {
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 100; ++trial) {
    auto s1 = space_of("a", 2 + trial % 3);
    auto s2 = space_of("b", 2 + (trial / 3) % 3);
    const auto nu1 = random_measure(rng, s1);
    const auto nu2 = random_measure(rng, s2);
    const auto target = FiniteSpace::product(s1, s2);
    const auto m = random_coupling(rng, nu1, nu2, target);
    REQUIRE_NOTHROW(Coupling(m, nu1, nu2));
    REQUIRE_NOTHROW(comonotone_coupling(nu1, nu2, {}, {}, target));
  }
}

TEST_CASE("Dirac marginal forces the product coupling (property)") {
  std::mt19937_64 rng(313);
  for (int trial = 0; trial < 60; ++trial) {
    auto s1 = space_of("a", 1 + trial % 4);
    auto s2 = space_of("b", 1 + (trial / 4) % 4);
    const auto nu1 = dirac(s1, trial % s1->size());
    const auto nu2 = random_measure(rng, s2);
    const auto expected = product(nu1, nu2);
    CHECK(product_coupling(nu1, nu2).measure() == expected);
    CHECK(comonotone_coupling(nu1, nu2).measure() == expected);
    const auto v = vertex_couplings(nu1, nu2);
    REQUIRE(v.size() == 1);
    CHECK(v[0].measure() == expected);
    CHECK(most_entangling_row(nu1, nu2, product_coupling(nu1, nu2)).distance == 0);
  }
}

TEST_CASE("most_entangling_row") {
  auto bits = FiniteSpace::make("B", {"0", "1"});
  const auto u = uniform(bits);
  const auto ref = product_coupling(u, u);
  const auto best = most_entangling_row(u, u, ref);
  CHECK(best.distance == q(1, 2));
  const auto& s = best.coupling.measure().space();
  CHECK(best.coupling.measure().weights() == WeightMap{{s->join(0, 0), q(1, 2)}, {s->join(1, 1), q(1, 2)}});

  std::mt19937_64 rng(317);
  for (int trial = 0; trial < 60; ++trial) {
    auto s1 = space_of("a", 2 + trial % 3);
    auto s2 = space_of("b", 2 + (trial / 3) % 3);
    const auto nu1 = random_measure(rng, s1);
    const auto nu2 = random_measure(rng, s2);
    const auto r = product_coupling(nu1, nu2);
    const auto e = most_entangling_row(nu1, nu2, r);
    for (const auto& v : vertex_couplings(nu1, nu2)) {
      REQUIRE(e.distance >= total_variation(v.measure(), r.measure()));
    }
    REQUIRE(total_variation(e.coupling.measure(), r.measure()) == e.distance);
  }
}
