// Serial reference vs OpenMP kernels for the Monte Carlo measurements.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "opcorr/simulate.hpp"

using namespace opcorr;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000000;

  auto phase = FiniteSpace::make("W", {"w1", "w2", "w3", "w4"});
  auto x = FiniteSpace::make("X", {"0", "1", "2", "3"});
  auto pairs = FiniteSpace::product(x, x);
  std::vector<ProbabilityMeasure> rows, joint_rows;
  for (std::size_t w = 0; w < 4; ++w) {
    WeightMap m;
    for (std::size_t i = 0; i < 4; ++i) m.emplace(i, ratio(static_cast<long>(1 + (i + w) % 4), 10));
    rows.push_back(make_probability_measure(x, m));
    WeightMap d;
    for (const auto& [i, v] : rows.back().weights()) d.emplace(pairs->join(i, i), v);
    joint_rows.push_back(make_probability_measure(pairs, d));
  }
  const Observable a("A", phase, x, rows);
  const auto j = make_joint(a, a, joint_rows);
  const auto mu = make_probability_measure(phase, WeightMap{{0, Rational(1, 7)}, {1, Rational(2, 7)},
                                                           {2, Rational(3, 7)}, {3, Rational(1, 7)}});

  std::printf("threads: %d, trials: %zu\n", omp_get_max_threads(), n);

  EmpiricalMeasure par, ser;
  const double t_ser = seconds([&] { ser = serial::measure_joint(j, mu, n, 42); });
  const double t_par = seconds([&] { par = measure_joint(j, mu, n, 42); });
  std::printf("measure_joint        serial %8.3fs  openmp %8.3fs  speedup %5.2fx  identical %s\n", t_ser, t_par,
              t_ser / t_par, par == ser ? "yes" : "NO");

  AlternatingMeasurement apar, aser;
  const double a_ser = seconds([&] { aser = serial::measure_alternating(a, a, mu, n, 42); });
  const double a_par = seconds([&] { apar = measure_alternating(a, a, mu, n, 42); });
  const bool same = apar.first == aser.first && apar.second == aser.second;
  std::printf("measure_alternating  serial %8.3fs  openmp %8.3fs  speedup %5.2fx  identical %s\n", a_ser, a_par,
              a_ser / a_par, same ? "yes" : "NO");

  std::vector<std::size_t> spar, sser;
  const double s_ser = seconds([&] { sser = serial::sample_state(mu, n, 42); });
  const double s_par = seconds([&] { spar = sample_state(mu, n, 42); });
  std::printf("sample_state         serial %8.3fs  openmp %8.3fs  speedup %5.2fx  identical %s\n", s_ser, s_par,
              s_ser / s_par, spar == sser ? "yes" : "NO");
  return (par == ser && same && spar == sser) ? 0 : 1;
}
