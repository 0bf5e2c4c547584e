#include <cmath>
#include <cstdint>

#include "simulate_common.hpp"

namespace opcorr {

namespace {

// Per-thread histograms merged at the end; addition of counts is
// associative, so the result does not depend on the schedule.
void merge(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

}  // namespace

std::vector<std::size_t> sample_state(const ProbabilityMeasure& mu, std::size_t n, std::uint64_t seed) {
  const DiscreteSampler draw(mu);
  std::vector<std::size_t> out(n);
  const auto trials = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, static_cast<std::uint64_t>(t));
    out[static_cast<std::size_t>(t)] = draw(rng);
  }
  return out;
}

EmpiricalMeasure measure_joint(const JointObservable& j, const ProbabilityMeasure& mu, std::size_t n,
                               std::uint64_t seed) {
  require_same_space(j.phase_space(), mu.space(), "measure_joint");
  const DiscreteSampler draw_state(mu);
  const auto rows = detail::row_samplers(j.base());
  const std::size_t cells = j.outcome_space()->size();
  EmpiricalMeasure out{j.outcome_space(), std::vector<std::uint64_t>(cells, 0), n};
  const auto trials = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t t = 0; t < trials; ++t) {
      CounterRng rng(seed, static_cast<std::uint64_t>(t));
      const std::size_t omega = draw_state(rng);
      ++local[rows[omega](rng)];
    }
#pragma omp critical(opcorr_merge)
    merge(out.counts, local);
  }
  return out;
}

AlternatingMeasurement measure_alternating(const Observable& a1, const Observable& a2, const ProbabilityMeasure& mu,
                                           std::size_t n, std::uint64_t seed) {
  detail::require_even(n);
  require_same_space(a1.phase_space(), mu.space(), "measure_alternating");
  require_same_space(a2.phase_space(), mu.space(), "measure_alternating");
  const DiscreteSampler draw_state(mu);
  const auto rows1 = detail::row_samplers(a1);
  const auto rows2 = detail::row_samplers(a2);
  const std::size_t n1 = a1.outcome_space()->size();
  const std::size_t n2 = a2.outcome_space()->size();
  AlternatingMeasurement out{
      {a1.outcome_space(), std::vector<std::uint64_t>(n1, 0), n / 2},
      {a2.outcome_space(), std::vector<std::uint64_t>(n2, 0), n / 2},
  };
  const auto trials = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local1(n1, 0), local2(n2, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t t = 0; t < trials; ++t) {
      CounterRng rng(seed, static_cast<std::uint64_t>(t));
      const std::size_t omega = draw_state(rng);
      if (t % 2 == 0) {
        ++local1[rows1[omega](rng)];
      } else {
        ++local2[rows2[omega](rng)];
      }
    }
#pragma omp critical(opcorr_merge)
    {
      merge(out.first.counts, local1);
      merge(out.second.counts, local2);
    }
  }
  return out;
}

BandCheck check_binomial_band(const EmpiricalMeasure& empirical, const Measure& exact, double sigmas) {
  require_same_space(empirical.space, exact.space(), "check_binomial_band");
  BandCheck result;
  double worst_excess = -1.0;
  const double n = static_cast<double>(empirical.total);
  for (std::size_t p = 0; p < empirical.counts.size(); ++p) {
    const double prob = exact.weight(p).get_d();
    const double freq = n > 0 ? static_cast<double>(empirical.counts[p]) / n : 0.0;
    const double allowance = n > 0 ? sigmas * std::sqrt(prob * (1.0 - prob) / n) + 1.0 / n : 0.0;
    const double deviation = std::abs(freq - prob);
    if (deviation - allowance > worst_excess) {
      worst_excess = deviation - allowance;
      result.worst_point = p;
      result.worst_deviation = deviation;
      result.worst_allowance = allowance;
    }
    if (deviation > allowance) result.within = false;
  }
  return result;
}

}  // namespace opcorr
