#include "simulate_common.hpp"

namespace opcorr::serial {

std::vector<std::size_t> sample_state(const ProbabilityMeasure& mu, std::size_t n, std::uint64_t seed) {
  const DiscreteSampler draw(mu);
  std::vector<std::size_t> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    CounterRng rng(seed, t);
    out[t] = draw(rng);
  }
  return out;
}

EmpiricalMeasure measure_joint(const JointObservable& j, const ProbabilityMeasure& mu, std::size_t n,
                               std::uint64_t seed) {
  require_same_space(j.phase_space(), mu.space(), "measure_joint");
  const DiscreteSampler draw_state(mu);
  const auto rows = detail::row_samplers(j.base());
  EmpiricalMeasure out{j.outcome_space(), std::vector<std::uint64_t>(j.outcome_space()->size(), 0), n};
  for (std::size_t t = 0; t < n; ++t) {
    CounterRng rng(seed, t);
    const std::size_t omega = draw_state(rng);
    ++out.counts[rows[omega](rng)];
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
  AlternatingMeasurement out{
      {a1.outcome_space(), std::vector<std::uint64_t>(a1.outcome_space()->size(), 0), n / 2},
      {a2.outcome_space(), std::vector<std::uint64_t>(a2.outcome_space()->size(), 0), n / 2},
  };
  for (std::size_t t = 0; t < n; ++t) {
    CounterRng rng(seed, t);
    const std::size_t omega = draw_state(rng);
    if (t % 2 == 0) {
      ++out.first.counts[rows1[omega](rng)];
    } else {
      ++out.second.counts[rows2[omega](rng)];
    }
  }
  return out;
}

}  // namespace opcorr::serial
