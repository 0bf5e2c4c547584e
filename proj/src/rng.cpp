#include "opcorr/rng.hpp"

#include <algorithm>

#include "opcorr/error.hpp"

namespace opcorr {

mpz_class CounterRng::below(const mpz_class& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  mpz_class x;
  do {
    for (auto& w : buf) w = next();
    const std::size_t spare = words * 64 - bits;
    if (spare) buf.back() >>= spare;
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  } while (x >= bound);
  return x;
}

DiscreteSampler::DiscreteSampler(const Measure& m) {
  if (m.weights().empty()) throw Error(ErrorKind::ValidationError, "cannot sample from the zero measure");
  mpz_class lcm = 1;
  for (const auto& [p, w] : m.weights()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
  mpz_class acc = 0;
  for (const auto& [p, w] : m.weights()) {
    acc += w.get_num() * (lcm / w.get_den());
    points_.push_back(p);
    big_cumulative_.push_back(acc);
  }
  big_total_ = acc;
  small_ = mpz_sizeinbase(acc.get_mpz_t(), 2) <= 63;
  if (small_) {
    total_ = static_cast<std::uint64_t>(acc.get_ui());
    if (sizeof(unsigned long) < sizeof(std::uint64_t)) small_ = false;
    for (const auto& c : big_cumulative_) cumulative_.push_back(static_cast<std::uint64_t>(c.get_ui()));
  }
}

std::size_t DiscreteSampler::operator()(CounterRng& rng) const {
  if (small_) {
    const std::uint64_t u = rng.below(total_);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return points_[static_cast<std::size_t>(it - cumulative_.begin())];
  }
  const mpz_class u = rng.below(big_total_);
  const auto it = std::upper_bound(big_cumulative_.begin(), big_cumulative_.end(), u);
  return points_[static_cast<std::size_t>(it - big_cumulative_.begin())];
}

}  // namespace opcorr
