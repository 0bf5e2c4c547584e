#pragma once

#include <vector>

#include "opcorr/error.hpp"
#include "opcorr/rng.hpp"
#include "opcorr/simulate.hpp"

namespace opcorr::detail {

inline std::vector<DiscreteSampler> row_samplers(const Observable& a) {
  std::vector<DiscreteSampler> out;
  out.reserve(a.rows().size());
  for (const auto& row : a.rows()) out.emplace_back(row);
  return out;
}

inline void require_even(std::size_t n) {
  if (n % 2 != 0) {
    throw Error(ErrorKind::OddEnsembleSize, "alternating measurement needs an even ensemble, got " + std::to_string(n));
  }
}

}  // namespace opcorr::detail
