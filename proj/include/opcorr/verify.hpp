#pragma once

#include <string>
#include <vector>

#include "opcorr/system_file.hpp"

namespace opcorr {

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;  ///< witness when !ok
};

/// Runs every exact invariant over the objects of a loaded system:
/// normalization, affinity of each observable, joint marginals, absolute
/// continuity of each density's numerator, Radon–Nikodym reconstruction,
/// the product rule ρt = ρc·ρe, pure-state collapse and the determinism
/// collapse for deterministic pairs.
std::vector<CheckResult> verify_system(const SystemFile& sys);

}  // namespace opcorr
