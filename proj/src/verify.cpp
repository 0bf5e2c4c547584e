#include "opcorr/verify.hpp"

#include <cstdint>

#include "opcorr/correlation.hpp"
#include "opcorr/error.hpp"

namespace opcorr {

namespace {

constexpr std::size_t kExhaustiveSubsetLimit = 12;

// ν̃(X) = Σ_{p∈X} d(p)·ν(p) for all X when the space is small, pointwise otherwise.
bool reconstructs(const Measure& numerator, const Density& d, const Measure& reference) {
  const std::size_t n = reference.space()->size();
  auto term = [&](std::size_t p) { return d.defined_at(p) ? *d.at(p) * reference.weight(p) : Rational(0); };
  if (n > kExhaustiveSubsetLimit) {
    for (std::size_t p = 0; p < n; ++p) {
      if (numerator.weight(p) != term(p)) return false;
    }
    return true;
  }
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Rational lhs = 0, rhs = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (mask >> p & 1u) {
        lhs += numerator.weight(p);
        rhs += term(p);
      }
    }
    if (lhs != rhs) return false;
  }
  return true;
}

class Checks {
 public:
  void add(std::string name, bool ok, std::string detail = {}) {
    out_.push_back(CheckResult{std::move(name), ok, ok ? std::string{} : std::move(detail)});
  }

  template <class F>
  void run(std::string name, F&& body) {
    try {
      std::string witness;
      const bool ok = body(witness);
      add(std::move(name), ok, std::move(witness));
    } catch (const std::exception& e) {
      add(std::move(name), false, e.what());
    }
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::vector<CheckResult> out_;
};

}  // namespace

std::vector<CheckResult> verify_system(const SystemFile& sys) {
  Checks checks;

  for (const auto& [name, mu] : sys.states) {
    checks.add("state '" + name + "' is normalized", mu.total() == 1, "sum " + to_string(mu.total()));
  }

  for (const auto& [name, a] : sys.observables) {
    checks.run("observable '" + name + "' rows are normalized", [&](std::string& w) {
      for (std::size_t omega = 0; omega < a.rows().size(); ++omega) {
        if (a.row(omega).total() != 1) {
          w = "row '" + sys.phase_space->label(omega) + "' sums to " + to_string(a.row(omega).total());
          return false;
        }
      }
      return true;
    });
    checks.run("observable '" + name + "' is affine over state pairs", [&](std::string& w) {
      for (const auto& [n1, m1] : sys.states) {
        for (const auto& [n2, m2] : sys.states) {
          const Rational half(1, 2);
          const auto lhs = apply(a, mix({{half, m1}, {half, m2}}));
          const auto rhs = mix({{half, apply(a, m1)}, {half, apply(a, m2)}});
          if (!(lhs == rhs)) {
            w = "states '" + n1 + "', '" + n2 + "': " + describe(lhs) + " vs " + describe(rhs);
            return false;
          }
        }
      }
      return true;
    });
  }

  for (const auto& [jname, j] : sys.joints) {
    const std::string tag = "joint '" + jname + "'";
    checks.run(tag + " has marginal observables '" + j.left().id() + "', '" + j.right().id() + "'",
               [&](std::string& w) {
                 const bool ok = marginal_observable(j, 1) == j.left() && marginal_observable(j, 2) == j.right();
                 if (!ok) w = "marginal observables differ from the declared pair";
                 return ok;
               });

    const bool deterministic_pair = is_deterministic(j.left()) && is_deterministic(j.right());
    if (deterministic_pair) {
      checks.run(tag + " equals the product joint (deterministic pair)", [&](std::string& w) {
        const bool ok = j.base() == product_joint(j.left(), j.right()).base();
        if (!ok) w = "a deterministic pair admits only the product joint";
        return ok;
      });
    }

    for (std::size_t omega = 0; omega < sys.phase_space->size(); ++omega) {
      const auto pure = dirac(sys.phase_space, omega);
      checks.run(tag + " pure-state collapse at '" + sys.phase_space->label(omega) + "'", [&](std::string& w) {
        const auto report = classify(j, pure);
        if (!report.rho_c.is_constant_one()) {
          w = "rho_c is not constant 1";
          return false;
        }
        if (!(report.rho_t == report.rho_e)) {
          w = "rho_t differs from rho_e";
          return false;
        }
        if (report.classical) {
          w = "classical correlation reported at a pure state";
          return false;
        }
        return true;
      });
    }

    for (const auto& [sname, mu] : sys.states) {
      const std::string at = tag + " at '" + sname + "'";
      checks.run(at + ": marginals of the three measures", [&](std::string& w) {
        const auto m = correlation_measures(j, mu);
        const auto a1mu = apply(j.left(), mu);
        const auto a2mu = apply(j.right(), mu);
        for (const auto* nu : {&m.independent, &m.product, &m.joint}) {
          if (!(marginal(*nu, 1) == a1mu) || !(marginal(*nu, 2) == a2mu)) {
            w = describe(*nu) + " does not have marginals " + describe(a1mu) + ", " + describe(a2mu);
            return false;
          }
        }
        return true;
      });
      checks.run(at + ": each outcome measure is continuous w.r.t. its marginal product", [&](std::string& w) {
        const auto m = correlation_measures(j, mu);
        for (const auto* nu : {&m.product, &m.joint}) {
          if (!is_absolutely_continuous(*nu, product(marginal(*nu, 1), marginal(*nu, 2), nu->space()))) {
            w = describe(*nu);
            return false;
          }
        }
        return true;
      });
      checks.run(at + ": joint outcome is continuous w.r.t. the product joint outcome", [&](std::string& w) {
        const auto m = correlation_measures(j, mu);
        const bool ok = is_absolutely_continuous(m.joint, m.product);
        if (!ok) w = describe(m.joint) + " vs " + describe(m.product);
        return ok;
      });
      checks.run(at + ": densities reconstruct their measures", [&](std::string& w) {
        const auto r = classify(j, mu);
        const auto& m = r.measures;
        if (!reconstructs(m.product, r.rho_c, m.independent)) w = "rho_c";
        else if (!reconstructs(m.joint, r.rho_e, m.product)) w = "rho_e";
        else if (!reconstructs(m.joint, r.rho_t, m.independent)) w = "rho_t";
        return w.empty();
      });
      checks.run(at + ": product rule rho_t = rho_c * rho_e", [&](std::string& w) {
        const auto r = classify(j, mu);
        const bool ok = satisfies_product_rule(r.rho_c, r.rho_e, r.rho_t);
        if (!ok) w = "pointwise mismatch";
        return ok;
      });
      if (deterministic_pair) {
        checks.run(at + ": no entanglement for a deterministic pair", [&](std::string& w) {
          const bool ok = !classify(j, mu).entangled;
          if (!ok) w = "entangled flag set";
          return ok;
        });
      }
    }
  }
  return checks.take();
}

}  // namespace opcorr
