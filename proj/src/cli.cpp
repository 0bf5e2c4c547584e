#include "opcorr/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "opcorr/correlation.hpp"
#include "opcorr/coupling.hpp"
#include "opcorr/error.hpp"
#include "opcorr/simulate.hpp"
#include "opcorr/system_file.hpp"
#include "opcorr/verify.hpp"

namespace opcorr::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::string system;
  std::string observable;
  std::string joint;
  std::string state;
  std::string left;
  std::string right;
  std::string at;
  bool vertices = false;
  bool comonotone = false;
  bool extremal = false;
  std::size_t n = 100000;
  std::uint64_t seed = 42;
  bool alternating = false;
};

std::size_t enumeration_bound() {
  const char* env = std::getenv("OPCORR_ENUM_BOUND");
  if (!env || !*env) return kDefaultEnumerationBound;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw UsageError(std::string("OPCORR_ENUM_BOUND must be a positive integer, got '") + env + "'");
  return static_cast<std::size_t>(v);
}

SystemFile load_system(const std::string& path) {
  if (path.empty()) throw UsageError("--system is required");
  try {
    return load(path);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

template <class T>
const T& require(const T* found, const std::string& kind, const std::string& name) {
  if (name.empty()) throw UsageError("missing " + kind + " name");
  if (!found) throw UsageError("unknown " + kind + " '" + name + "'");
  return *found;
}

Json point_json(const FiniteSpace& space, std::size_t p) {
  if (!space.is_product()) return space.label(p);
  const auto [i1, i2] = space.split(p);
  return Json::array({space.left()->label(i1), space.right()->label(i2)});
}

Json rational_json(const Rational& r) { return Json{{"exact", to_string(r)}, {"decimal", to_decimal(r)}}; }

Json measure_json(const Measure& m) {
  Json arr = Json::array();
  for (std::size_t p = 0; p < m.space()->size(); ++p) {
    const Rational w = m.weight(p);
    arr.push_back(Json{{"point", point_json(*m.space(), p)}, {"exact", to_string(w)}, {"decimal", to_decimal(w)}});
  }
  return arr;
}

Json density_json(const Density& d) {
  Json arr = Json::array();
  for (std::size_t p = 0; p < d.space()->size(); ++p) {
    Json entry{{"point", point_json(*d.space(), p)}};
    if (auto v = d.at(p)) {
      entry["exact"] = to_string(*v);
      entry["decimal"] = to_decimal(*v);
    } else {
      entry["exact"] = nullptr;
      entry["decimal"] = nullptr;
    }
    arr.push_back(std::move(entry));
  }
  return arr;
}

std::string cell(const std::optional<Rational>& v) {
  if (!v) return "undefined";
  return to_string(*v) + " (" + to_decimal(*v) + ")";
}

void print_measure(std::ostream& out, const std::string& title, const Measure& m) {
  out << title << "\n";
  for (std::size_t p = 0; p < m.space()->size(); ++p) {
    out << "  " << std::left << std::setw(16) << m.space()->label(p) << cell(m.weight(p)) << "\n";
  }
}

// max |ρ − 1| over the domain, a scalar view of how far a density is from "no correlation".
Rational max_departure(const Density& d) {
  Rational worst = 0;
  for (const auto& [p, v] : d.values()) worst = std::max(worst, Rational(abs(v - 1)));
  return worst;
}

void print_densities(std::ostream& out, const Density& rc, const Density& re, const Density& rt) {
  out << "  " << std::left << std::setw(16) << "point" << std::setw(24) << "rho_c" << std::setw(24) << "rho_e"
      << "rho_t\n";
  for (std::size_t p = 0; p < rt.space()->size(); ++p) {
    out << "  " << std::left << std::setw(16) << rt.space()->label(p) << std::setw(24) << cell(rc.at(p))
        << std::setw(24) << cell(re.at(p)) << cell(rt.at(p)) << "\n";
  }
  out << "  max |rho - 1|: rho_c " << to_string(max_departure(rc)) << ", rho_e " << to_string(max_departure(re))
      << ", rho_t " << to_string(max_departure(rt)) << "\n";
}

Json densities_json(const Density& rc, const Density& re, const Density& rt) {
  return Json{{"rho_c", density_json(rc)},
              {"rho_e", density_json(re)},
              {"rho_t", density_json(rt)},
              {"max_departure",
               {{"rho_c", to_string(max_departure(rc))},
                {"rho_e", to_string(max_departure(re))},
                {"rho_t", to_string(max_departure(rt))}}}};
}

int cmd_apply(const Options& o, std::ostream& out) {
  const auto sys = load_system(o.system);
  const auto& a = require(sys.find_observable(o.observable), "observable", o.observable);
  const auto& mu = require(sys.find_state(o.state), "state", o.state);
  const auto result = apply(a, mu);
  if (o.json) {
    out << Json{{"observable", o.observable}, {"state", o.state}, {"measure", measure_json(result)}}.dump(2) << "\n";
  } else {
    print_measure(out, "observable " + o.observable + " at state " + o.state, result);
  }
  return kExitOk;
}

int cmd_densities(const Options& o, std::ostream& out) {
  const auto sys = load_system(o.system);
  const auto& j = require(sys.find_joint(o.joint), "joint", o.joint);
  const auto& mu = require(sys.find_state(o.state), "state", o.state);
  const auto r = classify(j, mu);
  if (o.json) {
    Json doc{{"joint", o.joint}, {"state", o.state}};
    doc.update(densities_json(r.rho_c, r.rho_e, r.rho_t));
    out << doc.dump(2) << "\n";
  } else {
    out << "densities of joint " << o.joint << " at state " << o.state << "\n";
    print_densities(out, r.rho_c, r.rho_e, r.rho_t);
  }
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto sys = load_system(o.system);
  const auto& j = require(sys.find_joint(o.joint), "joint", o.joint);
  const auto& mu = require(sys.find_state(o.state), "state", o.state);
  const auto r = classify(j, mu);
  if (o.json) {
    Json doc{{"joint", o.joint},
             {"state", o.state},
             {"classification", std::string(to_string(r.classification))},
             {"classical", r.classical},
             {"entangled", r.entangled},
             {"measures",
              {{"independent", measure_json(r.measures.independent)},
               {"product", measure_json(r.measures.product)},
               {"joint", measure_json(r.measures.joint)}}}};
    doc["densities"] = densities_json(r.rho_c, r.rho_e, r.rho_t);
    out << doc.dump(2) << "\n";
  } else {
    out << "joint " << o.joint << " at state " << o.state << ": " << to_string(r.classification) << "\n";
    out << "  classical correlation: " << (r.classical ? "yes" : "no") << "\n";
    out << "  probabilistic entanglement: " << (r.entangled ? "yes" : "no") << "\n";
    print_measure(out, "A1mu x A2mu", r.measures.independent);
    print_measure(out, "(A1 x A2)mu", r.measures.product);
    print_measure(out, "Jmu", r.measures.joint);
    print_densities(out, r.rho_c, r.rho_e, r.rho_t);
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto sys = load_system(o.system);
  const auto results = verify_system(sys);
  bool all = true;
  for (const auto& r : results) all = all && r.ok;
  if (o.json) {
    Json checks = Json::array();
    for (const auto& r : results) checks.push_back(Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
    out << Json{{"system", o.system}, {"ok", all}, {"checks", checks}}.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      out << (r.ok ? "ok    " : "FAIL  ") << r.name;
      if (!r.ok) out << ": " << r.detail;
      out << "\n";
    }
    out << results.size() << " checks, " << (all ? "all passed" : "FAILURES") << "\n";
  }
  return all ? kExitOk : kExitValidation;
}

int cmd_couplings(const Options& o, std::ostream& out) {
  const auto sys = load_system(o.system);
  const auto& a1 = require(sys.find_observable(o.left), "observable", o.left);
  const auto& a2 = require(sys.find_observable(o.right), "observable", o.right);
  if (o.at.empty()) throw UsageError("--at is required");
  const auto omega = sys.phase_space->find(o.at);
  if (!omega) throw UsageError("'" + o.at + "' is not a phase point");
  if (int(o.vertices) + int(o.comonotone) + int(o.extremal) > 1) {
    throw UsageError("choose at most one of --vertices, --comonotone, --extremal");
  }
  const auto& nu1 = a1.row(*omega);
  const auto& nu2 = a2.row(*omega);
  const SpaceRef target = FiniteSpace::product(a1.outcome_space(), a2.outcome_space());

  std::vector<Coupling> list;
  std::optional<Rational> distance;
  std::string mode = "product";
  if (o.vertices) {
    mode = "vertices";
    list = vertex_couplings(nu1, nu2, enumeration_bound(), target);
  } else if (o.comonotone) {
    mode = "comonotone";
    list.push_back(comonotone_coupling(nu1, nu2, {}, {}, target));
  } else if (o.extremal) {
    mode = "extremal";
    auto best = most_entangling_row(nu1, nu2, product_coupling(nu1, nu2, target), enumeration_bound());
    distance = best.distance;
    list.push_back(std::move(best.coupling));
  } else {
    list.push_back(product_coupling(nu1, nu2, target));
  }

  if (o.json) {
    Json arr = Json::array();
    for (const auto& c : list) arr.push_back(measure_json(c.measure()));
    Json doc{{"left", o.left}, {"right", o.right}, {"at", o.at}, {"mode", mode}, {"couplings", arr}};
    if (distance) doc["tv_distance_from_product"] = rational_json(*distance);
    out << doc.dump(2) << "\n";
  } else {
    out << mode << " couplings of " << o.left << " and " << o.right << " at " << o.at << ": " << list.size() << "\n";
    for (std::size_t k = 0; k < list.size(); ++k) {
      print_measure(out, "coupling " + std::to_string(k + 1), list[k].measure());
    }
    if (distance) out << "total variation from product: " << cell(*distance) << "\n";
  }
  return kExitOk;
}

Json empirical_json(const EmpiricalMeasure& e, const Measure& exact, const BandCheck& band) {
  Json arr = Json::array();
  for (std::size_t p = 0; p < e.counts.size(); ++p) {
    arr.push_back(Json{{"point", point_json(*e.space, p)},
                       {"count", e.counts[p]},
                       {"frequency", to_decimal(e.frequency(p))},
                       {"exact", to_string(exact.weight(p))}});
  }
  return Json{{"total", e.total}, {"cells", arr}, {"within_4_sigma", band.within}};
}

void print_empirical(std::ostream& out, const std::string& title, const EmpiricalMeasure& e, const Measure& exact,
                     const BandCheck& band) {
  out << title << " (" << e.total << " trials)\n";
  for (std::size_t p = 0; p < e.counts.size(); ++p) {
    out << "  " << std::left << std::setw(16) << e.space->label(p) << std::setw(12) << e.counts[p] << std::setw(12)
        << to_decimal(e.frequency(p)) << "exact " << cell(exact.weight(p)) << "\n";
  }
  out << "  within 4 sigma + 1/n of exact: " << (band.within ? "yes" : "no") << "\n";
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto sys = load_system(o.system);
  const auto& j = require(sys.find_joint(o.joint), "joint", o.joint);
  const auto& mu = require(sys.find_state(o.state), "state", o.state);
  if (o.alternating) {
    const auto m = measure_alternating(j.left(), j.right(), mu, o.n, o.seed);
    const auto e1 = apply(j.left(), mu);
    const auto e2 = apply(j.right(), mu);
    const auto b1 = check_binomial_band(m.first, e1);
    const auto b2 = check_binomial_band(m.second, e2);
    if (o.json) {
      out << Json{{"mode", "alternating"},
                  {"seed", o.seed},
                  {"first", empirical_json(m.first, e1, b1)},
                  {"second", empirical_json(m.second, e2, b2)}}
                 .dump(2)
          << "\n";
    } else {
      print_empirical(out, j.left().id() + " on even trials", m.first, e1, b1);
      print_empirical(out, j.right().id() + " on odd trials", m.second, e2, b2);
      out << "alternating measurement yields no pair counts\n";
    }
  } else {
    const auto m = measure_joint(j, mu, o.n, o.seed);
    const auto exact = apply(j.base(), mu);
    const auto band = check_binomial_band(m, exact);
    if (o.json) {
      out << Json{{"mode", "joint"}, {"seed", o.seed}, {"joint", empirical_json(m, exact, band)}}.dump(2) << "\n";
    } else {
      print_empirical(out, "joint " + o.joint + " at " + o.state, m, exact, band);
    }
  }
  return kExitOk;
}

int cmd_covariance(const Options& o, std::ostream& out) {
  const auto sys = load_system(o.system);
  const auto& j = require(sys.find_joint(o.joint), "joint", o.joint);
  const auto& mu = require(sys.find_state(o.state), "state", o.state);
  const auto* v1 = sys.find_values(j.left().outcome_space()->id());
  const auto* v2 = sys.find_values(j.right().outcome_space()->id());
  if (!v1 || !v2) {
    throw Error(ErrorKind::ValidationError, "outcome spaces of joint '" + o.joint + "' declare no numeric values");
  }
  const auto nu = apply(j.base(), mu);
  const auto c = covariance(nu, *v1, *v2);
  const bool independent = is_independent(nu);
  std::optional<Rational> r2;
  if (c.variance1 != 0 && c.variance2 != 0) r2 = c.coefficient_squared();
  if (o.json) {
    Json doc{{"joint", o.joint},
             {"state", o.state},
             {"covariance", rational_json(c.covariance)},
             {"variance1", rational_json(c.variance1)},
             {"variance2", rational_json(c.variance2)},
             {"independent", independent}};
    doc["coefficient_squared"] = r2 ? rational_json(*r2) : Json(nullptr);
    out << doc.dump(2) << "\n";
  } else {
    out << "joint " << o.joint << " at state " << o.state << "\n";
    out << "  covariance: " << cell(c.covariance) << "\n";
    out << "  variances: " << cell(c.variance1) << ", " << cell(c.variance2) << "\n";
    if (r2) {
      out << "  coefficient: " << to_decimal(Rational(c.coefficient())) << " (squared " << cell(*r2) << ")\n";
    } else {
      out << "  coefficient: undefined (a variance vanishes)\n";
    }
    out << "  outcome measure is a product of its marginals: " << (independent ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact correlation analysis of finite operational probability systems", "opcorr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit JSON instead of text");

  auto sys_opt = [&](CLI::App* sub) { sub->add_option("--system", o.system, "System file (JSON)")->required(); };

  auto* apply_cmd = app.add_subcommand("apply", "Outcome measure of an observable at a state");
  sys_opt(apply_cmd);
  apply_cmd->add_option("--observable", o.observable)->required();
  apply_cmd->add_option("--state", o.state)->required();

  auto* dens_cmd = app.add_subcommand("densities", "Correlation densities rho_c, rho_e, rho_t");
  sys_opt(dens_cmd);
  dens_cmd->add_option("--joint", o.joint)->required();
  dens_cmd->add_option("--state", o.state)->required();

  auto* cls_cmd = app.add_subcommand("classify", "Classical correlation vs probabilistic entanglement");
  sys_opt(cls_cmd);
  cls_cmd->add_option("--joint", o.joint)->required();
  cls_cmd->add_option("--state", o.state)->required();

  auto* ver_cmd = app.add_subcommand("verify", "Check every invariant on a system file");
  sys_opt(ver_cmd);

  auto* cpl_cmd = app.add_subcommand("couplings", "Couplings of two observables' rows at a pure state");
  sys_opt(cpl_cmd);
  cpl_cmd->add_option("--left", o.left)->required();
  cpl_cmd->add_option("--right", o.right)->required();
  cpl_cmd->add_option("--at", o.at, "Phase point")->required();
  cpl_cmd->add_flag("--vertices", o.vertices, "All extreme couplings");
  cpl_cmd->add_flag("--comonotone", o.comonotone, "Northwest-corner coupling in declared order");
  cpl_cmd->add_flag("--extremal", o.extremal, "Vertex farthest from the product in total variation");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo measurement");
  sys_opt(sim_cmd);
  sim_cmd->add_option("--joint", o.joint)->required();
  sim_cmd->add_option("--state", o.state)->required();
  sim_cmd->add_option("--n", o.n, "Number of trials")->capture_default_str();
  sim_cmd->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
  sim_cmd->add_flag("--alternating", o.alternating, "Measure the two marginals on alternate trials");

  auto* cov_cmd = app.add_subcommand("covariance", "Covariance of declared outcome values under Jmu");
  sys_opt(cov_cmd);
  cov_cmd->add_option("--joint", o.joint)->required();
  cov_cmd->add_option("--state", o.state)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (apply_cmd->parsed()) return cmd_apply(o, out);
    if (dens_cmd->parsed()) return cmd_densities(o, out);
    if (cls_cmd->parsed()) return cmd_classify(o, out);
    if (ver_cmd->parsed()) return cmd_verify(o, out);
    if (cpl_cmd->parsed()) return cmd_couplings(o, out);
    if (sim_cmd->parsed()) return cmd_simulate(o, out);
    if (cov_cmd->parsed()) return cmd_covariance(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace opcorr::cli
