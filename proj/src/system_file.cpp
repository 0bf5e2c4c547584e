#include "opcorr/system_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "opcorr/coupling.hpp"
#include "opcorr/error.hpp"

namespace opcorr {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ValidationError, where + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) invalid(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string as_label(const Json& j, const std::string& where) {
  if (!j.is_string()) invalid(where, "expected a string label, got " + j.dump());
  return j.get<std::string>();
}

Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(mpz_class(std::to_string(j.get<std::uint64_t>())))
                                  : Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  if (!j.is_string()) invalid(where, "rationals must be \"p/q\" strings or integers, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    invalid(where, e.what());
  }
}

SpaceRef parse_space(const Json& j, const std::string& where) {
  const std::string id = as_label(member(j, "id", where), where + ".id");
  const Json& pts = member(j, "points", where);
  if (!pts.is_array()) invalid(where + ".points", "expected an array");
  std::vector<std::string> labels;
  for (const auto& p : pts) labels.push_back(as_label(p, where + ".points"));
  try {
    return FiniteSpace::make(id, std::move(labels));
  } catch (const Error& e) {
    invalid(where, e.what());
  }
}

ProbabilityMeasure parse_measure(const Json& j, const SpaceRef& space, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object of point weights");
  WeightMap w;
  try {
    for (const auto& [label, weight] : j.items()) {
      const std::size_t p = space->index_of(label);
      const Rational r = as_rational(weight, where + "." + label);
      if (r < 0) throw Error(ErrorKind::NegativeWeight, "weight " + to_string(r) + " at '" + label + "'");
      w[p] += r;
    }
    return make_probability_measure(space, std::move(w));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    invalid(where, e.what());
  }
}

ProbabilityMeasure parse_pair_measure(const Json& j, const SpaceRef& space, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected an array of [[left, right], weight] entries");
  WeightMap w;
  try {
    for (const auto& entry : j) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() || entry[0].size() != 2) {
        invalid(where, "malformed entry " + entry.dump());
      }
      const std::size_t p =
          space->index_of_pair(as_label(entry[0][0], where), as_label(entry[0][1], where));
      const Rational r = as_rational(entry[1], where);
      if (r < 0) throw Error(ErrorKind::NegativeWeight, "weight " + to_string(r) + " at " + entry[0].dump());
      w[p] += r;
    }
    return make_probability_measure(space, std::move(w));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    invalid(where, e.what());
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

template <class T>
const T* find_named(const std::vector<std::pair<std::string, T>>& items, std::string_view name) {
  for (const auto& [n, v] : items) {
    if (n == name) return &v;
  }
  return nullptr;
}

}  // namespace

const SpaceRef* SystemFile::find_outcome_space(std::string_view id) const {
  for (const auto& s : outcome_spaces) {
    if (s->id() == id) return &s;
  }
  return nullptr;
}

const std::vector<Rational>* SystemFile::find_values(std::string_view space_id) const {
  return find_named(values, space_id);
}
const ProbabilityMeasure* SystemFile::find_state(std::string_view name) const { return find_named(states, name); }
const Observable* SystemFile::find_observable(std::string_view name) const { return find_named(observables, name); }
const JointObservable* SystemFile::find_joint(std::string_view name) const { return find_named(joints, name); }

SystemFile parse_system(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character.
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                           e.what());
  }

  SystemFile sys;
  sys.phase_space = parse_space(member(doc, "phase_space", "system"), "phase_space");

  const Json& outs = member(doc, "outcome_spaces", "system");
  if (!outs.is_array()) invalid("outcome_spaces", "expected an array");
  for (std::size_t k = 0; k < outs.size(); ++k) {
    const std::string where = "outcome_spaces[" + std::to_string(k) + "]";
    SpaceRef space = parse_space(outs[k], where);
    if (sys.find_outcome_space(space->id()) || space->id() == sys.phase_space->id()) {
      invalid(where, "duplicate space id '" + space->id() + "'");
    }
    if (auto it = outs[k].find("values"); it != outs[k].end()) {
      if (!it->is_object()) invalid(where + ".values", "expected an object");
      std::vector<Rational> vals(space->size());
      std::vector<bool> seen(space->size(), false);
      for (const auto& [label, v] : it->items()) {
        auto p = space->find(label);
        if (!p) invalid(where + ".values", "'" + label + "' is not a point of '" + space->id() + "'");
        vals[*p] = as_rational(v, where + ".values." + label);
        seen[*p] = true;
      }
      for (std::size_t p = 0; p < seen.size(); ++p) {
        if (!seen[p]) invalid(where + ".values", "no value for point '" + space->label(p) + "'");
      }
      sys.values.emplace_back(space->id(), std::move(vals));
    }
    sys.outcome_spaces.push_back(std::move(space));
  }

  if (auto it = doc.find("states"); it != doc.end()) {
    if (!it->is_object()) invalid("states", "expected an object");
    for (const auto& [name, m] : it->items()) {
      sys.states.emplace_back(name, parse_measure(m, sys.phase_space, "state '" + name + "'"));
    }
  }

  if (auto it = doc.find("observables"); it != doc.end()) {
    if (!it->is_object()) invalid("observables", "expected an object");
    for (const auto& [name, o] : it->items()) {
      const std::string where = "observable '" + name + "'";
      const std::string sid = as_label(member(o, "outcome_space", where), where + ".outcome_space");
      const SpaceRef* space = sys.find_outcome_space(sid);
      if (!space) invalid(where, "unknown outcome space '" + sid + "'");
      const Json& kernel = member(o, "kernel", where);
      if (!kernel.is_object()) invalid(where + ".kernel", "expected an object keyed by phase point");
      std::vector<std::optional<ProbabilityMeasure>> rows(sys.phase_space->size());
      for (const auto& [omega, row] : kernel.items()) {
        auto w = sys.phase_space->find(omega);
        if (!w) invalid(where, "'" + omega + "' is not a phase point");
        rows[*w] = parse_measure(row, *space, where + " row '" + omega + "'");
      }
      std::vector<ProbabilityMeasure> dense;
      for (std::size_t w = 0; w < rows.size(); ++w) {
        if (!rows[w]) invalid(where, "no kernel row for phase point '" + sys.phase_space->label(w) + "'");
        dense.push_back(std::move(*rows[w]));
      }
      sys.observables.emplace_back(name, Observable(name, sys.phase_space, *space, std::move(dense)));
    }
  }

  if (auto it = doc.find("joints"); it != doc.end()) {
    if (!it->is_object()) invalid("joints", "expected an object");
    for (const auto& [name, jdoc] : it->items()) {
      const std::string where = "joint '" + name + "'";
      const std::string left = as_label(member(jdoc, "left", where), where + ".left");
      const std::string right = as_label(member(jdoc, "right", where), where + ".right");
      const Observable* a1 = sys.find_observable(left);
      const Observable* a2 = sys.find_observable(right);
      if (!a1) invalid(where, "unknown left observable '" + left + "'");
      if (!a2) invalid(where, "unknown right observable '" + right + "'");
      const SpaceRef outcome = FiniteSpace::product(a1->outcome_space(), a2->outcome_space());
      std::vector<ProbabilityMeasure> rows;
      if (auto c = jdoc.find("construction"); c != jdoc.end()) {
        const std::string kind = as_label(*c, where + ".construction");
        for (std::size_t w = 0; w < sys.phase_space->size(); ++w) {
          if (kind == "product") {
            rows.push_back(product_coupling(a1->row(w), a2->row(w), outcome).measure());
          } else if (kind == "comonotone") {
            rows.push_back(comonotone_coupling(a1->row(w), a2->row(w), {}, {}, outcome).measure());
          } else {
            invalid(where, "unknown construction '" + kind + "' (expected product or comonotone)");
          }
        }
      } else {
        const Json& rdoc = member(jdoc, "rows", where);
        if (!rdoc.is_object()) invalid(where + ".rows", "expected an object keyed by phase point");
        std::vector<std::optional<ProbabilityMeasure>> sparse(sys.phase_space->size());
        for (const auto& [omega, row] : rdoc.items()) {
          auto w = sys.phase_space->find(omega);
          if (!w) invalid(where, "'" + omega + "' is not a phase point");
          sparse[*w] = parse_pair_measure(row, outcome, where + " row '" + omega + "'");
        }
        for (std::size_t w = 0; w < sparse.size(); ++w) {
          if (!sparse[w]) invalid(where, "no row for phase point '" + sys.phase_space->label(w) + "'");
          rows.push_back(std::move(*sparse[w]));
        }
      }
      try {
        sys.joints.emplace_back(name, make_joint(*a1, *a2, std::move(rows), name));
      } catch (const Error& e) {
        invalid(where, e.what());
      }
    }
  }
  return sys;
}

SystemFile load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

}  // namespace opcorr
