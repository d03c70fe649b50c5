#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lce/expr.hpp"
#include "lce/forms.hpp"

namespace lce {

// JSON with duplicate object keys rejected (the default parser keeps the
// last occurrence silently).
inline nlohmann::json parse_json_strict(const std::string& text) {
  std::vector<std::set<std::string>> keys;
  auto cb = [&](int, nlohmann::json::parse_event_t event, nlohmann::json& value) {
    using ev = nlohmann::json::parse_event_t;
    if (event == ev::object_start) {
      keys.emplace_back();
    } else if (event == ev::object_end) {
      keys.pop_back();
    } else if (event == ev::key) {
      if (!keys.back().insert(value.get<std::string>()).second)
        throw error("duplicate key '" + value.get<std::string>() + "' in JSON document");
    }
    return true;
  };
  try {
    return nlohmann::json::parse(text, cb);
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("JSON parse error: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Profile document: {"mode": "commutative"|"noncommutative", "n": {"1": 2}}.
// A missing "n" makes the profile permissive (no arity check).
inline ArityProfile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw error("profile must be a JSON object");
  std::string mode_text = j.value("mode", std::string("commutative"));
  Mode mode;
  if (mode_text == "commutative")
    mode = Mode::commutative;
  else if (mode_text == "noncommutative")
    mode = Mode::noncommutative;
  else
    throw error("profile mode must be 'commutative' or 'noncommutative'");
  if (!j.contains("n")) return ArityProfile::permissive(mode);
  std::map<int, int> counts;
  for (const auto& [k, v] : j.at("n").items()) {
    int size = 0;
    try {
      size = std::stoi(k);
    } catch (...) {
      throw error("profile n_k key must be an integer, got '" + k + "'");
    }
    if (!v.is_number_integer()) throw error("profile n_k count must be an integer");
    counts[size] = v.get<int>();
  }
  return ArityProfile(mode, std::move(counts));
}

inline ArityProfile load_profile_file(const std::string& path) {
  return profile_from_json(parse_json_strict(read_file(path)));
}

namespace detail {

inline Closure closure_from_text(const std::string& s) {
  if (s == "none") return Closure::none;
  if (s == "symmetric") return Closure::symmetric;
  if (s == "quasi-symmetric") return Closure::quasi_symmetric;
  throw error("closure must be 'none', 'symmetric' or 'quasi-symmetric'");
}

}  // namespace detail

// Form-table document:
//   {
//     "profile": {...},                   optional, default commutative/permissive
//     "kind": "table"|"pairing"|"product-rule",
//     "closure": "none"|"symmetric"|"quasi-symmetric",   optional, default "none"
//     "unital": true|false,               optional; pairing forms are always infinitesimal
//     "bound": 10,                        optional evaluation degree bound
//     "entries": { "<monomial>": "p/q", ... },
//     "pairing": [ ["<gen>", "<gen>", "p/q"], ... ]      pairing kind only
//   }
inline LinearForm form_from_json(const nlohmann::json& j, int bound_override = 0) {
  if (!j.is_object()) throw error("form file must be a JSON object");
  ArityProfile profile = j.contains("profile")
                             ? profile_from_json(j.at("profile"))
                             : ArityProfile::permissive(Mode::commutative);
  std::string kind = j.value("kind", std::string("table"));
  Closure closure = detail::closure_from_text(j.value("closure", std::string("none")));
  int bound = j.value("bound", kDefaultDegreeBound);
  if (bound_override > 0) bound = bound_override;

  std::map<Monomial, Rational> entries;
  auto add_entry = [&](const Monomial& m, const Rational& v) {
    if (!entries.emplace(m, v).second) throw error("duplicate form entry: " + to_text(m));
  };
  if (j.contains("entries")) {
    for (const auto& [key, value] : j.at("entries").items()) {
      if (!value.is_string())
        throw error("form entry values must be rationals written as strings");
      add_entry(parse_monomial(key, &profile),
                Rational::from_string(value.get<std::string>()));
    }
  }
  if (j.contains("pairing")) {
    if (kind != "pairing") throw error("'pairing' entries require the pairing kind");
    for (const auto& triple : j.at("pairing")) {
      if (!triple.is_array() || triple.size() != 3)
        throw error("pairing entries are [left, right, value] triples");
      Monomial left = parse_monomial(triple[0].get<std::string>(), &profile);
      Monomial right = parse_monomial(triple[1].get<std::string>(), &profile);
      if (left.degree() != 1 || right.degree() != 1)
        throw error("pairing sides must be single generators");
      add_entry(left * right, Rational::from_string(triple[2].get<std::string>()));
    }
  }

  if (kind == "table") {
    return LinearForm::table(profile.mode(), std::move(entries), closure,
                             j.value("unital", true), bound);
  }
  if (kind == "pairing") {
    if (j.value("unital", false)) throw error("pairing forms are infinitesimal");
    return LinearForm::pairing(profile.mode(), std::move(entries), closure, bound);
  }
  if (kind == "product-rule") {
    return LinearForm::product_rule(profile.mode(), std::move(entries), closure,
                                    j.value("unital", true), bound);
  }
  throw error("form kind must be 'table', 'pairing' or 'product-rule'");
}

inline LinearForm load_form_file(const std::string& path, int bound_override = 0) {
  return form_from_json(parse_json_strict(read_file(path)), bound_override);
}

// The profile declared inside a form file, for parsing companion expressions.
inline ArityProfile load_form_profile(const std::string& path) {
  auto j = parse_json_strict(read_file(path));
  return j.contains("profile") ? profile_from_json(j.at("profile"))
                               : ArityProfile::permissive(Mode::commutative);
}

}  // namespace lce
