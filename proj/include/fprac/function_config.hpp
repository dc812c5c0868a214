#pragma once

// User-defined arithmetic functions from a JSON document.
//
// Table form:
//   {
//     "name": "my-f",
//     "kind": "multiplicative",            // or "additive"
//     "default": "totient",                // rule for (p, k) missing from the table
//     "prime_power": [ {"p": 3, "k": 2, "value": 5}, ... ]
//   }
//
// Base form:
//   { "name": "my-phi", "base": "phi", "param": 5, "prime_power": [...] }
//
// "base" names a catalog function (param only for vp / fn). A table next to
// a base overrides its prime-power values and is only allowed when the base
// is multiplicative or additive. Values may be JSON integers or decimal
// strings (for values above 2^64).
//
// Default selectors: identity (p^k), totient (p^(k-1)(p-1)),
// unitary-totient (p^k - 1), sigma (1 + p + ... + p^k), divisor-count (k+1),
// power-of-two (2^k), exponent (k), prime (p), one (1), zero (0).

#include <fprac/functions.hpp>

#include <json.hpp>

#include <fstream>
#include <map>

namespace fprac {

struct LoadedFunction {
  FunctionSpec spec;
  std::vector<std::string> warnings;
};

namespace detail {

inline PrimePowerRule default_selector(const std::string& name) {
  if (name == "identity") return catalog::identity().prime_power;
  if (name == "totient") return catalog::phi().prime_power;
  if (name == "unitary-totient") return catalog::phi_star().prime_power;
  if (name == "sigma") return catalog::sigma().prime_power;
  if (name == "divisor-count") return catalog::tau().prime_power;
  if (name == "power-of-two") return catalog::h().prime_power;
  if (name == "exponent") return [](u64, unsigned k) { return u128{k}; };
  if (name == "prime") return [](u64 p, unsigned) { return u128{p}; };
  if (name == "one") return [](u64, unsigned) { return u128{1}; };
  if (name == "zero") return [](u64, unsigned) { return u128{0}; };
  throw std::invalid_argument("unknown default selector '" + name + "'");
}

inline u128 json_value(const nlohmann::json& v) {
  if (v.is_number_unsigned()) return v.get<u64>();
  if (v.is_number_integer()) {
    const auto i = v.get<std::int64_t>();
    if (i < 0) throw std::invalid_argument("function values must be non-negative");
    return static_cast<u64>(i);
  }
  if (v.is_string()) return parse_u128(v.get<std::string>());
  throw std::invalid_argument("function value must be an integer or decimal string");
}

}  // namespace detail

inline LoadedFunction load_function_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("function config must be a JSON object");
  if (!doc.contains("name") || !doc["name"].is_string())
    throw std::invalid_argument("function config needs a string 'name'");

  using Table = std::map<std::pair<u64, unsigned>, u128>;
  auto table = std::make_shared<Table>();
  if (doc.contains("prime_power")) {
    for (const auto& entry : doc["prime_power"]) {
      const u64 p = entry.at("p").get<u64>();
      const unsigned k = entry.at("k").get<unsigned>();
      if (!is_prime(p)) throw std::invalid_argument("prime_power entry with non-prime p=" + std::to_string(p));
      if (k == 0) throw std::invalid_argument("prime_power entries need k >= 1");
      (*table)[{p, k}] = detail::json_value(entry.at("value"));
    }
  }

  LoadedFunction out;
  FunctionSpec& spec = out.spec;
  PrimePowerRule fallback;

  if (doc.contains("base")) {
    std::optional<u64> param;
    if (doc.contains("param")) param = doc["param"].get<u64>();
    spec = catalog::by_name(doc["base"].get<std::string>(), param);
    if (!table->empty() && spec.kind == FunctionKind::direct)
      throw std::invalid_argument("prime_power overrides need a multiplicative or additive base");
    fallback = spec.prime_power;
  } else {
    if (!doc.contains("kind")) throw std::invalid_argument("function config needs 'kind' or 'base'");
    const auto kind = doc["kind"].get<std::string>();
    if (kind == "multiplicative")
      spec.kind = FunctionKind::multiplicative;
    else if (kind == "additive")
      spec.kind = FunctionKind::additive;
    else
      throw std::invalid_argument("kind must be 'multiplicative' or 'additive', got '" + kind + "'");
    if (doc.contains("default")) {
      fallback = detail::default_selector(doc["default"].get<std::string>());
    } else {
      fallback = [](u64 p, unsigned k) -> u128 {
        throw std::out_of_range("no value for p=" + std::to_string(p) + ", k=" + std::to_string(k) +
                                " and no default selector");
      };
    }
  }
  spec.name = doc["name"].get<std::string>();

  if (!table->empty()) {
    spec.prime_power = [table, fallback](u64 p, unsigned k) {
      if (auto it = table->find({p, k}); it != table->end()) return it->second;
      return fallback(p, k);
    };
  } else if (!doc.contains("base")) {
    spec.prime_power = fallback;
  }

  try {
    if (auto v = check_monotone(spec)) {
      out.warnings.push_back("f(p^(k-1)) > f(p^k) at p=" + std::to_string(v->prime) +
                             ", k=" + std::to_string(v->exponent));
    }
  } catch (const std::out_of_range& e) {
    out.warnings.push_back(std::string("monotonicity scan incomplete: ") + e.what());
  }
  return out;
}

inline LoadedFunction load_function_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open function config '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed function config '" + path + "': " + e.what());
  }
  return load_function_spec(doc);
}

}  // namespace fprac
