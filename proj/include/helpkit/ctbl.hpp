// SPDX-License-Identifier: Apache-2.0
//
// Character table data model, JSON fixture parser, validation, element-order
// spectrum and the Gruenberg-Kegel prime graph.

#ifndef HELPKIT_CTBL_HPP
#define HELPKIT_CTBL_HPP

#include "helpkit/arith.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace helpkit::ctbl {

using arith::BigInt;
using arith::Cyclotomic;
using arith::Rational;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a table lookup (class name, power map, character id) fails.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct ClassInfo {
  std::string name;            // "2a"
  std::int64_t element_order;  // 2
  BigInt size;                 // class cardinality
};

struct Character {
  std::string id;  // "chi2"
  std::int64_t degree = 0;
  std::vector<Cyclotomic> values;  // one per class of the owning table
};

struct CharacterTable {
  std::string group_name;
  BigInt group_order;
  std::int64_t exponent = 1;
  std::vector<ClassInfo> classes;
  /// p -> image class index for each class, one entry per prime dividing the exponent.
  std::map<std::int64_t, std::vector<std::size_t>> power_maps;
  std::vector<Character> characters;

  std::size_t class_count() const { return classes.size(); }

  std::optional<std::size_t> find_class(const std::string& name) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t class_index(const std::string& name) const {
    if (auto i = find_class(name)) {
      return *i;
    }
    throw LookupError("unknown class '" + name + "' in table " + group_name);
  }

  const Character& character(const std::string& id) const {
    for (const auto& c : characters) {
      if (c.id == id) {
        return c;
      }
    }
    throw LookupError("unknown character '" + id + "' in table " + group_name);
  }
};

/// p-modular Brauer characters, defined on the p-regular classes.
struct BrauerTable {
  std::int64_t p = 0;
  /// Indices (into the ordinary table) of the p-regular classes, ascending.
  std::vector<std::size_t> regular_classes;
  /// Values aligned with regular_classes.
  std::vector<Character> characters;

  const Character& character(const std::string& id) const {
    for (const auto& c : characters) {
      if (c.id == id) {
        return c;
      }
    }
    throw LookupError("unknown " + std::to_string(p) + "-modular character '" + id + "'");
  }
};

struct TableBundle {
  CharacterTable table;
  std::vector<BrauerTable> brauer;

  const BrauerTable* brauer_table(std::int64_t p) const {
    for (const auto& b : brauer) {
      if (b.p == p) {
        return &b;
      }
    }
    return nullptr;
  }
};

struct PrimeGraph {
  std::set<std::int64_t> vertices;
  std::set<std::pair<std::int64_t, std::int64_t>> edges;  // (p, q), p < q

  bool has_edge(std::int64_t p, std::int64_t q) const {
    return edges.count(std::minmax(p, q)) > 0;
  }
  friend bool operator==(const PrimeGraph&, const PrimeGraph&) = default;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

using nlohmann::json;

inline BigInt parse_bigint(const json& v, const std::string& what) {
  if (v.is_number_integer()) {
    return BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos ||
        s.find('-', 1) != std::string::npos) {
      throw ParseError(what + ": not an integer: \"" + s + "\"");
    }
    return BigInt(s);
  }
  throw ParseError(what + ": expected integer or decimal string");
}

inline Rational parse_rational(const json& v, const std::string& what) {
  if (v.is_number_integer()) {
    return Rational(v.get<std::int64_t>());
  }
  if (!v.is_string()) {
    throw ParseError(what + ": expected integer or \"a/b\" string");
  }
  const auto s = v.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_bigint(json(s), what));
  }
  const BigInt num = parse_bigint(json(s.substr(0, slash)), what);
  const BigInt den = parse_bigint(json(s.substr(slash + 1)), what);
  if (den <= 0) {
    throw ParseError(what + ": denominator must be positive");
  }
  return Rational(num, den);
}

inline Cyclotomic parse_cyc(const json& v, const std::string& what) {
  if (v.is_object()) {
    if (!v.contains("n") || !v.contains("c") || !v["n"].is_number_integer() ||
        !v["c"].is_object()) {
      throw ParseError(what + ": cyclotomic value needs integer \"n\" and object \"c\"");
    }
    const auto n = v["n"].get<std::int64_t>();
    if (n < 1) {
      throw ParseError(what + ": conductor must be positive");
    }
    Cyclotomic::Coeffs coeffs;
    for (const auto& [key, coeff] : v["c"].items()) {
      std::int64_t j = 0;
      try {
        std::size_t used = 0;
        j = std::stoll(key, &used);
        if (used != key.size()) {
          throw std::invalid_argument(key);
        }
      } catch (const std::exception&) {
        throw ParseError(what + ": bad exponent key \"" + key + "\"");
      }
      coeffs[arith::mod(j, n)] += parse_rational(coeff, what);
    }
    return arith::reduce_conductor(Cyclotomic(n, coeffs));
  }
  return Cyclotomic(parse_rational(v, what));
}

inline std::string normalize_class_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name;
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing \"" + key + "\"");
  }
  return obj[key];
}

inline std::vector<Character> parse_characters(const json& arr, std::size_t width,
                                               const std::vector<std::int64_t>& orders,
                                               const std::string& where) {
  if (!arr.is_array()) {
    throw ParseError(where + ": \"characters\" must be an array");
  }
  std::vector<Character> out;
  std::set<std::string> seen;
  for (const auto& entry : arr) {
    Character ch;
    ch.id = require(entry, "id", where).get<std::string>();
    if (!seen.insert(ch.id).second) {
      throw ParseError(where + ": duplicate character id " + ch.id);
    }
    const auto& vals = require(entry, "values", where + "/" + ch.id);
    if (!vals.is_array() || vals.size() != width) {
      throw ParseError(where + "/" + ch.id + ": expected " + std::to_string(width) + " values");
    }
    for (std::size_t i = 0; i < width; ++i) {
      const std::string what = where + "/" + ch.id + "[" + std::to_string(i) + "]";
      Cyclotomic value = parse_cyc(vals[i], what);
      if (orders[i] % value.conductor() != 0) {
        throw ParseError(what + ": value has conductor " + std::to_string(value.conductor()) +
                         " which does not divide the element order " +
                         std::to_string(orders[i]));
      }
      ch.values.push_back(std::move(value));
    }
    const auto deg = ch.values.empty() ? std::optional<Rational>() : ch.values[0].to_rational();
    if (!deg || denominator(*deg) != 1 || *deg <= 0) {
      throw ParseError(where + "/" + ch.id + ": degree must be a positive integer");
    }
    ch.degree = static_cast<std::int64_t>(numerator(*deg));
    out.push_back(std::move(ch));
  }
  return out;
}

}  // namespace detail

/// Parse a fixture document. Cyclotomic values are stored canonical with
/// minimal conductor.
inline TableBundle parse_table(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    TableBundle out;
    CharacterTable& t = out.table;
    const auto& group = detail::require(doc, "group", "document");
    t.group_name = detail::require(group, "name", "group").get<std::string>();
    t.group_order = detail::parse_bigint(detail::require(group, "order", "group"), "group.order");
    const BigInt exponent =
        detail::parse_bigint(detail::require(group, "exponent", "group"), "group.exponent");
    if (t.group_order < 1 || exponent < 1 || t.group_order % exponent != 0) {
      throw ParseError("group: exponent must be positive and divide the order");
    }
    t.exponent = static_cast<std::int64_t>(exponent);

    const auto& classes = detail::require(doc, "classes", "document");
    if (!classes.is_array() || classes.empty()) {
      throw ParseError("classes: expected a non-empty array");
    }
    std::set<std::string> names;
    BigInt total = 0;
    std::vector<std::int64_t> orders;
    for (const auto& c : classes) {
      ClassInfo info;
      info.name = detail::normalize_class_name(detail::require(c, "name", "class").get<std::string>());
      info.element_order = detail::require(c, "order", "class " + info.name).get<std::int64_t>();
      info.size = detail::parse_bigint(detail::require(c, "size", "class " + info.name),
                                       "class " + info.name + " size");
      if (!names.insert(info.name).second) {
        throw ParseError("classes: duplicate class name " + info.name);
      }
      if (info.element_order < 1 || t.exponent % info.element_order != 0) {
        throw ParseError("class " + info.name + ": element order must divide the exponent");
      }
      if (info.size < 1) {
        throw ParseError("class " + info.name + ": size must be positive");
      }
      const auto digits = info.name.find_first_not_of("0123456789");
      if (digits == 0 || digits == std::string::npos ||
          info.name.substr(0, digits) != std::to_string(info.element_order) ||
          info.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz", digits) != std::string::npos) {
        throw ParseError("class " + info.name + ": name must be the element order followed by letters");
      }
      total += info.size;
      orders.push_back(info.element_order);
      t.classes.push_back(std::move(info));
    }
    if (t.classes[0].element_order != 1 || t.classes[0].size != 1) {
      throw ParseError("classes: the first class must be the identity (order 1, size 1)");
    }
    if (total != t.group_order) {
      throw ParseError("classes: sizes sum to " + total.str() + " but the group order is " +
                       t.group_order.str());
    }

    const auto& pmaps = detail::require(doc, "powerMaps", "document");
    if (!pmaps.is_object()) {
      throw ParseError("powerMaps: expected an object");
    }
    for (const auto& [key, arr] : pmaps.items()) {
      std::int64_t p = 0;
      try {
        p = std::stoll(key);
      } catch (const std::exception&) {
        throw ParseError("powerMaps: bad prime key \"" + key + "\"");
      }
      if (!arith::is_prime(p)) {
        throw ParseError("powerMaps: key " + key + " is not prime");
      }
      if (!arr.is_array() || arr.size() != t.classes.size()) {
        throw ParseError("powerMaps[" + key + "]: expected one entry per class");
      }
      std::vector<std::size_t> map;
      for (const auto& v : arr) {
        const auto idx = v.get<std::int64_t>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= t.classes.size()) {
          throw ParseError("powerMaps[" + key + "]: class index out of range");
        }
        map.push_back(static_cast<std::size_t>(idx));
      }
      t.power_maps.emplace(p, std::move(map));
    }
    for (const auto p : arith::prime_divisors(t.exponent)) {
      if (!t.power_maps.count(p)) {
        throw ParseError("powerMaps: missing power map for prime " + std::to_string(p));
      }
    }

    t.characters = detail::parse_characters(detail::require(doc, "characters", "document"),
                                            t.classes.size(), orders, "characters");

    if (doc.contains("brauer")) {
      for (const auto& b : doc["brauer"]) {
        BrauerTable bt;
        bt.p = detail::require(b, "p", "brauer").get<std::int64_t>();
        const std::string where = "brauer[" + std::to_string(bt.p) + "]";
        if (!arith::is_prime(bt.p) || t.group_order % bt.p != 0) {
          throw ParseError(where + ": p must be a prime dividing the group order");
        }
        for (std::size_t i = 0; i < t.classes.size(); ++i) {
          if (orders[i] % bt.p != 0) {
            bt.regular_classes.push_back(i);
          }
        }
        if (b.contains("classes")) {
          std::vector<std::size_t> listed;
          for (const auto& name : b["classes"]) {
            const auto n = detail::normalize_class_name(name.get<std::string>());
            auto idx = t.find_class(n);
            if (!idx) {
              throw ParseError(where + ": unknown class name " + n);
            }
            listed.push_back(*idx);
          }
          if (listed != bt.regular_classes) {
            throw ParseError(where + ": listed classes are not the p-regular classes in table order");
          }
        }
        std::vector<std::int64_t> reg_orders;
        for (auto i : bt.regular_classes) {
          reg_orders.push_back(orders[i]);
        }
        bt.characters = detail::parse_characters(detail::require(b, "characters", where),
                                                 bt.regular_classes.size(), reg_orders, where);
        out.brauer.push_back(std::move(bt));
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed table document: ") + e.what());
  }
}

inline TableBundle load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str());
}

// ---------------------------------------------------------------------------
// Queries

/// Class of g^d for g in class `cls`, by composing prime power maps.
inline std::size_t power_class(const CharacterTable& t, std::size_t cls, std::int64_t d) {
  if (d < 1) {
    throw std::invalid_argument("power_class: exponent must be positive");
  }
  std::size_t cur = cls;
  for (auto [p, e] : arith::factorize(d)) {
    auto it = t.power_maps.find(p);
    if (it == t.power_maps.end()) {
      throw LookupError("missing power map for prime " + std::to_string(p));
    }
    for (int i = 0; i < e; ++i) {
      cur = it->second.at(cur);
    }
  }
  return cur;
}

/// Element orders occurring in the group.
inline std::set<std::int64_t> spectrum(const CharacterTable& t) {
  std::set<std::int64_t> out;
  for (const auto& c : t.classes) {
    out.insert(c.element_order);
  }
  return out;
}

inline PrimeGraph prime_graph(const CharacterTable& t) {
  PrimeGraph g;
  for (auto [p, e] : arith::factorize(static_cast<std::int64_t>(t.exponent))) {
    g.vertices.insert(p);
  }
  for (auto p : g.vertices) {
    for (auto q : g.vertices) {
      if (p >= q) {
        continue;
      }
      for (const auto& c : t.classes) {
        if (c.element_order % (p * q) == 0) {
          g.edges.emplace(p, q);
          break;
        }
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Orthogonality relations, power-map order consistency and squareness.
inline ValidationReport validate(const CharacterTable& t) {
  ValidationReport r;
  const std::size_t nc = t.classes.size();
  if (t.characters.size() != nc) {
    r.failures.push_back("table is not square: " + std::to_string(t.characters.size()) +
                         " characters for " + std::to_string(nc) + " classes");
  }
  for (const auto& ch : t.characters) {
    if (ch.values.size() != nc) {
      r.failures.push_back(ch.id + ": wrong number of values");
    }
  }
  if (!r.passed()) {
    return r;
  }

  // Conjugates are reused by both relations.
  std::vector<std::vector<Cyclotomic>> conjugate(t.characters.size());
  for (std::size_t i = 0; i < t.characters.size(); ++i) {
    for (const auto& v : t.characters[i].values) {
      conjugate[i].push_back(arith::conj(v));
    }
  }

  for (std::size_t i = 0; i < t.characters.size(); ++i) {
    for (std::size_t j = i; j < t.characters.size(); ++j) {
      Cyclotomic sum;
      for (std::size_t c = 0; c < nc; ++c) {
        sum += t.characters[i].values[c] * conjugate[j][c] * Rational(t.classes[c].size);
      }
      const Rational expected = (i == j) ? Rational(t.group_order) : Rational(0);
      if (!(sum == expected)) {
        r.failures.push_back("first orthogonality fails for (" + t.characters[i].id + ", " +
                             t.characters[j].id + "): got " + arith::to_string(sum) +
                             ", expected " + expected.str());
      }
    }
  }

  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t d = c; d < nc; ++d) {
      Cyclotomic sum;
      for (std::size_t i = 0; i < t.characters.size(); ++i) {
        sum += t.characters[i].values[c] * conjugate[i][d];
      }
      const Rational expected =
          (c == d) ? Rational(t.group_order) / Rational(t.classes[c].size) : Rational(0);
      if (!(sum == expected)) {
        r.failures.push_back("second orthogonality fails for classes (" + t.classes[c].name +
                             ", " + t.classes[d].name + ")");
      }
    }
  }

  for (const auto& [p, map] : t.power_maps) {
    for (std::size_t c = 0; c < nc; ++c) {
      const auto m = t.classes[c].element_order;
      const auto want = m / std::gcd(m, p);
      if (t.classes[map[c]].element_order != want) {
        r.failures.push_back("power map " + std::to_string(p) + " sends " + t.classes[c].name +
                             " to " + t.classes[map[c]].name + " (expected element order " +
                             std::to_string(want) + ")");
      }
    }
  }
  return r;
}

/// Structural checks of a Brauer table against its ordinary table.
inline ValidationReport validate_brauer(const CharacterTable& t, const BrauerTable& b) {
  ValidationReport r;
  const std::string tag = std::to_string(b.p) + "-modular table";
  std::vector<std::size_t> expected;
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    if (t.classes[i].element_order % b.p != 0) {
      expected.push_back(i);
    }
  }
  if (expected != b.regular_classes) {
    r.failures.push_back(tag + ": regular classes do not match the ordinary table");
    return r;
  }
  for (const auto& ch : b.characters) {
    if (ch.values.size() != expected.size()) {
      r.failures.push_back(tag + "/" + ch.id + ": wrong number of values");
      continue;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (t.classes[expected[i]].element_order % ch.values[i].conductor() != 0) {
        r.failures.push_back(tag + "/" + ch.id + ": value on " + t.classes[expected[i]].name +
                             " has a conductor not dividing its element order");
      }
    }
    if (!(ch.values[0] == Rational(ch.degree)) || ch.degree <= 0) {
      r.failures.push_back(tag + "/" + ch.id + ": degree mismatch");
    }
  }
  return r;
}

inline ValidationReport validate(const TableBundle& bundle) {
  ValidationReport r = validate(bundle.table);
  for (const auto& b : bundle.brauer) {
    auto rb = validate_brauer(bundle.table, b);
    r.failures.insert(r.failures.end(), rb.failures.begin(), rb.failures.end());
  }
  return r;
}

}  // namespace helpkit::ctbl

#endif  // HELPKIT_CTBL_HPP
