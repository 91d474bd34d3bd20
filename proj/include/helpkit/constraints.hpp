// SPDX-License-Identifier: Apache-2.0
//
// Eigenvalue-multiplicity constraints on partial augmentations.
//
// For a unit u of order k, a character chi (ordinary, or p-modular with
// p not dividing k) and a residue l, the multiplicity
//
//   mu_l(u, chi, p) = (1/k) sum_{d | k} Tr_{Q(z^d)/Q}(chi(u^d) z^{-dl}),  z = zeta_k
//
// is a non-negative integer bounded by chi(1). Only the d = 1 term depends on
// the unknowns nu_C of u itself; the remaining terms come from the power
// profile. Forms are stored scaled by k so that everything is integral.

#ifndef HELPKIT_CONSTRAINTS_HPP
#define HELPKIT_CONSTRAINTS_HPP

#include "helpkit/arith.hpp"
#include "helpkit/ctbl.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace helpkit::constraints {

using arith::Cyclotomic;
using arith::Rational;
using ctbl::CharacterTable;
using ctbl::TableBundle;

class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A character of the ordinary table (prime 0, printed "*") or of the
/// p-modular table.
struct CharacterRef {
  std::string id;
  std::int64_t prime = 0;

  std::string prime_tag() const { return prime == 0 ? "*" : std::to_string(prime); }
  std::string str() const { return id + "@" + prime_tag(); }

  /// "chi2", "chi2@*" or "chi5@11".
  static CharacterRef parse(const std::string& text) {
    CharacterRef r;
    const auto at = text.find('@');
    r.id = text.substr(0, at);
    if (r.id.empty()) {
      throw ConstraintError("empty character id in \"" + text + "\"");
    }
    if (at == std::string::npos) {
      return r;
    }
    const std::string tag = text.substr(at + 1);
    if (tag == "*" || tag == "0") {
      return r;
    }
    try {
      std::size_t used = 0;
      r.prime = std::stoll(tag, &used);
      if (used != tag.size() || !arith::is_prime(r.prime)) {
        throw std::invalid_argument(tag);
      }
    } catch (const std::exception&) {
      throw ConstraintError("bad prime tag in character reference \"" + text + "\"");
    }
    return r;
  }

  friend bool operator==(const CharacterRef&, const CharacterRef&) = default;
};

/// Orders references by (numeric suffix of id, id, prime).
inline bool ref_less(const CharacterRef& a, const CharacterRef& b) {
  auto key = [](const CharacterRef& r) {
    const auto pos = r.id.find_first_of("0123456789");
    std::int64_t num = std::numeric_limits<std::int64_t>::max();
    if (pos != std::string::npos) {
      try {
        num = std::stoll(r.id.substr(pos));
      } catch (const std::exception&) {
      }
    }
    return std::make_tuple(num, r.id, r.prime);
  };
  return key(a) < key(b);
}

/// Values of one character over the classes of the ordinary table;
/// empty on p-singular classes.
struct ClassFunction {
  CharacterRef ref;
  std::int64_t degree = 0;
  std::vector<std::optional<Cyclotomic>> values;
};

inline ClassFunction resolve(const TableBundle& bundle, const CharacterRef& ref) {
  const CharacterTable& t = bundle.table;
  ClassFunction f;
  f.ref = ref;
  f.values.resize(t.class_count());
  if (ref.prime == 0) {
    const auto& ch = t.character(ref.id);
    f.degree = ch.degree;
    for (std::size_t i = 0; i < ch.values.size(); ++i) {
      f.values[i] = ch.values[i];
    }
    return f;
  }
  const auto* b = bundle.brauer_table(ref.prime);
  if (!b) {
    throw ConstraintError("no " + std::to_string(ref.prime) + "-modular table for " + t.group_name);
  }
  const auto& ch = b->character(ref.id);
  f.degree = ch.degree;
  for (std::size_t i = 0; i < b->regular_classes.size(); ++i) {
    f.values[b->regular_classes[i]] = ch.values[i];
  }
  return f;
}

/// Allowed support for a unit of order k.
struct VariableSpace {
  std::int64_t order = 0;
  std::vector<std::size_t> classes;  // indices into the ordinary table
  std::vector<std::string> names;

  std::size_t size() const { return classes.size(); }

  std::optional<std::size_t> position(std::size_t class_index) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i] == class_index) {
        return i;
      }
    }
    return std::nullopt;
  }
};

/// Non-identity classes whose element order divides k, sorted by element
/// order then name.
inline VariableSpace allowed_classes(const CharacterTable& t, std::int64_t k) {
  if (k < 2) {
    throw ConstraintError("allowed_classes: order must be at least 2");
  }
  VariableSpace s;
  s.order = k;
  for (std::size_t i = 0; i < t.class_count(); ++i) {
    const auto m = t.classes[i].element_order;
    if (m > 1 && k % m == 0) {
      s.classes.push_back(i);
    }
  }
  std::sort(s.classes.begin(), s.classes.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(t.classes[a].element_order, t.classes[a].name) <
           std::make_pair(t.classes[b].element_order, t.classes[b].name);
  });
  for (auto i : s.classes) {
    s.names.push_back(t.classes[i].name);
  }
  return s;
}

/// Class index -> partial augmentation; zero entries are never stored.
using AugmentationMap = std::map<std::size_t, std::int64_t>;

inline AugmentationMap clean(AugmentationMap m) {
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return m;
}

inline std::string render(const CharacterTable& t, const AugmentationMap& aug) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [c, v] : aug) {
    os << (first ? "" : ", ") << t.classes[c].name << ": " << v;
    first = false;
  }
  os << '}';
  return os.str();
}

/// Partial augmentations of u^d for every divisor d > 1 of k; d = k maps to
/// the identity class.
struct PowerProfile {
  std::int64_t order = 0;
  std::map<std::int64_t, AugmentationMap> powers;

  const AugmentationMap& at(std::int64_t d) const {
    auto it = powers.find(d);
    if (it == powers.end()) {
      throw ConstraintError("power profile for order " + std::to_string(order) +
                            " lacks the entry for u^" + std::to_string(d));
    }
    return it->second;
  }
};

/// Profile of the group element in class `cls` (element order k).
inline PowerProfile trivial_profile(const CharacterTable& t, std::size_t cls) {
  PowerProfile p;
  p.order = t.classes[cls].element_order;
  for (auto d : arith::divisors(p.order)) {
    if (d > 1) {
      p.powers[d] = {{ctbl::power_class(t, cls, d), 1}};
    }
  }
  return p;
}

/// Checks support and sum of every entry of a profile.
inline void check_profile(const CharacterTable& t, const PowerProfile& profile) {
  for (auto d : arith::divisors(profile.order)) {
    if (d == 1) {
      continue;
    }
    const auto& aug = profile.at(d);
    std::int64_t sum = 0;
    for (const auto& [c, v] : aug) {
      if ((profile.order / d) % t.classes.at(c).element_order != 0) {
        throw ConstraintError("profile entry u^" + std::to_string(d) + " uses class " +
                              t.classes[c].name + " of order not dividing " +
                              std::to_string(profile.order / d));
      }
      sum += v;
    }
    if (sum != 1) {
      throw ConstraintError("profile entry u^" + std::to_string(d) + " does not sum to 1");
    }
  }
}

/// Integral affine form sum coeffs[i] * nu_i + constant over a VariableSpace.
struct LinearForm {
  std::vector<std::int64_t> coeffs;
  std::int64_t constant = 0;

  std::int64_t operator()(const std::vector<std::int64_t>& nu) const {
    std::int64_t r = constant;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      r += coeffs[i] * nu[i];
    }
    return r;
  }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

struct MuLabel {
  CharacterRef character;
  std::int64_t l = 0;
  friend bool operator==(const MuLabel&, const MuLabel&) = default;
};

/// 0 <= form <= upper and form = 0 (mod k), with form = k * mu_l.
struct MuConstraint {
  MuLabel label;
  LinearForm form;
  std::int64_t upper = 0;
};

struct ConstraintSystem {
  VariableSpace space;
  std::int64_t modulus = 0;  // k; the sum of all nu is 1
  std::vector<MuConstraint> mu;

  bool satisfied_by(const std::vector<std::int64_t>& nu) const {
    std::int64_t sum = 0;
    for (auto v : nu) {
      sum += v;
    }
    if (nu.size() != space.size() || sum != 1) {
      return false;
    }
    for (const auto& c : mu) {
      const auto v = c.form(nu);
      if (v < 0 || v > c.upper || v % modulus != 0) {
        return false;
      }
    }
    return true;
  }
};

namespace detail {

inline std::int64_t to_int64(const Rational& r, const std::string& what) {
  if (denominator(r) != 1) {
    throw ConstraintError(what + " is not integral: " + r.str());
  }
  const auto& n = numerator(r);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    throw ConstraintError(what + " overflows 64 bits");
  }
  return static_cast<std::int64_t>(n);
}

// Integer coefficients of a character value over Q(zeta_field), exponents
// rescaled to the field conductor.
inline std::vector<std::pair<std::int64_t, std::int64_t>> lift(const Cyclotomic& v,
                                                               std::int64_t field,
                                                               const std::string& what) {
  if (field % v.conductor() != 0) {
    throw ConstraintError(what + ": value " + arith::to_string(v) + " is not in Q(zeta_" +
                          std::to_string(field) + ")");
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [j, c] : v.coeffs()) {
    out.emplace_back(j * (field / v.conductor()), to_int64(c, what + " coefficient"));
  }
  return out;
}

}  // namespace detail

/// Computes k * mu_l for all residues l at once, sharing trace tables.
class MuBuilder {
 public:
  MuBuilder(const CharacterTable& table, const VariableSpace& space, const PowerProfile& profile)
      : table_(table), space_(space), profile_(profile) {
    if (profile.order != space.order) {
      throw ConstraintError("profile order does not match the variable space");
    }
    for (auto d : arith::divisors(space.order)) {
      traces_.emplace(space.order / d, arith::TraceTable(space.order / d));
    }
  }

  /// Forms for l = 0..k-1.
  std::vector<LinearForm> forms(const ClassFunction& chi) const {
    const std::int64_t k = space_.order;
    if (chi.ref.prime != 0 && k % chi.ref.prime == 0) {
      throw ConstraintError(chi.ref.str() + " is not usable for order " + std::to_string(k) +
                            ": the prime divides the order");
    }
    std::vector<LinearForm> out(static_cast<std::size_t>(k));
    for (auto& f : out) {
      f.coeffs.assign(space_.size(), 0);
    }
    const auto& tk = traces_.at(k);
    for (std::size_t i = 0; i < space_.size(); ++i) {
      const auto terms = detail::lift(value(chi, space_.classes[i]), k, label(chi, space_.classes[i]));
      for (std::int64_t l = 0; l < k; ++l) {
        std::int64_t s = 0;
        for (auto [j, c] : terms) {
          s += c * tk(j - l);
        }
        out[static_cast<std::size_t>(l)].coeffs[i] = s;
      }
    }
    for (auto d : arith::divisors(k)) {
      if (d == 1) {
        continue;
      }
      const std::int64_t m = k / d;
      const auto& tm = traces_.at(m);
      for (const auto& [cls, nu] : profile_.at(d)) {
        const auto terms = detail::lift(value(chi, cls), m, label(chi, cls));
        for (std::int64_t l = 0; l < k; ++l) {
          std::int64_t s = 0;
          for (auto [j, c] : terms) {
            s += c * tm(j - l);
          }
          out[static_cast<std::size_t>(l)].constant += nu * s;
        }
      }
    }
    return out;
  }

 private:
  const Cyclotomic& value(const ClassFunction& chi, std::size_t cls) const {
    const auto& v = chi.values.at(cls);
    if (!v) {
      throw ConstraintError(chi.ref.str() + " is undefined on class " + table_.classes[cls].name);
    }
    return *v;
  }

  std::string label(const ClassFunction& chi, std::size_t cls) const {
    return chi.ref.str() + " on " + table_.classes[cls].name;
  }

  const CharacterTable& table_;
  const VariableSpace& space_;
  const PowerProfile& profile_;
  std::map<std::int64_t, arith::TraceTable> traces_;
};

/// k * mu_l(u, chi, p) as an affine form in the nu of `space`.
inline LinearForm mu_form(const TableBundle& bundle, const CharacterRef& chi, std::int64_t l,
                          const VariableSpace& space, const PowerProfile& profile) {
  MuBuilder builder(bundle.table, space, profile);
  auto all = builder.forms(resolve(bundle, chi));
  return all[static_cast<std::size_t>(arith::mod(l, space.order))];
}

/// All ordinary characters plus every Brauer table whose prime does not divide k.
inline std::vector<CharacterRef> full_selection(const TableBundle& bundle, std::int64_t k) {
  std::vector<CharacterRef> out;
  for (const auto& ch : bundle.table.characters) {
    out.push_back({ch.id, 0});
  }
  for (const auto& b : bundle.brauer) {
    if (k % b.p == 0) {
      continue;
    }
    for (const auto& ch : b.characters) {
      out.push_back({ch.id, b.p});
    }
  }
  return out;
}

inline ConstraintSystem build_system(const TableBundle& bundle, std::int64_t k,
                                     const PowerProfile& profile,
                                     std::vector<CharacterRef> selection) {
  if (selection.empty()) {
    throw ConstraintError("empty character selection for order " + std::to_string(k));
  }
  std::sort(selection.begin(), selection.end(), ref_less);
  selection.erase(std::unique(selection.begin(), selection.end()), selection.end());
  for (const auto& ref : selection) {
    if (ref.prime != 0 && k % ref.prime == 0) {
      throw ConstraintError(ref.str() + " cannot be used for order " + std::to_string(k) +
                            ": the prime divides the order");
    }
  }
  ConstraintSystem sys;
  sys.space = allowed_classes(bundle.table, k);
  sys.modulus = k;
  check_profile(bundle.table, profile);
  MuBuilder builder(bundle.table, sys.space, profile);
  for (const auto& ref : selection) {
    const ClassFunction chi = resolve(bundle, ref);
    auto forms = builder.forms(chi);
    for (std::int64_t l = 0; l < k; ++l) {
      sys.mu.push_back({{ref, l}, std::move(forms[static_cast<std::size_t>(l)]), k * chi.degree});
    }
  }
  return sys;
}

/// "mu(0, chi2, *) = (1/2)(7 v[2a] - v[2b] + 23) >= 0"
inline std::string render(const VariableSpace& space, const MuConstraint& c, std::int64_t k) {
  std::ostringstream os;
  os << "mu(" << c.label.l << ", " << c.label.character.id << ", "
     << c.label.character.prime_tag() << ") = (1/" << k << ")(";
  bool first = true;
  auto term = [&](std::int64_t v, const std::string& sym) {
    if (v == 0) {
      return;
    }
    if (first) {
      os << (v < 0 ? "-" : "");
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    const std::int64_t a = v < 0 ? -v : v;
    if (sym.empty()) {
      os << a;
    } else {
      if (a != 1) {
        os << a << ' ';
      }
      os << sym;
    }
    first = false;
  };
  for (std::size_t i = 0; i < space.size(); ++i) {
    term(c.form.coeffs[i], "v[" + space.names[i] + "]");
  }
  term(c.form.constant, "");
  if (first) {
    os << '0';
  }
  os << ") >= 0";
  return os.str();
}

inline std::string render(const ConstraintSystem& sys) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sys.space.size(); ++i) {
    os << (i ? " + " : "") << "v[" << sys.space.names[i] << "]";
  }
  os << " = 1\n";
  for (const auto& c : sys.mu) {
    os << render(sys.space, c, sys.modulus) << '\n';
  }
  return os.str();
}

}  // namespace helpkit::constraints

#endif  // HELPKIT_CONSTRAINTS_HPP
