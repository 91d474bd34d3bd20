// SPDX-License-Identifier: Apache-2.0
//
// Per-order pipeline: candidate orders, power profiles built from the
// solutions for u^p, case solving, rational-conjugacy classification and the
// prime-graph comparison.

#ifndef HELPKIT_ENGINE_HPP
#define HELPKIT_ENGINE_HPP

#include "helpkit/arith.hpp"
#include "helpkit/constraints.hpp"
#include "helpkit/ctbl.hpp"
#include "helpkit/solver.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace helpkit::engine {

using constraints::AugmentationMap;
using constraints::CharacterRef;
using constraints::PowerProfile;
using constraints::VariableSpace;
using ctbl::CharacterTable;
using ctbl::TableBundle;
using solver::SolutionSet;
using solver::Tuple;

enum class Status { Excluded, RationallyConjugate, Indeterminate };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Excluded:
      return "excluded";
    case Status::RationallyConjugate:
      return "rationally-conjugate";
    case Status::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

inline Status status_from_string(const std::string& s) {
  if (s == "excluded") {
    return Status::Excluded;
  }
  if (s == "rationally-conjugate") {
    return Status::RationallyConjugate;
  }
  if (s == "indeterminate") {
    return Status::Indeterminate;
  }
  throw std::invalid_argument("unknown status \"" + s + "\"");
}

class ProfileCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UnitCandidate;
using CandidatePtr = std::shared_ptr<const UnitCandidate>;

/// Partial augmentations of a unit of order k with the candidates chosen for
/// u^p, one per prime p dividing k.
struct UnitCandidate {
  std::int64_t order = 1;
  AugmentationMap augmentations;
  std::map<std::int64_t, CandidatePtr> sub;
};

/// The identity, shared by every lineage so that lineages compare by pointer.
inline CandidatePtr terminal_candidate() {
  static const CandidatePtr one =
      std::make_shared<const UnitCandidate>(UnitCandidate{1, {{0, 1}}, {}});
  return one;
}

/// Partial augmentations of u^d.
inline AugmentationMap derive_power_augmentations(const UnitCandidate& c, std::int64_t d) {
  if (d < 1 || c.order % d != 0) {
    throw std::invalid_argument("derive_power_augmentations: " + std::to_string(d) +
                                " does not divide the order " + std::to_string(c.order));
  }
  if (d == 1) {
    return c.augmentations;
  }
  if (d == c.order) {
    return {{0, 1}};
  }
  const std::int64_t p = arith::smallest_prime_factor(d);
  auto it = c.sub.find(p);
  if (it == c.sub.end() || !it->second) {
    throw std::invalid_argument("candidate of order " + std::to_string(c.order) +
                                " has no lineage for prime " + std::to_string(p));
  }
  return derive_power_augmentations(*it->second, d / p);
}

/// One case: the candidates chosen for u^p and the derived power profile.
struct Profile {
  std::map<std::int64_t, CandidatePtr> sub;
  PowerProfile powers;
};

struct OrderVerdict {
  std::int64_t order = 0;
  Status status = Status::Excluded;
  VariableSpace space;
  std::vector<Profile> profiles;
  /// Solutions per profile, aligned with `profiles`.
  std::vector<SolutionSet> per_profile;
  /// One candidate per (profile, solution), sorted by profile then tuple.
  std::vector<CandidatePtr> candidates;
  std::vector<std::size_t> candidate_profile;
  /// Deduplicated union over profiles.
  SolutionSet solutions;
  /// Proper divisor found excluded; no system was built when nonzero.
  std::int64_t excluded_by_divisor = 0;
  std::size_t systems_built = 0;
  std::vector<CharacterRef> selection;
};

/// Per-order character choices for the "paper" mode.
struct SelectionManifest {
  std::string group;
  std::map<std::int64_t, std::vector<CharacterRef>> orders;

  static SelectionManifest parse(const std::string& text) {
    SelectionManifest m;
    try {
      const auto doc = nlohmann::json::parse(text);
      m.group = doc.at("group").get<std::string>();
      for (const auto& [key, refs] : doc.at("orders").items()) {
        const std::int64_t k = std::stoll(key);
        auto& list = m.orders[k];
        for (const auto& r : refs) {
          list.push_back(CharacterRef::parse(r.get<std::string>()));
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("malformed selection manifest: ") + e.what());
    } catch (const std::logic_error& e) {
      throw std::invalid_argument(std::string("malformed selection manifest: ") + e.what());
    }
    return m;
  }

  static SelectionManifest load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("cannot read selection manifest " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }
};

enum class Mode { Full, Paper };

inline std::string to_string(Mode m) { return m == Mode::Full ? "full" : "paper"; }

struct SolveOptions {
  Mode mode = Mode::Full;
  /// Consulted in paper mode when its group matches the table; orders it
  /// does not list use the full selection.
  std::optional<SelectionManifest> manifest;
  /// Explicit selections for single orders; they take precedence over the mode.
  std::map<std::int64_t, std::vector<CharacterRef>> overrides;
  std::size_t solution_cap = 1'000'000;
  std::size_t profile_cap = 10'000;
  unsigned workers = 1;
};

struct OrderInfo {
  std::int64_t order;
  bool in_spectrum;
};

/// Divisors of the exponent greater than 1, ascending.
inline std::vector<OrderInfo> candidate_orders(const CharacterTable& t) {
  const auto spec = ctbl::spectrum(t);
  std::vector<OrderInfo> out;
  for (auto d : arith::divisors(t.exponent)) {
    if (d > 1) {
      out.push_back({d, spec.count(d) > 0});
    }
  }
  return out;
}

/// Products p q of non-adjacent primes of the prime graph with p q dividing the exponent.
inline std::vector<std::int64_t> critical_orders(const CharacterTable& t) {
  const auto g = ctbl::prime_graph(t);
  std::vector<std::int64_t> out;
  for (auto p : g.vertices) {
    for (auto q : g.vertices) {
      if (p < q && !g.has_edge(p, q) && t.exponent % (p * q) == 0) {
        out.push_back(p * q);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All consistent choices of one candidate of order k/p per prime p | k.
inline std::vector<Profile> power_profiles(std::int64_t k,
                                           const std::map<std::int64_t, const OrderVerdict*>& sub,
                                           std::size_t cap = 10'000) {
  const auto primes = arith::prime_divisors(k);
  std::vector<std::vector<CandidatePtr>> choices;
  for (auto p : primes) {
    if (k / p == 1) {
      choices.push_back({terminal_candidate()});
      continue;
    }
    auto it = sub.find(k / p);
    if (it == sub.end() || !it->second) {
      throw std::invalid_argument("power_profiles: no verdict for order " + std::to_string(k / p));
    }
    choices.push_back(it->second->candidates);
  }
  std::vector<Profile> out;
  std::map<std::int64_t, CandidatePtr> pick;
  auto consistent = [&](std::size_t upto) {
    const std::int64_t q = primes[upto];
    for (std::size_t i = 0; i < upto; ++i) {
      const std::int64_t p = primes[i];
      // (u^p)^q and (u^q)^p must be the same candidate.
      const auto a = pick.at(p)->sub.find(q);
      const auto b = pick.at(q)->sub.find(p);
      const CandidatePtr ca = a == pick.at(p)->sub.end() ? nullptr : a->second;
      const CandidatePtr cb = b == pick.at(q)->sub.end() ? nullptr : b->second;
      if (ca != cb) {
        return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == primes.size()) {
      if (out.size() >= cap) {
        throw ProfileCapExceeded("order " + std::to_string(k) + " has more than " +
                                 std::to_string(cap) + " power profiles");
      }
      Profile prof;
      prof.sub = pick;
      prof.powers.order = k;
      UnitCandidate probe{k, {}, pick};
      for (auto d : arith::divisors(k)) {
        if (d > 1) {
          prof.powers.powers[d] = derive_power_augmentations(probe, d);
        }
      }
      out.push_back(std::move(prof));
      return;
    }
    for (const auto& c : choices[i]) {
      pick[primes[i]] = c;
      if (consistent(i)) {
        self(self, i + 1);
      }
    }
    pick.erase(primes[i]);
  };
  rec(rec, 0);
  return out;
}

/// Exactly one nonzero partial augmentation on every power of every candidate.
inline Status classify(const OrderVerdict& v) {
  if (v.candidates.empty()) {
    return Status::Excluded;
  }
  for (const auto& c : v.candidates) {
    for (auto d : arith::divisors(c->order)) {
      if (derive_power_augmentations(*c, d).size() != 1) {
        return Status::Indeterminate;
      }
    }
  }
  return Status::RationallyConjugate;
}

struct KimmerleReport {
  ctbl::PrimeGraph graph;
  std::vector<std::pair<std::int64_t, Status>> critical;
  /// Reasons for orders that could not be decided, keyed by order.
  std::map<std::int64_t, std::string> notes;
  bool holds = true;
};

class Engine {
 public:
  Engine(const TableBundle& bundle, SolveOptions options)
      : bundle_(bundle), options_(std::move(options)) {}

  const SolveOptions& options() const { return options_; }
  const TableBundle& bundle() const { return bundle_; }

  std::vector<CharacterRef> selection_for(std::int64_t k) const {
    if (auto it = options_.overrides.find(k); it != options_.overrides.end()) {
      return it->second;
    }
    if (options_.mode == Mode::Paper && options_.manifest &&
        options_.manifest->group == bundle_.table.group_name) {
      if (auto it = options_.manifest->orders.find(k); it != options_.manifest->orders.end()) {
        return it->second;
      }
    }
    return constraints::full_selection(bundle_, k);
  }

  /// Memoized; divisor orders are solved first.
  const OrderVerdict& solve(std::int64_t k) {
    if (k < 2) {
      throw std::invalid_argument("solve_order: order must be at least 2");
    }
    if (auto it = memo_.find(k); it != memo_.end()) {
      return it->second;
    }
    OrderVerdict v;
    v.order = k;
    v.space = constraints::allowed_classes(bundle_.table, k);
    std::map<std::int64_t, const OrderVerdict*> sub;
    for (auto p : arith::prime_divisors(k)) {
      if (k / p == 1) {
        continue;
      }
      const OrderVerdict& s = solve(k / p);
      if (s.status == Status::Excluded) {
        v.status = Status::Excluded;
        v.excluded_by_divisor = s.excluded_by_divisor ? s.excluded_by_divisor : k / p;
        return memo_.emplace(k, std::move(v)).first->second;
      }
      sub[k / p] = &s;
    }
    v.selection = selection_for(k);
    v.profiles = power_profiles(k, sub, options_.profile_cap);
    v.per_profile = solve_profiles(k, v.profiles, v.selection);
    v.systems_built = v.profiles.size();
    for (std::size_t i = 0; i < v.profiles.size(); ++i) {
      for (const auto& t : v.per_profile[i]) {
        AugmentationMap aug;
        for (std::size_t j = 0; j < t.size(); ++j) {
          if (t[j] != 0) {
            aug[v.space.classes[j]] = t[j];
          }
        }
        v.candidates.push_back(
            std::make_shared<const UnitCandidate>(UnitCandidate{k, aug, v.profiles[i].sub}));
        v.candidate_profile.push_back(i);
        v.solutions.push_back(t);
      }
    }
    std::sort(v.solutions.begin(), v.solutions.end());
    v.solutions.erase(std::unique(v.solutions.begin(), v.solutions.end()), v.solutions.end());
    v.status = classify(v);
    return memo_.emplace(k, std::move(v)).first->second;
  }

  KimmerleReport kimmerle() {
    KimmerleReport r;
    r.graph = ctbl::prime_graph(bundle_.table);
    for (auto k : critical_orders(bundle_.table)) {
      Status s = Status::Indeterminate;
      try {
        s = solve(k).status;
      } catch (const solver::Unbounded& e) {
        r.notes[k] = e.what();
      } catch (const solver::CapExceeded& e) {
        r.notes[k] = e.what();
      } catch (const ProfileCapExceeded& e) {
        r.notes[k] = e.what();
      }
      r.critical.emplace_back(k, s);
      r.holds = r.holds && s == Status::Excluded;
    }
    return r;
  }

  /// Spectrum orders plus critical orders, or every divisor of the exponent when `full`.
  std::vector<std::int64_t> scan_orders(bool full) const {
    std::set<std::int64_t> ks;
    for (const auto& o : candidate_orders(bundle_.table)) {
      if (full || o.in_spectrum) {
        ks.insert(o.order);
      }
    }
    for (auto k : critical_orders(bundle_.table)) {
      ks.insert(k);
    }
    return {ks.begin(), ks.end()};
  }

 private:
  std::vector<SolutionSet> solve_profiles(std::int64_t k, const std::vector<Profile>& profiles,
                                          const std::vector<CharacterRef>& selection) const {
    std::vector<SolutionSet> out(profiles.size());
    std::vector<std::exception_ptr> errors(profiles.size());
    auto work = [&](std::size_t i) {
      try {
        const auto sys =
            constraints::build_system(bundle_, k, profiles[i].powers, selection);
        out[i] = solver::solve(sys, options_.solution_cap, 1);
      } catch (const solver::Unbounded& e) {
        std::string names;
        for (const auto& r : selection) {
          names += (names.empty() ? "" : ",") + r.str();
        }
        errors[i] = std::make_exception_ptr(solver::Unbounded(
            "order " + std::to_string(k) + ", profile " + std::to_string(i) + ": selection {" +
            names + "} leaves the system unbounded: " + e.what()));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    };
    const unsigned workers = std::max(
        1u, std::min<unsigned>(options_.workers, static_cast<unsigned>(profiles.size())));
    if (workers <= 1) {
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        work(i);
      }
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < profiles.size(); i = next++) {
            work(i);
          }
        });
      }
      for (auto& t : pool) {
        t.join();
      }
    }
    for (const auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
    return out;
  }

  const TableBundle& bundle_;
  SolveOptions options_;
  std::map<std::int64_t, OrderVerdict> memo_;
};

}  // namespace helpkit::engine

#endif  // HELPKIT_ENGINE_HPP
