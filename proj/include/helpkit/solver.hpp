// SPDX-License-Identifier: Apache-2.0
//
// Exact integer feasibility: Fourier-Motzkin bounding boxes, depth-first
// enumeration with interval propagation, a brute-force reference scan, and
// a reduction to the image lattice for rank-deficient systems.

#ifndef HELPKIT_SOLVER_HPP
#define HELPKIT_SOLVER_HPP

#include "helpkit/arith.hpp"
#include "helpkit/constraints.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace helpkit::solver {

using arith::BigInt;
using Int = std::int64_t;
using Tuple = std::vector<Int>;
/// Sorted lexicographically, no duplicates.
using SolutionSet = std::vector<Tuple>;

/// a . x + b, read as "= 0" or ">= 0" depending on where it is stored.
struct AffineRow {
  std::vector<Int> a;
  Int b = 0;
  friend bool operator==(const AffineRow&, const AffineRow&) = default;
  friend auto operator<=>(const AffineRow&, const AffineRow&) = default;
};

/// a . x + b = 0 (mod m).
struct CongruenceRow {
  std::vector<Int> a;
  Int b = 0;
  Int m = 1;
  friend bool operator==(const CongruenceRow&, const CongruenceRow&) = default;
  friend auto operator<=>(const CongruenceRow&, const CongruenceRow&) = default;
};

struct IntegerSystem {
  std::size_t n = 0;
  std::vector<AffineRow> equalities;
  std::vector<AffineRow> inequalities;
  std::vector<CongruenceRow> congruences;

  bool satisfied_by(const Tuple& x) const {
    auto eval = [&](const std::vector<Int>& a, Int b) {
      __int128 s = b;
      for (std::size_t i = 0; i < n; ++i) {
        s += static_cast<__int128>(a[i]) * x[i];
      }
      return s;
    };
    for (const auto& r : equalities) {
      if (eval(r.a, r.b) != 0) {
        return false;
      }
    }
    for (const auto& r : inequalities) {
      if (eval(r.a, r.b) < 0) {
        return false;
      }
    }
    for (const auto& r : congruences) {
      if (eval(r.a, r.b) % r.m != 0) {
        return false;
      }
    }
    return true;
  }
};

struct Interval {
  Int lo = 0;
  Int hi = -1;
  bool empty() const { return lo > hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Bounds {
  std::vector<Interval> box;
  bool infeasible = false;

  /// Number of integer points in the box.
  BigInt points() const {
    if (infeasible) {
      return 0;
    }
    BigInt r = 1;
    for (const auto& iv : box) {
      if (iv.empty()) {
        return 0;
      }
      r *= BigInt(iv.hi) - iv.lo + 1;
    }
    return r;
  }
};

class Unbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t cap)
      : std::runtime_error("more than " + std::to_string(cap) + " solutions"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Sum constraint, and 0 <= form <= upper, form = 0 (mod k) per mu form.
inline IntegerSystem lower(const constraints::ConstraintSystem& sys) {
  IntegerSystem out;
  out.n = sys.space.size();
  out.equalities.push_back({std::vector<Int>(out.n, 1), -1});
  for (const auto& c : sys.mu) {
    std::vector<Int> neg(out.n);
    for (std::size_t i = 0; i < out.n; ++i) {
      neg[i] = -c.form.coeffs[i];
    }
    out.inequalities.push_back({c.form.coeffs, c.form.constant});
    out.inequalities.push_back({neg, c.upper - c.form.constant});
    out.congruences.push_back({c.form.coeffs, c.form.constant, sys.modulus});
  }
  return out;
}

namespace detail {

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) {
    --q;
  }
  return q;
}

inline Int narrow(const BigInt& v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("solver: value exceeds 64 bits");
  }
  return static_cast<Int>(v);
}

inline Int narrow(__int128 v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("solver: value exceeds 64 bits");
  }
  return static_cast<Int>(v);
}

// Set of original row indices, one bit each.
using History = std::vector<std::uint64_t>;

inline std::size_t popcount(const History& h) {
  std::size_t c = 0;
  for (auto w : h) {
    c += static_cast<std::size_t>(std::popcount(w));
  }
  return c;
}

// |a union b| <= limit, stopping early.
inline bool union_within(const History& a, const History& b, std::size_t limit) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    c += static_cast<std::size_t>(std::popcount(a[i] | b[i]));
    if (c > limit) {
      return false;
    }
  }
  return true;
}

// Exact scalar operations for the elimination, on BigInt or on checked
// 64-bit integers (which throw FmOverflow so the caller can retry wide).
struct FmOverflow {};

template <class T>
struct FmOps;

template <>
struct FmOps<BigInt> {
  static BigInt lin(const BigInt& a, const BigInt& x, const BigInt& b, const BigInt& y) {
    return a * x + b * y;
  }
  static BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
  static BigInt abs(const BigInt& a) { return boost::multiprecision::abs(a); }
  static BigInt floor_div(const BigInt& a, const BigInt& b) { return detail::floor_div(a, b); }
  static BigInt wide(const BigInt& a) { return a; }
};

template <>
struct FmOps<Int> {
  static Int lin(Int a, Int x, Int b, Int y) {
    const __int128 r = static_cast<__int128>(a) * x + static_cast<__int128>(b) * y;
    if (r > std::numeric_limits<Int>::max() / 2 || r < std::numeric_limits<Int>::min() / 2) {
      throw FmOverflow{};
    }
    return static_cast<Int>(r);
  }
  static Int gcd(Int a, Int b) { return std::gcd(a, b); }
  static Int abs(Int a) { return a < 0 ? -a : a; }
  static Int floor_div(Int a, Int b) { return detail::floor_div(a, b); }
  static BigInt wide(Int a) { return BigInt(a); }
};

// Inequality a . x + b >= 0 with the originating row set.
template <class T>
struct FmRow {
  std::vector<T> a;
  T b;
  History hist;
};

// Divide by the content of a and round the constant down (valid for
// integer x). Returns false for a constant row; `violated` is set when that
// constant is negative.
template <class T>
bool tighten(FmRow<T>& r, bool& violated) {
  T g = 0;
  for (const auto& v : r.a) {
    g = FmOps<T>::gcd(g, v);
  }
  if (g == 0) {
    violated = violated || r.b < 0;
    return false;
  }
  if (g != 1) {
    for (auto& v : r.a) {
      v /= g;
    }
    r.b = FmOps<T>::floor_div(r.b, g);
  }
  return true;
}

// Keep the tightest constant per direction.
template <class T>
std::vector<FmRow<T>> dedupe(std::vector<FmRow<T>> rows) {
  std::map<std::vector<T>, std::size_t> seen;
  std::vector<FmRow<T>> out;
  for (auto& r : rows) {
    auto [it, fresh] = seen.try_emplace(r.a, out.size());
    if (fresh) {
      out.push_back(std::move(r));
    } else {
      FmRow<T>& kept = out[it->second];
      if (r.b < kept.b || (r.b == kept.b && popcount(r.hist) < popcount(kept.hist))) {
        kept = std::move(r);
      }
    }
  }
  return out;
}

struct Projection {
  bool infeasible = false;
  bool has_lo = false, has_hi = false;
  BigInt lo, hi;
};

// Project the system onto variable `keep` by substitution of equalities
// followed by Fourier-Motzkin elimination with Chernikov pruning.
template <class T>
Projection project_as(const IntegerSystem& sys, std::size_t keep) {
  using Ops = FmOps<T>;
  const std::size_t n = sys.n;
  Projection res;
  std::vector<std::vector<T>> eqa;
  std::vector<T> eqb;
  for (const auto& e : sys.equalities) {
    eqa.emplace_back(e.a.begin(), e.a.end());
    eqb.emplace_back(e.b);
  }
  std::vector<FmRow<T>> rows;
  for (const auto& r : sys.inequalities) {
    rows.push_back({std::vector<T>(r.a.begin(), r.a.end()), T(r.b), {}});
  }
  std::vector<bool> alive(n, true);

  // Substitute equalities, preferring a unit coefficient on a variable other than `keep`.
  for (std::size_t e = 0; e < eqa.size(); ++e) {
    std::size_t pick = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == keep || eqa[e][j] == 0) {
        continue;
      }
      if (pick == n || (Ops::abs(eqa[e][j]) == 1 && Ops::abs(eqa[e][pick]) != 1)) {
        pick = j;
      }
    }
    if (pick == n) {
      // Only `keep` (or nothing) left: c x + b = 0 becomes two inequalities.
      std::vector<T> neg(n);
      for (std::size_t j = 0; j < n; ++j) {
        neg[j] = -eqa[e][j];
      }
      rows.push_back({eqa[e], eqb[e], {}});
      rows.push_back({neg, T(-eqb[e]), {}});
      continue;
    }
    const T piv = eqa[e][pick];
    const T apiv = Ops::abs(piv);
    const T sgn = piv > 0 ? 1 : -1;
    auto substitute = [&](std::vector<T>& a, T& b) {
      const T c = a[pick];
      if (c == 0) {
        return;
      }
      const T f = -sgn * c;
      for (std::size_t j = 0; j < n; ++j) {
        a[j] = Ops::lin(apiv, a[j], f, eqa[e][j]);
      }
      b = Ops::lin(apiv, b, f, eqb[e]);
    };
    for (std::size_t f = e + 1; f < eqa.size(); ++f) {
      substitute(eqa[f], eqb[f]);
    }
    for (auto& r : rows) {
      substitute(r.a, r.b);
    }
    alive[pick] = false;
  }

  bool violated = false;
  std::vector<FmRow<T>> work;
  for (auto& r : rows) {
    if (tighten(r, violated)) {
      work.push_back(std::move(r));
    }
  }
  if (violated) {
    res.infeasible = true;
    return res;
  }
  work = dedupe(std::move(work));
  const std::size_t words = (work.size() + 63) / 64;
  for (std::size_t i = 0; i < work.size(); ++i) {
    work[i].hist.assign(words, 0);
    work[i].hist[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  std::size_t step = 0;
  while (true) {
    // Pick the live variable (other than keep) with the fewest new rows.
    std::size_t best = n;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!alive[j] || j == keep) {
        continue;
      }
      std::size_t pos = 0, neg = 0;
      for (const auto& r : work) {
        pos += r.a[j] > 0;
        neg += r.a[j] < 0;
      }
      const std::size_t cost = pos * neg;
      if (best == n || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best == n) {
      break;
    }
    ++step;
    std::vector<FmRow<T>> next, pos, neg;
    for (auto& r : work) {
      if (r.a[best] > 0) {
        pos.push_back(std::move(r));
      } else if (r.a[best] < 0) {
        neg.push_back(std::move(r));
      } else {
        next.push_back(std::move(r));
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        if (!union_within(p.hist, q.hist, step + 1)) {
          continue;
        }
        const T cp = -q.a[best];
        const T cq = p.a[best];
        FmRow<T> r{std::vector<T>(n), Ops::lin(cp, p.b, cq, q.b), History(p.hist.size())};
        for (std::size_t w = 0; w < r.hist.size(); ++w) {
          r.hist[w] = p.hist[w] | q.hist[w];
        }
        for (std::size_t j = 0; j < n; ++j) {
          r.a[j] = Ops::lin(cp, p.a[j], cq, q.a[j]);
        }
        if (tighten(r, violated)) {
          next.push_back(std::move(r));
        }
      }
    }
    if (violated) {
      res.infeasible = true;
      return res;
    }
    work = dedupe(std::move(next));
    alive[best] = false;
  }

  for (const auto& r : work) {
    const BigInt c = Ops::wide(r.a[keep]);
    const BigInt b = Ops::wide(r.b);
    if (c > 0) {
      const BigInt lo = -floor_div(b, c);  // ceil(-b / c)
      if (!res.has_lo || lo > res.lo) {
        res.lo = lo;
        res.has_lo = true;
      }
    } else if (c < 0) {
      const BigInt hi = floor_div(b, BigInt(-c));
      if (!res.has_hi || hi < res.hi) {
        res.hi = hi;
        res.has_hi = true;
      }
    }
  }
  if (res.has_lo && res.has_hi && res.lo > res.hi) {
    res.infeasible = true;
  }
  return res;
}

inline Projection project(const IntegerSystem& sys, std::size_t keep) {
  try {
    return project_as<Int>(sys, keep);
  } catch (const FmOverflow&) {
    return project_as<BigInt>(sys, keep);
  }
}

}  // namespace detail

/// Integer box containing every solution. Throws Unbounded when a variable
/// has no finite bound and the system is not detected infeasible.
inline Bounds fm_bounds(const IntegerSystem& sys) {
  Bounds out;
  std::vector<detail::Projection> proj;
  for (std::size_t i = 0; i < sys.n; ++i) {
    proj.push_back(detail::project(sys, i));
    if (proj.back().infeasible) {
      out.infeasible = true;
      out.box.assign(sys.n, Interval{});
      return out;
    }
  }
  for (std::size_t i = 0; i < sys.n; ++i) {
    if (!proj[i].has_lo || !proj[i].has_hi) {
      throw Unbounded("variable " + std::to_string(i) + " has no finite " +
                      (proj[i].has_lo ? "upper" : "lower") + " bound");
    }
    out.box.push_back({detail::narrow(proj[i].lo), detail::narrow(proj[i].hi)});
  }
  if (sys.n == 0) {
    // No variables: the system is a set of constant checks.
    out.infeasible = !sys.satisfied_by({});
  }
  return out;
}

namespace detail {

// Deduplicated view of the system used by the search.
struct SearchRows {
  std::vector<AffineRow> ineq;        // equalities contribute two rows each
  std::vector<CongruenceRow> cong;
  std::vector<std::size_t> cong_last;  // last variable with a nonzero coefficient
};

inline SearchRows search_rows(const IntegerSystem& sys) {
  SearchRows s;
  std::map<std::vector<Int>, Int> tight;
  auto add = [&](std::vector<Int> a, Int b) {
    Int g = 0;
    for (auto v : a) {
      g = std::gcd(g, v);
    }
    if (g == 0) {
      return;  // constant rows are checked by the final verification
    }
    for (auto& v : a) {
      v /= g;
    }
    b = floor_div(b, g);
    auto [it, fresh] = tight.try_emplace(std::move(a), b);
    if (!fresh && b < it->second) {
      it->second = b;
    }
  };
  for (const auto& r : sys.equalities) {
    add(r.a, r.b);
    std::vector<Int> neg(r.a.size());
    for (std::size_t i = 0; i < neg.size(); ++i) {
      neg[i] = -r.a[i];
    }
    add(neg, -r.b);
  }
  for (const auto& r : sys.inequalities) {
    add(r.a, r.b);
  }
  for (auto& [a, b] : tight) {
    s.ineq.push_back({a, b});
  }
  std::set<CongruenceRow> cong;
  for (const auto& r : sys.congruences) {
    CongruenceRow c{r.a, arith::mod(r.b, r.m), r.m};
    for (auto& v : c.a) {
      v = arith::mod(v, r.m);
    }
    cong.insert(std::move(c));
  }
  for (const auto& c : cong) {
    std::size_t last = 0;
    bool any = false;
    for (std::size_t i = 0; i < c.a.size(); ++i) {
      if (c.a[i] != 0) {
        last = i;
        any = true;
      }
    }
    if (!any && c.b % c.m != 0) {
      last = 0;  // unsatisfiable constant row, rejected at the first variable
    }
    s.cong.push_back(c);
    s.cong_last.push_back(last);
  }
  return s;
}

class Search {
 public:
  Search(const IntegerSystem& sys, const SearchRows& rows, std::size_t cap,
         std::atomic<std::size_t>& found, bool stop_at_first)
      : sys_(sys), rows_(rows), cap_(cap), found_(found), stop_at_first_(stop_at_first) {}

  // Tighten unassigned intervals (variables >= depth) until stable.
  bool propagate(std::vector<Interval>& box, const Tuple& x, std::size_t depth) const {
    const std::size_t n = sys_.n;
    for (int round = 0; round < 16; ++round) {
      bool changed = false;
      for (const auto& r : rows_.ineq) {
        // Maximum of the row over the current box.
        __int128 top = r.b;
        for (std::size_t j = 0; j < n; ++j) {
          if (j < depth) {
            top += static_cast<__int128>(r.a[j]) * x[j];
          } else if (r.a[j] > 0) {
            top += static_cast<__int128>(r.a[j]) * box[j].hi;
          } else if (r.a[j] < 0) {
            top += static_cast<__int128>(r.a[j]) * box[j].lo;
          }
        }
        if (top < 0) {
          return false;
        }
        bool row_changed = false;
        for (std::size_t v = depth; v < n && !row_changed; ++v) {
          const Int c = r.a[v];
          if (c == 0) {
            continue;
          }
          // c x_v + rest >= 0 with rest <= top - (c x_v at its maximizing end).
          const __int128 rest = top - static_cast<__int128>(c) * (c > 0 ? box[v].hi : box[v].lo);
          if (c > 0) {
            const __int128 lo = -floor128(rest, c);
            if (lo > box[v].lo) {
              box[v].lo = narrow(lo);
              row_changed = true;
            }
          } else {
            const __int128 hi = floor128(rest, -c);
            if (hi < box[v].hi) {
              box[v].hi = narrow(hi);
              row_changed = true;
            }
          }
          if (box[v].empty()) {
            return false;
          }
        }
        // A tightened row has a stale maximum; it is revisited next round.
        changed = changed || row_changed;
      }
      if (!changed) {
        break;
      }
    }
    return true;
  }

  void run(std::vector<Interval> box, Tuple& x, std::size_t depth, SolutionSet& out) {
    if (done()) {
      return;
    }
    if (depth == sys_.n) {
      if (sys_.satisfied_by(x)) {
        record(x, out);
      }
      return;
    }
    if (!propagate(box, x, depth)) {
      return;
    }
    for (Int v = box[depth].lo; v <= box[depth].hi; ++v) {
      x[depth] = v;
      if (congruences_hold(x, depth)) {
        std::vector<Interval> child = box;
        child[depth] = {v, v};
        run(std::move(child), x, depth + 1, out);
        if (done()) {
          return;
        }
      }
    }
  }

  bool congruences_hold(const Tuple& x, std::size_t depth) const {
    for (std::size_t i = 0; i < rows_.cong.size(); ++i) {
      if (rows_.cong_last[i] != depth) {
        continue;
      }
      const auto& c = rows_.cong[i];
      __int128 s = c.b;
      for (std::size_t j = 0; j <= depth; ++j) {
        s += static_cast<__int128>(c.a[j]) * x[j];
      }
      if (s % c.m != 0) {
        return false;
      }
    }
    return true;
  }

 private:
  static __int128 floor128(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
      --q;
    }
    return q;
  }

  bool done() const { return stop_at_first_ && found_.load() > 0; }

  void record(const Tuple& x, SolutionSet& out) {
    const std::size_t count = ++found_;
    if (!stop_at_first_ && count > cap_) {
      throw CapExceeded(cap_);
    }
    out.push_back(x);
  }

  const IntegerSystem& sys_;
  const SearchRows& rows_;
  std::size_t cap_;
  std::atomic<std::size_t>& found_;
  bool stop_at_first_;
};

inline SolutionSet enumerate_impl(const IntegerSystem& sys, std::size_t cap, unsigned workers,
                                  bool stop_at_first) {
  const Bounds bounds = fm_bounds(sys);
  if (bounds.infeasible) {
    return {};
  }
  if (sys.n == 0) {
    return {Tuple{}};
  }
  const SearchRows rows = search_rows(sys);
  std::atomic<std::size_t> found{0};
  Search search(sys, rows, cap, found, stop_at_first);

  std::vector<Interval> box = bounds.box;
  Tuple x(sys.n, 0);
  if (!search.propagate(box, x, 0)) {
    return {};
  }
  std::vector<Int> top;
  for (Int v = box[0].lo; v <= box[0].hi; ++v) {
    top.push_back(v);
  }
  std::vector<SolutionSet> parts(top.size());
  auto branch = [&](std::size_t i) {
    Tuple xi(sys.n, 0);
    xi[0] = top[i];
    if (!search.congruences_hold(xi, 0)) {
      return;
    }
    std::vector<Interval> child = box;
    child[0] = {top[i], top[i]};
    search.run(std::move(child), xi, 1, parts[i]);
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(top.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < top.size(); ++i) {
      branch(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < top.size(); i = next++) {
          try {
            branch(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
            next = top.size();
          }
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }
  SolutionSet out;
  for (auto& p : parts) {
    out.insert(out.end(), p.begin(), p.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// All integer solutions, sorted. Throws Unbounded (from fm_bounds) or CapExceeded.
inline SolutionSet enumerate(const IntegerSystem& sys, std::size_t cap = 1'000'000,
                             unsigned workers = 1) {
  return detail::enumerate_impl(sys, cap, workers, false);
}

/// Reference implementation: visits every point of the box.
inline SolutionSet brute_force(const IntegerSystem& sys, const Bounds& box) {
  SolutionSet out;
  if (box.infeasible) {
    return out;
  }
  if (box.box.size() != sys.n) {
    throw std::invalid_argument("brute_force: box dimension mismatch");
  }
  for (const auto& iv : box.box) {
    if (iv.empty()) {
      return out;
    }
  }
  Tuple x(sys.n);
  for (std::size_t i = 0; i < sys.n; ++i) {
    x[i] = box.box[i].lo;
  }
  while (true) {
    if (sys.satisfied_by(x)) {
      out.push_back(x);
    }
    std::size_t i = sys.n;
    while (i > 0) {
      --i;
      if (x[i] < box.box[i].hi) {
        ++x[i];
        break;
      }
      x[i] = box.box[i].lo;
      if (i == 0) {
        return out;
      }
    }
    if (sys.n == 0) {
      return out;
    }
  }
}

/// x = U y with U unimodular and every constraint row a satisfying
/// a U = (a', 0, ..., 0) with a' of length `rank`; `reduced` is the system in
/// the first `rank` coordinates of y.
struct ImageReduction {
  std::size_t rank = 0;
  std::vector<std::vector<BigInt>> unimodular;  // n x n
  IntegerSystem reduced;

  Tuple lift(const Tuple& y) const {
    const std::size_t n = unimodular.size();
    Tuple x(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < y.size(); ++j) {
        s += unimodular[i][j] * y[j];
      }
      x[i] = detail::narrow(s);
    }
    return x;
  }
};

inline ImageReduction reduce_to_image(const IntegerSystem& sys) {
  const std::size_t n = sys.n;
  std::set<std::vector<Int>> distinct;
  for (const auto& r : sys.equalities) {
    distinct.insert(r.a);
  }
  for (const auto& r : sys.inequalities) {
    distinct.insert(r.a);
  }
  for (const auto& r : sys.congruences) {
    distinct.insert(r.a);
  }
  std::vector<std::vector<BigInt>> m;
  for (const auto& a : distinct) {
    m.emplace_back(a.begin(), a.end());
  }
  std::vector<std::vector<BigInt>> u(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    u[i][i] = 1;
  }
  // Column operation: (col_p, col_c) <- (s col_p + t col_c, -b/g col_p + a/g col_c).
  auto combine = [&](std::size_t p, std::size_t c, const BigInt& s, const BigInt& t,
                     const BigInt& x, const BigInt& y) {
    auto apply = [&](std::vector<BigInt>& row) {
      const BigInt vp = row[p], vc = row[c];
      row[p] = s * vp + t * vc;
      row[c] = x * vp + y * vc;
    };
    for (auto& row : m) {
      apply(row);
    }
    for (auto& row : u) {
      apply(row);
    }
  };
  std::size_t pivot = 0;
  for (std::size_t r = 0; r < m.size() && pivot < n; ++r) {
    for (std::size_t c = pivot + 1; c < n; ++c) {
      if (m[r][c] == 0) {
        continue;
      }
      const BigInt a = m[r][pivot], b = m[r][c];
      // Extended Euclid: s a + t b = g.
      BigInt g0 = a, g1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
      while (g1 != 0) {
        const BigInt q = g0 / g1;
        std::tie(g0, g1) = std::make_pair(g1, BigInt(g0 - q * g1));
        std::tie(s0, s1) = std::make_pair(s1, BigInt(s0 - q * s1));
        std::tie(t0, t1) = std::make_pair(t1, BigInt(t0 - q * t1));
      }
      combine(pivot, c, s0, t0, BigInt(-b / g0), BigInt(a / g0));
    }
    if (m[r][pivot] != 0) {
      ++pivot;
    }
  }
  ImageReduction out;
  out.rank = pivot;
  out.unimodular = u;
  IntegerSystem& red = out.reduced;
  red.n = pivot;
  auto transform = [&](const std::vector<Int>& a) {
    std::vector<Int> y(pivot, 0);
    for (std::size_t j = 0; j < n; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        s += BigInt(a[i]) * u[i][j];
      }
      if (j < pivot) {
        y[j] = detail::narrow(s);
      } else if (s != 0) {
        throw std::logic_error("reduce_to_image: row not in the image span");
      }
    }
    return y;
  };
  for (const auto& r : sys.equalities) {
    red.equalities.push_back({transform(r.a), r.b});
  }
  for (const auto& r : sys.inequalities) {
    red.inequalities.push_back({transform(r.a), r.b});
  }
  for (const auto& r : sys.congruences) {
    red.congruences.push_back({transform(r.a), r.b, r.m});
  }
  return out;
}

/// Enumerates directly when the constraint rows have full rank; otherwise
/// decides feasibility in the image lattice and throws Unbounded when an
/// integer solution exists (it then lies on an infinite family).
inline SolutionSet solve(const IntegerSystem& sys, std::size_t cap = 1'000'000,
                         unsigned workers = 1) {
  const ImageReduction red = reduce_to_image(sys);
  if (red.rank == sys.n) {
    return enumerate(sys, cap, workers);
  }
  const SolutionSet witness = detail::enumerate_impl(red.reduced, cap, workers, true);
  if (witness.empty()) {
    return {};
  }
  const Tuple x = red.lift(witness.front());
  std::string w;
  for (std::size_t i = 0; i < x.size(); ++i) {
    w += (i ? "," : "") + std::to_string(x[i]);
  }
  throw Unbounded("constraints have rank " + std::to_string(red.rank) + " in " +
                  std::to_string(sys.n) + " variables and admit the integer solution (" + w +
                  "), hence infinitely many");
}

inline SolutionSet solve(const constraints::ConstraintSystem& sys, std::size_t cap = 1'000'000,
                         unsigned workers = 1) {
  return solve(lower(sys), cap, workers);
}

}  // namespace helpkit::solver

#endif  // HELPKIT_SOLVER_HPP
