// SPDX-License-Identifier: Apache-2.0
//
// Exact rational and cyclotomic arithmetic.
//
// A Cyclotomic is a finite Q-linear combination of powers of zeta_n, the
// primitive n-th root of unity exp(2*pi*i/n). Canonical form is the
// Zumbroich basis of Q(zeta_n): writing n = prod p^a and an exponent j by its
// CRT components x_p in Z/p^a, the basis consists of the zeta_n^j whose every
// component has a top base-p digit in {1..p-1} (p odd) or equal to 0 (p = 2).
// Structural equality of canonical values with the same conductor is field
// equality.

#ifndef HELPKIT_ARITH_HPP
#define HELPKIT_ARITH_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace helpkit::arith {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class ArithError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Elementary number theory

/// Non-negative residue of a modulo n (n > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

/// Prime factorization as (prime, multiplicity) pairs, primes ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) {
    throw ArithError("factorize: argument must be positive");
  }
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) {
      continue;
    }
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) {
    out.emplace_back(n, 1);
  }
  return out;
}

/// Distinct prime divisors, ascending.
inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto [p, e] : factorize(n)) {
    out.push_back(p);
  }
  return out;
}

/// Smallest prime factor of n > 1.
inline std::int64_t smallest_prime_factor(std::int64_t n) {
  if (n < 2) {
    throw ArithError("smallest_prime_factor: argument must be at least 2");
  }
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      return p;
    }
  }
  return n;
}

inline bool is_prime(std::int64_t n) {
  return n >= 2 && smallest_prime_factor(n) == n;
}

/// All positive divisors, ascending.
inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) {
        out.push_back(out[j] * pk);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Moebius function.
inline int moebius(std::int64_t n) {
  int r = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) {
      return 0;
    }
    r = -r;
  }
  return r;
}

/// Euler's totient.
inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [p, e] : factorize(n)) {
    r = r / p * (p - 1);
  }
  return r;
}

/// Tr_{Q(zeta_n)/Q}(zeta_n^t) = mu(o) * phi(n) / phi(o), o = n / gcd(n, t).
inline std::int64_t trace_root(std::int64_t n, std::int64_t t) {
  if (n < 1) {
    throw ArithError("trace_root: conductor must be positive");
  }
  const std::int64_t o = n / std::gcd(n, mod(t, n));
  return moebius(o) * (euler_phi(n) / euler_phi(o));
}

/// Precomputed trace_root(n, t) for t in [0, n).
class TraceTable {
 public:
  explicit TraceTable(std::int64_t n) : n_(n), values_(static_cast<std::size_t>(n)) {
    const std::int64_t phi_n = euler_phi(n);
    for (std::int64_t t = 0; t < n; ++t) {
      const std::int64_t o = n / std::gcd(n, t);
      values_[static_cast<std::size_t>(t)] = moebius(o) * (phi_n / euler_phi(o));
    }
  }

  std::int64_t conductor() const { return n_; }

  std::int64_t operator()(std::int64_t t) const {
    return values_[static_cast<std::size_t>(mod(t, n_))];
  }

 private:
  std::int64_t n_;
  std::vector<std::int64_t> values_;
};

inline std::int64_t modular_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) {
    throw ArithError("modular_inverse: arguments not coprime");
  }
  return mod(x, m);
}

// ---------------------------------------------------------------------------
// Cyclotomic numbers

class Cyclotomic {
 public:
  using Coeffs = std::map<std::int64_t, Rational>;

  /// Zero in Q.
  Cyclotomic() = default;

  /// The rational r, conductor 1.
  explicit Cyclotomic(Rational r) {
    if (r != 0) {
      coeffs_.emplace(0, std::move(r));
    }
  }

  explicit Cyclotomic(std::int64_t r) : Cyclotomic(Rational(r)) {}

  /// Sum of coeffs[j] * zeta_n^j as given (exponents taken mod n, zeros
  /// dropped). No basis reduction is applied; see canonicalize().
  Cyclotomic(std::int64_t n, const Coeffs& coeffs) : n_(n) {
    if (n < 1) {
      throw ArithError("Cyclotomic: conductor must be positive");
    }
    for (const auto& [j, c] : coeffs) {
      add_term(mod(j, n), c);
    }
  }

  /// zeta_n^j.
  static Cyclotomic root(std::int64_t n, std::int64_t j = 1) {
    return Cyclotomic(n, Coeffs{{j, Rational(1)}});
  }

  std::int64_t conductor() const { return n_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// The value as a rational number, if it is one.
  std::optional<Rational> to_rational() const;

  bool is_rational() const { return to_rational().has_value(); }

  /// True when every coefficient is an integer.
  bool has_integral_coeffs() const {
    for (const auto& [j, c] : coeffs_) {
      if (denominator(c) != 1) {
        return false;
      }
    }
    return true;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& [j, c] : r.coeffs_) {
      c = -c;
    }
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Rational& r);
  friend Cyclotomic operator*(const Rational& r, const Cyclotomic& a) { return a * r; }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  /// Field equality (both operands are embedded into the lcm conductor).
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator==(const Cyclotomic& a, const Rational& r) { return a == Cyclotomic(r); }

  /// Structural identity of the stored representation.
  bool identical(const Cyclotomic& other) const {
    return n_ == other.n_ && coeffs_ == other.coeffs_;
  }

 private:
  friend Cyclotomic canonicalize(const Cyclotomic& c);
  friend Cyclotomic reduce_conductor(const Cyclotomic& c);
  friend Cyclotomic embed(const Cyclotomic& c, std::int64_t m);
  friend Cyclotomic galois(const Cyclotomic& c, std::int64_t s);

  void add_term(std::int64_t j, const Rational& c) {
    if (c == 0) {
      return;
    }
    auto [it, inserted] = coeffs_.try_emplace(j, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) {
        coeffs_.erase(it);
      }
    }
  }

  std::int64_t n_ = 1;
  Coeffs coeffs_;
};

namespace detail {

// Same field element with conductor m (n | m), without basis reduction.
inline Cyclotomic raw_embed(const Cyclotomic& c, std::int64_t m) {
  const std::int64_t n = c.conductor();
  if (m < 1 || m % n != 0) {
    throw ArithError("embed: conductor " + std::to_string(n) + " does not divide " +
                     std::to_string(m));
  }
  Cyclotomic::Coeffs out;
  for (const auto& [j, a] : c.coeffs()) {
    out.emplace(j * (m / n), a);
  }
  return Cyclotomic(m, out);
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) {
    r *= b;
  }
  return r;
}

}  // namespace detail

/// Rewrite into the Zumbroich basis of Q(zeta_n), n the current conductor.
inline Cyclotomic canonicalize(const Cyclotomic& c) {
  const std::int64_t n = c.n_;
  Cyclotomic cur = c;
  for (auto [p, a] : factorize(n)) {
    const std::int64_t q = detail::ipow(p, a);
    const std::int64_t q_low = q / p;
    const std::int64_t inv = modular_inverse(n / q, q);
    const std::int64_t step = n / p;
    Cyclotomic next;
    next.n_ = n;
    for (const auto& [j, coeff] : cur.coeffs_) {
      const std::int64_t top = mod(j * inv, q) / q_low;
      const bool forbidden = (p == 2) ? top == 1 : top == 0;
      if (!forbidden) {
        next.add_term(j, coeff);
      } else if (p == 2) {
        next.add_term(mod(j + step, n), -coeff);
      } else {
        for (std::int64_t i = 1; i < p; ++i) {
          next.add_term(mod(j + i * step, n), -coeff);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

/// Canonical form in the smallest cyclotomic field containing the value.
inline Cyclotomic reduce_conductor(const Cyclotomic& c) {
  Cyclotomic cur = canonicalize(c);
  if (cur.is_zero()) {
    return Cyclotomic();
  }
  bool changed = true;
  while (changed && cur.n_ > 1) {
    changed = false;
    const std::int64_t n = cur.n_;
    for (auto [p, a] : factorize(n)) {
      if (a >= 2 || p == 2) {
        // Subfield Q(zeta_{n/p}) corresponds to exponents divisible by p.
        bool all_divisible = true;
        for (const auto& [j, x] : cur.coeffs_) {
          if (j % p != 0) {
            all_divisible = false;
            break;
          }
        }
        if (!all_divisible) {
          continue;
        }
        Cyclotomic::Coeffs out;
        for (const auto& [j, x] : cur.coeffs_) {
          out.emplace(j / p, x);
        }
        cur = canonicalize(Cyclotomic(n / p, out));
        changed = true;
        break;
      }
      // p odd, p || n: terms come in blocks sharing j mod (n/p) whose
      // p-components run over 1..p-1 with one common coefficient.
      const std::int64_t m = n / p;
      std::map<std::int64_t, std::vector<std::pair<std::int64_t, Rational>>> blocks;
      for (const auto& [j, x] : cur.coeffs_) {
        blocks[j % m].emplace_back(j, x);
      }
      bool reducible = true;
      for (const auto& [r, terms] : blocks) {
        if (static_cast<std::int64_t>(terms.size()) != p - 1) {
          reducible = false;
          break;
        }
        for (const auto& t : terms) {
          if (t.second != terms.front().second) {
            reducible = false;
            break;
          }
        }
        if (!reducible) {
          break;
        }
      }
      if (!reducible) {
        continue;
      }
      Cyclotomic::Coeffs out;
      for (const auto& [r, terms] : blocks) {
        // exponent j0 with j0 = r (mod m), j0 = 0 (mod p); in Q(zeta_m) it is j0 / p.
        std::int64_t j0 = r;
        while (j0 % p != 0) {
          j0 += m;
        }
        out.emplace(j0 / p, -terms.front().second);
      }
      cur = canonicalize(Cyclotomic(m, out));
      changed = true;
      break;
    }
  }
  return cur;
}

/// Express c in Q(zeta_m); requires conductor(c) | m. Result is canonical.
inline Cyclotomic embed(const Cyclotomic& c, std::int64_t m) {
  return canonicalize(detail::raw_embed(c, m));
}

/// Apply the automorphism zeta_n -> zeta_n^s.
inline Cyclotomic galois(const Cyclotomic& c, std::int64_t s) {
  const std::int64_t n = c.n_;
  if (std::gcd(mod(s, n), n) != 1 && n > 1) {
    throw ArithError("galois: exponent " + std::to_string(s) + " not coprime to conductor " +
                     std::to_string(n));
  }
  Cyclotomic out;
  out.n_ = n;
  for (const auto& [j, x] : c.coeffs_) {
    out.add_term(mod(j * s, n), x);
  }
  return canonicalize(out);
}

/// Complex conjugate.
inline Cyclotomic conj(const Cyclotomic& c) { return galois(c, -1); }

/// Tr_{Q(zeta_n)/Q}(c) with n the conductor c is expressed in.
inline Rational trace(const Cyclotomic& c) {
  Rational r = 0;
  for (const auto& [j, x] : c.coeffs()) {
    r += x * trace_root(c.conductor(), j);
  }
  return r;
}

/// Tr_{Q(zeta_field)/Q}(c * zeta_field^shift); conductor(c) must divide field.
inline Rational trace_shifted(const Cyclotomic& c, const TraceTable& table, std::int64_t shift) {
  const std::int64_t field = table.conductor();
  const std::int64_t n = c.conductor();
  if (field % n != 0) {
    throw ArithError("trace: value of conductor " + std::to_string(n) +
                     " does not lie in Q(zeta_" + std::to_string(field) + ")");
  }
  Rational r = 0;
  for (const auto& [j, x] : c.coeffs()) {
    r += x * table(j * (field / n) + shift);
  }
  return r;
}

inline std::optional<Rational> Cyclotomic::to_rational() const {
  if (coeffs_.empty()) {
    return Rational(0);
  }
  if (coeffs_.size() == 1 && coeffs_.begin()->first == 0) {
    return coeffs_.begin()->second;
  }
  const Cyclotomic r = reduce_conductor(*this);
  if (r.n_ == 1) {
    return r.coeffs_.empty() ? Rational(0) : r.coeffs_.begin()->second;
  }
  return std::nullopt;
}

inline Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const std::int64_t m = std::lcm(a.n_, b.n_);
  Cyclotomic out = detail::raw_embed(a, m);
  for (const auto& [j, x] : b.coeffs_) {
    out.add_term(j * (m / b.n_), x);
  }
  return canonicalize(out);
}

inline Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  const std::int64_t m = std::lcm(a.n_, b.n_);
  Cyclotomic out;
  out.n_ = m;
  for (const auto& [i, x] : a.coeffs_) {
    for (const auto& [j, y] : b.coeffs_) {
      out.add_term(mod(i * (m / a.n_) + j * (m / b.n_), m), x * y);
    }
  }
  return canonicalize(out);
}

inline Cyclotomic operator*(const Cyclotomic& a, const Rational& r) {
  Cyclotomic out;
  out.n_ = a.n_;
  for (const auto& [j, x] : a.coeffs_) {
    out.add_term(j, x * r);
  }
  return canonicalize(out);
}

inline bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  const std::int64_t m = std::lcm(a.n_, b.n_);
  return embed(a, m).identical(embed(b, m));
}

inline Cyclotomic scale(const Cyclotomic& a, const Rational& r) { return a * r; }

/// GAP-style rendering, e.g. "-E(5)^2-E(5)^3" or "7".
inline std::string to_string(const Cyclotomic& c) {
  if (c.is_zero()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, x] : c.coeffs()) {
    const bool neg = x < 0;
    const Rational mag = neg ? Rational(-x) : x;
    if (neg) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    first = false;
    if (c.conductor() == 1 || j == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) {
      os << mag << '*';
    }
    os << "E(" << c.conductor() << ')';
    if (j != 1) {
      os << '^' << j;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << to_string(c); }

}  // namespace helpkit::arith

#endif  // HELPKIT_ARITH_HPP
