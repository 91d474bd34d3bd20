// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for the tests: cyclotomic numbers as
// polynomials reduced modulo the n-th cyclotomic polynomial.

#ifndef HELPKIT_TESTS_ORACLE_HPP
#define HELPKIT_TESTS_ORACLE_HPP

#include "helpkit/arith.hpp"

#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using helpkit::arith::Rational;
using Poly = std::vector<Rational>;  // coefficient of x^i at index i

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) {
    p.pop_back();
  }
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

// Quotient and remainder by a monic divisor.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  if (a.size() < m.size()) {
    return {{}, a};
  }
  Poly q(a.size() - dm, Rational(0));
  for (std::size_t i = a.size(); i-- > dm;) {
    const Rational c = a[i];
    if (c == 0) {
      continue;
    }
    q[i - dm] = c;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[i - dm + j] -= c * m[j];
    }
  }
  trim(a);
  trim(q);
  return {q, a};
}

/// Phi_n by dividing x^n - 1 by Phi_d for the proper divisors d.
inline Poly cyclotomic_poly(std::int64_t n) {
  static std::map<std::int64_t, Poly> cache;
  if (auto it = cache.find(n); it != cache.end()) {
    return it->second;
  }
  Poly p(static_cast<std::size_t>(n) + 1, Rational(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) {
      p = divmod(p, cyclotomic_poly(d)).first;
    }
  }
  cache[n] = p;
  return p;
}

inline std::int64_t md(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

/// sum coeffs[j] zeta_n^(s j), reduced modulo Phi_n.
inline Poly reduce(const std::map<std::int64_t, Rational>& coeffs, std::int64_t n, std::int64_t s = 1) {
  Poly p(static_cast<std::size_t>(n), Rational(0));
  for (const auto& [j, c] : coeffs) {
    p[static_cast<std::size_t>(md(j * s, n))] += c;
  }
  return divmod(p, cyclotomic_poly(n)).second;
}

/// The element as a reduced polynomial in zeta_m, m a multiple of its conductor.
inline Poly value_in(const helpkit::arith::Cyclotomic& c, std::int64_t m) {
  std::map<std::int64_t, Rational> coeffs;
  for (const auto& [j, x] : c.coeffs()) {
    coeffs[j * (m / c.conductor())] += x;
  }
  return reduce(coeffs, m);
}

/// Trace over Q(zeta_n) as the constant of the sum of all conjugates.
inline Rational brute_trace(const std::map<std::int64_t, Rational>& coeffs, std::int64_t n) {
  Poly sum;
  for (std::int64_t s = 1; s <= n; ++s) {
    if (std::gcd(s, n) != 1) {
      continue;
    }
    Poly t = reduce(coeffs, n, s);
    if (sum.size() < t.size()) {
      sum.resize(t.size(), Rational(0));
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      sum[i] += t[i];
    }
  }
  trim(sum);
  // A rational result reduces to a constant polynomial.
  if (sum.size() > 1) {
    throw std::logic_error("brute_trace: conjugate sum is not rational");
  }
  return sum.empty() ? Rational(0) : sum[0];
}

inline Rational brute_trace(const helpkit::arith::Cyclotomic& c) {
  return brute_trace(c.coeffs(), c.conductor());
}

}  // namespace oracle

#endif  // HELPKIT_TESTS_ORACLE_HPP
