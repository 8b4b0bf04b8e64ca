// Copyright 2026 The holonomy-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact arithmetic in the cyclotomic field Q(zeta_m).
//
// Elements are stored in the power basis {zeta^k : 0 <= k < phi(m)} of
// Q[x]/Phi_m(x), as an integer numerator vector over one positive common
// denominator.  Every operation reduces mod Phi_m and strips the content, so
// two values are equal iff their stored data are equal.

#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "holonomy/errors.hpp"

namespace holonomy {

using Integer = mpz_class;
using Rational = mpq_class;

namespace detail {

inline int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline int moebius_mu(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

using IntPoly = std::vector<Integer>;  // low degree first

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by the monic polynomial x^d - 1.
inline IntPoly poly_div_xd_minus_one(IntPoly a, int d) {
  const int deg = static_cast<int>(a.size()) - 1;
  IntPoly q(deg - d + 1);
  for (int i = deg; i >= d; --i) {
    q[i - d] = a[i];
    a[i - d] += a[i];
    a[i] = 0;
  }
  return q;
}

inline IntPoly cyclotomic_polynomial(int m) {
  IntPoly num{1};
  std::vector<int> den_divisors;
  for (int d = 1; d <= m; ++d) {
    if (m % d) continue;
    IntPoly xd(d + 1);
    xd[0] = -1;
    xd[d] = 1;
    const int mu = moebius_mu(m / d);
    if (mu == 1) num = poly_mul(num, xd);
    if (mu == -1) den_divisors.push_back(d);
  }
  for (int d : den_divisors) num = poly_div_xd_minus_one(num, d);
  while (num.size() > 1 && num.back() == 0) num.pop_back();
  return num;
}

inline std::optional<Rational> recognize_rational(double v,
                                                  long max_den = 200000,
                                                  double tol = 1e-9) {
  if (!std::isfinite(v) || std::abs(v) > 1e12) return std::nullopt;
  // continued-fraction convergents
  long double x = v;
  long double h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int it = 0; it < 64; ++it) {
    long double a = std::floor(x);
    long double h2 = a * h0 + h1, k2 = a * k0 + k1;
    if (k2 > max_den) break;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    if (std::abs(static_cast<long double>(v) - h0 / k0) <=
        tol * std::max<long double>(1.0L, std::abs(v))) {
      Rational r(Integer(std::to_string(static_cast<long long>(h0))),
                 Integer(std::to_string(static_cast<long long>(k0))));
      r.canonicalize();
      return r;
    }
    long double frac = x - a;
    if (frac < 1e-18L) break;
    x = 1.0L / frac;
  }
  return std::nullopt;
}

}  // namespace detail

/// Structure constants of Q(zeta_m), shared by all elements of that field.
struct CycloField {
  int order = 1;
  int degree = 1;
  detail::IntPoly modulus;                  // monic Phi_m
  std::vector<std::vector<Integer>> power;  // x^e mod Phi_m
  std::vector<int> units;                   // residues coprime to m
  // Conjugate embeddings sigma_u(x) for u in units, used to guide square roots.
  Eigen::MatrixXcd embeddings;
  Eigen::PartialPivLU<Eigen::MatrixXcd> embeddings_lu;

  explicit CycloField(int m) : order(m), degree(detail::euler_phi(m)) {
    modulus = detail::cyclotomic_polynomial(m);
    const int count = std::max(m, 2 * degree - 1);
    power.assign(count, std::vector<Integer>(degree));
    std::vector<Integer> cur(degree);
    cur[0] = 1;
    for (int e = 0; e < count; ++e) {
      power[e] = cur;
      // multiply by x and reduce the overflow coefficient
      Integer top = cur[degree - 1];
      for (int k = degree - 1; k > 0; --k) cur[k] = cur[k - 1];
      cur[0] = 0;
      if (top != 0)
        for (int k = 0; k < degree; ++k) cur[k] -= top * modulus[k];
    }
    for (int u = 1; u <= m; ++u)
      if (std::gcd(u, m) == 1) units.push_back(u);
    embeddings.resize(degree, degree);
    for (int r = 0; r < degree; ++r)
      for (int k = 0; k < degree; ++k)
        embeddings(r, k) = std::polar(
            1.0, 2.0 * std::numbers::pi * units[r] * k / static_cast<double>(m));
    embeddings_lu.compute(embeddings);
  }
};

inline const CycloField& cyclo_field(int m) {
  if (m < 1) throw UnsupportedParams("cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CycloField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<CycloField>(m);
  return *slot;
}

class CycloNum {
 public:
  CycloNum() : CycloNum(1) {}
  explicit CycloNum(int order) : field_(&cyclo_field(order)) {
    num_.assign(field_->degree, 0);
    den_ = 1;
  }
  CycloNum(int order, const Rational& r) : CycloNum(order) {
    num_[0] = r.get_num();
    den_ = r.get_den();
  }
  CycloNum(int order, long value) : CycloNum(order, Rational(value)) {}

  /// zeta_m^e for any integer e.
  static CycloNum zeta(int order, long exponent = 1) {
    CycloNum out(order);
    long e = exponent % order;
    if (e < 0) e += order;
    const auto& row = out.field_->power[e];
    std::copy(row.begin(), row.end(), out.num_.begin());
    return out;
  }

  static CycloNum from_coeffs(int order, const std::vector<Rational>& coeffs) {
    CycloNum out(order);
    CycloNum acc(order);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (coeffs[k] != 0) acc += zeta(order, static_cast<long>(k)) * coeffs[k];
    out = acc;
    return out;
  }

  int order() const { return field_->order; }
  int degree() const { return field_->degree; }
  const CycloField& field() const { return *field_; }

  Rational coeff(int k) const {
    Rational r(num_.at(k), den_);
    r.canonicalize();
    return r;
  }
  std::vector<Rational> coeffs() const {
    std::vector<Rational> out;
    for (int k = 0; k < degree(); ++k) out.push_back(coeff(k));
    return out;
  }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(),
                       [](const Integer& c) { return c == 0; });
  }
  bool is_rational() const {
    return std::all_of(num_.begin() + 1, num_.end(),
                       [](const Integer& c) { return c == 0; });
  }
  /// Largest absolute numerator or the denominator, whichever is bigger.
  Integer height() const {
    Integer h = den_;
    for (const auto& c : num_) h = std::max<Integer>(h, abs(c));
    return h;
  }

  /// Image in Q(zeta_n) for a multiple n of the current order.
  CycloNum lift(int new_order) const {
    if (new_order == order()) return *this;
    if (new_order % order() != 0)
      throw UnsupportedParams("cannot lift Q(zeta_" + std::to_string(order()) +
                              ") into Q(zeta_" + std::to_string(new_order) + ")");
    const int step = new_order / order();
    CycloNum out(new_order);
    for (int k = 0; k < degree(); ++k) {
      if (num_[k] == 0) continue;
      const auto& row = out.field_->power[(k * step) % new_order];
      for (int t = 0; t < out.degree(); ++t) out.num_[t] += num_[k] * row[t];
    }
    out.den_ = den_;
    out.normalize();
    return out;
  }

  /// Field automorphism zeta -> zeta^j (j coprime to m).
  CycloNum galois(int j) const {
    const int m = order();
    if (m <= 2) return *this;
    CycloNum out(m);
    long jj = j % m;
    if (jj < 0) jj += m;
    for (int k = 0; k < degree(); ++k) {
      if (num_[k] == 0) continue;
      const auto& row = field_->power[(jj * k) % m];
      for (int t = 0; t < degree(); ++t) out.num_[t] += num_[k] * row[t];
    }
    out.den_ = den_;
    out.normalize();
    return out;
  }

  /// zeta -> zeta^{-1}; complex conjugation under every standard embedding.
  CycloNum conj() const { return galois(order() - 1); }

  CycloNum inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) {
      Rational r = coeff(0);
      return CycloNum(order(), Rational(1) / r);
    }
    // a^{-1} = prod_{u != 1} sigma_u(a) / N(a)
    CycloNum partial(order(), 1L);
    for (int u : field_->units)
      if (u != 1) partial = partial * galois(u);
    CycloNum norm = partial * *this;
    if (!norm.is_rational())
      throw FieldError("norm of a cyclotomic number is not rational");
    return partial * (Rational(1) / norm.coeff(0));
  }

  std::complex<double> embed() const { return embed_at(1); }

  /// Evaluation at exp(2 i pi j / m).
  std::complex<double> embed_at(int j) const {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < degree(); ++k) {
      if (num_[k] == 0) continue;
      double c;
      if (den_ == 1) {
        c = num_[k].get_d();
      } else {
        Rational q(num_[k], den_);
        c = q.get_d();
      }
      acc += c * std::polar(1.0, 2.0 * std::numbers::pi * j * k /
                                     static_cast<double>(order()));
    }
    return acc;
  }

  /// "c0 + c1*z + c2*z^2", z = zeta_m, zero terms omitted.
  std::string to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int k = 0; k < degree(); ++k) {
      if (num_[k] == 0) continue;
      if (!first) out << " + ";
      first = false;
      out << coeff(k).get_str();
      if (k == 1) out << "*z";
      if (k > 1) out << "*z^" << k;
    }
    if (first) out << "0";
    return out.str();
  }

  CycloNum operator-() const {
    CycloNum out = *this;
    for (auto& c : out.num_) c = -c;
    return out;
  }

  CycloNum& operator+=(const CycloNum& rhs) { return *this = *this + rhs; }
  CycloNum& operator-=(const CycloNum& rhs) { return *this = *this - rhs; }
  CycloNum& operator*=(const CycloNum& rhs) { return *this = *this * rhs; }
  CycloNum& operator/=(const CycloNum& rhs) { return *this = *this / rhs; }
  CycloNum& operator*=(const Rational& rhs) { return *this = *this * rhs; }

  friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    return add(a, b, false);
  }
  friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
    return add(a, b, true);
  }

  friend CycloNum operator*(const CycloNum& a0, const CycloNum& b0) {
    if (a0.order() != b0.order()) {
      // Q = Q(zeta_1) embeds in every field
      if (a0.order() == 1) return b0 * a0.coeff(0);
      if (b0.order() == 1) return a0 * b0.coeff(0);
      throw OrderMismatch(a0.order(), b0.order());
    }
    const int n = a0.degree();
    CycloNum out(a0.order());
    if (a0.is_zero() || b0.is_zero()) return out;
    std::vector<Integer> prod(2 * n - 1);
    for (int i = 0; i < n; ++i) {
      if (a0.num_[i] == 0) continue;
      for (int j = 0; j < n; ++j)
        if (b0.num_[j] != 0) prod[i + j] += a0.num_[i] * b0.num_[j];
    }
    for (int e = 0; e < n; ++e) out.num_[e] = prod[e];
    for (int e = n; e < 2 * n - 1; ++e) {
      if (prod[e] == 0) continue;
      const auto& row = a0.field_->power[e];
      for (int t = 0; t < n; ++t) out.num_[t] += prod[e] * row[t];
    }
    out.den_ = a0.den_ * b0.den_;
    out.normalize();
    return out;
  }

  friend CycloNum operator*(const CycloNum& a, const Rational& r) {
    CycloNum out = a;
    for (auto& c : out.num_) c *= r.get_num();
    out.den_ *= r.get_den();
    if (r == 0) {
      for (auto& c : out.num_) c = 0;
      out.den_ = 1;
    }
    out.normalize();
    return out;
  }
  friend CycloNum operator*(const Rational& r, const CycloNum& a) {
    return a * r;
  }
  friend CycloNum operator/(const CycloNum& a, const Rational& r) {
    if (r == 0) throw DivisionByZero();
    return a * (Rational(1) / r);
  }
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) {
    return a * b.inverse();
  }

  friend bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.order() != b.order()) {
      if (a.order() == 1 || b.order() == 1)
        return a.is_rational() && b.is_rational() && a.coeff(0) == b.coeff(0);
      return false;
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const CycloNum& a, const CycloNum& b) {
    return !(a == b);
  }
  /// Arbitrary total order on canonical data, for ordered containers.
  friend bool operator<(const CycloNum& a, const CycloNum& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.num_ < b.num_;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<int>{}(order());
    for (const auto& c : num_)
      h = h * 1000003u ^ std::hash<std::string>{}(c.get_str(16));
    return h ^ std::hash<std::string>{}(den_.get_str(16));
  }

 private:
  static CycloNum add(const CycloNum& a, const CycloNum& b, bool subtract) {
    if (a.order() != b.order()) {
      if (a.order() == 1) return add(a.lift(b.order()), b, subtract);
      if (b.order() == 1) return add(a, b.lift(a.order()), subtract);
      throw OrderMismatch(a.order(), b.order());
    }
    CycloNum out(a.order());
    if (a.den_ == b.den_) {
      for (int k = 0; k < a.degree(); ++k)
        out.num_[k] = subtract ? Integer(a.num_[k] - b.num_[k]) : Integer(a.num_[k] + b.num_[k]);
      out.den_ = a.den_;
    } else {
      for (int k = 0; k < a.degree(); ++k) {
        Integer lhs = a.num_[k] * b.den_, rhs = b.num_[k] * a.den_;
        out.num_[k] = subtract ? Integer(lhs - rhs) : Integer(lhs + rhs);
      }
      out.den_ = a.den_ * b.den_;
    }
    out.normalize();
    return out;
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    Integer g = den_;
    for (const auto& c : num_) {
      if (g == 1) break;
      if (c != 0) g = gcd(g, c);
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    if (g != 1) {
      for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
  }

  const CycloField* field_;
  std::vector<Integer> num_;
  Integer den_;
};

/// Exact square root inside Q(zeta_m), or nullopt when none exists there.
///
/// Candidates are assembled from numeric square roots at every conjugate
/// embedding (one sign choice per complex-conjugate pair), recognized as
/// rational coordinates, and accepted only after an exact check.
inline std::optional<CycloNum> sqrt(const CycloNum& a) {
  if (a.is_zero()) return a;
  const CycloField& f = a.field();
  const int n = f.degree;
  const int m = f.order;
  std::vector<std::complex<double>> roots(n);
  for (int r = 0; r < n; ++r) roots[r] = std::sqrt(a.embed_at(f.units[r]));
  // pair u with m-u; only the representative's sign is free
  std::vector<int> partner(n, -1), reps;
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s)
      if ((f.units[r] + f.units[s]) % m == 0 && m > 2) partner[r] = s;
    if (partner[r] < 0 || partner[r] >= r) reps.push_back(r);
  }
  // the overall sign is irrelevant, so the first representative stays positive
  const int free_bits = std::max(0, static_cast<int>(reps.size()) - 1);
  for (long mask = 0; mask < (1L << free_bits); ++mask) {
    Eigen::VectorXcd s(n);
    for (std::size_t idx = 0; idx < reps.size(); ++idx) {
      const int r = reps[idx];
      const double sign = idx > 0 && ((mask >> (idx - 1)) & 1) ? -1.0 : 1.0;
      s(r) = sign * roots[r];
      if (partner[r] >= 0 && partner[r] != r) s(partner[r]) = std::conj(s(r));
    }
    Eigen::VectorXcd c = f.embeddings_lu.solve(s);
    std::vector<Rational> coeffs;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      if (std::abs(c(k).imag()) > 1e-6 * std::max(1.0, std::abs(c(k)))) ok = false;
      auto q = detail::recognize_rational(c(k).real());
      if (!q) ok = false;
      else coeffs.push_back(*q);
    }
    if (!ok) continue;
    CycloNum x = CycloNum::from_coeffs(m, coeffs);
    if (x * x == a) return x;
  }
  return std::nullopt;
}

}  // namespace holonomy

template <>
struct std::hash<holonomy::CycloNum> {
  std::size_t operator()(const holonomy::CycloNum& x) const { return x.hash(); }
};
