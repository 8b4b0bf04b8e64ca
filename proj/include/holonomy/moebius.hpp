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

// Finite rotation groups acting on P^1 by homographies.
//
// A group is enumerated exactly over one cyclotomic field Q(zeta_m) large
// enough to contain the fixed points of all of its elements.  Multiplication
// table lookups use a numeric fingerprint of each element followed by an
// exact projective comparison.

#pragma once

#include <array>
#include <complex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "holonomy/cyclo.hpp"

namespace holonomy {

using Complex = std::complex<double>;

/// A point [a:b] of P^1, normalized to [a:1] or [1:0].
class ProjPoint {
 public:
  ProjPoint() = default;
  ProjPoint(CycloNum a, CycloNum b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.is_zero() && b_.is_zero())
      throw UnsupportedParams("[0:0] is not a point of P^1");
    if (b_.is_zero()) {
      a_ = CycloNum(a_.order(), 1L);
    } else if (b_ != CycloNum(b_.order(), 1L)) {
      a_ = a_ / b_;
      b_ = CycloNum(b_.order(), 1L);
    }
  }
  static ProjPoint finite(const CycloNum& z) {
    return ProjPoint(z, CycloNum(z.order(), 1L));
  }
  static ProjPoint infinity(int order) {
    return ProjPoint(CycloNum(order, 1L), CycloNum(order));
  }

  const CycloNum& a() const { return a_; }
  const CycloNum& b() const { return b_; }
  bool is_infinity() const { return b_.is_zero(); }
  /// Affine coordinate; only meaningful for finite points.
  const CycloNum& value() const { return a_; }
  Complex embed() const {
    if (is_infinity()) return {std::numeric_limits<double>::infinity(), 0.0};
    return a_.embed();
  }
  std::string to_string() const { return is_infinity() ? "inf" : a_.to_string(); }

  friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
    return p.a_ == q.a_ && p.b_ == q.b_;
  }
  friend bool operator!=(const ProjPoint& p, const ProjPoint& q) { return !(p == q); }

 private:
  CycloNum a_, b_;
};

/// at(z) = -1/conj(z).
inline ProjPoint antipode(const ProjPoint& p) {
  return ProjPoint(-p.b().conj(), p.a().conj());
}

/// z -> (a z + b)/(c z + d), stored with its first nonzero entry equal to 1.
class MoebiusMap {
 public:
  MoebiusMap() = default;
  MoebiusMap(CycloNum a, CycloNum b, CycloNum c, CycloNum d)
      : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    if ((e_[0] * e_[3] - e_[1] * e_[2]).is_zero())
      throw UnsupportedParams("singular homography");
    int k = 0;
    while (e_[k].is_zero()) ++k;
    if (e_[k] != CycloNum(e_[k].order(), 1L)) {
      CycloNum s = e_[k].inverse();
      for (auto& x : e_) x = x * s;
    }
    for (int i = 0; i < 4; ++i) numeric_[i] = e_[i].embed();
  }
  static MoebiusMap identity(int order) {
    return MoebiusMap(CycloNum(order, 1L), CycloNum(order), CycloNum(order),
                      CycloNum(order, 1L));
  }

  const CycloNum& a() const { return e_[0]; }
  const CycloNum& b() const { return e_[1]; }
  const CycloNum& c() const { return e_[2]; }
  const CycloNum& d() const { return e_[3]; }
  const CycloNum& entry(int k) const { return e_[k]; }
  const std::array<Complex, 4>& numeric() const { return numeric_; }
  int order() const { return e_[0].order(); }

  bool is_identity() const {
    return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3];
  }

  /// Matrix product this * rhs, i.e. the map z -> this(rhs(z)).
  MoebiusMap operator*(const MoebiusMap& r) const {
    return MoebiusMap(a() * r.a() + b() * r.c(), a() * r.b() + b() * r.d(),
                      c() * r.a() + d() * r.c(), c() * r.b() + d() * r.d());
  }
  MoebiusMap inverse() const { return MoebiusMap(d(), -b(), -c(), a()); }

  ProjPoint apply(const ProjPoint& p) const {
    return ProjPoint(a() * p.a() + b() * p.b(), c() * p.a() + d() * p.b());
  }
  /// Image of a finite value; nullopt when it is sent to infinity.
  std::optional<CycloNum> apply(const CycloNum& z) const {
    CycloNum den = c() * z + d();
    if (den.is_zero()) return std::nullopt;
    return (a() * z + b()) / den;
  }
  Complex apply(Complex z) const {
    return (numeric_[0] * z + numeric_[1]) / (numeric_[2] * z + numeric_[3]);
  }

  /// M conj(M)^T is scalar, i.e. the map is a rotation of the sphere.
  bool is_unitary() const {
    CycloNum off = a() * c().conj() + b() * d().conj();
    CycloNum n1 = a() * a().conj() + b() * b().conj();
    CycloNum n2 = c() * c().conj() + d() * d().conj();
    return off.is_zero() && n1 == n2;
  }

  std::string to_string() const {
    return "[[" + a().to_string() + ", " + b().to_string() + "], [" +
           c().to_string() + ", " + d().to_string() + "]]";
  }

  friend bool operator==(const MoebiusMap& x, const MoebiusMap& y) {
    return x.e_ == y.e_;
  }

 private:
  std::array<CycloNum, 4> e_;
  std::array<Complex, 4> numeric_{};
};

inline ProjPoint apply(const MoebiusMap& g, const ProjPoint& p) { return g.apply(p); }

/// Fix(g) = {p, at(p)} for g != 1, computed inside the field of g.
inline std::pair<ProjPoint, ProjPoint> fixed_points(const MoebiusMap& g) {
  if (g.is_identity()) throw IdentityElement();
  const int m = g.order();
  // fixed points solve c z^2 + (d - a) z - b = 0 in homogeneous form
  if (g.c().is_zero()) {
    return {ProjPoint::infinity(m), ProjPoint::finite(g.b() / (g.d() - g.a()))};
  }
  CycloNum amd = g.a() - g.d();
  CycloNum disc = amd * amd + CycloNum(m, 4L) * g.b() * g.c();
  auto root = sqrt(disc);
  if (!root)
    throw FieldError("fixed points of " + g.to_string() + " leave Q(zeta_" +
                     std::to_string(m) + ")");
  CycloNum two_c = CycloNum(m, 2L) * g.c();
  return {ProjPoint::finite((amd + *root) / two_c),
          ProjPoint::finite((amd - *root) / two_c)};
}

enum class GroupKind { cyclic, dihedral, tetrahedral, octahedral, icosahedral };

inline std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::tetrahedral: return "tetrahedral";
    case GroupKind::octahedral: return "octahedral";
    case GroupKind::icosahedral: return "icosahedral";
  }
  return "?";
}

inline std::optional<GroupKind> parse_group_kind(const std::string& s) {
  for (auto k : {GroupKind::cyclic, GroupKind::dihedral, GroupKind::tetrahedral,
                 GroupKind::octahedral, GroupKind::icosahedral})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct FiniteGroupData {
  GroupKind kind = GroupKind::cyclic;
  int N = 0;
  int field_order = 1;
  std::string name;   // C3, D4, A4, S4, A5
  std::string model;  // the generators used, as text
  std::vector<MoebiusMap> elements;  // elements[0] is the identity
  std::vector<int> generators;       // indices of the model's generators
  std::vector<std::vector<int>> table;  // table[g][h] = index of g*h
  std::vector<int> inverse;
  std::vector<std::pair<int, int>> fixed;  // exceptional indices per element

  std::vector<ProjPoint> exceptional;  // sorted by text, infinity last
  std::vector<int> partner;            // index of at(p)
  std::vector<bool> in_p_half;
  std::vector<int> p_half;             // indices forming the half
  std::vector<std::vector<int>> stabilizer;
  std::vector<int> orbit_id;
  std::vector<std::vector<int>> orbits;

  int order() const { return static_cast<int>(elements.size()); }
  int mul(int g, int h) const { return table[g][h]; }
  int inv(int g) const { return inverse[g]; }

  /// Index of an element given numerically up to scale, or -1.
  int find_numeric(const std::array<Complex, 4>& m, double tol = 1e-8) const {
    double nm = 0;
    for (auto v : m) nm += std::norm(v);
    nm = std::sqrt(nm);
    int found = -1;
    for (int k = 0; k < order(); ++k) {
      const auto& e = elements[k].numeric();
      Complex ip = 0;
      double ne = 0;
      for (int t = 0; t < 4; ++t) {
        ip += std::conj(e[t]) * m[t];
        ne += std::norm(e[t]);
      }
      if (1.0 - std::abs(ip) / (nm * std::sqrt(ne)) < tol) {
        if (found >= 0) throw FieldError("ambiguous numeric element lookup");
        found = k;
      }
    }
    return found;
  }

  int find(const MoebiusMap& g) const {
    int k = find_numeric(g.numeric());
    if (k >= 0 && elements[k] == g) return k;
    return -1;
  }

  /// Index of an exceptional point, or -1.
  int find_point(const ProjPoint& p) const {
    for (std::size_t k = 0; k < exceptional.size(); ++k)
      if (exceptional[k] == p) return static_cast<int>(k);
    return -1;
  }

  /// Image of exceptional point k under element g, as an exceptional index.
  int act(int g, int k) const {
    const MoebiusMap& h = elements[g];
    const ProjPoint& p = exceptional[k];
    CycloNum x = h.a() * p.a() + h.b() * p.b();
    CycloNum y = h.c() * p.a() + h.d() * p.b();
    Complex xn = x.embed(), yn = y.embed();
    for (std::size_t t = 0; t < exceptional.size(); ++t) {
      const ProjPoint& q = exceptional[t];
      Complex qa = q.a().embed(), qb = q.b().embed();
      if (std::abs(xn * qb - yn * qa) >
          1e-8 * (std::abs(xn) + std::abs(yn)) * (std::abs(qa) + std::abs(qb)))
        continue;
      if (x * q.b() == y * q.a()) return static_cast<int>(t);
    }
    throw FieldError("exceptional locus is not G-stable");
  }
};

namespace detail {

inline int lcm_int(int a, int b) { return std::lcm(a, b); }

inline void enumerate_closure(FiniteGroupData& G, const std::vector<MoebiusMap>& gens,
                              int expected) {
  const int m = G.field_order;
  G.elements = {MoebiusMap::identity(m)};
  for (std::size_t head = 0; head < G.elements.size(); ++head) {
    for (const auto& s : gens) {
      MoebiusMap x = G.elements[head] * s;
      bool seen = false;
      for (const auto& e : G.elements) {
        if (e == x) {
          seen = true;
          break;
        }
      }
      if (!seen) G.elements.push_back(x);
      if (static_cast<int>(G.elements.size()) > expected)
        throw FieldError("group closure exceeds the classical order");
    }
  }
  if (G.order() != expected)
    throw FieldError("group closure has order " + std::to_string(G.order()) +
                     ", expected " + std::to_string(expected));
}

inline void fill_tables(FiniteGroupData& G) {
  const int n = G.order();
  G.table.assign(n, std::vector<int>(n, -1));
  G.inverse.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    const auto& x = G.elements[g].numeric();
    for (int h = 0; h < n; ++h) {
      const auto& y = G.elements[h].numeric();
      std::array<Complex, 4> p{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                               x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
      int k = G.find_numeric(p);
      if (k < 0) throw FieldError("multiplication table lookup failed");
      G.table[g][h] = k;
      if (k == 0) G.inverse[g] = h;
    }
  }
}

inline void fill_exceptional(FiniteGroupData& G, const std::vector<MoebiusMap>& gens) {
  const int n = G.order();
  std::vector<ProjPoint> pts;
  std::vector<std::pair<ProjPoint, ProjPoint>> fix(n);
  for (int g = 1; g < n; ++g) {
    fix[g] = fixed_points(G.elements[g]);
    for (const auto& p : {fix[g].first, fix[g].second})
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::vector<std::string> text;
  std::vector<int> perm(pts.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (const auto& p : pts) text.push_back(p.to_string());
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    if (pts[x].is_infinity() != pts[y].is_infinity()) return pts[y].is_infinity();
    return text[x] < text[y];
  });
  G.exceptional.clear();
  for (int k : perm) G.exceptional.push_back(pts[k]);
  const int P = static_cast<int>(G.exceptional.size());

  G.fixed.assign(n, {-1, -1});
  G.stabilizer.assign(P, {0});
  for (int g = 1; g < n; ++g) {
    G.fixed[g] = {G.find_point(fix[g].first), G.find_point(fix[g].second)};
    G.stabilizer[G.fixed[g].first].push_back(g);
    G.stabilizer[G.fixed[g].second].push_back(g);
  }

  G.partner.assign(P, -1);
  G.in_p_half.assign(P, false);
  G.p_half.clear();
  for (int k = 0; k < P; ++k) {
    G.partner[k] = G.find_point(antipode(G.exceptional[k]));
    if (G.partner[k] < 0) throw FieldError("exceptional locus is not antipode-stable");
  }
  for (int k = 0; k < P; ++k) {
    // exceptional is sorted by the same text rule, so the smaller index wins
    G.in_p_half[k] = k < G.partner[k];
    if (G.in_p_half[k]) G.p_half.push_back(k);
  }

  // orbits through the generators
  std::vector<int> parent(P);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : gens) {
    int gi = G.find(s);
    for (int k = 0; k < P; ++k) parent[root(k)] = root(G.act(gi, k));
  }
  G.orbit_id.assign(P, -1);
  G.orbits.clear();
  for (int k = 0; k < P; ++k) {
    int r = root(k);
    if (G.orbit_id[r] < 0) {
      G.orbit_id[r] = static_cast<int>(G.orbits.size());
      G.orbits.emplace_back();
    }
    G.orbit_id[k] = G.orbit_id[r];
    G.orbits[G.orbit_id[k]].push_back(k);
  }
}

}  // namespace detail

/// Enumerate one of the five kinds of finite rotation groups.
inline FiniteGroupData build_group(GroupKind kind, int N = 0) {
  FiniteGroupData G;
  G.kind = kind;
  G.N = N;
  std::vector<MoebiusMap> gens;
  int expected = 0;
  auto num = [](int m, long v) { return CycloNum(m, v); };
  switch (kind) {
    case GroupKind::cyclic:
    case GroupKind::dihedral: {
      if (N < 2) throw UnsupportedParams("N must be at least 2");
      if (N > 60) throw UnsupportedParams("N is limited to 60");
      const bool dih = kind == GroupKind::dihedral;
      // fixed points of z -> zeta^k / z are square roots of zeta_N^k
      const int m = dih ? std::lcm(4, 2 * N) : std::lcm(4, N);
      G.field_order = m;
      CycloNum rot = CycloNum::zeta(m, m / N);
      gens.emplace_back(rot, num(m, 0), num(m, 0), num(m, 1));
      G.model = "z -> zeta_" + std::to_string(N) + " z";
      if (dih) {
        gens.emplace_back(num(m, 0), num(m, 1), num(m, 1), num(m, 0));
        G.model += "; z -> 1/z";
      }
      G.name = (dih ? "D" : "C") + std::to_string(N);
      expected = dih ? 2 * N : N;
      break;
    }
    case GroupKind::tetrahedral:
    case GroupKind::octahedral: {
      const bool octa = kind == GroupKind::octahedral;
      const int m = octa ? 24 : 12;
      G.field_order = m;
      CycloNum i = CycloNum::zeta(m, m / 4);
      gens.emplace_back(num(m, 1), num(m, 0), num(m, 0), num(m, -1));
      gens.emplace_back(num(m, 1), i, num(m, 1), -i);
      G.model = "z -> -z; z -> (z + i)/(z - i)";
      if (octa) {
        gens.emplace_back(i, num(m, 0), num(m, 0), num(m, 1));
        G.model += "; z -> i z";
      }
      G.name = octa ? "S4" : "A4";
      expected = octa ? 24 : 12;
      break;
    }
    case GroupKind::icosahedral: {
      const int m = 60;
      G.field_order = m;
      auto e = [&](long k) { return CycloNum::zeta(m, 12 * k); };
      CycloNum u = e(1) - e(4), v = e(2) - e(3);
      gens.emplace_back(e(1), num(m, 0), num(m, 0), num(m, 1));
      gens.emplace_back(-u, v, v, u);
      gens.emplace_back(num(m, 0), num(m, -1), num(m, 1), num(m, 0));
      G.model =
          "z -> e z; z -> (-(e - e^4) z + (e^2 - e^3))/((e^2 - e^3) z + (e - e^4)); "
          "z -> -1/z; e = exp(2 pi i/5)";
      G.name = "A5";
      expected = 60;
      break;
    }
  }
  detail::enumerate_closure(G, gens, expected);
  detail::fill_tables(G);
  for (const auto& s : gens) G.generators.push_back(G.find(s));
  detail::fill_exceptional(G, gens);
  return G;
}

inline FiniteGroupData build_group(const std::string& kind, int N = 0) {
  auto k = parse_group_kind(kind);
  if (!k) throw UnsupportedParams("unknown group kind '" + kind + "'");
  return build_group(*k, N);
}

/// Exact audit of the structural claims about a built group.
struct GroupAudit {
  bool table_exact = true;     // every table entry equals the exact product
  bool associative = true;
  bool inverses = true;
  bool unitary = true;
  bool fixed_pairs = true;     // |Fix(g)| = 2, swapped by the antipode
  bool partition = true;       // p_half stabilizers partition G \ {1}
  bool orbit_stabilizer = true;
  bool cyclic_stabilizers = true;
  long partition_sum = 0;      // sum over p_half of (|stab(p)| - 1)
};

inline GroupAudit audit_group(const FiniteGroupData& G, bool exact_table = true) {
  GroupAudit r;
  const int n = G.order();
  for (int g = 0; g < n; ++g) {
    if (!G.elements[g].is_unitary()) r.unitary = false;
    if (G.inverse[g] < 0 || G.table[G.inverse[g]][g] != 0) r.inverses = false;
    for (int h = 0; h < n; ++h) {
      const int k = G.table[g][h];
      if (exact_table) {
        const MoebiusMap& x = G.elements[g];
        const MoebiusMap& y = G.elements[h];
        const MoebiusMap& z = G.elements[k];
        // the stored representative has entry 1 at its first nonzero slot
        std::array<CycloNum, 4> p{x.a() * y.a() + x.b() * y.c(),
                                  x.a() * y.b() + x.b() * y.d(),
                                  x.c() * y.a() + x.d() * y.c(),
                                  x.c() * y.b() + x.d() * y.d()};
        int s = 0;
        while (z.entry(s).is_zero()) ++s;
        for (int t = 0; t < 4; ++t)
          if (p[t] != p[s] * z.entry(t)) r.table_exact = false;
      }
    }
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (G.table[G.table[g][h]][k] != G.table[g][G.table[h][k]]) r.associative = false;

  std::vector<int> covered(n, 0);
  for (int g = 1; g < n; ++g) {
    auto [p, q] = G.fixed[g];
    if (p < 0 || q < 0 || p == q || G.partner[p] != q) r.fixed_pairs = false;
  }
  for (int k : G.p_half) {
    r.partition_sum += static_cast<long>(G.stabilizer[k].size()) - 1;
    for (int g : G.stabilizer[k])
      if (g != 0) ++covered[g];
  }
  for (int g = 1; g < n; ++g)
    if (covered[g] != 1) r.partition = false;
  if (r.partition_sum != n - 1) r.partition = false;

  for (std::size_t k = 0; k < G.exceptional.size(); ++k) {
    const auto& orbit = G.orbits[G.orbit_id[k]];
    if (orbit.size() * G.stabilizer[k].size() != static_cast<std::size_t>(n))
      r.orbit_stabilizer = false;
    // a generator of the stabilizer has order |stab|
    const int s = static_cast<int>(G.stabilizer[k].size());
    bool generated = false;
    for (int g : G.stabilizer[k]) {
      int x = g, ord = 1;
      while (x != 0) {
        x = G.table[x][g];
        ++ord;
      }
      if (ord == s) generated = true;
    }
    if (!generated) r.cyclic_stabilizers = false;
  }
  return r;
}

}  // namespace holonomy
