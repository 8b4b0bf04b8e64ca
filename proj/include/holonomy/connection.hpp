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

// The flat connection form on the orbit configuration space and its exact
// flatness verification.
//
// On the chart where every z_i is finite,
//   omega = sum_i omega^i dz_i,
//   omega^i = sum_p X_i(p) / (z_i - p)
//           + sum_{j != i, g} X_ij(g) d_{z_i} log(z_i (c_g z_j + d_g) - (a_g z_j + b_g)),
// with the term for p = infinity dropped (d log(z - inf) = 0).  The
// coefficient of dz_i ^ dz_k in omega ^ omega is [omega^i, omega^k].

#pragma once

#include <chrono>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "holonomy/moebius.hpp"
#include "holonomy/parallel.hpp"
#include "holonomy/presentation.hpp"

namespace holonomy {

struct PoleTerm {
  enum class Kind { Point, Pair };
  Kind kind = Kind::Point;
  int i = 0;       // strand whose differential carries the term
  int j = 0;       // other strand (pairs only)
  int g = 0;       // group element index, or exceptional point index
  int symbol = 0;  // generator index in the presentation

  bool is_pair() const { return kind == Kind::Pair; }
};

class ConnectionForm {
 public:
  int n = 1;
  std::shared_ptr<const FiniteGroupData> group;
  int num_generators = 0;
  std::vector<PoleTerm> terms;
  std::vector<std::vector<int>> by_strand;  // term indices per strand
  int dropped_infinite = 0;                 // PointPoles at infinity, omitted

  int field_order() const { return group->field_order; }
};

/// Terms listed per strand: finite exceptional points, then (j, g) in order.
inline ConnectionForm build_omega(const PresentationData& P) {
  ConnectionForm w;
  w.n = P.n;
  w.group = P.group;
  w.num_generators = P.size();
  w.by_strand.resize(P.n);
  const FiniteGroupData& G = *P.group;
  for (int i = 0; i < P.n; ++i) {
    for (int q = 0; q < static_cast<int>(G.exceptional.size()); ++q) {
      if (G.exceptional[q].is_infinity()) {
        ++w.dropped_infinite;
        continue;
      }
      w.by_strand[i].push_back(static_cast<int>(w.terms.size()));
      w.terms.push_back({PoleTerm::Kind::Point, i, i, q, P.point(i, q)});
    }
    for (int j = 0; j < P.n; ++j) {
      if (j == i) continue;
      for (int g = 0; g < G.order(); ++g) {
        w.by_strand[i].push_back(static_cast<int>(w.terms.size()));
        w.terms.push_back({PoleTerm::Kind::Pair, i, j, g, P.pair(i, j, g)});
      }
    }
  }
  return w;
}

inline ConnectionForm build_omega(int n, std::shared_ptr<const FiniteGroupData> group) {
  if (n < 1) throw UnsupportedParams("n must be at least 1");
  return build_omega(make_presentation(n, std::move(group)));
}

/// Finite values of the strands; rational in practice.
using SamplePoint = std::vector<CycloNum>;

/// A term's dz_i coefficient as numerator / denominator, both polynomial in z.
struct PoleFraction {
  CycloNum num, den;
};

inline PoleFraction pole_fraction(const ConnectionForm& w, const PoleTerm& t, const SamplePoint& z) {
  const int m = w.field_order();
  if (!t.is_pair()) return {CycloNum(m, 1L), z[t.i] - w.group->exceptional[t.g].value()};
  const MoebiusMap& g = w.group->elements[t.g];
  CycloNum cd = g.c() * z[t.j] + g.d();
  return {cd, z[t.i] * cd - (g.a() * z[t.j] + g.b())};
}

/// Whether z lies in the chart: no denominator of omega vanishes there.
inline bool avoids_poles(const ConnectionForm& w, const SamplePoint& z) {
  for (const auto& t : w.terms)
    if (pole_fraction(w, t, z).den.is_zero()) return false;
  return true;
}

/// omega^l at z, as coefficients over the generators.
inline std::map<int, CycloNum> omega_component(const ConnectionForm& w, const SamplePoint& z, int l) {
  std::map<int, CycloNum> out;
  for (int ti : w.by_strand[l]) {
    const PoleTerm& t = w.terms[ti];
    PoleFraction f = pole_fraction(w, t, z);
    if (f.den.is_zero()) throw PoleHit("sample touches the pole of the term for " + std::to_string(t.symbol));
    CycloNum v = f.num / f.den;
    auto [it, fresh] = out.try_emplace(t.symbol, v);
    if (!fresh) it->second = it->second + v;
  }
  return out;
}

/// omega^l with all of its denominators cleared: a polynomial in z, defined everywhere.
inline std::map<int, CycloNum> cleared_component(const ConnectionForm& w, const SamplePoint& z, int l) {
  const auto& idx = w.by_strand[l];
  const int T = static_cast<int>(idx.size()), m = w.field_order();
  std::vector<PoleFraction> f;
  f.reserve(T);
  for (int ti : idx) f.push_back(pole_fraction(w, w.terms[ti], z));
  // suffix[k] = product of den over terms k..T-1
  std::vector<CycloNum> suffix(T + 1, CycloNum(m, 1L));
  for (int k = T - 1; k >= 0; --k) suffix[k] = f[k].den * suffix[k + 1];
  std::map<int, CycloNum> out;
  CycloNum prefix(m, 1L);
  for (int k = 0; k < T; ++k) {
    CycloNum v = f[k].num * prefix * suffix[k + 1];
    auto [it, fresh] = out.try_emplace(w.terms[idx[k]].symbol, v);
    if (!fresh) it->second = it->second + v;
    prefix = prefix * f[k].den;
  }
  return out;
}

/// Product of all denominators of omega^l at z.
inline CycloNum pole_product(const ConnectionForm& w, const SamplePoint& z, int l) {
  CycloNum p(w.field_order(), 1L);
  for (int ti : w.by_strand[l]) p = p * pole_fraction(w, w.terms[ti], z).den;
  return p;
}

/// [a, b] for degree-1 elements a, b, as a degree-2 tensor over d generators.
inline GradedTensor<CycloNum> bracket_forms(const std::map<int, CycloNum>& a,
                                            const std::map<int, CycloNum>& b, int d) {
  GradedTensor<CycloNum> t(d, 2);
  for (const auto& [x, ax] : a)
    for (const auto& [y, by] : b) {
      if (x == y) continue;
      CycloNum c = ax * by;
      t.add_term({x, y}, c);
      t.add_term({y, x}, -c);
    }
  return t;
}

struct WedgeCoefficient {
  int i = 0, k = 0;
  GradedTensor<CycloNum> value;
};

/// The dz_i ^ dz_k coefficients (i < k) of omega ^ omega at z.
inline std::vector<WedgeCoefficient> eval_wedge_square(const ConnectionForm& w, const SamplePoint& z) {
  if (static_cast<int>(z.size()) != w.n) throw UnsupportedParams("sample has the wrong number of strands");
  std::vector<std::map<int, CycloNum>> comp;
  for (int l = 0; l < w.n; ++l) comp.push_back(omega_component(w, z, l));
  std::vector<WedgeCoefficient> out;
  for (int i = 0; i < w.n; ++i)
    for (int k = i + 1; k < w.n; ++k) out.push_back({i, k, bracket_forms(comp[i], comp[k], w.num_generators)});
  return out;
}

/// Per-variable degree bound of the cleared numerator of the dz_i ^ dz_k
/// coefficient: every denominator has degree at most 1 in each variable and
/// every numerator has degree at most that of its denominator.
inline std::vector<int> wedge_degree_bounds(const ConnectionForm& w, int i, int k) {
  std::vector<int> B(w.n, 0);
  auto count = [&](int l) {
    for (int ti : w.by_strand[l]) {
      const PoleTerm& t = w.terms[ti];
      ++B[t.i];
      if (t.is_pair()) {
        const MoebiusMap& g = w.group->elements[t.g];
        // f = z_i (c z_j + d) - (a z_j + b) has degree 1 in z_j unless c = a = 0
        if (!(g.c().is_zero() && g.a().is_zero())) ++B[t.j];
      }
    }
  };
  count(i);
  count(k);
  return B;
}

/// Random rational values of small height, rejected against the poles.
inline SamplePoint draw_sample(const ConnectionForm& w, std::mt19937_64& rng, int height = 12) {
  std::uniform_int_distribution<int> num(-height, height), den(1, height / 2 + 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    SamplePoint z;
    for (int l = 0; l < w.n; ++l) z.emplace_back(1, Rational(num(rng), den(rng)));
    if (avoids_poles(w, z)) return z;
  }
  throw SearchFailed("no pole-free sample found");
}

struct FlatnessOptions {
  int samples = 30;
  unsigned long long seed = 0;
  std::vector<std::string> removed_families;  // negative controls
  long grid_cap = 5000;  // largest grid that certification may evaluate
  bool certify = true;
};

struct FlatnessReport {
  struct PairVerdict {
    int i = 0, k = 0;
    bool zero = false;
    int nonzero_coordinates = 0;
  };
  struct Sample {
    std::vector<std::string> point;
    std::vector<PairVerdict> pairs;
    bool zero = true;
  };
  int n = 1;
  std::string group;
  std::vector<std::string> removed_families;
  int quotient_dim2 = 0;
  std::vector<Sample> samples;
  bool all_zero = true;
  int nonzero_samples = 0;
  int degree_bound = 0;        // per-variable, maximized over pairs and variables
  int total_degree_bound = 0;  // of the cleared numerator
  long grid_points = 0;        // grid needed for certification
  bool certification_attempted = false;
  bool certified = false;
  std::string certification_note;
  double seconds = 0.0;
};

/// Reduction of the cleared numerator on the integer grid prod_v {0..B_v}.
/// A polynomial of degree <= B_v in each z_v vanishing there is zero.
inline bool certify_on_grid(const ConnectionForm& w, const QuotientBasis& Q, int i, int k,
                            const std::vector<int>& B) {
  long total = 1;
  for (int b : B) total *= b + 1;
  std::vector<char> ok(total, 1);
  parallel_for(static_cast<int>(total), [&](int idx) {
    SamplePoint z;
    long r = idx;
    for (int v = 0; v < w.n; ++v) {
      z.emplace_back(1, Rational(static_cast<long>(r % (B[v] + 1))));
      r /= B[v] + 1;
    }
    auto t = bracket_forms(cleared_component(w, z, i), cleared_component(w, z, k), w.num_generators);
    ok[idx] = Q.reduces_to_zero(t) ? 1 : 0;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

inline FlatnessReport flatness_check(int n, std::shared_ptr<const FiniteGroupData> group,
                                     const FlatnessOptions& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  PresentationData P = make_presentation(n, group);
  ConnectionForm w = build_omega(P);
  PresentationData R = without_families(
      P, std::set<std::string>(opt.removed_families.begin(), opt.removed_families.end()));
  QuotientBasis Q = graded_quotient(R, 2);

  FlatnessReport rep;
  rep.n = n;
  rep.group = group->name;
  rep.removed_families = opt.removed_families;
  rep.quotient_dim2 = Q.dim(2);

  std::mt19937_64 rng(opt.seed);
  std::vector<SamplePoint> points;
  for (int s = 0; s < opt.samples; ++s) points.push_back(draw_sample(w, rng));
  rep.samples.resize(points.size());
  parallel_for(static_cast<int>(points.size()), [&](int s) {
    auto& out = rep.samples[s];
    for (const auto& z : points[s]) out.point.push_back(z.to_string());
    for (auto& c : eval_wedge_square(w, points[s])) {
      FlatnessReport::PairVerdict v{c.i, c.k, true, 0};
      for (const auto& deg : Q.reduce(c.value))
        for (const auto& x : deg)
          if (!x.is_zero()) ++v.nonzero_coordinates;
      v.zero = v.nonzero_coordinates == 0;
      out.zero = out.zero && v.zero;
      out.pairs.push_back(v);
    }
  });
  for (const auto& s : rep.samples)
    if (!s.zero) ++rep.nonzero_samples;
  rep.all_zero = rep.nonzero_samples == 0;

  std::vector<std::pair<std::pair<int, int>, std::vector<int>>> bounds;
  rep.grid_points = 0;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      auto B = wedge_degree_bounds(w, i, k);
      long grid = 1;
      int total = 0;
      for (int b : B) {
        grid *= b + 1;
        rep.degree_bound = std::max(rep.degree_bound, b);
        total += b;
      }
      rep.total_degree_bound = std::max(rep.total_degree_bound, total);
      rep.grid_points += grid;
      bounds.push_back({{i, k}, B});
    }
  if (!opt.certify) {
    rep.certification_note = "not requested";
  } else if (rep.grid_points > opt.grid_cap) {
    rep.certification_note = "grid of " + std::to_string(rep.grid_points) + " points exceeds the cap";
  } else if (!rep.all_zero) {
    rep.certification_note = "skipped: a sample is already nonzero";
  } else {
    rep.certification_attempted = true;
    rep.certified = true;
    for (const auto& [ik, B] : bounds)
      rep.certified = rep.certified && certify_on_grid(w, Q, ik.first, ik.second, B);
    rep.certification_note = rep.certified ? "cleared numerators vanish on the full grid"
                                           : "a cleared numerator is nonzero on the grid";
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// The two scalar identities behind flatness.

struct LemmaReport {
  std::string group;
  long partial_fraction_checks = 0, partial_fraction_passes = 0;  // identity (1)
  long fixed_point_checks = 0, fixed_point_passes = 0;            // identity (2)
  std::vector<std::string> failures;
  double seconds = 0.0;
  bool passed() const {
    return partial_fraction_checks == partial_fraction_passes && fixed_point_checks == fixed_point_passes;
  }
};

/// 1/((x-z)(y-h x)) = 1/((x-z)(y-h z)) - 1/((x-h^-1 y)(y-h z)) + w_h(y)/(x-h^-1 y),
/// with w_h(y) = 1/(y - h inf), or 0 when h fixes infinity.
inline bool partial_fraction_identity(const MoebiusMap& h, const CycloNum& x, const CycloNum& y,
                                      const CycloNum& z) {
  auto hx = h.apply(x), hz = h.apply(z), hiy = h.inverse().apply(y);
  if (!hx || !hz || !hiy) throw PoleHit("a point is sent to infinity");
  CycloNum a = x - z, b = y - *hx, c = y - *hz, e = x - *hiy;
  if (a.is_zero() || b.is_zero() || c.is_zero() || e.is_zero()) throw PoleHit("identity evaluated at a pole");
  CycloNum lhs = (a * b).inverse();
  CycloNum rhs = (a * c).inverse() - (e * c).inverse();
  ProjPoint hinf = h.apply(ProjPoint::infinity(h.order()));
  if (!hinf.is_infinity()) {
    CycloNum f = y - hinf.value();
    if (f.is_zero()) throw PoleHit("identity evaluated at a pole");
    rhs = rhs + (e * f).inverse();
  }
  return lhs == rhs;
}

/// 1/(z - h z) + 1/(z - h^-1 z) = 1/(z - p) + 1/(z - at(p)) for h != 1 fixing p,
/// where 1/(z - inf) = 0.
inline bool fixed_point_identity(const MoebiusMap& h, const ProjPoint& p, const CycloNum& z) {
  auto hz = h.apply(z), hiz = h.inverse().apply(z);
  if (!hz || !hiz) throw PoleHit("a point is sent to infinity");
  CycloNum a = z - *hz, b = z - *hiz;
  if (a.is_zero() || b.is_zero()) throw PoleHit("z is fixed by h");
  auto recip = [&](const ProjPoint& q) {
    if (q.is_infinity()) return CycloNum(h.order());
    CycloNum d = z - q.value();
    if (d.is_zero()) throw PoleHit("z is a fixed point");
    return d.inverse();
  };
  return a.inverse() + b.inverse() == recip(p) + recip(antipode(p));
}

inline LemmaReport lemma_identities_check(const FiniteGroupData& G, int trials = 20,
                                          unsigned long long seed = 0) {
  auto start = std::chrono::steady_clock::now();
  LemmaReport rep;
  rep.group = G.name;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 9);
  auto draw = [&] { return CycloNum(1, Rational(num(rng), den(rng))); };
  // draws until the identity is defined at the point
  auto attempt = [&](auto&& eval) {
    for (int tries = 0; tries < 10000; ++tries) {
      try {
        return eval();
      } catch (const PoleHit&) {
      }
    }
    throw SearchFailed("no admissible point for an identity");
  };
  for (int h = 0; h < G.order(); ++h)
    for (int t = 0; t < trials; ++t) {
      bool ok = attempt([&] { return partial_fraction_identity(G.elements[h], draw(), draw(), draw()); });
      ++rep.partial_fraction_checks;
      if (ok) ++rep.partial_fraction_passes;
      else rep.failures.push_back("identity (1), h = " + G.elements[h].to_string());
    }
  for (std::size_t p = 0; p < G.exceptional.size(); ++p)
    for (int h : G.stabilizer[p]) {
      if (h == 0) continue;
      for (int t = 0; t < trials; ++t) {
        bool ok = attempt([&] { return fixed_point_identity(G.elements[h], G.exceptional[p], draw()); });
        ++rep.fixed_point_checks;
        if (ok) ++rep.fixed_point_passes;
        else rep.failures.push_back("identity (2), p = " + G.exceptional[p].to_string());
      }
    }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// omega as a sum of d log of polynomials.

struct DOmegaReport {
  int samples = 0;
  long comparisons = 0, matches = 0;
  bool passed() const { return comparisons == matches; }
};

/// Compares each term's dz coefficients with the partial derivatives of
/// log(z_i - p) and log f, f = z_i (c z_j + d) - (a z_j + b): the dz_i
/// coefficient of X_ij(g) must be 1/(z_i - g z_j) and the dz_j coefficient of
/// the same generator (carried by the term for (j, i, g^-1)) must be
/// (c z_i - a)/f.  Hence omega is closed.
inline DOmegaReport d_omega_check(const ConnectionForm& w, int samples = 10, unsigned long long seed = 0) {
  DOmegaReport rep;
  std::mt19937_64 rng(seed);
  const FiniteGroupData& G = *w.group;
  for (int s = 0; s < samples; ++s) {
    SamplePoint z = draw_sample(w, rng);
    ++rep.samples;
    for (const auto& t : w.terms) {
      PoleFraction f = pole_fraction(w, t, z);
      CycloNum value = f.num / f.den;
      ++rep.comparisons;
      if (!t.is_pair()) {
        if (value == (z[t.i] - G.exceptional[t.g].value()).inverse()) ++rep.matches;
        continue;
      }
      const MoebiusMap& g = G.elements[t.g];
      // direct form 1/(z_i - g z_j), which is 0 when g z_j = inf
      auto gz = g.apply(z[t.j]);
      CycloNum direct = gz ? (z[t.i] - *gz).inverse() : CycloNum(w.field_order());
      if (value != direct) continue;
      // the partner term in dz_j must be d_{z_j} log f for the same f
      const PoleTerm* partner = nullptr;
      for (int ti : w.by_strand[t.j]) {
        const PoleTerm& u = w.terms[ti];
        if (u.is_pair() && u.j == t.i && u.g == G.inv(t.g)) partner = &u;
      }
      if (!partner || partner->symbol != t.symbol) continue;
      PoleFraction pf = pole_fraction(w, *partner, z);
      CycloNum fpoly = z[t.i] * (g.c() * z[t.j] + g.d()) - (g.a() * z[t.j] + g.b());
      CycloNum dj = (z[t.i] * g.c() - g.a()) / fpoly;
      if (pf.num / pf.den == dj) ++rep.matches;
    }
  }
  return rep;
}

}  // namespace holonomy
