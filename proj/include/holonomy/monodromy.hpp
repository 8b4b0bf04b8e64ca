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

// Numeric transport of the flat connection along loops in the configuration
// space.
//
// A loop moves one strand at a time in the affine chart while the others sit
// at the basepoint.  Along a piece moving strand l, dF = omega F becomes
// F'(t) = A(t) F(t) with A(t) = omega^l(z(t)) z_l'(t), a degree-1 element over
// the quotient letters.  Later pieces multiply on the left, so the series of
// a concatenation is F(second) F(first).

#pragma once

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "holonomy/bch.hpp"
#include "holonomy/connection.hpp"

namespace holonomy {

using Basepoint = std::vector<Complex>;

struct LoopLabel {
  enum class Kind { Pair, Point };
  Kind kind = Kind::Pair;
  int i = 0;  // moving strand
  int j = 0;  // other strand (pairs only)
  int g = 0;  // group element, or exceptional point index

  static LoopLabel pair(int i, int j, int g) { return {Kind::Pair, i, j, g}; }
  static LoopLabel point(int i, int q) { return {Kind::Point, i, i, q}; }
  bool is_pair() const { return kind == Kind::Pair; }
  int generator(const PresentationData& P) const { return is_pair() ? P.pair(i, j, g) : P.point(i, g); }
  std::string to_string() const {
    if (is_pair())
      return "x" + std::to_string(i + 1) + std::to_string(j + 1) + "(g" + std::to_string(g) + ")";
    return "x" + std::to_string(i + 1) + "(q" + std::to_string(g) + ")";
  }
};

/// Every generator loop of the presentation, in generator order.
inline std::vector<LoopLabel> generator_loops(const PresentationData& P) {
  std::vector<LoopLabel> out;
  for (const auto& s : P.generators)
    out.push_back(s.is_pair() ? LoopLabel::pair(s.i, s.j, s.g) : LoopLabel::point(s.i, s.g));
  return out;
}

/// Chordal distance on the Riemann sphere; nullopt stands for infinity.
inline double chordal(std::optional<Complex> a, std::optional<Complex> b) {
  if (!a && !b) return 0.0;
  if (!a) return 2.0 / std::sqrt(1.0 + std::norm(*b));
  if (!b) return 2.0 / std::sqrt(1.0 + std::norm(*a));
  return 2.0 * std::abs(*a - *b) / std::sqrt((1.0 + std::norm(*a)) * (1.0 + std::norm(*b)));
}

/// n points, pairwise in distinct orbits and off the exceptional set, with
/// every two points of the orbits and the exceptional set at chordal
/// distance >= separation.
inline Basepoint make_basepoint(int n, const FiniteGroupData& G, unsigned long long seed = 0,
                                double separation = 0.1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    Basepoint q;
    std::vector<std::optional<Complex>> pts;
    for (const auto& p : G.exceptional)
      pts.push_back(p.is_infinity() ? std::nullopt : std::optional<Complex>(p.embed()));
    bool ok = true;
    for (int l = 0; l < n && ok; ++l) {
      Complex z(coord(rng), coord(rng));
      if (std::abs(z) > 3.0) {
        ok = false;
        break;
      }
      q.push_back(z);
      for (const auto& g : G.elements) {
        Complex w = g.apply(z);
        for (const auto& p : pts)
          if (chordal(w, p) < separation) ok = false;
        pts.push_back(w);
      }
    }
    if (ok) return q;
  }
  throw SearchFailed("no basepoint with the requested separation");
}

/// One piece of a loop: strand `strand` moves along a segment a -> b, or
/// along the arc center + radius e^{i theta}, theta from theta0 to theta0 + sweep.
struct PathPiece {
  enum class Kind { Segment, Arc };
  Kind kind = Kind::Segment;
  int strand = 0;
  Complex a, b;  // endpoints, or (center, unused) for arcs
  double radius = 0, theta0 = 0, sweep = 0;

  static PathPiece segment(int strand, Complex a, Complex b) {
    return {Kind::Segment, strand, a, b, 0, 0, 0};
  }
  static PathPiece arc(int strand, Complex center, double radius, double theta0, double sweep) {
    return {Kind::Arc, strand, center, {}, radius, theta0, sweep};
  }
  Complex at(double t) const {
    if (kind == Kind::Segment) return a + t * (b - a);
    return a + std::polar(radius, theta0 + t * sweep);
  }
  Complex velocity(double t) const {
    if (kind == Kind::Segment) return b - a;
    return Complex(0, sweep) * std::polar(radius, theta0 + t * sweep);
  }
  PathPiece reversed() const {
    if (kind == Kind::Segment) return segment(strand, b, a);
    return arc(strand, a, radius, theta0 + sweep, -sweep);
  }
};

struct LoopPath {
  Basepoint base;
  std::vector<PathPiece> pieces;
  std::string label;
  // the point the loop goes around, for generator loops
  std::optional<Complex> enclosed;
  bool encloses_infinity = false;
  double radius = 0;
  int corridor = 0;  // leading pieces that lead from the basepoint to the circle

  /// This loop followed by `next`.
  LoopPath then(const LoopPath& next) const {
    LoopPath out = *this;
    out.pieces.insert(out.pieces.end(), next.pieces.begin(), next.pieces.end());
    out.label = label + "*" + next.label;
    out.enclosed.reset();
    out.encloses_infinity = false;
    return out;
  }
  LoopPath inverse() const {
    LoopPath out = *this;
    out.pieces.clear();
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) out.pieces.push_back(it->reversed());
    out.label = "(" + label + ")^-1";
    return out;
  }
  /// The track of one strand, sampled densely; closed for closed loops.
  std::vector<Complex> track(int strand, int per_piece = 256) const {
    std::vector<Complex> out{base[strand]};
    for (const auto& p : pieces) {
      if (p.strand != strand) continue;
      for (int s = 1; s <= per_piece; ++s) out.push_back(p.at(static_cast<double>(s) / per_piece));
    }
    return out;
  }
};

inline LoopPath constant_loop(const Basepoint& base) {
  LoopPath L;
  L.base = base;
  L.label = "1";
  return L;
}

/// Winding number of a closed polyline around c.
inline int winding_number(const std::vector<Complex>& poly, Complex c) {
  double total = 0;
  for (std::size_t k = 0; k + 1 < poly.size(); ++k) total += std::arg((poly[k + 1] - c) / (poly[k] - c));
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

/// Points a moving strand must not cross: the finite exceptional points and
/// the orbits of the basepoint, except the strand's own basepoint.
inline std::vector<Complex> forbidden_points(const FiniteGroupData& G, const Basepoint& base, int strand) {
  std::vector<Complex> out;
  for (const auto& p : G.exceptional)
    if (!p.is_infinity()) out.push_back(p.embed());
  for (int l = 0; l < static_cast<int>(base.size()); ++l)
    for (int g = 0; g < G.order(); ++g) {
      if (l == strand && g == 0) continue;
      out.push_back(G.elements[g].apply(base[l]));
    }
  return out;
}

inline double segment_distance(Complex a, Complex b, Complex c) {
  Complex ab = b - a;
  double t = std::norm(ab) == 0 ? 0 : std::clamp(std::real((c - a) * std::conj(ab)) / std::norm(ab), 0.0, 1.0);
  return std::abs(a + t * ab - c);
}

enum class LoopShape { Circle, Square };

struct LoopStyle {
  LoopShape shape = LoopShape::Circle;
  std::optional<Complex> via;  // corridor waypoint
};

/// Go from the basepoint of the moving strand to the enclosed point, around
/// it once counterclockwise in the chart, and back.  The loop around infinity
/// is a large clockwise circle, which goes once around infinity positively in
/// the chart at infinity.
inline LoopPath make_loop(const FiniteGroupData& G, const Basepoint& base, const LoopLabel& label,
                          const LoopStyle& style = {}) {
  const int i = label.i;
  const Complex q = base[i];
  std::vector<Complex> forbidden = forbidden_points(G, base, i);
  LoopPath L;
  L.base = base;
  L.label = label.to_string();

  std::optional<Complex> c;
  if (label.is_pair()) {
    c = G.elements[label.g].apply(base[label.j]);
  } else if (!G.exceptional[label.g].is_infinity()) {
    c = G.exceptional[label.g].embed();
  }

  if (!c) {
    // around infinity
    double far = std::abs(q);
    for (const auto& o : forbidden) far = std::max(far, std::abs(o));
    const double R = 2 * far + 1;
    double best = -1, best_phi = 0;
    for (int k = 0; k < 72; ++k) {
      double phi = 2 * std::numbers::pi * k / 72;
      Complex u = std::polar(1.0, phi);
      // exit point: |q + s u| = R
      double qu = std::real(q * std::conj(u));
      double s = -qu + std::sqrt(qu * qu + R * R - std::norm(q));
      double clear = std::numeric_limits<double>::infinity();
      for (const auto& o : forbidden) clear = std::min(clear, segment_distance(q, q + s * u, o));
      if (clear > best) best = clear, best_phi = phi;
    }
    Complex u = std::polar(1.0, best_phi);
    double qu = std::real(q * std::conj(u));
    Complex e = q + (-qu + std::sqrt(qu * qu + R * R - std::norm(q))) * u;
    L.pieces = {PathPiece::segment(i, q, e), PathPiece::arc(i, 0, R, std::arg(e), -2 * std::numbers::pi),
                PathPiece::segment(i, e, q)};
    L.encloses_infinity = true;
    L.radius = R;
    L.corridor = 1;
    auto track = L.track(i);
    for (const auto& o : forbidden)
      if (winding_number(track, o) != -1) throw GeometryFailure("loop around infinity misses a finite point");
    return L;
  }

  double nearest = std::abs(*c - q) * 1.5;
  for (const auto& o : forbidden)
    if (std::abs(o - *c) > 1e-12) nearest = std::min(nearest, std::abs(o - *c));
  const double r = nearest / 3;
  L.enclosed = c;
  L.radius = r;

  // corridor: straight, or through the requested waypoint, or the clearest candidate
  auto clearance = [&](const std::vector<Complex>& poly) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < poly.size(); ++k)
      for (const auto& o : forbidden)
        if (std::abs(o - *c) > 1e-12) m = std::min(m, segment_distance(poly[k], poly[k + 1], o));
    return m;
  };
  auto corridor_to = [&](std::optional<Complex> via) {
    Complex from = via ? *via : q;
    Complex u = (from - *c) / std::abs(from - *c);
    std::vector<Complex> poly{q};
    if (via) poly.push_back(*via);
    poly.push_back(*c + r * u);
    return poly;
  };
  std::vector<Complex> route = corridor_to(style.via);
  if (!style.via && clearance(route) < r / 2) {
    double best = clearance(route);
    Complex d = *c - q;
    for (double t : {0.25, 0.5, 0.75})
      for (double s : {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0}) {
        auto cand = corridor_to(q + t * d + s * Complex(0, 1) * d);
        double cl = clearance(cand);
        if (cl > best) best = cl, route = cand;
      }
  }
  if (clearance(route) < r / 4) throw GeometryFailure("no corridor clears the other forbidden points");

  for (std::size_t k = 0; k + 1 < route.size(); ++k) L.pieces.push_back(PathPiece::segment(i, route[k], route[k + 1]));
  L.corridor = static_cast<int>(L.pieces.size());
  const Complex e = route.back();
  if (style.shape == LoopShape::Circle) {
    L.pieces.push_back(PathPiece::arc(i, *c, r, std::arg(e - *c), 2 * std::numbers::pi));
  } else {
    Complex u = (e - *c) / r, v = Complex(0, 1) * u;
    std::vector<Complex> corners{e, *c + r * (u + v), *c + r * (-u + v), *c + r * (-u - v), *c + r * (u - v), e};
    for (std::size_t k = 0; k + 1 < corners.size(); ++k)
      L.pieces.push_back(PathPiece::segment(i, corners[k], corners[k + 1]));
  }
  for (std::size_t k = route.size() - 1; k > 0; --k) L.pieces.push_back(PathPiece::segment(i, route[k], route[k - 1]));

  auto track = L.track(i);
  for (const auto& o : forbidden) {
    int w = winding_number(track, o);
    int expected = std::abs(o - *c) < 1e-12 ? 1 : 0;
    if (w != expected) throw GeometryFailure("loop " + L.label + " has the wrong winding around a forbidden point");
  }
  return L;
}

// ---------------------------------------------------------------------------
// Dense truncated series over the quotient letters.

struct DenseSeries {
  int d = 1, D = 0;
  std::vector<std::vector<Complex>> comp;  // comp[k] has d^k entries

  DenseSeries(int d_, int D_) : d(d_), D(D_), comp(D_ + 1) {
    for (int k = 0; k <= D; ++k) comp[k].assign(power_code(d, k), Complex(0));
  }
  static DenseSeries one(int d, int D) {
    DenseSeries s(d, D);
    s.comp[0][0] = 1;
    return s;
  }
  /// this += c * (a . x) for a degree-1 element a.
  void add_left_product(const std::vector<Complex>& a, const DenseSeries& x, Complex c) {
    for (int k = D; k >= 1; --k) {
      const std::size_t block = x.comp[k - 1].size();
      for (int l = 0; l < d; ++l) {
        Complex f = c * a[l];
        if (f == Complex(0)) continue;
        Complex* out = comp[k].data() + l * block;
        const Complex* in = x.comp[k - 1].data();
        for (std::size_t t = 0; t < block; ++t) out[t] += f * in[t];
      }
    }
  }
  void clear() {
    for (auto& c : comp) std::fill(c.begin(), c.end(), Complex(0));
  }
  void assign(const DenseSeries& x) {
    for (int k = 0; k <= D; ++k) std::copy(x.comp[k].begin(), x.comp[k].end(), comp[k].begin());
  }
  void axpy(Complex c, const DenseSeries& x) {
    for (int k = 0; k <= D; ++k)
      for (std::size_t t = 0; t < comp[k].size(); ++t) comp[k][t] += c * x.comp[k][t];
  }
  double max_diff(const DenseSeries& o) const {
    double m = 0;
    for (int k = 0; k <= D; ++k)
      for (std::size_t t = 0; t < comp[k].size(); ++t) m = std::max(m, std::abs(comp[k][t] - o.comp[k][t]));
    return m;
  }
  GradedTensor<Complex> tensor() const {
    GradedTensor<Complex> t(d, D);
    for (int k = 0; k <= D; ++k)
      for (std::size_t c = 0; c < comp[k].size(); ++c)
        if (comp[k][c] != Complex(0)) t.add_term(k, c, comp[k][c]);
    return t;
  }
};

struct TransportOptions {
  int D = 3;
  int steps = 512;
  double tolerance = 1e-9;  // on the error estimate of the finer run
  int max_steps = 1 << 16;
};

/// Transport result: the series in the free model over the letters, its
/// logarithm, and the logarithm's coordinates in the quotient basis.
struct ChenSeries {
  std::string label;
  int D = 0;
  int steps = 0;
  double error_estimate = 0;
  GradedTensor<Complex> series;
  GradedTensor<Complex> log;
  std::vector<std::vector<Complex>> coords;  // coords[k], k = 1..D
};

namespace detail {

// A strand's poles and their residues as dense letter vectors.
struct StrandPoles {
  std::vector<Complex> at;
  std::vector<std::vector<Complex>> residue;
};

inline StrandPoles strand_poles(const ConnectionForm& w, const QuotientBasis& Q, const Basepoint& base, int l) {
  StrandPoles sp;
  const FiniteGroupData& G = *w.group;
  for (int ti : w.by_strand[l]) {
    const PoleTerm& t = w.terms[ti];
    Complex pole;
    if (t.is_pair()) {
      const auto& m = G.elements[t.g].numeric();
      Complex den = m[2] * base[t.j] + m[3];
      if (std::abs(den) < 1e-14) continue;  // the term vanishes identically in z_l
      pole = (m[0] * base[t.j] + m[1]) / den;
    } else {
      pole = G.exceptional[t.g].embed();
    }
    std::vector<Complex> res(Q.letters, Complex(0));
    for (const auto& [x, r] : Q.substitution[t.symbol]) res[x] += r.get_d();
    sp.at.push_back(pole);
    sp.residue.push_back(std::move(res));
  }
  return sp;
}

inline double piece_weight(const PathPiece& p, const StrandPoles& sp) {
  double total = 0;
  for (int s = 0; s < 16; ++s) {
    double t = (s + 0.5) / 16;
    Complex z = p.at(t);
    double near = std::numeric_limits<double>::infinity();
    for (const auto& c : sp.at) near = std::min(near, std::abs(z - c));
    total += std::abs(p.velocity(t)) / near;
  }
  return total / 16;
}

inline DenseSeries integrate(const std::vector<PathPiece>& pieces, const std::vector<StrandPoles>& poles,
                             const std::vector<int>& steps, int d, int D) {
  DenseSeries F = DenseSeries::one(d, D), k1(d, D), k2(d, D), k3(d, D), k4(d, D), tmp(d, D);
  std::vector<Complex> a(d), amid;
  auto A = [&](const PathPiece& p, const StrandPoles& sp, double t) {
    std::fill(a.begin(), a.end(), Complex(0));
    Complex z = p.at(t), v = p.velocity(t);
    for (std::size_t k = 0; k < sp.at.size(); ++k) {
      Complex f = v / (z - sp.at[k]);
      for (int x = 0; x < d; ++x) a[x] += f * sp.residue[k][x];
    }
    return a;
  };
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const PathPiece& p = pieces[pi];
    const StrandPoles& sp = poles[pi];
    const int N = steps[pi];
    const double h = 1.0 / N;
    for (int s = 0; s < N; ++s) {
      const double t = s * h;
      // classical fourth-order step for F' = A F
      k1.clear();
      k1.add_left_product(A(p, sp, t), F, 1.0);
      tmp.assign(F);
      tmp.axpy(h / 2, k1);
      amid = A(p, sp, t + h / 2);
      k2.clear();
      k2.add_left_product(amid, tmp, 1.0);
      tmp.assign(F);
      tmp.axpy(h / 2, k2);
      k3.clear();
      k3.add_left_product(amid, tmp, 1.0);
      tmp.assign(F);
      tmp.axpy(h, k3);
      k4.clear();
      k4.add_left_product(A(p, sp, t + h), tmp, 1.0);
      F.axpy(h / 6, k1);
      F.axpy(h / 3, k2);
      F.axpy(h / 3, k3);
      F.axpy(h / 6, k4);
    }
  }
  return F;
}

}  // namespace detail

/// Quotient coordinates of a Lie element over the letters.
inline std::vector<std::vector<Complex>> quotient_coords(const QuotientBasis& Q, const GradedTensor<Complex>& x) {
  std::vector<std::vector<Complex>> out(Q.D + 1);
  for (int k = 1; k <= std::min(Q.D, x.max_degree()); ++k) out[k] = Q.reduce_component(k, x.component(k));
  return out;
}

/// Solves F' = A F along the loop with the fourth-order step on N and N/2
/// subdivisions, combined by Richardson extrapolation; doubles N until the
/// estimate is below tolerance.
inline ChenSeries transport(const ConnectionForm& w, const QuotientBasis& Q, const LoopPath& loop,
                            const TransportOptions& opt = {}) {
  if (opt.steps < 64) throw UnsupportedParams("transport needs at least 64 steps");
  if (opt.D > Q.D) throw UnsupportedParams("quotient is truncated below the requested degree");
  const int d = Q.letters, D = opt.D;
  std::vector<detail::StrandPoles> poles;
  std::vector<double> weight;
  double W = 0;
  for (const auto& p : loop.pieces) {
    poles.push_back(detail::strand_poles(w, Q, loop.base, p.strand));
    weight.push_back(detail::piece_weight(p, poles.back()));
    W += weight.back();
  }
  ChenSeries out;
  out.label = loop.label;
  out.D = D;
  std::vector<int> coarse;
  for (double wt : weight) coarse.push_back(std::max(4, static_cast<int>(std::ceil(opt.steps * wt / (2 * W)))));
  DenseSeries Fc = detail::integrate(loop.pieces, poles, coarse, d, D);
  for (int N = opt.steps;; N *= 2) {
    std::vector<int> fine;
    for (int c : coarse) fine.push_back(2 * c);
    DenseSeries Ff = detail::integrate(loop.pieces, poles, fine, d, D);
    out.error_estimate = Ff.max_diff(Fc) / 15;
    out.steps = N;
    if (out.error_estimate <= opt.tolerance || 2 * N > opt.max_steps) {
      if (out.error_estimate > opt.tolerance)
        throw StepUnderflow("transport of " + loop.label + " has error estimate " +
                            std::to_string(out.error_estimate) + " at " + std::to_string(N) + " steps");
      DenseSeries F = Ff;
      F.axpy(1.0 / 15, Ff);
      F.axpy(-1.0 / 15, Fc);
      out.series = F.tensor();
      break;
    }
    coarse = fine;
    Fc = std::move(Ff);
  }
  out.log = log_series(out.series);
  out.coords = quotient_coords(Q, out.log);
  return out;
}

/// Largest coordinate difference of two series' logarithms in the quotient.
inline double quotient_distance(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b) {
  double m = 0;
  for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k)
    for (std::size_t t = 0; t < std::min(a[k].size(), b[k].size()); ++t) m = std::max(m, std::abs(a[k][t] - b[k][t]));
  return m;
}

/// Quotient coordinates of log(x y) for two transported series.
inline std::vector<std::vector<Complex>> product_coords(const QuotientBasis& Q, const ChenSeries& x, const ChenSeries& y) {
  return quotient_coords(Q, log_series(x.series * y.series));
}

inline int basis_index_of_letter(const QuotientBasis& Q, int letter) {
  const auto& deg = Q.degrees.at(1);
  for (std::size_t b = 0; b < deg.basis.size(); ++b)
    if (deg.lyndon.word(deg.basis[b]) == Word{letter}) return static_cast<int>(b);
  return -1;
}

/// A quotient whose letters keep the given generators.
inline QuotientBasis quotient_keeping(const PresentationData& P, int D, std::vector<int> keep) {
  QuotientOptions opt;
  opt.keep = std::move(keep);
  return graded_quotient(P, D, opt);
}

struct LeadingTerm {
  std::string label;
  double magnitude = 0;  // of the labeled coordinate
  double phase = 0;      // its argument
  int sign = 0;          // +1 for +2 pi i, -1 for -2 pi i
  double off_label = 0;  // largest other degree-1 coordinate
  bool ok = false;
};

/// Degree-1 part against 1 +- 2 pi i X_label, within rel_tol on the magnitude,
/// abs_tol on the phase and on the other coordinates.
inline LeadingTerm leading_term(const QuotientBasis& Q, const ChenSeries& F, int generator,
                                double rel_tol = 1e-4, double abs_tol = 1e-4) {
  LeadingTerm lt;
  lt.label = F.label;
  const int b = Q.letter_of.at(generator) < 0 ? -1 : basis_index_of_letter(Q, Q.letter_of[generator]);
  if (b < 0) throw BasisMismatch("labeled generator is not a quotient letter");
  const auto& c1 = F.coords.at(1);
  lt.magnitude = std::abs(c1[b]);
  lt.phase = std::arg(c1[b]);
  lt.sign = lt.phase > 0 ? 1 : -1;
  for (std::size_t t = 0; t < c1.size(); ++t)
    if (static_cast<int>(t) != b) lt.off_label = std::max(lt.off_label, std::abs(c1[t]));
  const double two_pi = 2 * std::numbers::pi;
  lt.ok = std::abs(lt.magnitude - two_pi) <= rel_tol * two_pi &&
          std::abs(std::abs(lt.phase) - std::numbers::pi / 2) <= abs_tol && lt.off_label < abs_tol;
  return lt;
}

struct HomotopyVerdict {
  bool expected_agree = false;  // from the winding-number oracle
  bool agree = false;
  double difference = 0, tolerance = 0;
  bool consistent() const { return expected_agree == agree; }
};

namespace detail {

// Two generator loops a c a^-1 and b c b^-1 around the same point agree iff
// b^-1 a is a power of the small loop c, which for these polygonal routes
// means: out along the first corridor, along the circle, back along the
// second corridor winds zero times around every other forbidden point.
inline bool same_class_by_routes(const FiniteGroupData& G, const LoopPath& x, const LoopPath& y) {
  const int strand = x.pieces.front().strand;
  std::vector<Complex> route{x.base[strand]};
  for (int k = 0; k < x.corridor; ++k)
    for (int s = 1; s <= 256; ++s) route.push_back(x.pieces[k].at(s / 256.0));
  std::vector<Complex> back;
  for (int k = 0; k < y.corridor; ++k)
    for (int s = 1; s <= 256; ++s) back.push_back(y.pieces[k].at(s / 256.0));
  // along the circle around the enclosed point, between the two entries
  const Complex c = *x.enclosed;
  const double r = std::abs(route.back() - c);
  const double t0 = std::arg(route.back() - c), t1 = std::arg(back.back() - c);
  for (int s = 1; s <= 256; ++s) route.push_back(c + std::polar(r, t0 + (t1 - t0) * s / 256.0));
  for (auto it = back.rbegin(); it != back.rend(); ++it) route.push_back(*it);
  route.push_back(x.base[strand]);
  for (const auto& o : forbidden_points(G, x.base, strand))
    if (std::abs(o - c) > 1e-12 && winding_number(route, o) != 0) return false;
  return true;
}

}  // namespace detail

/// Transports two loops and compares them in the quotient.  For two
/// generator loops around the same point the expectation comes from the
/// route comparison above; otherwise from the winding numbers of
/// first * second^-1 around every forbidden point of every strand.
inline HomotopyVerdict homotopy_invariance_check(const ConnectionForm& w, const QuotientBasis& Q,
                                                 const LoopPath& first, const LoopPath& second,
                                                 const TransportOptions& opt = {}) {
  HomotopyVerdict v;
  const bool generator_pair = first.enclosed && second.enclosed && first.corridor > 0 && second.corridor > 0 &&
                              std::abs(*first.enclosed - *second.enclosed) < 1e-12 &&
                              first.pieces.front().strand == second.pieces.front().strand;
  if (generator_pair) {
    v.expected_agree = detail::same_class_by_routes(*w.group, first, second);
  } else {
    LoopPath closed = first.then(second.inverse());
    v.expected_agree = true;
    for (int l = 0; l < w.n; ++l) {
      auto track = closed.track(l);
      for (const auto& o : forbidden_points(*w.group, first.base, l))
        if (winding_number(track, o) != 0) v.expected_agree = false;
    }
  }
  ChenSeries a = transport(w, Q, first, opt), b = transport(w, Q, second, opt);
  v.difference = quotient_distance(a.coords, b.coords);
  v.tolerance = 10 * (a.error_estimate + b.error_estimate) + 1e-9;
  v.agree = v.difference <= v.tolerance;
  return v;
}

}  // namespace holonomy
