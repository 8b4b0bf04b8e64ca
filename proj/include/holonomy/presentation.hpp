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

// Presented holonomy Lie algebras of orbit configuration spaces and their
// degree-truncated graded quotients.
//
// Generators are X_ij(g) for strands i < j (X_ji(g) is read as X_ij(g^-1))
// followed by X_k(q) for exceptional points q.  Quadratic relations are kept
// as pairs of linear forms [L, R].

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "holonomy/linalg.hpp"
#include "holonomy/lyndon.hpp"
#include "holonomy/moebius.hpp"

namespace holonomy {

enum class Variant { p_n, t_n };

inline std::string to_string(Variant v) { return v == Variant::p_n ? "p_n" : "t_n"; }

struct GeneratorSymbol {
  enum class Kind { Pair, Point };
  Kind kind = Kind::Pair;
  int i = 0;  // first strand, or the strand of a point generator
  int j = 0;  // second strand (pairs only)
  int g = 0;  // group element index, or exceptional point index

  bool is_pair() const { return kind == Kind::Pair; }
  std::string name() const {
    if (is_pair())
      return "X" + std::to_string(i + 1) + std::to_string(j + 1) + "(g" + std::to_string(g) + ")";
    return "X" + std::to_string(i + 1) + "(q" + std::to_string(g) + ")";
  }
};

using LinearForm = std::map<int, Rational>;

struct QuadRelation {
  std::string family;
  LinearForm left, right;
};

/// Relation family names, in display order.
inline const std::vector<std::string>& relation_families() {
  static const std::vector<std::string> names{
      "linear",     "disjoint_pairs", "triangle", "point_far_pair",
      "point_point", "pair_point",    "point_pair"};
  return names;
}

class PresentationData {
 public:
  int n = 1;
  Variant variant = Variant::p_n;
  std::shared_ptr<const FiniteGroupData> group;
  std::vector<GeneratorSymbol> generators;
  std::vector<LinearForm> linear;
  std::vector<QuadRelation> quadratic;

  int size() const { return static_cast<int>(generators.size()); }
  int num_pairs() const { return n * (n - 1) / 2 * group->order(); }

  /// X_ij(g) for any i != j, normalized to i < j.
  int pair(int i, int j, int g) const {
    if (i == j) throw UnsupportedParams("pair generator needs distinct strands");
    if (i > j) {
      std::swap(i, j);
      g = group->inv(g);
    }
    // pairs (i, j) in lexicographic order: offset of row i, then column
    const int row = i * (2 * n - i - 1) / 2;
    return (row + (j - i - 1)) * group->order() + g;
  }
  int point(int k, int q) const {
    return num_pairs() + k * static_cast<int>(group->exceptional.size()) + q;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& s : generators) out.push_back(s.name());
    return out;
  }

  std::map<std::string, long> family_counts() const {
    std::map<std::string, long> c;
    for (const auto& f : relation_families()) c[f] = 0;
    c["linear"] = static_cast<long>(linear.size());
    for (const auto& r : quadratic) ++c[r.family];
    return c;
  }
};

inline GradedTensor<Rational> form_tensor(const LinearForm& f, int d, int D) {
  GradedTensor<Rational> t(d, D);
  for (const auto& [x, c] : f) t.add_term(1, static_cast<WordCode>(x), c);
  return t;
}

/// Degree-2 tensor of [L, R].
inline GradedTensor<Rational> relation_tensor(const QuadRelation& r, int d, int D = 2) {
  GradedTensor<Rational> t(d, std::max(D, 2));
  for (const auto& [x, a] : r.left)
    for (const auto& [y, b] : r.right) {
      if (x == y) continue;
      Rational ab = a * b;
      t.add_term(2, static_cast<WordCode>(x) * d + y, ab);
      t.add_term(2, static_cast<WordCode>(y) * d + x, -ab);
    }
  return t;
}

namespace detail {

inline LinearForm single(int x) { return {{x, Rational(1)}}; }

inline LinearForm sum_forms(std::initializer_list<LinearForm> parts) {
  LinearForm out;
  for (const auto& f : parts)
    for (const auto& [x, c] : f) {
      out[x] += c;
      if (out[x] == 0) out.erase(x);
    }
  return out;
}

inline void add_quad(PresentationData& P, const std::string& family, LinearForm l, LinearForm r) {
  P.quadratic.push_back({family, std::move(l), std::move(r)});
}

// stab(p) sum: sum_{h in stab(p)} X_ij(g h)
inline LinearForm stab_sum(const PresentationData& P, int i, int j, int g, int p) {
  LinearForm f;
  for (int h : P.group->stabilizer[p]) f[P.pair(i, j, P.group->mul(g, h))] += 1;
  return f;
}

inline void emit_point_families(PresentationData& P, int i, int j) {
  const FiniteGroupData& G = *P.group;
  const int E = static_cast<int>(G.exceptional.size());
  for (int p = 0; p < E; ++p)
    for (int q = 0; q < E; ++q)
      if (G.orbit_id[p] != G.orbit_id[q])
        add_quad(P, "point_point", single(P.point(i, p)), single(P.point(j, q)));
  for (int g = 0; g < G.order(); ++g)
    for (int p = 0; p < E; ++p) {
      const int gp = G.act(g, p);
      add_quad(P, "pair_point", single(P.pair(i, j, g)),
               sum_forms({single(P.point(j, p)), single(P.point(i, gp)), stab_sum(P, i, j, g, p)}));
      add_quad(P, "point_pair", single(P.point(j, p)),
               sum_forms({single(P.point(i, gp)), stab_sum(P, i, j, g, p)}));
    }
}

}  // namespace detail

inline PresentationData make_presentation(int n, std::shared_ptr<const FiniteGroupData> group,
                                          Variant variant = Variant::p_n) {
  if (n < 1) throw UnsupportedParams("n must be positive");
  PresentationData P;
  P.n = n;
  P.variant = variant;
  P.group = std::move(group);
  const FiniteGroupData& G = *P.group;
  const int order = G.order();
  const int E = static_cast<int>(G.exceptional.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int g = 0; g < order; ++g)
        P.generators.push_back({GeneratorSymbol::Kind::Pair, i, j, g});
  for (int k = 0; k < n; ++k)
    for (int q = 0; q < E; ++q) P.generators.push_back({GeneratorSymbol::Kind::Point, k, 0, q});

  using detail::add_quad;
  using detail::single;
  using detail::sum_forms;
  for (int i = 0; i < n; ++i) {
    LinearForm f;
    for (int q = 0; q < E; ++q) f[P.point(i, q)] += 1;
    for (int m = 0; m < n; ++m)
      if (m != i)
        for (int g = 0; g < order; ++g) f[P.pair(i, m, g)] += 1;
    P.linear.push_back(f);
  }

  if (variant == Variant::p_n) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            if (std::set<int>{i, j, k, l}.size() != 4) continue;
            for (int g = 0; g < order; ++g)
              for (int h = 0; h < order; ++h)
                add_quad(P, "disjoint_pairs", single(P.pair(i, j, g)), single(P.pair(k, l, h)));
          }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (std::set<int>{i, j, k}.size() != 3) continue;
          for (int g = 0; g < order; ++g)
            for (int h = 0; h < order; ++h)
              add_quad(P, "triangle", single(P.pair(i, j, g)),
                       sum_forms({single(P.pair(k, j, G.mul(h, g))), single(P.pair(k, i, h))}));
          for (int p = 0; p < E; ++p)
            for (int h = 0; h < order; ++h)
              add_quad(P, "point_far_pair", single(P.point(i, p)), single(P.pair(j, k, h)));
        }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) detail::emit_point_families(P, i, j);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          for (int l = k + 1; l < n; ++l)
            for (int g = 0; g < order; ++g)
              for (int h = 0; h < order; ++h) {
                add_quad(P, "disjoint_pairs", single(P.pair(i, j, g)), single(P.pair(k, l, h)));
                add_quad(P, "disjoint_pairs", single(P.pair(i, l, g)), single(P.pair(j, k, h)));
                add_quad(P, "disjoint_pairs", single(P.pair(i, k, g)), single(P.pair(j, l, h)));
              }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          for (int g = 0; g < order; ++g)
            for (int h = 0; h < order; ++h) {
              const int gh = G.mul(g, h);
              LinearForm xij = single(P.pair(i, j, g)), xik = single(P.pair(i, k, gh)),
                         xjk = single(P.pair(j, k, h));
              add_quad(P, "triangle", xij, sum_forms({xik, xjk}));
              add_quad(P, "triangle", xjk, sum_forms({xij, xik}));
              add_quad(P, "triangle", xik, sum_forms({xjk, xij}));
            }
          for (int p = 0; p < E; ++p)
            for (int g = 0; g < order; ++g) {
              add_quad(P, "point_far_pair", single(P.point(i, p)), single(P.pair(j, k, g)));
              add_quad(P, "point_far_pair", single(P.point(j, p)), single(P.pair(i, k, g)));
              add_quad(P, "point_far_pair", single(P.point(k, p)), single(P.pair(i, j, g)));
            }
        }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) detail::emit_point_families(P, i, j);
  }
  return P;
}

/// Copy of P without the quadratic relations of the given families.
inline PresentationData without_families(const PresentationData& P,
                                         const std::set<std::string>& families) {
  PresentationData out = P;
  std::erase_if(out.quadratic, [&](const QuadRelation& r) { return families.count(r.family) > 0; });
  return out;
}

/// Copy of P with every quadratic relation proportional to relation idx removed.
inline PresentationData without_relation(const PresentationData& P, std::size_t idx) {
  const int d = P.size();
  auto target = relation_tensor(P.quadratic.at(idx), d).component(2);
  PresentationData out = P;
  out.quadratic.clear();
  for (const auto& r : P.quadratic) {
    auto t = relation_tensor(r, d).component(2);
    bool proportional = false;
    if (!t.empty() && t.size() == target.size()) {
      Rational ratio = t.begin()->second / target.begin()->second;
      proportional = true;
      for (auto a = t.begin(), b = target.begin(); a != t.end(); ++a, ++b)
        if (a->first != b->first || a->second != ratio * b->second) {
          proportional = false;
          break;
        }
    }
    if (!proportional) out.quadratic.push_back(r);
  }
  return out;
}

struct QuotientOptions {
  bool eliminate = true;              // substitute one point generator per strand
  std::vector<int> keep;              // generators never chosen as pivots
  unsigned long long shuffle_seed = 0;  // nonzero: permute the quadratic relations
};

/// Degree-truncated graded quotient with a chosen basis of Lyndon brackets.
class QuotientBasis {
 public:
  struct Degree {
    int k = 0;
    LyndonIndex lyndon;
    Echelon echelon;  // ideal rows (empty tags), then basis rows
    int ideal_rank = 0;
    std::vector<int> basis;  // Lyndon columns of the chosen basis brackets
    std::vector<std::map<WordCode, Rational>> ideal_span;  // independent ideal elements
  };

  int D = 1;
  int full_letters = 0;
  int letters = 0;  // after elimination
  bool eliminated = false;
  int linear_rank = 0;
  std::vector<int> letter_of;     // generator -> letter, -1 if eliminated
  std::vector<int> generator_of;  // letter -> generator
  std::vector<std::vector<std::pair<int, Rational>>> substitution;  // generator -> letters
  std::vector<Degree> degrees;    // index k = 1..D

  int dim(int k) const { return static_cast<int>(degrees.at(k).basis.size()); }
  std::vector<int> dims() const {
    std::vector<int> out;
    for (int k = 1; k <= D; ++k) out.push_back(dim(k));
    return out;
  }

  /// A tensor over the generators, rewritten over the letters.
  template <class S>
  GradedTensor<S> to_letters(const GradedTensor<S>& x) const {
    if (x.num_letters() != full_letters)
      throw BasisMismatch("tensor is not over this presentation's generators");
    return substitute_letters(x, letters, substitution);
  }

  /// Quotient coordinates of the degree-k part of a Lie element over letters.
  template <class S>
  std::vector<S> reduce_component(int k, const std::map<WordCode, S>& comp) const {
    const Degree& deg = degrees.at(k);
    std::map<int, S> v = deg.lyndon.project(comp), acc;
    deg.echelon.eliminate(v, &acc);
    std::vector<S> out(deg.basis.size(), ScalarTraits<S>::from_rational(0));
    for (const auto& [b, c] : acc) out[b] = c;
    return out;
  }

  /// Per-degree quotient coordinates (index 0 unused) of a Lie element given
  /// over the generators.  Lie-ness is the caller's contract; see is_lie_element.
  template <class S>
  std::vector<std::vector<S>> reduce(const GradedTensor<S>& x) const {
    GradedTensor<S> y = to_letters(x);
    std::vector<std::vector<S>> out(D + 1);
    for (int k = 1; k <= std::min(D, y.max_degree()); ++k) out[k] = reduce_component(k, y.component(k));
    return out;
  }

  template <class S>
  bool reduces_to_zero(const GradedTensor<S>& x) const {
    for (const auto& v : reduce(x))
      for (const auto& c : v)
        if (!scalar_is_zero(c)) return false;
    return true;
  }

  /// Whether a degree-k element over letters lies in the ideal.
  bool in_ideal(int k, const std::map<WordCode, Rational>& comp) const {
    for (const auto& c : reduce_component(k, comp))
      if (c != 0) return false;
    return true;
  }

  std::string basis_text(int k, int b, const std::vector<std::string>& generator_names) const {
    const Word& w = degrees.at(k).lyndon.word(degrees.at(k).basis.at(b));
    std::function<std::string(const Word&)> rec = [&](const Word& u) -> std::string {
      if (u.size() == 1) return generator_names.at(generator_of.at(u[0]));
      std::size_t s = standard_split(u);
      return "[" + rec(Word(u.begin(), u.begin() + s)) + "," + rec(Word(u.begin() + s, u.end())) + "]";
    };
    return rec(w);
  }
};

namespace detail {

// [x, s] for a letter x and a homogeneous element s of degree k - 1.
inline std::map<WordCode, Rational> bracket_letter(int x, const std::map<WordCode, Rational>& s,
                                                   int k, int d) {
  std::map<WordCode, Rational> out;
  const WordCode shift = power_code(d, k - 1);
  for (const auto& [c, v] : s) {
    Rational& a = out[static_cast<WordCode>(x) * shift + c];
    a += v;
    Rational& b = out[c * d + x];
    b -= v;
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

inline SparseVec to_sparse(const std::map<int, Rational>& m) { return SparseVec(m.begin(), m.end()); }

}  // namespace detail

inline QuotientBasis graded_quotient(const PresentationData& P, int D, const QuotientOptions& opt = {}) {
  if (D < 1) throw UnsupportedParams("D must be at least 1");
  QuotientBasis Q;
  Q.D = D;
  Q.full_letters = P.size();
  Q.eliminated = opt.eliminate;

  Echelon lin;
  for (const auto& f : P.linear) lin.insert(detail::to_sparse(f));
  Q.linear_rank = lin.rank();

  // substitution of one pivot point generator per strand
  std::vector<int> pivot_of_strand(P.n, -1);
  std::set<int> keep(opt.keep.begin(), opt.keep.end());
  if (opt.eliminate) {
    for (int k = 0; k < P.n; ++k) {
      for (int x = P.size() - 1; x >= 0; --x) {
        const auto& s = P.generators[x];
        if (!s.is_pair() && s.i == k && !keep.count(x) && P.linear[k].count(x)) {
          pivot_of_strand[k] = x;
          break;
        }
      }
      if (pivot_of_strand[k] < 0) throw UnsupportedParams("no eliminable point generator on a strand");
    }
  }
  std::set<int> pivots(pivot_of_strand.begin(), pivot_of_strand.end());
  pivots.erase(-1);
  Q.letter_of.assign(P.size(), -1);
  for (int x = 0; x < P.size(); ++x) {
    if (pivots.count(x)) continue;
    Q.letter_of[x] = static_cast<int>(Q.generator_of.size());
    Q.generator_of.push_back(x);
  }
  Q.letters = static_cast<int>(Q.generator_of.size());
  Q.substitution.assign(P.size(), {});
  for (int x = 0; x < P.size(); ++x)
    if (Q.letter_of[x] >= 0) Q.substitution[x] = {{Q.letter_of[x], Rational(1)}};
  for (int k = 0; k < P.n; ++k) {
    const int piv = pivot_of_strand[k];
    if (piv < 0) continue;
    const Rational c = P.linear[k].at(piv);
    for (const auto& [x, a] : P.linear[k])
      if (x != piv) Q.substitution[piv].emplace_back(Q.letter_of[x], -a / c);
  }
  const int d = Q.letters;

  auto subst_form = [&](const LinearForm& f) {
    std::map<int, Rational> out;
    for (const auto& [x, a] : f)
      for (const auto& [y, b] : Q.substitution[x]) out[y] += a * b;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
  };

  std::vector<const QuadRelation*> quads;
  for (const auto& r : P.quadratic) quads.push_back(&r);
  if (opt.shuffle_seed) {
    std::mt19937_64 rng(opt.shuffle_seed);
    std::shuffle(quads.begin(), quads.end(), rng);
  }

  Q.degrees.resize(D + 1);
  for (int k = 1; k <= D; ++k) {
    auto& deg = Q.degrees[k];
    deg.k = k;
    deg.lyndon = LyndonIndex(d, k);
    std::vector<std::map<WordCode, Rational>> candidates;
    if (k == 1 && !opt.eliminate) {
      for (const auto& f : P.linear) {
        std::map<WordCode, Rational> c;
        for (const auto& [y, b] : subst_form(f)) c[static_cast<WordCode>(y)] = b;
        candidates.push_back(std::move(c));
      }
    }
    if (k == 2) {
      for (const auto* r : quads) {
        QuadRelation s{r->family, {}, {}};
        for (const auto& [y, b] : subst_form(r->left)) s.left[y] = b;
        for (const auto& [y, b] : subst_form(r->right)) s.right[y] = b;
        candidates.push_back(relation_tensor(s, d).component(2));
      }
    }
    if (k >= 2)
      for (int x = 0; x < d; ++x)
        for (const auto& s : Q.degrees[k - 1].ideal_span)
          candidates.push_back(detail::bracket_letter(x, s, k, d));
    for (auto& c : candidates) {
      if (deg.echelon.insert(detail::to_sparse(deg.lyndon.project(c)))) deg.ideal_span.push_back(std::move(c));
    }
    deg.ideal_rank = deg.echelon.rank();
    const int total = deg.lyndon.size();
    for (int col = 0; col < total && deg.echelon.rank() < total; ++col) {
      auto t = expand_lyndon<Rational>(deg.lyndon.word(col), d, k);
      const int b = static_cast<int>(deg.basis.size());
      if (deg.echelon.insert(detail::to_sparse(deg.lyndon.project(t.component(k))), {{b, Rational(1)}}))
        deg.basis.push_back(col);
    }
  }
  return Q;
}

/// Copy of P keeping only quadratic relations that are independent modulo
/// the linear relations and the relations kept before them.  Removing any
/// one of the survivors lowers the degree-2 ideal rank.
inline PresentationData irredundant_relations(const PresentationData& P) {
  QuotientBasis Q = graded_quotient(P, 1);
  LyndonIndex idx(Q.letters, 2);
  Echelon e;
  PresentationData out = P;
  out.quadratic.clear();
  for (const auto& r : P.quadratic) {
    auto t = Q.to_letters(relation_tensor(r, P.size()));
    if (e.insert(detail::to_sparse(idx.project(t.component(2))))) out.quadratic.push_back(r);
  }
  return out;
}

/// Per-degree verdicts of comparing two presentations on the same generators.
struct EquivalenceReport {
  std::vector<int> dims1, dims2;
  std::vector<bool> first_in_second, second_in_first, degree_ok;
  bool equivalent = true;
};

inline EquivalenceReport compare_presentations(const PresentationData& P1, const PresentationData& P2, int D) {
  if (P1.size() != P2.size() || P1.n != P2.n)
    throw BasisMismatch("presentations have different generator sets");
  QuotientOptions full;
  full.eliminate = false;
  QuotientBasis Q1 = graded_quotient(P1, D, full), Q2 = graded_quotient(P2, D, full);
  EquivalenceReport r;
  r.dims1 = Q1.dims();
  r.dims2 = Q2.dims();
  for (int k = 1; k <= D; ++k) {
    auto contained = [k](const QuotientBasis& A, const QuotientBasis& B) {
      for (const auto& s : A.degrees[k].ideal_span)
        if (!B.in_ideal(k, s)) return false;
      return true;
    };
    r.first_in_second.push_back(contained(Q1, Q2));
    r.second_in_first.push_back(contained(Q2, Q1));
    r.degree_ok.push_back(r.first_in_second.back() && r.second_in_first.back() &&
                          r.dims1[k - 1] == r.dims2[k - 1]);
    if (!r.degree_ok.back()) r.equivalent = false;
  }
  return r;
}

/// Image of every generator under a strand permutation sigma.
inline std::vector<int> permutation_action(const PresentationData& P, const std::vector<int>& sigma) {
  std::vector<int> image(P.size());
  for (int x = 0; x < P.size(); ++x) {
    const auto& s = P.generators[x];
    image[x] = s.is_pair() ? P.pair(sigma[s.i], sigma[s.j], s.g) : P.point(sigma[s.i], s.g);
  }
  return image;
}

/// Image of every generator under (g_1, ..., g_n) in G^n.
inline std::vector<int> group_action(const PresentationData& P, const std::vector<int>& g) {
  const FiniteGroupData& G = *P.group;
  std::vector<int> image(P.size());
  for (int x = 0; x < P.size(); ++x) {
    const auto& s = P.generators[x];
    image[x] = s.is_pair() ? P.pair(s.i, s.j, G.mul(G.mul(g[s.i], s.g), G.inv(g[s.j])))
                           : P.point(s.i, G.act(g[s.i], s.g));
  }
  return image;
}

struct SymmetryReport {
  struct Item {
    std::string action;
    bool degree1 = true;
    bool degree2 = true;
  };
  std::vector<Item> items;
  bool ok = true;
};

/// Whether relabeling generators by `image` maps the relation span into
/// itself in degrees 1 and 2.
inline SymmetryReport::Item relation_span_stable(const PresentationData& P, const QuotientBasis& Q,
                                                 const std::vector<int>& image, std::string label) {
  SymmetryReport::Item item{std::move(label)};
  for (const auto& f : P.linear) {
    std::map<WordCode, Rational> c;
    for (const auto& [x, a] : f) c[static_cast<WordCode>(image[x])] += a;
    if (!Q.in_ideal(1, c)) item.degree1 = false;
  }
  for (const auto& r : P.quadratic) {
    QuadRelation m{r.family, {}, {}};
    for (const auto& [x, a] : r.left) m.left[image[x]] += a;
    for (const auto& [x, a] : r.right) m.right[image[x]] += a;
    if (!Q.in_ideal(2, relation_tensor(m, P.size()).component(2))) {
      item.degree2 = false;
      break;
    }
  }
  return item;
}

inline SymmetryReport symmetry_check(const PresentationData& P) {
  QuotientOptions full;
  full.eliminate = false;
  QuotientBasis Q = graded_quotient(P, 2, full);
  SymmetryReport rep;
  for (int i = 0; i + 1 < P.n; ++i) {
    std::vector<int> sigma(P.n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[i], sigma[i + 1]);
    rep.items.push_back(relation_span_stable(P, Q, permutation_action(P, sigma),
                                             "swap(" + std::to_string(i + 1) + " " + std::to_string(i + 2) + ")"));
  }
  for (int slot = 0; slot < P.n; ++slot)
    for (int s : P.group->generators) {
      std::vector<int> g(P.n, 0);
      g[slot] = s;
      rep.items.push_back(relation_span_stable(P, Q, group_action(P, g),
                                               "g" + std::to_string(s) + "@" + std::to_string(slot + 1)));
    }
  for (const auto& it : rep.items)
    if (!it.degree1 || !it.degree2) rep.ok = false;
  return rep;
}

}  // namespace holonomy
