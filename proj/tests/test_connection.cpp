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

#include <gtest/gtest.h>

#include <random>

#include "holonomy/connection.hpp"

using namespace holonomy;

namespace {

std::shared_ptr<const FiniteGroupData> group(GroupKind k, int N = 0) {
  return std::make_shared<const FiniteGroupData>(build_group(k, N));
}

CycloNum q(long a, long b = 1) { return CycloNum(1, Rational(a, b)); }

int dense_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c] != 0) {
        piv = static_cast<int>(r);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t t = c; t < cols; ++t) rows[r][t] -= f * rows[rank][t];
    }
    ++rank;
  }
  return rank;
}

// Degree-2 ideal membership by dense rank over all d^2 words: spanned by the
// quadratic relations and [x, l] for letters x and linear relations l.  A
// cyclotomic tensor lies in it iff each rational coordinate slice does.
struct DegreeTwoIdeal {
  int d;
  std::vector<std::vector<Rational>> rows;

  explicit DegreeTwoIdeal(const PresentationData& P) : d(P.size()) {
    auto add = [&](const GradedTensor<Rational>& t) {
      std::vector<Rational> r(d * d);
      for (const auto& [c, x] : t.component(2)) r[c] = x;
      rows.push_back(r);
    };
    for (const auto& r : P.quadratic) add(relation_tensor(r, d));
    for (const auto& f : P.linear)
      for (int x = 0; x < d; ++x) add(bracket(GradedTensor<Rational>::letter(d, 2, x), form_tensor(f, d, 2)));
  }

  bool contains(const GradedTensor<CycloNum>& t, int field_order) const {
    const int base = dense_rank(rows);
    const int phi = CycloNum(field_order).degree();
    for (int s = 0; s < phi; ++s) {
      std::vector<Rational> v(d * d);
      for (const auto& [c, x] : t.component(2)) v[c] = x.lift(field_order).coeff(s);
      auto ext = rows;
      ext.push_back(v);
      if (dense_rank(ext) != base) return false;
    }
    return true;
  }
};

}  // namespace

TEST(Omega, TermCounts) {
  auto C2 = group(GroupKind::cyclic, 2), C3 = group(GroupKind::cyclic, 3);
  ConnectionForm w1 = build_omega(1, C2);
  ASSERT_EQ(w1.terms.size(), 1u);
  EXPECT_FALSE(w1.terms[0].is_pair());
  EXPECT_EQ(C2->exceptional[w1.terms[0].g].to_string(), "0");
  EXPECT_EQ(w1.dropped_infinite, 1);
  EXPECT_EQ(build_omega(2, C2).terms.size(), 6u);
  ConnectionForm w3 = build_omega(2, C3);
  int points = 0, pairs = 0;
  for (const auto& t : w3.terms) (t.is_pair() ? pairs : points)++;
  EXPECT_EQ(points, 2);
  EXPECT_EQ(pairs, 6);  // ordered (i, j) times |G|
}

TEST(Omega, TermCountsMatchClosedForm) {
  for (auto [kind, N] : {std::pair{GroupKind::cyclic, 4}, {GroupKind::dihedral, 3},
                         {GroupKind::tetrahedral, 0}, {GroupKind::octahedral, 0}})
    for (int n = 1; n <= 3; ++n) {
      auto G = group(kind, N);
      int finite = 0;
      for (const auto& p : G->exceptional) finite += p.is_infinity() ? 0 : 1;
      PresentationData P = make_presentation(n, G);
      ConnectionForm w = build_omega(P);
      EXPECT_EQ(static_cast<int>(w.terms.size()), n * finite + n * (n - 1) * G->order());
      for (const auto& t : w.terms) {
        const GeneratorSymbol& s = P.generators[t.symbol];
        if (t.is_pair()) {
          EXPECT_NE(t.i, t.j);
          EXPECT_TRUE(s.is_pair());
          // X_ij(g) = X_ji(g^-1)
          EXPECT_EQ(t.symbol, P.pair(t.j, t.i, G->inv(t.g)));
        } else {
          EXPECT_FALSE(s.is_pair());
          EXPECT_EQ(s.i, t.i);
          EXPECT_EQ(s.g, t.g);
        }
      }
    }
}

TEST(Wedge, ExampleSampleReducesToZero) {
  auto C2 = group(GroupKind::cyclic, 2);
  PresentationData P = make_presentation(2, C2);
  ConnectionForm w = build_omega(P);
  QuotientBasis Q = graded_quotient(P, 2);
  auto c = eval_wedge_square(w, {q(2), q(5)});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_FALSE(c[0].value.is_zero());
  EXPECT_TRUE(Q.reduces_to_zero(c[0].value));
  EXPECT_TRUE(DegreeTwoIdeal(P).contains(c[0].value, C2->field_order));
}

TEST(Wedge, SingleTermFormIsZero) {
  auto C2 = group(GroupKind::cyclic, 2);
  ConnectionForm w = build_omega(2, C2);
  std::erase_if(w.terms, [](const PoleTerm& t) { return t.is_pair() || t.i != 0; });
  w.by_strand = {{0}, {}};
  for (const auto& c : eval_wedge_square(w, {q(2), q(5)})) EXPECT_TRUE(c.value.is_zero());
}

TEST(Wedge, PoleHit) {
  auto C2 = group(GroupKind::cyclic, 2);
  ConnectionForm w = build_omega(2, C2);
  EXPECT_THROW(eval_wedge_square(w, {q(3), q(3)}), PoleHit);   // z_1 = z_2
  EXPECT_THROW(eval_wedge_square(w, {q(3), q(-3)}), PoleHit);  // z_1 = -z_2
  EXPECT_THROW(eval_wedge_square(w, {q(0), q(1)}), PoleHit);   // exceptional
  EXPECT_FALSE(avoids_poles(w, {q(1, 2), q(-1, 2)}));
  EXPECT_TRUE(avoids_poles(w, {q(1, 2), q(1, 3)}));
}

TEST(Wedge, AntisymmetricInStrands) {
  auto C3 = group(GroupKind::cyclic, 3);
  ConnectionForm w = build_omega(2, C3);
  SamplePoint z{q(2, 3), q(-7, 5)};
  auto ik = eval_wedge_square(w, z)[0].value;
  auto ki = bracket_forms(omega_component(w, z, 1), omega_component(w, z, 0), w.num_generators);
  EXPECT_EQ(ik, -ki);
}

TEST(Wedge, ClearingDenominatorsMatchesPolynomialEvaluation) {
  auto D3 = group(GroupKind::dihedral, 3);
  ConnectionForm w = build_omega(2, D3);
  std::mt19937_64 rng(3);
  for (int s = 0; s < 5; ++s) {
    SamplePoint z = draw_sample(w, rng);
    for (int l = 0; l < 2; ++l) {
      auto cleared = cleared_component(w, z, l), direct = omega_component(w, z, l);
      CycloNum prod = pole_product(w, z, l);
      ASSERT_EQ(cleared.size(), direct.size());
      for (const auto& [x, v] : direct) EXPECT_EQ(cleared.at(x), v * prod);
    }
  }
}

TEST(Wedge, MatchesDenseIdealOracle) {
  std::mt19937_64 rng(11);
  for (auto [kind, N, n] : {std::tuple{GroupKind::cyclic, 2, 2}, {GroupKind::cyclic, 3, 2},
                            {GroupKind::cyclic, 2, 3}}) {
    auto G = group(kind, N);
    PresentationData P = make_presentation(n, G);
    ConnectionForm w = build_omega(P);
    DegreeTwoIdeal I(P);
    for (int s = 0; s < 3; ++s)
      for (const auto& c : eval_wedge_square(w, draw_sample(w, rng)))
        EXPECT_TRUE(I.contains(c.value, G->field_order)) << G->name << " n=" << n;
  }
}

class Flatness : public ::testing::TestWithParam<std::tuple<GroupKind, int, int, int>> {};

TEST_P(Flatness, AllSamplesReduceToZero) {
  auto [kind, N, n, samples] = GetParam();
  FlatnessOptions opt;
  opt.samples = samples;
  FlatnessReport r = flatness_check(n, group(kind, N), opt);
  EXPECT_TRUE(r.all_zero);
  EXPECT_EQ(static_cast<int>(r.samples.size()), samples);
  for (const auto& s : r.samples) EXPECT_EQ(static_cast<int>(s.pairs.size()), n * (n - 1) / 2);
  EXPECT_GT(r.degree_bound, 0);
  // these sizes are small enough for the full grid
  EXPECT_TRUE(r.certification_attempted) << r.certification_note;
  EXPECT_TRUE(r.certified) << r.grid_points;
}

INSTANTIATE_TEST_SUITE_P(Groups, Flatness,
                         ::testing::Values(std::tuple{GroupKind::cyclic, 2, 2, 30},
                                           std::tuple{GroupKind::cyclic, 3, 2, 30},
                                           std::tuple{GroupKind::dihedral, 3, 2, 30},
                                           std::tuple{GroupKind::cyclic, 2, 3, 20}));

TEST(Flatness, GridCertification) {
  FlatnessReport r = flatness_check(2, group(GroupKind::cyclic, 2));
  EXPECT_TRUE(r.certification_attempted);
  EXPECT_TRUE(r.certified);
  // strand 1: pole at 0 and two pair terms; strand 2 adds two terms in z_1
  EXPECT_EQ(r.degree_bound, 5);
  EXPECT_EQ(r.grid_points, 36);
}

TEST(Flatness, RemovingPairPointRelationsBreaksIt) {
  for (auto [N, n] : {std::pair{2, 2}, {3, 2}}) {
    FlatnessOptions opt;
    opt.removed_families = {"pair_point"};
    FlatnessReport r = flatness_check(n, group(GroupKind::cyclic, N), opt);
    EXPECT_FALSE(r.all_zero) << N;
    EXPECT_GE(r.nonzero_samples, 1);
    EXPECT_FALSE(r.certified);
  }
}

TEST(Flatness, GridDetectsBrokenQuotient) {
  auto C2 = group(GroupKind::cyclic, 2);
  PresentationData P = make_presentation(2, C2);
  ConnectionForm w = build_omega(P);
  QuotientBasis broken = graded_quotient(without_families(P, {"pair_point"}), 2);
  EXPECT_FALSE(certify_on_grid(w, broken, 0, 1, wedge_degree_bounds(w, 0, 1)));
}

TEST(Flatness, DeterministicInSeed) {
  auto C3 = group(GroupKind::cyclic, 3);
  FlatnessOptions a, b;
  a.samples = b.samples = 5;
  b.seed = 7;
  auto r1 = flatness_check(2, C3, a), r2 = flatness_check(2, C3, a), r3 = flatness_check(2, C3, b);
  for (int s = 0; s < 5; ++s) EXPECT_EQ(r1.samples[s].point, r2.samples[s].point);
  EXPECT_NE(r1.samples[0].point, r3.samples[0].point);
}

TEST(Lemma, Examples) {
  auto C2 = group(GroupKind::cyclic, 2);
  const MoebiusMap& neg = C2->elements[1];
  ProjPoint zero = ProjPoint::finite(CycloNum(C2->field_order));
  // 1/(2z) + 1/(2z) = 1/z + 0
  EXPECT_TRUE(fixed_point_identity(neg, zero, q(3)));
  MoebiusMap id = MoebiusMap::identity(4);
  EXPECT_TRUE(partial_fraction_identity(id, q(1), q(5), q(2, 3)));
  // h = identity is plain partial fractions: 1/((x-z)(y-x)) = 1/((x-z)(y-z)) - 1/((x-y)(y-z))
  CycloNum x = q(1), y = q(5), z = q(2, 3);
  EXPECT_EQ(((x - z) * (y - x)).inverse(), ((x - z) * (y - z)).inverse() - ((x - y) * (y - z)).inverse());
}

TEST(Lemma, CorrectionTermIsNeeded) {
  // z -> 1/z sends infinity to 0, so the w_h(y) term is nonzero
  auto D2 = group(GroupKind::dihedral, 2);
  int h = -1;
  for (int g = 0; g < D2->order(); ++g)
    if (!D2->elements[g].apply(ProjPoint::infinity(D2->field_order)).is_infinity()) h = g;
  ASSERT_GE(h, 0);
  const MoebiusMap& m = D2->elements[h];
  CycloNum x = q(2), y = q(7, 3), z = q(-5, 2);
  EXPECT_TRUE(partial_fraction_identity(m, x, y, z));
  CycloNum lhs = ((x - z) * (y - *m.apply(x))).inverse();
  CycloNum without = ((x - z) * (y - *m.apply(z))).inverse() - ((x - *m.inverse().apply(y)) * (y - *m.apply(z))).inverse();
  EXPECT_NE(lhs, without);
}

TEST(Lemma, WrongPointFails) {
  auto C4 = group(GroupKind::cyclic, 4);
  ProjPoint one = ProjPoint::finite(CycloNum(C4->field_order, 1L));
  EXPECT_FALSE(fixed_point_identity(C4->elements[1], one, q(3)));
}

TEST(Lemma, HoldsForEveryElement) {
  for (auto [kind, N, trials] : {std::tuple{GroupKind::cyclic, 4, 5}, {GroupKind::cyclic, 2, 20},
                                 {GroupKind::cyclic, 4, 20}, {GroupKind::dihedral, 3, 20},
                                 {GroupKind::tetrahedral, 0, 20}}) {
    auto G = group(kind, N);
    LemmaReport r = lemma_identities_check(*G, trials);
    EXPECT_TRUE(r.passed()) << G->name;
    EXPECT_EQ(r.partial_fraction_checks, static_cast<long>(G->order()) * trials);
    long stab = 0;
    for (const auto& s : G->stabilizer) stab += static_cast<long>(s.size()) - 1;
    EXPECT_EQ(r.fixed_point_checks, stab * trials);
    EXPECT_TRUE(r.failures.empty());
  }
}

TEST(DOmega, RewritingMatches) {
  EXPECT_TRUE(d_omega_check(build_omega(1, group(GroupKind::cyclic, 2))).passed());
  for (int N : {2, 3}) {
    DOmegaReport r = d_omega_check(build_omega(2, group(GroupKind::cyclic, N)));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.samples, 10);
    EXPECT_GT(r.comparisons, 0);
  }
  EXPECT_TRUE(d_omega_check(build_omega(2, group(GroupKind::tetrahedral)), 3).passed());
}
