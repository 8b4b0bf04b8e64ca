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

#include "holonomy/bch.hpp"
#include "holonomy/lyndon.hpp"

using namespace holonomy;
using QT = GradedTensor<Rational>;

namespace {

QT random_lie(std::mt19937_64& rng, int d, int D, int max_k) {
  std::uniform_int_distribution<int> coef(-3, 3);
  QT t(d, D);
  for (int k = 1; k <= max_k; ++k)
    for (const auto& w : lyndon_words(d, k)) t += expand_lyndon<Rational>(w, d, D) * Rational(coef(rng));
  return t;
}

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Dynkin's explicit formula: sum over m and exponent pairs (r_i, s_i) with
// r_i + s_i >= 1 of (-1)^(m-1)/m times the right-nested bracket of
// x^r1 y^s1 ... x^rm y^sm divided by (sum of exponents) * prod r_i! s_i!.
QT dynkin_bch(const QT& x, const QT& y) {
  const int d = x.num_letters(), D = x.max_degree();
  QT total(d, D);
  std::vector<std::pair<int, int>> rs;
  std::function<void(int, int)> rec = [&](int m, int used) {
    if (static_cast<int>(rs.size()) == m) {
      std::vector<const QT*> seq;
      Rational denom = used;
      for (auto [r, s] : rs) {
        for (int t = 0; t < r; ++t) seq.push_back(&x);
        for (int t = 0; t < s; ++t) seq.push_back(&y);
        denom *= factorial(r) * factorial(s);
      }
      QT term = *seq.back();
      for (int t = static_cast<int>(seq.size()) - 2; t >= 0; --t) term = bracket(*seq[t], term);
      total += term * (Rational(m % 2 ? 1 : -1, m) / denom);
      return;
    }
    for (int r = 0; used + r <= D; ++r)
      for (int s = (r == 0 ? 1 : 0); used + r + s <= D; ++s) {
        rs.push_back({r, s});
        rec(m, used + r + s);
        rs.pop_back();
      }
  };
  for (int m = 1; m <= D; ++m) rec(m, 0);
  return total;
}

}  // namespace

TEST(Bch, Identities) {
  const int d = 2, D = 4;
  QT x = QT::letter(d, D, 0), y = QT::letter(d, D, 1), zero(d, D);
  EXPECT_EQ(bch(x, zero), x);
  EXPECT_TRUE(bch(x, -x).is_zero());
  QT z = bch(x, y);
  EXPECT_EQ(z.part(1), x + y);
  EXPECT_EQ(z.part(2), bracket(x, y) * Rational(1, 2));
  QT third = bracket(x, bracket(x, y)) * Rational(1, 12) + bracket(y, bracket(y, x)) * Rational(1, 12);
  EXPECT_EQ(z.part(3), third);
  // degree 4: -1/24 [y,[x,[x,y]]]
  EXPECT_EQ(z.part(4), bracket(y, bracket(x, bracket(x, y))) * Rational(-1, 24));
}

TEST(Bch, MatchesDynkinFormula) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 3, D = 4;
    QT x = random_lie(rng, d, D, 2), y = random_lie(rng, d, D, 2);
    QT z = bch(x, y);
    EXPECT_EQ(z, dynkin_bch(x, y));
    EXPECT_TRUE(is_lie_element(z));
    EXPECT_EQ(z, -bch(QT(-y), QT(-x)));
  }
}

TEST(Bch, TruncationConsistent) {
  std::mt19937_64 rng(4);
  QT x4 = random_lie(rng, 2, 4, 1), y4 = random_lie(rng, 2, 4, 1);
  for (int D = 2; D <= 4; ++D)
    EXPECT_EQ(bch(x4.truncated(D), y4.truncated(D)).truncated(2), bch(x4, y4).truncated(2));
}

TEST(Series, ExpLogInverse) {
  std::mt19937_64 rng(9);
  QT x = random_lie(rng, 3, 4, 3);
  EXPECT_EQ(log_series(exp_series(x)), x);
  QT f = exp_series(x);
  EXPECT_EQ(f * series_inverse(f), QT::one(3, 4));
}

TEST(GroupLike, Defect) {
  const int d = 2, D = 4;
  QT a = QT::letter(d, D, 0), b = QT::letter(d, D, 1);
  EXPECT_EQ(group_like_defect(exp_series(a)), 0.0);
  EXPECT_EQ(group_like_defect(exp_series(bracket(a, b) + a)), 0.0);
  EXPECT_GT(group_like_defect(QT::one(d, D) + a * b), 0.0);
  // a product of group-like series is group-like
  std::mt19937_64 rng(2);
  QT g = exp_series(random_lie(rng, d, D, 2)) * exp_series(random_lie(rng, d, D, 3));
  EXPECT_EQ(group_like_defect(g), 0.0);
  // exp of a non-Lie element is not
  EXPECT_GT(group_like_defect(exp_series(a * b)), 0.0);
}

TEST(GroupLike, ShuffleCounts) {
  std::vector<Word> sh;
  shuffles({0, 1}, {2, 3, 4}, sh);
  EXPECT_EQ(sh.size(), 10u);
  sh.clear();
  shuffles({0}, {0}, sh);
  EXPECT_EQ(sh.size(), 2u);
}
