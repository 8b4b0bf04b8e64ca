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

#include "holonomy/linalg.hpp"
#include "holonomy/lyndon.hpp"

using namespace holonomy;
using QT = GradedTensor<Rational>;

namespace {

// A word is Lyndon iff it is strictly smaller than each of its rotations.
bool is_lyndon_brute(const Word& w) {
  for (std::size_t r = 1; r < w.size(); ++r) {
    Word rot(w.begin() + r, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + r);
    if (!(w < rot)) return false;
  }
  return true;
}

long long lyndon_count_brute(int d, int k) {
  long long count = 0;
  for (WordCode c = 0; c < power_code(d, k); ++c)
    if (is_lyndon_brute(decode_word(c, k, d))) ++count;
  return count;
}

QT random_tensor(std::mt19937_64& rng, int d, int D, int terms = 6) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, D);
  QT t(d, D);
  for (int i = 0; i < terms; ++i) {
    int k = deg(rng);
    Word w(k);
    for (auto& x : w) x = static_cast<int>(rng() % d);
    t.add_term(w, Rational(coef(rng)));
  }
  return t;
}

QT random_lie(std::mt19937_64& rng, int d, int D) {
  std::uniform_int_distribution<int> coef(-4, 4);
  QT t(d, D);
  for (int k = 1; k <= D; ++k)
    for (const auto& w : lyndon_words(d, k))
      t += expand_lyndon<Rational>(w, d, D) * Rational(coef(rng));
  return t;
}

}  // namespace

TEST(Tensor, MulExamples) {
  const int d = 2, D = 3;
  QT a = QT::letter(d, D, 0), b = QT::letter(d, D, 1), one = QT::one(d, D);
  QT lhs = (one + a) * (one + b);
  QT rhs = one + a + b + a * b;
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs.coeff({0, 1}), 1);
  EXPECT_EQ(lhs.coeff({1, 0}), 0);
  EXPECT_EQ(a * one, a);
}

TEST(Tensor, DegreeTwoProductsOfFourLetters) {
  const int d = 4, D = 2;
  Echelon e;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      QT p = QT::letter(d, D, i) * QT::letter(d, D, j);
      SparseVec v;
      for (const auto& [c, x] : p.component(2)) v[static_cast<int>(c)] = x;
      e.insert(v);
    }
  EXPECT_EQ(e.rank(), 16);
}

TEST(Tensor, BracketExamples) {
  const int d = 3, D = 3;
  QT a = QT::letter(d, D, 0), b = QT::letter(d, D, 1), c = QT::letter(d, D, 2);
  EXPECT_TRUE(bracket(a, a).is_zero());
  EXPECT_EQ(bracket(a, b), a * b - b * a);
  QT jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
  EXPECT_TRUE(jac.is_zero());
}

TEST(Tensor, BasisMismatch) {
  EXPECT_THROW(QT::letter(2, 3, 0) * QT::letter(3, 3, 0), BasisMismatch);
  EXPECT_THROW(QT::letter(2, 3, 0) + QT::letter(2, 2, 0), BasisMismatch);
}

TEST(TensorProperties, AssociativityAndTruncation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3, D = 4;
    QT x = random_tensor(rng, d, D), y = random_tensor(rng, d, D), z = random_tensor(rng, d, D);
    EXPECT_EQ((x * y) * z, x * (y * z));
    // truncating to D-1 before or after multiplying agrees
    EXPECT_EQ((x * y).truncated(D - 1), x.truncated(D - 1) * y.truncated(D - 1));
  }
}

TEST(TensorProperties, BracketAxioms) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3, D = 4;
    QT x = random_tensor(rng, d, D), y = random_tensor(rng, d, D), z = random_tensor(rng, d, D);
    Rational s(std::uniform_int_distribution<int>(-7, 7)(rng), 3);
    EXPECT_EQ(bracket(x * s + y, z), bracket(x, z) * s + bracket(y, z));
    EXPECT_EQ(bracket(x, y), -bracket(y, x));
    QT jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    EXPECT_TRUE(jac.is_zero());
  }
}

TEST(Lyndon, WittExamples) {
  EXPECT_EQ(witt_dim(2, 1), 2);
  EXPECT_EQ(witt_dim(2, 2), 1);
  EXPECT_EQ(witt_dim(6, 2), 15);
  EXPECT_EQ(lyndon_basis(2, 2).size(), 1u);
  EXPECT_EQ(lyndon_basis(2, 2)[0].text, "[0,1]");
  EXPECT_EQ(lyndon_basis(2, 3).size(), 2u);
  EXPECT_EQ(lyndon_basis(4, 3).size(), 20u);
}

TEST(Lyndon, CountsMatchBruteForceAndWitt) {
  for (int d = 1; d <= 4; ++d)
    for (int k = 1; k <= 6; ++k) {
      auto words = lyndon_words(d, k);
      EXPECT_EQ(static_cast<long long>(words.size()), lyndon_count_brute(d, k)) << d << "," << k;
      EXPECT_EQ(static_cast<long long>(words.size()), witt_dim(d, k)) << d << "," << k;
      for (const auto& w : words) EXPECT_TRUE(is_lyndon_brute(w));
    }
}

TEST(Lyndon, BracketsAreIndependentAndTriangular) {
  for (int d : {2, 3, 4})
    for (int k = 1; k <= 4; ++k) {
      const int D = k;
      LyndonIndex idx(d, k);
      Echelon full, restricted;
      for (int i = 0; i < idx.size(); ++i) {
        QT p = expand_lyndon<Rational>(idx.word(i), d, D);
        EXPECT_TRUE(is_lie_element(p));
        // leading word is the Lyndon word itself with coefficient 1
        const auto& comp = p.component(k);
        ASSERT_FALSE(comp.empty());
        EXPECT_EQ(comp.begin()->first, encode_word(idx.word(i), d));
        EXPECT_EQ(comp.begin()->second, 1);
        SparseVec v;
        for (const auto& [c, x] : comp) v[static_cast<int>(c)] = x;
        EXPECT_TRUE(full.insert(v));
        SparseVec r;
        for (const auto& [c, x] : idx.project(comp)) r[c] = x;
        EXPECT_TRUE(restricted.insert(r));
      }
      EXPECT_EQ(full.rank(), witt_dim(d, k));
    }
}

TEST(Lyndon, LieElementTest) {
  std::mt19937_64 rng(8);
  const int d = 3, D = 4;
  QT x = random_lie(rng, d, D), y = random_lie(rng, d, D);
  EXPECT_TRUE(is_lie_element(bracket(x, y)));
  QT a = QT::letter(d, D, 0), b = QT::letter(d, D, 1);
  EXPECT_FALSE(is_lie_element(a * b));
  EXPECT_FALSE(is_lie_element(QT::one(d, D)));
}

TEST(Echelon, TagsRecordCombinations) {
  Echelon e;
  EXPECT_TRUE(e.insert({{0, 2}, {1, 4}}, {{0, 1}}));
  EXPECT_TRUE(e.insert({{0, 1}, {2, 1}}, {{1, 1}}));
  EXPECT_FALSE(e.insert({{0, 3}, {1, 4}, {2, 1}}));
  // x = 2*r0 + 3*r1 in the original vectors
  std::map<int, Rational> x{{0, 7}, {1, 8}, {2, 3}}, acc;
  e.eliminate(x, &acc);
  EXPECT_TRUE(x.empty());
  EXPECT_EQ(acc[0], 2);
  EXPECT_EQ(acc[1], 3);
}
