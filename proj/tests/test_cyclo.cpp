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

#include "holonomy/cyclo.hpp"

using holonomy::CycloNum;
using holonomy::Rational;

namespace {

CycloNum random_cyclo(std::mt19937_64& rng, int m, int height = 1000) {
  std::uniform_int_distribution<int> num(-height, height), den(1, 9);
  std::vector<Rational> coeffs;
  for (int k = 0; k < holonomy::detail::euler_phi(m); ++k)
    coeffs.emplace_back(num(rng), den(rng));
  for (auto& c : coeffs) c.canonicalize();
  return CycloNum::from_coeffs(m, coeffs);
}

}  // namespace

TEST(CyclotomicPolynomial, KnownSmallCases) {
  using holonomy::detail::cyclotomic_polynomial;
  auto as_long = [](const auto& poly) {
    std::vector<long> out;
    for (const auto& c : poly) out.push_back(c.get_si());
    return out;
  };
  EXPECT_EQ(as_long(cyclotomic_polynomial(4)), (std::vector<long>{1, 0, 1}));
  EXPECT_EQ(as_long(cyclotomic_polynomial(5)), (std::vector<long>{1, 1, 1, 1, 1}));
  EXPECT_EQ(as_long(cyclotomic_polynomial(12)), (std::vector<long>{1, 0, -1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(60).size(), 17u);
}

TEST(CycloArith, Examples) {
  CycloNum i = CycloNum::zeta(4);
  EXPECT_EQ(i * i, CycloNum(4, -1L));
  CycloNum w = CycloNum::zeta(3);
  EXPECT_EQ(w + w * w, CycloNum(3, -1L));
  CycloNum a = CycloNum(5, 1L) + CycloNum::zeta(5);
  EXPECT_EQ(a.inverse() * a, CycloNum(5, 1L));
  EXPECT_EQ(a / a, CycloNum(5, 1L));
}

TEST(CycloArith, Errors) {
  EXPECT_THROW(CycloNum(5).inverse(), holonomy::DivisionByZero);
  EXPECT_THROW(CycloNum(5, 1L) / CycloNum(5), holonomy::DivisionByZero);
  EXPECT_THROW(CycloNum::zeta(5) + CycloNum::zeta(7), holonomy::OrderMismatch);
  EXPECT_THROW(CycloNum::zeta(5) * CycloNum::zeta(7), holonomy::OrderMismatch);
  // rationals stored in Q(zeta_1) are accepted by every field
  EXPECT_EQ(CycloNum::zeta(4) * CycloNum(1, 2L), CycloNum::zeta(4, 1) * Rational(2));
}

TEST(CycloConj, Examples) {
  EXPECT_EQ(CycloNum::zeta(4).conj(), -CycloNum::zeta(4));
  CycloNum half(7, Rational(3, 2));
  EXPECT_EQ(half.conj(), half);
  std::mt19937_64 rng(7);
  for (int m : {3, 8, 12, 20}) {
    CycloNum a = random_cyclo(rng, m);
    EXPECT_EQ(a.conj().conj(), a);
  }
}

TEST(CycloEmbed, Examples) {
  EXPECT_NEAR(std::abs(CycloNum::zeta(4).embed() - std::complex<double>(0, 1)), 0, 1e-12);
  CycloNum z6 = CycloNum::zeta(6);
  EXPECT_NEAR(std::abs((z6 + z6.inverse()).embed() - 1.0), 0, 1e-12);
  CycloNum phi5(5, 1L);
  for (int k = 1; k < 5; ++k) phi5 += CycloNum::zeta(5, k);
  EXPECT_TRUE(phi5.is_zero());
  EXPECT_NEAR(std::abs(phi5.embed()), 0, 1e-12);
}

TEST(CycloText, Format) {
  EXPECT_EQ(CycloNum(8).to_string(), "0");
  EXPECT_EQ(CycloNum(8, Rational(-3, 4)).to_string(), "-3/4");
  EXPECT_EQ((CycloNum(8, 1L) + CycloNum::zeta(8, 3) * Rational(2)).to_string(),
            "1 + 2*z^3");
}

// Field axioms, conjugation as a ring involution and the embedding as a ring
// morphism, on randomized height-bounded inputs.
TEST(CycloProperties, RandomizedFieldAxioms) {
  std::mt19937_64 rng(2024);
  for (int m : {4, 5, 8, 12, 20, 24, 60}) {
    for (int trial = 0; trial < 8; ++trial) {
      CycloNum a = random_cyclo(rng, m), b = random_cyclo(rng, m),
               c = random_cyclo(rng, m);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b - b, a);
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), CycloNum(m, 1L));
      }
      EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
      EXPECT_LE(std::abs((a * b).embed() - a.embed() * b.embed()),
                1e-12 * std::max(1.0, std::abs(a.embed() * b.embed())));
      EXPECT_LE(std::abs(a.conj().embed() - std::conj(a.embed())),
                1e-12 * std::max(1.0, std::abs(a.embed())));
    }
  }
}

TEST(CycloLift, CommutesWithArithmetic) {
  std::mt19937_64 rng(3);
  CycloNum a = random_cyclo(rng, 4, 20), b = random_cyclo(rng, 4, 20);
  EXPECT_EQ((a * b).lift(12), a.lift(12) * b.lift(12));
  EXPECT_NEAR(std::abs(a.lift(12).embed() - a.embed()), 0, 1e-12);
  EXPECT_THROW(a.lift(6), holonomy::UnsupportedParams);
}

TEST(CycloSqrt, SquaresAndNonSquares) {
  std::mt19937_64 rng(11);
  for (int m : {4, 8, 12, 24, 60}) {
    for (int trial = 0; trial < 3; ++trial) {
      CycloNum x = random_cyclo(rng, m, 12);
      auto r = holonomy::sqrt(x * x);
      ASSERT_TRUE(r.has_value()) << "m=" << m;
      EXPECT_EQ(*r * *r, x * x);
    }
  }
  // sqrt(-3) lives in Q(zeta_3) but not in Q(i)
  EXPECT_TRUE(holonomy::sqrt(CycloNum(3, -3L)).has_value());
  EXPECT_FALSE(holonomy::sqrt(CycloNum(4, -3L)).has_value());
  EXPECT_FALSE(holonomy::sqrt(CycloNum(1, 2L)).has_value());
  EXPECT_TRUE(holonomy::sqrt(CycloNum(8, 2L)).has_value());
}
