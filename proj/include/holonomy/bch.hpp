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

// Exponential, logarithm and Baker-Campbell-Hausdorff in the truncated tensor
// algebra, and the group-likeness defect of a series.

#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "holonomy/tensor.hpp"

namespace holonomy {

/// exp(x) for x without constant term.
template <class S>
GradedTensor<S> exp_series(const GradedTensor<S>& x) {
  const int d = x.num_letters(), D = x.max_degree();
  if (!x.component(0).empty()) throw UnsupportedParams("exp needs a series without constant term");
  GradedTensor<S> out = GradedTensor<S>::one(d, D), power = out;
  long fact = 1;
  for (int k = 1; k <= D; ++k) {
    power = power * x;
    fact *= k;
    out += power * ScalarTraits<S>::from_rational(Rational(1, fact));
  }
  return out;
}

/// log(f) for f with constant term 1.
template <class S>
GradedTensor<S> log_series(const GradedTensor<S>& f) {
  const int d = f.num_letters(), D = f.max_degree();
  GradedTensor<S> y = f - GradedTensor<S>::one(d, D);
  if (!y.component(0).empty()) throw UnsupportedParams("log needs a series with constant term 1");
  GradedTensor<S> out(d, D), power = GradedTensor<S>::one(d, D);
  for (int k = 1; k <= D; ++k) {
    power = power * y;
    out += power * ScalarTraits<S>::from_rational(Rational(k % 2 ? 1 : -1, k));
  }
  return out;
}

/// log(exp(x) exp(y)), truncated at the common degree of x and y.
template <class S>
GradedTensor<S> bch(const GradedTensor<S>& x, const GradedTensor<S>& y) {
  return log_series(exp_series(x) * exp_series(y));
}

/// Inverse of a series with constant term 1.
template <class S>
GradedTensor<S> series_inverse(const GradedTensor<S>& f) {
  return exp_series(-log_series(f));
}

/// Every shuffle of u and v, with multiplicity.
inline void shuffles(const Word& u, const Word& v, std::vector<Word>& out) {
  Word cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
    if (i == u.size() && j == v.size()) {
      out.push_back(cur);
      return;
    }
    if (i < u.size()) {
      cur.push_back(u[i]);
      rec(i + 1, j);
      cur.pop_back();
    }
    if (j < v.size()) {
      cur.push_back(v[j]);
      rec(i, j + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
}

/// max |<F, u sh v> - <F, u><F, v>| over nonempty u, v with |u| + |v| <= D,
/// i.e. the largest coefficient of Delta(F) - F (x) F.  Zero iff F is group-like
/// in the truncated model.
template <class S>
double group_like_defect(const GradedTensor<S>& F) {
  const int d = F.num_letters(), D = F.max_degree();
  double worst = std::abs(ScalarTraits<S>::magnitude(F.coeff({}) - ScalarTraits<S>::from_rational(1)));
  std::vector<Word> sh;
  for (int a = 1; a <= D; ++a)
    for (int b = a; a + b <= D; ++b)
      for (WordCode cu = 0; cu < power_code(d, a); ++cu) {
        Word u = decode_word(cu, a, d);
        S fu = F.coeff(u);
        for (WordCode cv = 0; cv < power_code(d, b); ++cv) {
          Word v = decode_word(cv, b, d);
          sh.clear();
          shuffles(u, v, sh);
          S acc = ScalarTraits<S>::from_rational(0);
          for (const auto& w : sh) acc = acc + F.coeff(w);
          worst = std::max(worst, ScalarTraits<S>::magnitude(acc - fu * F.coeff(v)));
        }
      }
  return worst;
}

}  // namespace holonomy
