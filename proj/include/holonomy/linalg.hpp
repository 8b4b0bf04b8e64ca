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

// Sparse exact row echelon form over Q with tagged rows.
//
// Rows are kept with pivot = smallest column and pivot coefficient 1.  A
// tag is a sparse vector carried along with each row; reducing a vector
// against the rows accumulates the tags of the rows it used, which is how
// quotient coordinates are read off.

#pragma once

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "holonomy/tensor.hpp"

namespace holonomy {

using SparseVec = std::map<int, Rational>;

class Echelon {
 public:
  struct Row {
    std::vector<std::pair<int, Rational>> entries;  // sorted, entries[0] is the pivot
    std::vector<std::pair<int, double>> numeric;
    SparseVec tag;
  };

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Row>& rows() const { return rows_; }
  bool is_pivot(int col) const { return pivot_.count(col) > 0; }

  /// Insert v (with tag); returns true when v was independent of the rows.
  bool insert(SparseVec v, SparseVec tag = {}) {
    SparseVec used;
    eliminate(v, &used);
    if (v.empty()) return false;
    for (const auto& [b, x] : used) {
      Rational& t = tag[b];
      t -= x;
      if (t == 0) tag.erase(b);
    }
    Row row;
    const Rational lead = v.begin()->second;
    Rational inv = 1 / lead;
    for (auto& [c, x] : v) {
      Rational y = x * inv;
      row.numeric.emplace_back(c, y.get_d());
      row.entries.emplace_back(c, std::move(y));
    }
    for (auto& [b, x] : tag) x *= inv;
    row.tag = std::move(tag);
    pivot_.emplace(row.entries.front().first, static_cast<int>(rows_.size()));
    rows_.push_back(std::move(row));
    return true;
  }

  bool contains(SparseVec v) const {
    eliminate<Rational>(v, nullptr);
    return v.empty();
  }

  /// Reduce v in place against the rows; with acc, add coef * tag of every
  /// row used.  Exact for Q and cyclotomic scalars, floating for complex.
  template <class S>
  void eliminate(std::map<int, S>& v, std::map<int, S>* acc) const {
    for (auto it = v.begin(); it != v.end();) {
      if (scalar_is_zero(it->second)) {
        it = v.erase(it);
        continue;
      }
      auto p = pivot_.find(it->first);
      if (p == pivot_.end()) {
        ++it;
        continue;
      }
      const Row& row = rows_[p->second];
      const int col = it->first;
      const S coef = it->second;
      if (acc) {
        for (const auto& [b, t] : row.tag) {
          S add = scale_by(coef, t);
          auto [slot, fresh] = acc->try_emplace(b, add);
          if (!fresh) slot->second = slot->second + add;
        }
      }
      it = v.erase(it);
      if constexpr (std::is_same_v<S, std::complex<double>>) {
        for (std::size_t i = 1; i < row.numeric.size(); ++i) {
          auto [slot, fresh] = v.try_emplace(row.numeric[i].first, -coef * row.numeric[i].second);
          if (!fresh) slot->second -= coef * row.numeric[i].second;
        }
      } else {
        for (std::size_t i = 1; i < row.entries.size(); ++i) {
          S sub = scale_by(coef, row.entries[i].second);
          auto [slot, fresh] = v.try_emplace(row.entries[i].first, -sub);
          if (!fresh) slot->second = slot->second - sub;
        }
      }
      it = v.upper_bound(col);
    }
  }

 private:

  std::vector<Row> rows_;
  std::unordered_map<int, int> pivot_;
};

}  // namespace holonomy
