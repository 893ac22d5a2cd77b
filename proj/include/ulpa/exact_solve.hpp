#pragma once

// Sparse Gaussian elimination over an exact field.  Reports inconsistency
// exactly; free variables of a consistent system are set to zero.

#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <vector>

#include "scalar.hpp"

namespace ulpa {

template <Field F>
class SparseLinearSystem {
 public:
  using K = typename F::scalar;
  using Row = std::map<std::size_t, K>;

  SparseLinearSystem(F field, std::size_t columns) : field_(std::move(field)), columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  void add_equation(Row row, K rhs) {
    rows_.push_back(std::move(row));
    rhs_.push_back(std::move(rhs));
  }

  /// A particular solution, or nullopt when the system is inconsistent.
  std::optional<std::vector<K>> solve() const {
    // pivot column -> (row with unit pivot and entries only at >= pivot, rhs)
    std::map<std::size_t, std::pair<Row, K>> pivots;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Row row = rows_[i];
      K rhs = rhs_[i];
      drop_zeros(row);
      auto it = row.begin();
      while (it != row.end()) {
        auto piv = pivots.find(it->first);
        if (piv == pivots.end()) {
          ++it;
          continue;
        }
        const std::size_t col = it->first;
        const K factor = it->second;
        for (const auto& [c, v] : piv->second.first) {
          auto [pos, inserted] = row.try_emplace(c, field_.zero());
          pos->second = pos->second - factor * v;
        }
        rhs = rhs - factor * piv->second.second;
        row.erase(col);
        drop_zeros(row);
        it = row.upper_bound(col);
      }
      if (row.empty()) {
        if (!rhs.is_zero()) return std::nullopt;
        continue;
      }
      const std::size_t col = row.begin()->first;
      const K inv = field_.one() / row.begin()->second;
      for (auto& [c, v] : row) v = v * inv;
      pivots.emplace(col, std::make_pair(std::move(row), rhs * inv));
    }

    std::vector<K> x(columns_, field_.zero());
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      K value = it->second.second;
      for (const auto& [c, v] : it->second.first)
        if (c != it->first) value = value - v * x[c];
      x[it->first] = value;
    }
    return x;
  }

 private:
  static void drop_zeros(Row& row) {
    for (auto it = row.begin(); it != row.end();)
      it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }

  F field_;
  std::size_t columns_;
  std::vector<Row> rows_;
  std::vector<K> rhs_;
};

}  // namespace ulpa
