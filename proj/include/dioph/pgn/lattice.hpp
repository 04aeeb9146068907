#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dioph/error.hpp"

namespace dioph::pgn {

using IntRow = std::vector<std::int64_t>;

/// Rank of an integer matrix (rows given), by fraction-free Bareiss
/// elimination over exact integers.
inline int integer_rank(const std::vector<IntRow>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<mpz_class>> m;
  m.reserve(rows.size());
  for (const IntRow& r : rows) {
    if (r.size() != cols) throw DomainError("rows of unequal length");
    std::vector<mpz_class> row;
    row.reserve(cols);
    for (std::int64_t v : r) row.emplace_back(static_cast<long>(v));
    m.push_back(std::move(row));
  }

  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return static_cast<int>(rank);
}

/// Incremental exact test for linear independence over Q. Stored rows are
/// kept in echelon form with content removed.
class IndependenceTracker {
 public:
  explicit IndependenceTracker(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == dim_; }

  /// Adds `v` if it is independent of the rows held so far; returns whether it was added.
  bool try_add(std::span<const std::int64_t> v) {
    if (v.size() != dim_) throw DomainError("vector has the wrong dimension");
    std::vector<mpz_class> w;
    w.reserve(dim_);
    for (std::int64_t x : v) w.emplace_back(static_cast<long>(x));
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (w[c] == 0) continue;
      const mpz_class a = rows_[k][c];
      const mpz_class b = w[c];
      for (std::size_t j = 0; j < dim_; ++j) w[j] = a * w[j] - b * rows_[k][j];
      normalize(w);
    }
    std::size_t lead = 0;
    while (lead < dim_ && w[lead] == 0) ++lead;
    if (lead == dim_) return false;
    rows_.push_back(std::move(w));
    pivots_.push_back(lead);
    return true;
  }

  void clear() {
    rows_.clear();
    pivots_.clear();
  }

 private:
  static void normalize(std::vector<mpz_class>& w) {
    mpz_class g = 0;
    for (const auto& x : w) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
    if (g > 1) {
      for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
  }

  std::size_t dim_;
  std::vector<std::vector<mpz_class>> rows_;
  std::vector<std::size_t> pivots_;
};

inline bool linearly_independent(const std::vector<IntRow>& rows) {
  return integer_rank(rows) == static_cast<int>(rows.size());
}

}  // namespace dioph::pgn
