#pragma once

// Column-major sparse matrices over exact rationals.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rational.hpp"

namespace hyperoct {

struct SparseEntry {
  std::uint32_t row;
  Rational value;

  friend bool operator==(const SparseEntry& a, const SparseEntry& b) {
    return a.row == b.row && a.value == b.value;
  }
};

// Sorted by row, no explicit zeros, no repeated rows.
using SparseVector = std::vector<SparseEntry>;

// Sorts by row, merges repeated rows and drops zeros.
void canonicalize(SparseVector& v);

// a + scale * b for canonical a, b.
SparseVector axpy(const SparseVector& a, const Rational& scale, const SparseVector& b);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseVector>& columns);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return col_start_.size() - 1; }
  [[nodiscard]] std::size_t nnz() const noexcept { return entries_.size(); }

  [[nodiscard]] std::span<const SparseEntry> column(std::size_t c) const {
    return {entries_.data() + col_start_[c], entries_.data() + col_start_[c + 1]};
  }
  [[nodiscard]] SparseVector column_vector(std::size_t c) const {
    auto s = column(c);
    return {s.begin(), s.end()};
  }
  [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;

  // Appends a canonical column.
  void push_column(std::span<const SparseEntry> column);
  // Appends all columns of other, which must have the same row count.
  void append(const SparseMatrix& other);

  [[nodiscard]] bool is_zero() const noexcept { return entries_.empty(); }
  [[nodiscard]] bool all_integral() const;

  [[nodiscard]] SparseMatrix transpose() const;
  [[nodiscard]] SparseVector apply(const SparseVector& x) const;

  // Keeps rows in row_map (old -> new, or npos) and columns listed in cols.
  static constexpr std::uint32_t npos = 0xffffffffU;
  [[nodiscard]] SparseMatrix select(const std::vector<std::uint32_t>& row_map, std::size_t new_rows,
                                    const std::vector<std::uint32_t>& cols) const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::vector<std::uint64_t> col_start_{0};
  std::vector<SparseEntry> entries_;
};

}  // namespace hyperoct
