#include "sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperoct {

void canonicalize(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    Rational sum = std::move(v[i].value);
    while (j < v.size() && v[j].row == v[i].row) {
      sum += v[j].value;
      ++j;
    }
    if (!sum.is_zero()) {
      v[out].row = v[i].row;
      v[out].value = std::move(sum);
      ++out;
    }
    i = j;
  }
  v.resize(out);
}

SparseVector axpy(const SparseVector& a, const Rational& scale, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      out.push_back({b[j].row, scale * b[j].value});
      ++j;
    } else {
      Rational v = a[i].value + scale * b[j].value;
      if (!v.is_zero()) out.push_back({a[i].row, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), col_start_(cols + 1, 0) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    SparseEntry e{static_cast<std::uint32_t>(i), Rational(1)};
    m.push_column(std::span<const SparseEntry>(&e, 1));
  }
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<SparseVector>& columns) {
  SparseMatrix m(rows, 0);
  std::size_t total = 0;
  for (const auto& c : columns) total += c.size();
  m.entries_.reserve(total);
  m.col_start_.reserve(columns.size() + 1);
  for (const auto& c : columns) m.push_column(c);
  return m;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto col = column(c);
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const SparseEntry& e, std::size_t row) { return e.row < row; });
  if (it != col.end() && it->row == r) return it->value;
  return {};
}

void SparseMatrix::push_column(std::span<const SparseEntry> column) {
  for (const auto& e : column) {
    if (e.row >= rows_) throw std::out_of_range("sparse column entry outside the row range");
    entries_.push_back(e);
  }
  col_start_.push_back(entries_.size());
}

void SparseMatrix::append(const SparseMatrix& other) {
  if (other.rows_ != rows_) throw std::invalid_argument("appending columns of a different height");
  const std::uint64_t base = entries_.size();
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  for (std::size_t c = 1; c < other.col_start_.size(); ++c) col_start_.push_back(base + other.col_start_[c]);
}

bool SparseMatrix::all_integral() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const SparseEntry& e) { return e.value.is_integer(); });
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::uint64_t> counts(rows_ + 1, 0);
  for (const auto& e : entries_) ++counts[e.row + 1];
  for (std::size_t r = 0; r < rows_; ++r) counts[r + 1] += counts[r];
  SparseMatrix t(cols(), 0);
  t.col_start_ = counts;
  t.entries_.resize(entries_.size(), SparseEntry{0, Rational()});
  std::vector<std::uint64_t> fill(counts.begin(), counts.end() - 1);
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& e : column(c)) t.entries_[fill[e.row]++] = SparseEntry{static_cast<std::uint32_t>(c), e.value};
  return t;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  SparseVector out;
  for (const auto& xe : x)
    for (const auto& e : column(xe.row)) out.push_back({e.row, e.value * xe.value});
  canonicalize(out);
  return out;
}

SparseMatrix SparseMatrix::select(const std::vector<std::uint32_t>& row_map, std::size_t new_rows,
                                  const std::vector<std::uint32_t>& cols) const {
  SparseMatrix m(new_rows, 0);
  SparseVector buf;
  for (auto c : cols) {
    buf.clear();
    for (const auto& e : column(c))
      if (row_map[e.row] != npos) buf.push_back({row_map[e.row], e.value});
    std::sort(buf.begin(), buf.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
    m.push_column(buf);
  }
  return m;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  SparseMatrix out(a.rows(), 0);
  SparseVector acc;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    acc.clear();
    for (const auto& be : b.column(c))
      for (const auto& ae : a.column(be.row)) acc.push_back({ae.row, ae.value * be.value});
    canonicalize(acc);
    out.push_column(acc);
  }
  return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum dimension mismatch");
  SparseMatrix out(a.rows(), 0);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    auto ca = a.column_vector(c);
    auto cb = b.column_vector(c);
    out.push_column(axpy(ca, Rational(1), cb));
  }
  return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference dimension mismatch");
  SparseMatrix out(a.rows(), 0);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    auto ca = a.column_vector(c);
    auto cb = b.column_vector(c);
    out.push_column(axpy(ca, Rational(-1), cb));
  }
  return out;
}

SparseMatrix operator-(const SparseMatrix& a) {
  SparseMatrix out = a;
  for (auto& e : out.entries_) e.value = -e.value;
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.col_start_ == b.col_start_ && a.entries_ == b.entries_;
}

}  // namespace hyperoct
