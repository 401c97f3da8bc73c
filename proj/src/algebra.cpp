#include "algebra.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hyperoct {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring Ring::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("ring: characteristic " + std::to_string(p) + " is not prime");
  return {kPrimeField, p};
}

std::string Ring::str() const {
  switch (kind) {
    case kRationals:
      return "q";
    case kIntegers:
      return "z";
    case kPrimeField:
      return "f" + std::to_string(p);
  }
  return "?";
}

namespace {

SparseVector to_sparse(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back({static_cast<std::uint32_t>(i), v[i]});
  return out;
}

Vector to_dense(const SparseVector& v, std::size_t d) {
  Vector out(d);
  for (const auto& e : v) out[e.row] = e.value;
  return out;
}

void fail(const std::string& what) { throw std::invalid_argument("algebra: " + what); }

}  // namespace

InvolutiveAlgebra::InvolutiveAlgebra(std::vector<std::string> basis, std::vector<Rational> structure,
                                     std::vector<Rational> involution, Vector unit, std::optional<Vector> augmentation,
                                     Ring ring)
    : basis_(std::move(basis)),
      structure_(std::move(structure)),
      involution_(std::move(involution)),
      unit_(std::move(unit)),
      augmentation_(std::move(augmentation)),
      ring_(ring) {
  const std::size_t d = basis_.size();
  if (d == 0) fail("dimension must be positive");
  if (structure_.size() != d * d * d) fail("structure constants need dim^3 entries");
  if (involution_.size() != d * d) fail("involution needs dim^2 entries");
  if (unit_.size() != d) fail("unit has the wrong length");
  if (augmentation_ && augmentation_->size() != d) fail("augmentation has the wrong length");
  for (std::size_t c = 0; c < d; ++c) {
    SparseVector col;
    for (std::size_t r = 0; r < d; ++r)
      if (!this->involution(r, c).is_zero()) col.push_back({static_cast<std::uint32_t>(r), this->involution(r, c)});
    involve_basis_.push_back(std::move(col));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      SparseVector v;
      for (std::size_t k = 0; k < d; ++k)
        if (!this->structure(i, j, k).is_zero()) v.push_back({static_cast<std::uint32_t>(k), this->structure(i, j, k)});
      product_basis_.push_back(std::move(v));
    }
  unit_sparse_ = to_sparse(unit_);
  validate();
}

void InvolutiveAlgebra::validate() const {
  const std::size_t d = dim();
  auto check_ring = [&](const Rational& x, const char* where) {
    if (ring_.kind == Ring::kIntegers && !x.is_integer()) fail(std::string("non-integral entry in ") + where);
    if (ring_.kind == Ring::kPrimeField && (x.denominator() % ring_.p) == 0)
      fail(std::string("entry in ") + where + " is not defined modulo " + std::to_string(ring_.p));
  };
  for (const auto& x : structure_) check_ring(x, "structure");
  for (const auto& x : involution_) check_ring(x, "involution");
  for (const auto& x : unit_) check_ring(x, "unit");
  if (augmentation_)
    for (const auto& x : *augmentation_) check_ring(x, "augmentation");

  auto basis_vec = [&](std::size_t i) {
    Vector v(d);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < d; ++i) {
    const Vector bi = basis_vec(i);
    if (multiply(unit_, bi) != bi || multiply(bi, unit_) != bi)
      fail("unit is not neutral for " + basis_[i]);
    if (involve(involve(bi)) != bi) fail("involution does not square to the identity on " + basis_[i]);
    for (std::size_t j = 0; j < d; ++j) {
      const Vector bj = basis_vec(j);
      const Vector bij = multiply(bi, bj);
      if (involve(bij) != multiply(involve(bj), involve(bi)))
        fail("involution is not an anti-homomorphism on (" + basis_[i] + ", " + basis_[j] + ")");
      if (augmentation_ && augment(bij) != augment(bi) * augment(bj))
        fail("augmentation is not multiplicative on (" + basis_[i] + ", " + basis_[j] + ")");
      for (std::size_t k = 0; k < d; ++k) {
        const Vector bk = basis_vec(k);
        if (multiply(bij, bk) != multiply(bi, multiply(bj, bk)))
          fail("multiplication is not associative on (" + basis_[i] + ", " + basis_[j] + ", " + basis_[k] + ")");
      }
    }
    if (augmentation_ && augment(involve(bi)) != augment(bi))
      fail("augmentation does not commute with the involution on " + basis_[i]);
  }
  if (augmentation_ && augment(unit_) != Rational(1)) fail("augmentation of the unit is not 1");
}

Vector InvolutiveAlgebra::multiply(const Vector& x, const Vector& y) const {
  const std::size_t d = dim();
  if (x.size() != d || y.size() != d) throw std::invalid_argument("multiply: dimension mismatch");
  Vector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y[j].is_zero()) continue;
      const Rational s = x[i] * y[j];
      for (const auto& e : product_basis(i, j)) out[e.row] += s * e.value;
    }
  }
  return out;
}

Vector InvolutiveAlgebra::involve(const Vector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("involve: dimension mismatch");
  Vector out(dim());
  for (std::size_t c = 0; c < dim(); ++c)
    if (!x[c].is_zero())
      for (const auto& e : involve_basis_[c]) out[e.row] += x[c] * e.value;
  return out;
}

Rational InvolutiveAlgebra::augment(const Vector& x) const {
  if (!augmentation_) throw std::invalid_argument("augment: algebra has no augmentation");
  if (x.size() != dim()) throw std::invalid_argument("augment: dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < dim(); ++i) s += x[i] * (*augmentation_)[i];
  return s;
}

bool InvolutiveAlgebra::is_adapted() const {
  if (!augmentation_) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (unit_[i] != Rational(i == 0 ? 1 : 0)) return false;
    if ((*augmentation_)[i] != Rational(i == 0 ? 1 : 0)) return false;
  }
  return true;
}

std::string InvolutiveAlgebra::fingerprint() const {
  std::ostringstream os;
  os << ring_.str() << '|' << dim();
  for (const auto& x : structure_) os << ',' << x;
  os << '|';
  for (const auto& x : involution_) os << ',' << x;
  os << '|';
  for (const auto& x : unit_) os << ',' << x;
  if (augmentation_) {
    os << '|';
    for (const auto& x : *augmentation_) os << ',' << x;
  }
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InvolutiveAlgebra group_algebra(const std::vector<std::string>& names, const std::vector<std::vector<int>>& table,
                                Ring ring) {
  const std::size_t n = names.size();
  if (n == 0 || table.size() != n) fail("group table has the wrong size");
  for (const auto& row : table) {
    if (row.size() != n) fail("group table has the wrong size");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n) fail("group table entry out of range");
  }
  int e = -1;
  for (std::size_t i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j)
      ok = ok && table[i][j] == static_cast<int>(j) && table[j][i] == static_cast<int>(j);
    if (ok) e = static_cast<int>(i);
  }
  if (e < 0) fail("group table has no identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[static_cast<std::size_t>(table[a][b])][c] != table[a][static_cast<std::size_t>(table[b][c])])
          fail("group table is not associative");
  std::vector<int> inverse(n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == e && table[b][a] == e) inverse[a] = static_cast<int>(b);
  for (int v : inverse)
    if (v < 0) fail("group table has an element without inverse");

  std::vector<Rational> structure(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) structure[(a * n + b) * n + static_cast<std::size_t>(table[a][b])] = 1;
  std::vector<Rational> involution(n * n);
  for (std::size_t a = 0; a < n; ++a) involution[static_cast<std::size_t>(inverse[a]) * n + a] = 1;
  Vector unit(n);
  unit[static_cast<std::size_t>(e)] = 1;
  return {names, std::move(structure), std::move(involution), std::move(unit), Vector(n, Rational(1)), ring};
}

InvolutiveAlgebra adapt_basis_to_augmentation(const InvolutiveAlgebra& a) {
  if (!a.augmentation()) fail("no augmentation to adapt to");
  if (a.is_adapted()) return a;
  const std::size_t d = a.dim();
  const Vector& eps = *a.augmentation();
  const Vector& u = a.unit();
  // The columns u and b_i - eps(b_i) u (i != r) form a basis iff u_r != 0,
  // and a unimodular one iff u_r = +-1.
  std::size_t r = d;
  for (std::size_t i = 0; i < d && r == d; ++i) {
    const bool ok = a.ring().kind == Ring::kIntegers ? (u[i] == Rational(1) || u[i] == Rational(-1)) : !u[i].is_zero();
    if (ok) r = i;
  }
  if (r == d) fail("augmentation does not split over the integers");

  std::vector<Vector> cols{u};
  std::vector<std::string> names{"1"};
  for (std::size_t i = 0; i < d; ++i) {
    if (i == r) continue;
    Vector c(d);
    c[i] = 1;
    for (std::size_t k = 0; k < d; ++k) c[k] -= eps[i] * u[k];
    cols.push_back(std::move(c));
    names.push_back(eps[i].is_zero() ? a.basis()[i]
                                     : a.basis()[i] + "-" + (eps[i] == Rational(1) ? std::string() : eps[i].str()) + "1");
  }
  // Coordinates in the new basis by Gauss-Jordan on B.
  std::vector<Vector> m(d, Vector(2 * d));
  for (std::size_t row = 0; row < d; ++row) {
    for (std::size_t c = 0; c < d; ++c) m[row][c] = cols[c][row];
    m[row][d + row] = 1;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c].is_zero()) ++piv;
    if (piv == d) fail("adapted basis is singular");
    std::swap(m[piv], m[c]);
    const Rational inv = Rational(1) / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t row = 0; row < d; ++row) {
      if (row == c || m[row][c].is_zero()) continue;
      const Rational f = m[row][c];
      for (std::size_t k = 0; k < 2 * d; ++k) m[row][k] -= f * m[c][k];
    }
  }
  auto to_new = [&](const Vector& x) {
    Vector y(d);
    for (std::size_t row = 0; row < d; ++row)
      for (std::size_t k = 0; k < d; ++k) y[row] += m[row][d + k] * x[k];
    return y;
  };
  std::vector<Rational> structure(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector p = to_new(a.multiply(cols[i], cols[j]));
      for (std::size_t k = 0; k < d; ++k) structure[(i * d + j) * d + k] = p[k];
    }
  std::vector<Rational> involution(d * d);
  for (std::size_t c = 0; c < d; ++c) {
    Vector p = to_new(a.involve(cols[c]));
    for (std::size_t row = 0; row < d; ++row) involution[row * d + c] = p[row];
  }
  Vector unit(d);
  unit[0] = 1;
  Vector aug(d);
  for (std::size_t c = 0; c < d; ++c) aug[c] = a.augment(cols[c]);
  return {std::move(names), std::move(structure), std::move(involution), std::move(unit), std::move(aug), a.ring()};
}

InvolutiveAlgebra ground_ring(Ring ring) {
  return {{"1"}, {Rational(1)}, {Rational(1)}, {Rational(1)}, Vector{Rational(1)}, ring};
}

InvolutiveAlgebra cyclic_group_algebra(int n, Ring ring) {
  if (n < 1) fail("cyclic group order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "e" : (i == 1 ? "g" : "g^" + std::to_string(i)));
    for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
  }
  return group_algebra(names, table, ring);
}

InvolutiveAlgebra klein_four_algebra(Ring ring) {
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = i ^ j;
  return group_algebra({"e", "a", "b", "ab"}, table, ring);
}

InvolutiveAlgebra symmetric_group_s3_algebra(Ring ring) {
  // Elements as permutations of {0,1,2} in one-line notation.
  const std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> names{"e", "(01)", "(12)", "(02)", "(012)", "(021)"};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      for (std::size_t k = 0; k < 6; ++k)
        if (perms[k] == c) table[a][b] = static_cast<int>(k);
    }
  return group_algebra(names, table, ring);
}

InvolutiveAlgebra builtin_algebra(const std::string& name, Ring ring) {
  if (name == "ground" || name == "k") return ground_ring(ring);
  if (name == "klein4" || name == "V4") return klein_four_algebra(ring);
  if (name == "S3") return symmetric_group_s3_algebra(ring);
  if (name.size() > 1 && name[0] == 'C') {
    std::size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(name.substr(1), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == name.size() - 1 && n >= 1 && n <= 12) return cyclic_group_algebra(n, ring);
  }
  throw std::invalid_argument("unknown builtin algebra '" + name + "' (expected ground, C<n>, klein4 or S3)");
}

}  // namespace hyperoct
