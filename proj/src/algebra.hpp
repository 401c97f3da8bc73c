#pragma once

// Finite-dimensional involutive algebras with exact structure constants.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "sparse.hpp"

namespace hyperoct {

struct Ring {
  enum Kind { kRationals, kPrimeField, kIntegers } kind = kRationals;
  std::uint32_t p = 0;  // characteristic for kPrimeField

  static Ring rationals() { return {kRationals, 0}; }
  static Ring integers() { return {kIntegers, 0}; }
  // Throws std::invalid_argument unless p is prime.
  static Ring prime_field(std::uint32_t p);

  [[nodiscard]] bool is_field() const noexcept { return kind != kIntegers; }
  [[nodiscard]] bool char_zero() const noexcept { return kind == kRationals; }
  [[nodiscard]] std::string str() const;
  friend bool operator==(const Ring&, const Ring&) = default;
};

bool is_prime(std::uint64_t n);

using Vector = std::vector<Rational>;

class InvolutiveAlgebra {
 public:
  // structure[(i * dim + j) * dim + k] is the coefficient of b_k in b_i b_j.
  // involution is row-major: column c holds the image of b_c.
  // Validates every axiom on basis elements and throws std::invalid_argument
  // naming the first failure.
  InvolutiveAlgebra(std::vector<std::string> basis, std::vector<Rational> structure, std::vector<Rational> involution,
                    Vector unit, std::optional<Vector> augmentation, Ring ring = Ring::rationals());

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] const std::vector<std::string>& basis() const noexcept { return basis_; }
  [[nodiscard]] const Ring& ring() const noexcept { return ring_; }
  [[nodiscard]] const Vector& unit() const noexcept { return unit_; }
  [[nodiscard]] const std::optional<Vector>& augmentation() const noexcept { return augmentation_; }
  [[nodiscard]] const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const {
    return structure_[(i * dim() + j) * dim() + k];
  }
  [[nodiscard]] const Rational& involution(std::size_t row, std::size_t col) const {
    return involution_[row * dim() + col];
  }

  // Sparse images of basis elements and basis products.
  [[nodiscard]] const SparseVector& involve_basis(std::size_t i) const { return involve_basis_[i]; }
  [[nodiscard]] const SparseVector& product_basis(std::size_t i, std::size_t j) const {
    return product_basis_[i * dim() + j];
  }
  [[nodiscard]] const SparseVector& unit_sparse() const noexcept { return unit_sparse_; }

  // Throws std::invalid_argument on a dimension mismatch.
  [[nodiscard]] Vector multiply(const Vector& x, const Vector& y) const;
  [[nodiscard]] Vector involve(const Vector& x) const;
  [[nodiscard]] Rational augment(const Vector& x) const;

  // Unit is b_0, eps(b_0) = 1 and eps(b_i) = 0 for i >= 1.
  [[nodiscard]] bool is_adapted() const;

  // Stable digest of the presentation, used as a cache key.
  [[nodiscard]] std::string fingerprint() const;

 private:
  void validate() const;

  std::vector<std::string> basis_;
  std::vector<Rational> structure_;
  std::vector<Rational> involution_;
  Vector unit_;
  std::optional<Vector> augmentation_;
  Ring ring_;
  std::vector<SparseVector> involve_basis_;
  std::vector<SparseVector> product_basis_;
  SparseVector unit_sparse_;
};

// Group given by names and a multiplication table of element indices.
// Involution g -> g^-1, augmentation = sum of coefficients.
InvolutiveAlgebra group_algebra(const std::vector<std::string>& names,
                                const std::vector<std::vector<int>>& table, Ring ring);

// Basis {1} u {ideal basis}. Returns the input when already adapted; throws
// when there is no augmentation or, over Z, when it does not split.
InvolutiveAlgebra adapt_basis_to_augmentation(const InvolutiveAlgebra& a);

InvolutiveAlgebra ground_ring(Ring ring);
InvolutiveAlgebra cyclic_group_algebra(int n, Ring ring);
InvolutiveAlgebra klein_four_algebra(Ring ring);
InvolutiveAlgebra symmetric_group_s3_algebra(Ring ring);

// "ground", "C<n>", "klein4" / "V4", "S3". Throws std::invalid_argument otherwise.
InvolutiveAlgebra builtin_algebra(const std::string& name, Ring ring);

}  // namespace hyperoct
