#pragma once

// Bar constructions [n] -> A^(n+1) as functors on Delta H, Epi Delta H and
// Delta H_+.

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "croscat.hpp"
#include "sparse.hpp"

namespace hyperoct {

enum class BarVariant {
  kFull,      // H_A on Delta H
  kIdeal,     // H_I on Epi Delta H, augmentation ideal in the adapted basis
  kExtended,  // H_{A+} on Delta H_+, k at the empty object
};

class BarFunctor {
 public:
  // kIdeal needs an adapted algebra (see adapt_basis_to_augmentation).
  BarFunctor(const InvolutiveAlgebra& algebra, BarVariant variant);

  [[nodiscard]] BarVariant variant() const noexcept { return variant_; }
  [[nodiscard]] const InvolutiveAlgebra& algebra() const noexcept { return *algebra_; }

  // Number of basis tensors at [n]; lexicographic order, first factor most
  // significant.
  [[nodiscard]] std::uint64_t dim(int n) const;
  // Algebra basis indices of the factors of a basis tensor (ideal variant:
  // indices 1..d-1).
  [[nodiscard]] std::vector<std::uint32_t> factors(int n, std::uint64_t index) const;
  [[nodiscard]] std::uint64_t index_of(std::span<const std::uint32_t> factors) const;

  // Column of F(f) at a basis tensor of the source.
  [[nodiscard]] SparseVector apply(const IFasMorphism& f, std::uint64_t index) const;
  // Full matrix of F(f), memoized by morphism code.
  [[nodiscard]] const SparseMatrix& evaluate(const IFasMorphism& f) const;

  // Memo access for persistence. preload trusts the caller's matrix.
  void preload(std::uint64_t code, SparseMatrix m) const;
  [[nodiscard]] const SparseMatrix* memoized(std::uint64_t code) const;

 private:
  void check_morphism(const IFasMorphism& f) const;
  [[nodiscard]] SparseVector multiply(const SparseVector& x, const SparseVector& y) const;

  const InvolutiveAlgebra* algebra_;
  BarVariant variant_;
  std::uint32_t base_;    // number of values per factor
  std::uint32_t offset_;  // algebra index of factor value 0
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, SparseMatrix> memo_;
};

}  // namespace hyperoct
