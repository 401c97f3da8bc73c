#include "barfun.hpp"

#include <stdexcept>

namespace hyperoct {

BarFunctor::BarFunctor(const InvolutiveAlgebra& algebra, BarVariant variant)
    : algebra_(&algebra), variant_(variant) {
  const auto d = static_cast<std::uint32_t>(algebra.dim());
  if (variant == BarVariant::kIdeal) {
    if (!algebra.is_adapted()) throw std::invalid_argument("H_I needs an algebra in an augmentation-adapted basis");
    base_ = d - 1;
    offset_ = 1;
  } else {
    base_ = d;
    offset_ = 0;
  }
}

std::uint64_t BarFunctor::dim(int n) const {
  if (n < -1 || n > kMaxObject) throw std::out_of_range("bar functor: object out of range");
  if (n == -1) {
    if (variant_ != BarVariant::kExtended) throw std::invalid_argument("bar functor: empty object needs H_{A+}");
    return 1;
  }
  std::uint64_t r = 1;
  for (int k = 0; k <= n; ++k) r *= base_;
  return r;
}

std::vector<std::uint32_t> BarFunctor::factors(int n, std::uint64_t index) const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n + 1));
  for (std::size_t k = out.size(); k-- > 0;) {
    out[k] = static_cast<std::uint32_t>(index % base_) + offset_;
    index /= base_;
  }
  return out;
}

std::uint64_t BarFunctor::index_of(std::span<const std::uint32_t> factors) const {
  std::uint64_t r = 0;
  for (auto a : factors) {
    if (a < offset_ || a - offset_ >= base_) throw std::out_of_range("bar functor: factor outside the basis");
    r = r * base_ + (a - offset_);
  }
  return r;
}

void BarFunctor::check_morphism(const IFasMorphism& f) const {
  if ((f.source() == -1 || f.target() == -1) && variant_ != BarVariant::kExtended)
    throw std::invalid_argument("bar functor: empty object needs H_{A+}");
  if (variant_ == BarVariant::kIdeal && !f.is_epi())
    throw std::invalid_argument("H_I is only defined on epimorphisms: " + f.str());
}

SparseVector BarFunctor::multiply(const SparseVector& x, const SparseVector& y) const {
  SparseVector out;
  for (const auto& a : x)
    for (const auto& b : y)
      for (const auto& e : algebra_->product_basis(a.row, b.row)) out.push_back({e.row, a.value * b.value * e.value});
  canonicalize(out);
  return out;
}

SparseVector BarFunctor::apply(const IFasMorphism& f, std::uint64_t index) const {
  check_morphism(f);
  if (index >= dim(f.source())) throw std::out_of_range("bar functor: basis index out of range");
  const auto src = factors(f.source(), index);
  // Tensor of the per-target products, built factor by factor.
  SparseVector acc{{0, Rational(1)}};
  for (int j = 0; j <= f.target(); ++j) {
    SparseVector prod = algebra_->unit_sparse();
    for (const auto& p : f.preimage(j)) {
      const std::uint32_t a = src[p.point];
      SparseVector x = p.flipped ? algebra_->involve_basis(a) : SparseVector{{a, Rational(1)}};
      prod = multiply(prod, x);
    }
    SparseVector next;
    for (const auto& e : prod) {
      if (e.row < offset_) {
        throw std::logic_error("H_I value left the augmentation ideal; the ideal is not closed");
      }
      for (const auto& t : acc)
        next.push_back({static_cast<std::uint32_t>(std::uint64_t{t.row} * base_ + (e.row - offset_)), t.value * e.value});
    }
    canonicalize(next);
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

const SparseMatrix& BarFunctor::evaluate(const IFasMorphism& f) const {
  const std::uint64_t key = f.code();
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  check_morphism(f);
  const std::uint64_t cols = dim(f.source());
  SparseMatrix m(dim(f.target()), 0);
  for (std::uint64_t c = 0; c < cols; ++c) m.push_column(apply(f, c));
  std::lock_guard<std::mutex> lock(memo_mutex_);
  return memo_.emplace(key, std::move(m)).first->second;
}

void BarFunctor::preload(std::uint64_t code, SparseMatrix m) const {
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_.emplace(code, std::move(m));
}

const SparseMatrix* BarFunctor::memoized(std::uint64_t code) const {
  std::lock_guard<std::mutex> lock(memo_mutex_);
  auto it = memo_.find(code);
  return it == memo_.end() ? nullptr : &it->second;
}

}  // namespace hyperoct
