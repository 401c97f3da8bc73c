#pragma once

// Truncated Gabriel-Zisman complexes C_*(C, F), the nerve variant, the
// reduced splitting, the epimorphism complex and the comparison maps between
// them.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "barfun.hpp"
#include "croscat.hpp"
#include "homology.hpp"
#include "sparse.hpp"

namespace hyperoct {

// A small category with objects 0..object_count()-1 and morphisms numbered
// so that every hom-set is a contiguous id range.
class FiniteCategory {
 public:
  virtual ~FiniteCategory() = default;
  [[nodiscard]] virtual int object_count() const = 0;
  [[nodiscard]] virtual std::uint32_t hom_begin(int x, int y) const = 0;
  [[nodiscard]] virtual std::uint32_t hom_size(int x, int y) const = 0;
  [[nodiscard]] virtual int source(std::uint32_t f) const = 0;
  [[nodiscard]] virtual int target(std::uint32_t f) const = 0;
  [[nodiscard]] virtual std::uint32_t compose(std::uint32_t f2, std::uint32_t f1) const = 0;
  [[nodiscard]] virtual std::uint32_t identity(int x) const = 0;
};

// Object i of the view is object i + min_object() of the truncated category.
class CategoryView final : public FiniteCategory {
 public:
  explicit CategoryView(const TruncatedCategory& c) : c_(&c), shift_(c.min_object()) {}
  [[nodiscard]] const TruncatedCategory& category() const noexcept { return *c_; }
  [[nodiscard]] int object_of(int x) const noexcept { return x + shift_; }
  [[nodiscard]] int index_of(int object) const noexcept { return object - shift_; }

  [[nodiscard]] int object_count() const override { return c_->object_count(); }
  [[nodiscard]] std::uint32_t hom_begin(int x, int y) const override {
    return c_->hom_begin(object_of(x), object_of(y));
  }
  [[nodiscard]] std::uint32_t hom_size(int x, int y) const override { return c_->hom_size(object_of(x), object_of(y)); }
  [[nodiscard]] int source(std::uint32_t f) const override { return index_of(c_->morphism(f).source()); }
  [[nodiscard]] int target(std::uint32_t f) const override { return index_of(c_->morphism(f).target()); }
  [[nodiscard]] std::uint32_t compose(std::uint32_t f2, std::uint32_t f1) const override {
    return c_->compose(f2, f1);
  }
  [[nodiscard]] std::uint32_t identity(int x) const override { return c_->identity(object_of(x)); }

 private:
  const TruncatedCategory* c_;
  int shift_;
};

// A functor from a FiniteCategory to finitely generated free modules.
class ModuleFunctor {
 public:
  virtual ~ModuleFunctor() = default;
  [[nodiscard]] virtual std::uint64_t dim(int x) const = 0;
  [[nodiscard]] virtual SparseVector apply(std::uint32_t f, std::uint64_t basis) const = 0;
};

// A bar functor on a truncated category.
class BarModule final : public ModuleFunctor {
 public:
  BarModule(const CategoryView& view, const BarFunctor& bar) : view_(&view), bar_(&bar) {}
  [[nodiscard]] std::uint64_t dim(int x) const override { return bar_->dim(view_->object_of(x)); }
  [[nodiscard]] SparseVector apply(std::uint32_t f, std::uint64_t basis) const override;

 private:
  const CategoryView* view_;
  const BarFunctor* bar_;
};

// Subfunctor spanned by a subset of basis vectors at every object; the
// images must stay inside the subset (checked).
class SubModule final : public ModuleFunctor {
 public:
  SubModule(const FiniteCategory& c, const ModuleFunctor& base, std::vector<std::vector<std::uint64_t>> basis);
  [[nodiscard]] std::uint64_t dim(int x) const override { return basis_[static_cast<std::size_t>(x)].size(); }
  [[nodiscard]] SparseVector apply(std::uint32_t f, std::uint64_t basis) const override;
  [[nodiscard]] std::uint64_t base_index(int x, std::uint64_t i) const { return basis_[static_cast<std::size_t>(x)][i]; }
  // npos if outside
  [[nodiscard]] std::uint64_t sub_index(int x, std::uint64_t base) const;
  static constexpr std::uint64_t npos = ~std::uint64_t{0};

 private:
  const FiniteCategory* c_;
  const ModuleFunctor* base_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::vector<std::uint64_t>> inverse_;
};

// k[Hom(a, -)].
class RepresentableModule final : public ModuleFunctor {
 public:
  RepresentableModule(const FiniteCategory& c, int a) : c_(&c), a_(a) {}
  [[nodiscard]] std::uint64_t dim(int x) const override { return c_->hom_size(a_, x); }
  [[nodiscard]] SparseVector apply(std::uint32_t f, std::uint64_t basis) const override;

 private:
  const FiniteCategory* c_;
  int a_;
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(int degree, std::uint64_t count, std::uint64_t cap)
      : std::runtime_error("degree " + std::to_string(degree) + " needs " + std::to_string(count) +
                           " generators, above the cap of " + std::to_string(cap)),
        degree_(degree),
        count_(count) {}
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

 private:
  int degree_;
  std::uint64_t count_;
};

inline constexpr std::uint64_t kDefaultMaxGenerators = 4'000'000;

// Generators of C_n(C, F): (f_n, ..., f_1, b) with f_1 leaving x0 and b a
// basis vector of F(x0). Ordered by x0, then b, then the string.
class GZIndex {
 public:
  GZIndex(const FiniteCategory& c, const ModuleFunctor& f, int top_degree);

  struct Generator {
    int x0 = 0;
    std::uint64_t basis = 0;
    std::vector<std::uint32_t> string;  // f_1 .. f_n
  };

  [[nodiscard]] int top_degree() const noexcept { return top_; }
  [[nodiscard]] std::uint64_t count(int n) const { return count_[static_cast<std::size_t>(n)]; }
  // Number of composable strings of length k starting at x.
  [[nodiscard]] std::uint64_t strings(int x, int k) const;
  [[nodiscard]] Generator decode(int n, std::uint64_t index) const;
  [[nodiscard]] std::uint64_t encode(int x0, std::uint64_t basis, std::span<const std::uint32_t> string) const;
  [[nodiscard]] const FiniteCategory& category() const noexcept { return *c_; }
  [[nodiscard]] const ModuleFunctor& functor() const noexcept { return *f_; }

 private:
  const FiniteCategory* c_;
  const ModuleFunctor* f_;
  int top_;
  int objects_;
  std::vector<std::uint64_t> s_;       // s_[k * objects + x]
  std::vector<std::uint64_t> prefix_;  // prefix_[(k * objects + x) * objects + y]
  std::vector<std::uint64_t> offset_;  // offset_[n * (objects + 1) + x]
  std::vector<std::uint64_t> count_;
};

// Generator counts only; no assembly. Degrees 0..top.
std::vector<std::uint64_t> gz_counts(const FiniteCategory& c, const ModuleFunctor& f, int top_degree);

// Degrees 0..top_degree (homology valid through top_degree - 1). Throws
// CapExceeded before assembling a degree larger than max_generators.
ChainComplex build_gz_complex(const GZIndex& index, std::uint64_t max_generators = kDefaultMaxGenerators);

// Map induced by a natural transformation eta : F -> G over the same category.
// eta(x, b) is the image of the basis vector b of F(x).
using NaturalMap = std::function<SparseVector(int x, std::uint64_t basis)>;
ChainMap induced_chain_map(const GZIndex& from, const GZIndex& to, const NaturalMap& eta);

// ---------------------------------------------------------------------------
// Nerve variant: the functor x -> k[Hom(-, x)] (x)_C F on the truncation,
// presented as a quotient of the generators (f0 : c -> x, b in F(c)).

class NerveQuotientModule final : public ModuleFunctor {
 public:
  NerveQuotientModule(const FiniteCategory& c, const ModuleFunctor& f);
  [[nodiscard]] std::uint64_t dim(int x) const override { return basis_[static_cast<std::size_t>(x)].size(); }
  [[nodiscard]] SparseVector apply(std::uint32_t f, std::uint64_t basis) const override;

  struct Pair {
    std::uint32_t f0;
    std::uint64_t b;
  };
  // Representative of a quotient basis vector.
  [[nodiscard]] Pair representative(int x, std::uint64_t i) const { return basis_[static_cast<std::size_t>(x)][i]; }
  // Class of (f0, b) in quotient coordinates.
  [[nodiscard]] SparseVector project(int x, std::uint32_t f0, std::uint64_t b) const;
  [[nodiscard]] std::uint64_t generator_count(int x) const { return gen_count_[static_cast<std::size_t>(x)]; }
  [[nodiscard]] std::uint64_t relation_count(int x) const { return rel_count_[static_cast<std::size_t>(x)]; }

 private:
  [[nodiscard]] std::uint64_t generator_index(int x, std::uint32_t f0, std::uint64_t b) const;

  const FiniteCategory* c_;
  const ModuleFunctor* f_;
  std::vector<std::vector<Pair>> basis_;
  // Generators (f0, b) numbered per x: block per source object c, then f0, then b.
  std::vector<std::vector<std::uint64_t>> block_start_;
  std::vector<std::vector<SparseVector>> projection_;  // per x, per generator
  std::vector<std::uint64_t> gen_count_;
  std::vector<std::uint64_t> rel_count_;
};

// [(f_n..f_1, f0) (x) b] -> (f_n..f_1, F(f0) b)
ChainMap gz_nerve_iso(const GZIndex& nerve, const NerveQuotientModule& q, const GZIndex& gz);

// ---------------------------------------------------------------------------
// Reduced splitting in the augmentation-adapted basis.

// Basis tensors with at least one nontrivial factor (ideal part) or the
// all-unit tensor (trivial part), per object of the view.
std::vector<std::vector<std::uint64_t>> ideal_part_basis(const CategoryView& view, const BarFunctor& bar);
std::vector<std::vector<std::uint64_t>> unit_part_basis(const CategoryView& view, const BarFunctor& bar);

// Generator map C_I + C_k -> C (a permutation when the splitting is exact).
SparseMatrix splitting_map(const GZIndex& full, const GZIndex& ideal, const SubModule& ideal_module,
                           const GZIndex& unit, const SubModule& unit_module, int degree);

// The lift L = C_*(Delta H, k[Hom([0], -)]) of the trivial part with its cone
// contraction h(f_n..f_1, f0) = (f_n..f_1, f0, id_0).
struct ConeContraction {
  std::vector<SparseMatrix> h;  // h[n] : L_n -> L_{n+1}
  SparseVector augmentation;    // eps : L_0 -> k, as a row
  std::uint64_t unit_index;     // eta(1) = the vertex id_0
};
ConeContraction cone_contraction(const GZIndex& lift, int max_degree);

// ---------------------------------------------------------------------------
// Epimorphism construction and the maps i, chi, h between the epi complex
// C_*(Epi Delta H, H_I) and the ideal part C_I.

// Epi part of f o mono, for the induced morphism on under-category strings.
IFasMorphism epimorphism_construction(const IFasMorphism& f);

struct EpiComparison {
  ChainMap inclusion;  // epi -> C_I
  ChainMap chi;        // C_I -> epi
  std::vector<SparseMatrix> homotopy;  // homotopy[n] : C_I,n -> C_I,n+1
};
// epi and ideal must be built over views of the same truncation N with the
// same adapted algebra. Maps are built for degrees 0..max_degree and the
// homotopy for degrees 0..max_degree - 1.
EpiComparison epi_comparison(const GZIndex& epi, const CategoryView& epi_view, const BarFunctor& ideal_bar,
                             const GZIndex& ideal, const SubModule& ideal_module, const CategoryView& full_view,
                             const BarFunctor& full_bar, int max_degree);

// Runs body(i) for i in [0, n) on the available hardware threads.
void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t begin, std::uint64_t end)>& body);

}  // namespace hyperoct
