#pragma once

// Coinvariant presentation of the reduced complex over the poset S0 of
// nonempty subsets of {0..N}, characteristic zero only.

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "barfun.hpp"
#include "complexes.hpp"
#include "croscat.hpp"

namespace hyperoct {

// Objects are nonempty subsets X of {0..N}, object index = bitmask - 1.
// There is exactly one morphism X -> X' when X' is a subset of X.
class S0Category final : public FiniteCategory {
 public:
  explicit S0Category(int max_object);

  [[nodiscard]] int max_object() const noexcept { return n_; }
  // Elements of X, largest first: x_0 > x_1 > ... > x_r.
  [[nodiscard]] std::vector<int> elements(int x) const;
  [[nodiscard]] std::uint32_t mask(int x) const noexcept { return static_cast<std::uint32_t>(x) + 1; }
  [[nodiscard]] int object_of_mask(std::uint32_t m) const noexcept { return static_cast<int>(m) - 1; }
  [[nodiscard]] std::uint32_t morphism_count() const noexcept { return static_cast<std::uint32_t>(src_.size()); }

  [[nodiscard]] int object_count() const override { return (1 << (n_ + 1)) - 1; }
  [[nodiscard]] std::uint32_t hom_begin(int x, int y) const override { return start_[pair(x, y)]; }
  [[nodiscard]] std::uint32_t hom_size(int x, int y) const override {
    return start_[pair(x, y) + 1] - start_[pair(x, y)];
  }
  [[nodiscard]] int source(std::uint32_t f) const override { return src_[f]; }
  [[nodiscard]] int target(std::uint32_t f) const override { return tgt_[f]; }
  [[nodiscard]] std::uint32_t compose(std::uint32_t f2, std::uint32_t f1) const override;
  [[nodiscard]] std::uint32_t identity(int x) const override { return hom_begin(x, x); }

 private:
  [[nodiscard]] std::size_t pair(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(object_count()) + static_cast<std::size_t>(y);
  }
  int n_;
  std::vector<std::uint32_t> start_;
  std::vector<int> src_;
  std::vector<int> tgt_;
};

// A string of epimorphisms [x_0] -> [x_1] -> ... -> [x_r].
using EpiString = std::vector<IFasMorphism>;
// One automorphism of [x_i] per element of X.
using AutTuple = std::vector<IFasMorphism>;

std::vector<AutTuple> automorphism_group(const std::vector<int>& elements);
std::vector<EpiString> hom_product(const std::vector<int>& elements);
// (g_1 f_1 g_0^-1, ..., g_r f_r g_{r-1}^-1)
EpiString act(const AutTuple& g, const EpiString& e);

// Image of (e, -) under X -> X' (X' a subset of X): the new string composes
// consecutive epis between kept elements; the tensor moves along the
// composite [x_0] -> [x'_0], which is returned as `lead`.
struct EpiStringImage {
  EpiString string;
  IFasMorphism lead;
};
EpiStringImage hom_product_map(const std::vector<int>& from, const std::vector<int>& to, const EpiString& e);
// Projection of an automorphism tuple onto the kept factors.
AutTuple automorphism_map(const std::vector<int>& from, const std::vector<int>& to, const AutTuple& g);

// X -> k[E(X)] (x) H_I([x_0]) modulo A(X). Basis: per orbit of A(X) on E(X)
// with representative e, the pivot columns of the stabilizer average on
// H_I([x_0]). The basis vector (e, w) stands for the invariant vector
// sum over the orbit of e' (x) g_0 w, g e = e'.
class CoinvariantModule final : public ModuleFunctor {
 public:
  // `ideal` must be the ideal bar functor of an adapted algebra over Q.
  // Throws CapExceeded when |A(X)| times the number of orbits at some X
  // passes the work cap.
  CoinvariantModule(const S0Category& s0, const BarFunctor& ideal, std::uint64_t work_cap = 50'000'000);

  [[nodiscard]] std::uint64_t dim(int x) const override { return objects_[static_cast<std::size_t>(x)].basis.size(); }
  [[nodiscard]] SparseVector apply(std::uint32_t f, std::uint64_t basis) const override {
    return images_[f][basis];
  }

  [[nodiscard]] std::uint64_t group_order(int x) const { return objects_[static_cast<std::size_t>(x)].group.size(); }
  [[nodiscard]] std::uint64_t hom_product_size(int x) const {
    return objects_[static_cast<std::size_t>(x)].strings.size();
  }
  [[nodiscard]] std::uint64_t orbit_count(int x) const { return objects_[static_cast<std::size_t>(x)].reps.size(); }

  // Averaging projector on all of k[E(X)] (x) H_I([x_0]), for cross-checks
  // on small objects.
  [[nodiscard]] SparseMatrix full_projector(int x) const;
  // The invariant vector of a basis element, in the same coordinates.
  [[nodiscard]] SparseVector invariant_vector(int x, std::uint64_t basis) const;

  // Group action axioms on E(X), exhaustive when |A|^2 |E| <= budget,
  // sampled otherwise.
  [[nodiscard]] bool check_action(int x, std::uint64_t budget, std::mt19937& rng) const;
  // mu o (A(f) x E(f)) = E(f) o mu, including the tensor component.
  [[nodiscard]] bool check_naturality(std::uint32_t f, std::uint64_t budget, std::mt19937& rng) const;
  // Stabilizer averages are idempotent and invariant.
  [[nodiscard]] bool check_projectors(int x) const;

 private:
  struct BasisVector {
    std::uint32_t orbit;
    std::vector<Rational> w;  // dense over H_I([x_0])
  };
  struct ObjectData {
    std::vector<int> elements;
    std::vector<AutTuple> group;
    std::vector<EpiString> strings;
    std::unordered_map<std::string, std::uint32_t> lookup;
    std::vector<std::uint32_t> orbit_of;
    std::vector<std::uint32_t> transporter;  // group index g with g . rep = string
    std::vector<std::uint32_t> reps;
    std::vector<std::vector<std::uint32_t>> stabilizers;
    std::vector<BasisVector> basis;
    std::vector<std::vector<std::uint32_t>> orbit_basis;  // basis indices per orbit
  };

  [[nodiscard]] static std::string key(const EpiString& e);
  [[nodiscard]] std::vector<Rational> tensor_apply(const IFasMorphism& f, const std::vector<Rational>& w) const;
  [[nodiscard]] std::vector<std::vector<Rational>> stabilizer_average(const ObjectData& o, std::uint32_t orbit) const;
  void build_object(int x, std::uint64_t work_cap);
  void build_images();

  const S0Category* s0_;
  const BarFunctor* ideal_;
  std::vector<ObjectData> objects_;
  std::vector<std::vector<SparseVector>> images_;  // per morphism, per basis vector
};

}  // namespace hyperoct
