#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "barfun.hpp"

using namespace hyperoct;

namespace {

LabeledPoint P(int i, bool t = false) { return LabeledPoint{static_cast<std::uint8_t>(i), t}; }

Vector e(std::size_t d, std::size_t i) {
  Vector v(d, Rational(0));
  v[i] = Rational(1);
  return v;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

// Dense evaluation of the bar formula on one basis tensor.
Vector oracle(const InvolutiveAlgebra& a, const IFasMorphism& f, const std::vector<std::uint32_t>& factors) {
  const std::size_t d = a.dim();
  Vector out{Rational(1)};
  for (int j = 0; j <= f.target(); ++j) {
    Vector acc = a.unit();
    for (const auto& p : f.preimage(j)) {
      Vector x = e(d, factors[p.point]);
      if (p.flipped) x = a.involve(x);
      acc = a.multiply(acc, x);
    }
    out = kron(out, acc);
  }
  return out;
}

Vector densify(const SparseVector& v, std::size_t n) {
  Vector out(n, Rational(0));
  for (const auto& x : v) out[x.row] = x.value;
  return out;
}

IFasMorphism random_hom(std::mt19937& rng, int n, int m, HomVariant variant) {
  auto homs = enumerate_hom(n, m, variant);
  return homs[rng() % homs.size()];
}

}  // namespace

TEST_CASE("dimensions") {
  auto a = adapt_basis_to_augmentation(cyclic_group_algebra(3, Ring::rationals()));
  BarFunctor full(a, BarVariant::kFull), ideal(a, BarVariant::kIdeal), ext(a, BarVariant::kExtended);
  CHECK(full.dim(0) == 3);
  CHECK(full.dim(2) == 27);
  CHECK(ideal.dim(1) == 4);
  CHECK(ext.dim(-1) == 1);
  CHECK_THROWS(full.dim(-1));
  for (std::uint64_t i = 0; i < full.dim(2); ++i) CHECK(full.index_of(full.factors(2, i)) == i);
  for (std::uint64_t i = 0; i < ideal.dim(2); ++i) {
    auto f = ideal.factors(2, i);
    for (auto x : f) CHECK(x >= 1);
    CHECK(ideal.index_of(f) == i);
  }
  CHECK_THROWS_AS(BarFunctor(cyclic_group_algebra(3, Ring::rationals()), BarVariant::kIdeal), std::invalid_argument);
}

TEST_CASE("hand examples on Q[C3]") {
  auto a = cyclic_group_algebra(3, Ring::rationals());  // e, g, g^2
  BarFunctor bar(a, BarVariant::kFull);
  // t_0 on [0] is the involution
  auto t0 = IFasMorphism(0, 0, {{P(0, true)}});
  auto m = bar.evaluate(t0);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(m.at(r, c) == a.involution(r, c));
  // a0 (x) a1 -> conj(a0) a1 : g (x) g -> g^2 g = e, g (x) e -> g^2, e (x) g^2 -> g^2
  auto f = IFasMorphism(1, 0, {{P(0, true), P(1)}});
  CHECK(bar.apply(f, bar.index_of(std::vector<std::uint32_t>{1, 1})) == SparseVector{{0, Rational(1)}});
  CHECK(bar.apply(f, bar.index_of(std::vector<std::uint32_t>{1, 0})) == SparseVector{{2, Rational(1)}});
  CHECK(bar.apply(f, bar.index_of(std::vector<std::uint32_t>{0, 2})) == SparseVector{{2, Rational(1)}});
  // delta_0 : [0] -> [1], 0 -> 1 : a -> 1 (x) a
  auto d0 = IFasMorphism(0, 1, {{}, {P(0)}});
  for (std::uint32_t i = 0; i < 3; ++i)
    CHECK(bar.apply(d0, i) == SparseVector{{static_cast<std::uint32_t>(bar.index_of(std::vector<std::uint32_t>{0, i})), Rational(1)}});
}

TEST_CASE("formula against a dense oracle") {
  std::mt19937 rng(5);
  for (auto name : {"C2", "C3", "S3"}) {
    auto a = adapt_basis_to_augmentation(builtin_algebra(name, Ring::rationals()));
    BarFunctor bar(a, BarVariant::kFull);
    for (int trial = 0; trial < 150; ++trial) {
      const int n = static_cast<int>(rng() % 3), m = static_cast<int>(rng() % 3);
      auto f = random_hom(rng, n, m, HomVariant::kAll);
      const std::uint64_t i = rng() % bar.dim(n);
      CHECK(densify(bar.apply(f, i), bar.dim(m)) == oracle(a, f, bar.factors(n, i)));
    }
  }
}

TEST_CASE("functoriality") {
  std::mt19937 rng(9);
  for (auto name : {"C2", "C3", "ground"}) {
    auto a = builtin_algebra(name, Ring::rationals());
    BarFunctor bar(a, BarVariant::kFull);
    for (int n = 0; n <= 2; ++n) CHECK(bar.evaluate(IFasMorphism::identity(n)) == SparseMatrix::identity(bar.dim(n)));
    for (int trial = 0; trial < 400; ++trial) {
      const int x = static_cast<int>(rng() % 3), y = static_cast<int>(rng() % 3), z = static_cast<int>(rng() % 3);
      auto f = random_hom(rng, x, y, HomVariant::kAll);
      auto g = random_hom(rng, y, z, HomVariant::kAll);
      CHECK(bar.evaluate(ifas_compose(g, f)) == bar.evaluate(g) * bar.evaluate(f));
    }
  }
}

TEST_CASE("ideal variant is a restriction") {
  std::mt19937 rng(2);
  auto a = adapt_basis_to_augmentation(cyclic_group_algebra(3, Ring::rationals()));
  BarFunctor full(a, BarVariant::kFull), ideal(a, BarVariant::kIdeal);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng() % 3);
    const int m = static_cast<int>(rng() % (n + 1));
    auto f = random_hom(rng, n, m, HomVariant::kEpi);
    const std::uint64_t i = rng() % ideal.dim(n);
    const auto fi = ideal.factors(n, i);
    auto image = full.apply(f, full.index_of(fi));
    SparseVector restricted;
    for (const auto& x : image) {
      auto fac = full.factors(m, x.row);
      bool inside = true;
      for (auto k : fac) inside = inside && k != 0;
      REQUIRE(inside);
      restricted.push_back({static_cast<std::uint32_t>(ideal.index_of(fac)), x.value});
    }
    canonicalize(restricted);
    CHECK(ideal.apply(f, i) == restricted);
  }
  CHECK_THROWS(ideal.evaluate(IFasMorphism(0, 1, {{}, {P(0)}})));
}

TEST_CASE("extended variant") {
  std::mt19937 rng(4);
  auto a = cyclic_group_algebra(2, Ring::rationals());
  BarFunctor ext(a, BarVariant::kExtended);
  BarFunctor full(a, BarVariant::kFull);
  CHECK_THROWS(full.evaluate(enumerate_hom(-1, 0, HomVariant::kAll).at(0)));
  CHECK(ext.evaluate(IFasMorphism::identity(-1)) == SparseMatrix::identity(1));
  for (int n = 0; n <= 2; ++n) {
    auto in = enumerate_hom(-1, n, HomVariant::kAll);
    REQUIRE(in.size() == 1);
    CHECK(ext.apply(in[0], 0) == SparseVector{{0, Rational(1)}});  // 1 (x) ... (x) 1
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng() % 3), m = static_cast<int>(rng() % 3);
    auto f = random_hom(rng, n, m, HomVariant::kAll);
    auto in = enumerate_hom(-1, n, HomVariant::kAll)[0];
    auto im = enumerate_hom(-1, m, HomVariant::kAll)[0];
    CHECK(ext.evaluate(f) * ext.evaluate(in) == ext.evaluate(im));
    CHECK(ext.evaluate(f) == full.evaluate(f));
  }
}
