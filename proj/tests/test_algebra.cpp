#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "algebra.hpp"

using namespace hyperoct;

namespace {

Vector basis_vector(std::size_t d, std::size_t i) {
  Vector v(d, Rational(0));
  v[i] = Rational(1);
  return v;
}

Vector random_vector(std::mt19937& rng, std::size_t d) {
  Vector v(d);
  for (auto& x : v) x = Rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
  return v;
}

}  // namespace

TEST_CASE("rings") {
  CHECK(Ring::prime_field(3).str() == "f3");
  CHECK(Ring::rationals().str() == "q");
  CHECK(Ring::integers().str() == "z");
  CHECK_THROWS_AS(Ring::prime_field(4), std::invalid_argument);
  CHECK_THROWS_AS(Ring::prime_field(1), std::invalid_argument);
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("group algebras") {
  auto c2 = cyclic_group_algebra(2, Ring::rationals());
  CHECK(c2.dim() == 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) CHECK(c2.involution(r, c) == Rational(r == c ? 1 : 0));

  auto c3 = cyclic_group_algebra(3, Ring::rationals());
  // g <-> g^2
  CHECK(c3.involution(2, 1) == Rational(1));
  CHECK(c3.involution(1, 2) == Rational(1));
  CHECK(c3.involution(0, 0) == Rational(1));
  CHECK(c3.multiply(basis_vector(3, 1), basis_vector(3, 2)) == basis_vector(3, 0));
  CHECK(c3.augment(basis_vector(3, 2)) == Rational(1));

  auto trivial = group_algebra({"e"}, {{0}}, Ring::integers());
  auto ground = ground_ring(Ring::integers());
  CHECK(trivial.dim() == 1);
  CHECK(trivial.involution(0, 0) == Rational(1));
  CHECK(trivial.fingerprint() == ground.fingerprint());

  CHECK_THROWS_AS(group_algebra({"a", "b"}, {{0, 1}, {1, 1}}, Ring::rationals()), std::invalid_argument);
  CHECK_THROWS_AS(group_algebra({"e", "a", "b"}, {{0, 1, 2}, {1, 0, 0}, {2, 2, 0}}, Ring::rationals()), std::invalid_argument);

  for (auto name : {"ground", "C1", "C4", "klein4", "V4", "S3"}) CHECK_NOTHROW(builtin_algebra(name, Ring::rationals()));
  CHECK(builtin_algebra("S3", Ring::integers()).dim() == 6);
  CHECK_THROWS_AS(builtin_algebra("C0", Ring::rationals()), std::invalid_argument);
  CHECK_THROWS_AS(builtin_algebra("D8", Ring::rationals()), std::invalid_argument);
}

TEST_CASE("axioms on random vectors") {
  std::mt19937 rng(1);
  for (auto name : {"C3", "klein4", "S3"}) {
    auto a = builtin_algebra(name, Ring::rationals());
    const std::size_t d = a.dim();
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_vector(rng, d), y = random_vector(rng, d), z = random_vector(rng, d);
      CHECK(a.multiply(a.unit(), x) == x);
      CHECK(a.multiply(x, a.unit()) == x);
      CHECK(a.involve(a.involve(x)) == x);
      CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
      CHECK(a.involve(a.multiply(x, y)) == a.multiply(a.involve(y), a.involve(x)));
      CHECK(a.augment(a.multiply(x, y)) == a.augment(x) * a.augment(y));
    }
  }
  auto a = cyclic_group_algebra(2, Ring::rationals());
  CHECK_THROWS_AS(a.multiply(Vector(3), Vector(2)), std::invalid_argument);
}

TEST_CASE("invalid presentations are rejected") {
  // x^2 = x with involution x -> -x is not an anti-homomorphism.
  std::vector<Rational> s{Rational(1), Rational(0), Rational(0), Rational(0),
                          Rational(0), Rational(1), Rational(0), Rational(1)};
  std::vector<Rational> inv{Rational(1), Rational(0), Rational(0), Rational(-1)};
  CHECK_THROWS_AS(InvolutiveAlgebra({"1", "x"}, s, inv, {Rational(1), Rational(0)}, std::nullopt),
                  std::invalid_argument);
  // Half-integer structure constants over Z.
  CHECK_THROWS_AS(InvolutiveAlgebra({"1"}, {Rational(1, 2)}, {Rational(1)}, {Rational(2)}, std::nullopt, Ring::integers()),
                  std::invalid_argument);
  // Involution that does not square to the identity.
  CHECK_THROWS_AS(InvolutiveAlgebra({"1"}, {Rational(1)}, {Rational(2)}, {Rational(1)}, std::nullopt),
                  std::invalid_argument);
}

TEST_CASE("adapting to the augmentation") {
  auto c3 = cyclic_group_algebra(3, Ring::rationals());
  auto a = adapt_basis_to_augmentation(c3);
  CHECK(a.is_adapted());
  CHECK(a.dim() == 3);
  CHECK(a.basis()[0] == "1");
  // ideal basis {g - 1, g^2 - 1}; the involution swaps them
  CHECK(a.involution(1, 2) == Rational(1));
  CHECK(a.involution(2, 1) == Rational(1));
  CHECK(a.involution(1, 1) == Rational(0));
  // (g - 1)(g - 1) = g^2 - 2g + 1 = (g^2 - 1) - 2(g - 1)
  CHECK(a.multiply(basis_vector(3, 1), basis_vector(3, 1)) == Vector{Rational(0), Rational(-2), Rational(1)});
  // ideal closed under products and the involution
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(a.augment(a.involve(basis_vector(3, i))) == Rational(0));
    for (std::size_t j = 1; j < 3; ++j) CHECK(a.augment(a.multiply(basis_vector(3, i), basis_vector(3, j))) == Rational(0));
  }
  CHECK(adapt_basis_to_augmentation(a).fingerprint() == a.fingerprint());

  auto z = adapt_basis_to_augmentation(builtin_algebra("S3", Ring::integers()));
  CHECK(z.is_adapted());
  CHECK(z.ring() == Ring::integers());

  CHECK_THROWS_AS(adapt_basis_to_augmentation(InvolutiveAlgebra({"1"}, {Rational(1)}, {Rational(1)}, {Rational(1)},
                                                                std::nullopt)),
                  std::invalid_argument);
}

TEST_CASE("fingerprints") {
  auto a = cyclic_group_algebra(3, Ring::rationals());
  auto b = cyclic_group_algebra(3, Ring::rationals());
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != cyclic_group_algebra(3, Ring::integers()).fingerprint());
  CHECK(a.fingerprint() != cyclic_group_algebra(4, Ring::rationals()).fingerprint());
}
