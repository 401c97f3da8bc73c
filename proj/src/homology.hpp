#pragma once

// Exact homology of finite chain complexes: ranks over Q and F_p, Smith
// normal form over Z, coefficients, universal coefficients, boundary solving.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "algebra.hpp"
#include "sparse.hpp"

namespace hyperoct {

// C_0 .. C_top. d[n] : C_n -> C_{n-1} for 1 <= n <= top; d[0] is unused.
// Homology is reported in degrees 0 .. top - 1.
struct ChainComplex {
  std::vector<std::uint64_t> dims;
  std::vector<SparseMatrix> d;

  [[nodiscard]] int top() const noexcept { return static_cast<int>(dims.size()) - 1; }
  // Throws std::logic_error naming the degree if a shape is inconsistent.
  void check_shapes() const;
  // First degree n with d[n-1] d[n] != 0, or -1.
  [[nodiscard]] int first_nonzero_square() const;
};

struct ChainMap {
  std::vector<SparseMatrix> f;  // f[n] : C_n -> C'_n
};

// Verifies f d = d' f in every degree present in both. Returns the first
// failing degree or -1.
int first_noncommuting_degree(const ChainComplex& source, const ChainComplex& target, const ChainMap& map);

struct HomologyResult {
  std::vector<std::uint64_t> betti;
  std::vector<std::vector<mpz_class>> torsion;  // invariant factors > 1, over Z only
};

// Rank of a matrix over Q.
std::uint64_t rank_rational(const SparseMatrix& m);
// Rank after reducing entries mod p. Throws std::domain_error if a
// denominator is divisible by p.
std::uint64_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);

struct SmithForm {
  std::uint64_t rank = 0;
  std::vector<mpz_class> invariant_factors;  // nonzero diagonal, divisibility chain, units included
};
// Integral entries only; throws std::invalid_argument otherwise.
SmithForm smith_form(const SparseMatrix& m);

HomologyResult homology(const ChainComplex& c, const Ring& ring);

// A finitely generated abelian group Z^free_rank + sum Z/m_i.
struct Coefficients {
  std::uint64_t free_rank = 1;
  std::vector<std::uint64_t> torsion;
  // Parses "z", "z/m", "z+z/2", ...
  static Coefficients parse(const std::string& text);
  [[nodiscard]] std::string str() const;
};

// Z-complex whose homology is H_*(C (x) M): copies of C and mapping cones of
// multiplication by m, in the same degree range.
ChainComplex tensor_with_coefficients(const ChainComplex& c, const Coefficients& m);

// Mapping cone of multiplication by m; H_n of the cone is H_n(C; Z/m).
ChainComplex multiplication_cone(const ChainComplex& c, std::uint64_t m);

struct UctDegree {
  int degree = 0;
  std::uint64_t middle = 0;      // dim H_n(C; Z/p), mod-p ranks
  std::uint64_t tensor_part = 0;  // dim H_n (x) Z/p
  std::uint64_t tor_part = 0;    // dim Tor(H_{n-1}, Z/p)
  std::uint64_t cone = 0;        // number of invariant factors of H_n(cone)
  [[nodiscard]] bool holds() const { return middle == tensor_part + tor_part && cone == middle; }
};
// Integral complex and a prime p.
std::vector<UctDegree> uct_check(const ChainComplex& c, std::uint32_t p);

// Looks for w with d_{n+1} w = z over Q. Throws std::invalid_argument if z is
// not a cycle. Returns std::nullopt when z is not a boundary.
std::optional<SparseVector> solve_is_boundary(const ChainComplex& c, int n, const SparseVector& z);

}  // namespace hyperoct
