#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "complexes.hpp"

using namespace hyperoct;

namespace {

SparseMatrix shift_rows(const SparseMatrix& m, std::size_t rows, std::uint32_t shift) {
  SparseMatrix out(rows, 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    SparseVector v = m.column_vector(c);
    for (auto& e : v) e.row += shift;
    out.push_column(v);
  }
  return out;
}

// d_A + d_B on C_A + C_B.
SparseMatrix block_diagonal(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = shift_rows(a, a.rows() + b.rows(), 0);
  out.append(shift_rows(b, a.rows() + b.rows(), static_cast<std::uint32_t>(a.rows())));
  return out;
}

bool is_permutation(const SparseMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<bool> seen(m.rows(), false);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto col = m.column(c);
    if (col.size() != 1 || col[0].value != Rational(1) || seen[col[0].row]) return false;
    seen[col[0].row] = true;
  }
  return true;
}

struct Setup {
  InvolutiveAlgebra algebra;
  TruncatedCategory full_cat;
  TruncatedCategory epi_cat;
  CategoryView full_view{full_cat};
  CategoryView epi_view{epi_cat};
  BarFunctor full_bar{algebra, BarVariant::kFull};
  BarFunctor ideal_bar{algebra, BarVariant::kIdeal};
  BarModule full_module{full_view, full_bar};
  BarModule epi_module{epi_view, ideal_bar};
  SubModule ideal_module{full_view, full_module, ideal_part_basis(full_view, full_bar)};
  SubModule unit_module{full_view, full_module, unit_part_basis(full_view, full_bar)};

  Setup(int order, int n)
      : algebra(adapt_basis_to_augmentation(cyclic_group_algebra(order, Ring::rationals()))),
        full_cat(CategoryKind::kDeltaH, n),
        epi_cat(CategoryKind::kEpiDeltaH, n) {}
};

}  // namespace

TEST_CASE("GZ index round trip and counts") {
  auto a = ground_ring(Ring::rationals());
  TruncatedCategory cat(CategoryKind::kDeltaH, 1);
  CategoryView view(cat);
  BarFunctor bar(a, BarVariant::kFull);
  BarModule m(view, bar);
  GZIndex idx(view, m, 3);
  for (int n = 0; n <= 3; ++n)
    for (std::uint64_t g = 0; g < idx.count(n); ++g) {
      auto gen = idx.decode(n, g);
      REQUIRE(gen.string.size() == static_cast<std::size_t>(n));
      CHECK(idx.encode(gen.x0, gen.basis, gen.string) == g);
    }
  // strings of length 1 from x: sum_y |Hom(x, y)|
  CHECK(idx.strings(0, 1) == cat.hom_size(0, 0) + cat.hom_size(0, 1));

  TruncatedCategory point(CategoryKind::kDeltaH, 0);
  CategoryView pv(point);
  BarModule pm(pv, bar);
  auto counts = gz_counts(pv, pm, 1);
  CHECK(counts == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("ground ring: connected in degree 0") {
  auto a = ground_ring(Ring::rationals());
  for (int n = 0; n <= 1; ++n) {
    TruncatedCategory cat(CategoryKind::kDeltaH, n);
    CategoryView view(cat);
    BarFunctor bar(a, BarVariant::kFull);
    BarModule m(view, bar);
    GZIndex idx(view, m, 2);
    auto c = build_gz_complex(idx);
    CHECK(c.first_nonzero_square() == -1);
    CHECK(homology(c, Ring::rationals()).betti[0] == 1);
  }
}

TEST_CASE("cap is enforced before assembly") {
  auto a = cyclic_group_algebra(2, Ring::rationals());
  TruncatedCategory cat(CategoryKind::kDeltaH, 1);
  CategoryView view(cat);
  BarFunctor bar(a, BarVariant::kFull);
  BarModule m(view, bar);
  GZIndex idx(view, m, 3);
  CHECK_THROWS_AS(build_gz_complex(idx, 100), CapExceeded);
}

namespace {

void check_reduced_and_epi(int order, int top) {
  Setup s(order, 1);
  GZIndex full(s.full_view, s.full_module, top);
  GZIndex ideal(s.full_view, s.ideal_module, top);
  GZIndex unit(s.full_view, s.unit_module, top);
  GZIndex epi(s.epi_view, s.epi_module, top);
  auto C = build_gz_complex(full);
  auto CI = build_gz_complex(ideal);
  auto Ck = build_gz_complex(unit);
  auto E = build_gz_complex(epi);
  CHECK(C.first_nonzero_square() == -1);
  CHECK(CI.first_nonzero_square() == -1);
  CHECK(E.first_nonzero_square() == -1);

  for (int n = 0; n <= top; ++n) {
    auto P = splitting_map(full, ideal, s.ideal_module, unit, s.unit_module, n);
    CHECK(is_permutation(P));
    if (n >= 1) {
      auto Pm = splitting_map(full, ideal, s.ideal_module, unit, s.unit_module, n - 1);
      CHECK(C.d[static_cast<std::size_t>(n)] * P ==
            Pm * block_diagonal(CI.d[static_cast<std::size_t>(n)], Ck.d[static_cast<std::size_t>(n)]));
    }
  }

  auto hk = homology(Ck, Ring::rationals());
  REQUIRE(hk.betti.size() == static_cast<std::size_t>(top));
  CHECK(hk.betti[0] == 1);
  for (int n = 1; n < top; ++n) CHECK(hk.betti[static_cast<std::size_t>(n)] == 0);

  auto cmp = epi_comparison(epi, s.epi_view, s.ideal_bar, ideal, s.ideal_module, s.full_view, s.full_bar, top);
  CHECK(first_noncommuting_degree(E, CI, cmp.inclusion) == -1);
  CHECK(first_noncommuting_degree(CI, E, cmp.chi) == -1);
  for (int n = 0; n <= top; ++n) {
    const auto un = static_cast<std::size_t>(n);
    CHECK(cmp.chi.f[un] * cmp.inclusion.f[un] == SparseMatrix::identity(epi.count(n)));
  }
  for (int n = 0; n < top; ++n) {
    const auto un = static_cast<std::size_t>(n);
    auto lhs = CI.d[un + 1] * cmp.homotopy[un];
    if (n >= 1) lhs = lhs + cmp.homotopy[un - 1] * CI.d[un];
    auto rhs = SparseMatrix::identity(ideal.count(n)) - cmp.inclusion.f[un] * cmp.chi.f[un];
    CHECK_MESSAGE(lhs == rhs, "degree " << n);
  }
  auto hi = homology(CI, Ring::rationals());
  auto he = homology(E, Ring::rationals());
  CHECK(hi.betti == he.betti);
}

}  // namespace

TEST_CASE("reduced splitting, trivial part and epi comparison for Q[C2], N = 1") { check_reduced_and_epi(2, 3); }
TEST_CASE("reduced splitting, trivial part and epi comparison for Q[C3], N = 1") { check_reduced_and_epi(3, 2); }

TEST_CASE("cone contraction of the lift") {
  auto a = ground_ring(Ring::rationals());
  TruncatedCategory cat(CategoryKind::kDeltaH, 1);
  CategoryView view(cat);
  RepresentableModule rep(view, 0);
  GZIndex lift(view, rep, 3);
  auto L = build_gz_complex(lift);
  auto cone = cone_contraction(lift, 2);
  for (int n = 0; n <= 2; ++n) {
    const auto un = static_cast<std::size_t>(n);
    auto lhs = L.d[un + 1] * cone.h[un];
    if (n >= 1) lhs = lhs + cone.h[un - 1] * L.d[un];
    auto rhs = SparseMatrix::identity(lift.count(n));
    if (n == 0) {
      SparseMatrix eta_eps(lift.count(0), 0);
      SparseEntry e{static_cast<std::uint32_t>(cone.unit_index), Rational(1)};
      for (std::uint64_t g = 0; g < lift.count(0); ++g) eta_eps.push_column(std::span<const SparseEntry>(&e, 1));
      rhs = rhs - eta_eps;
    }
    CHECK_MESSAGE(lhs == rhs, "degree " << n);
  }
  CHECK(homology(L, Ring::rationals()).betti == std::vector<std::uint64_t>{1, 0, 0});
}

TEST_CASE("nerve variant is isomorphic to the GZ complex") {
  auto a = cyclic_group_algebra(2, Ring::rationals());
  TruncatedCategory cat(CategoryKind::kDeltaH, 1);
  CategoryView view(cat);
  BarFunctor bar(a, BarVariant::kFull);
  BarModule m(view, bar);
  NerveQuotientModule q(view, m);
  for (int x = 0; x < 2; ++x) {
    CHECK(q.dim(x) == m.dim(x));
    for (std::uint64_t i = 0; i < q.dim(x); ++i) CHECK(q.representative(x, i).f0 == view.identity(x));
  }
  GZIndex nerve(view, q, 2);
  GZIndex gz(view, m, 2);
  auto N = build_gz_complex(nerve);
  auto G = build_gz_complex(gz);
  auto iso = gz_nerve_iso(nerve, q, gz);
  CHECK(first_noncommuting_degree(N, G, iso) == -1);
  for (int n = 0; n <= 2; ++n) CHECK(rank_rational(iso.f[static_cast<std::size_t>(n)]) == gz.count(n));
  CHECK(homology(N, Ring::rationals()).betti == homology(G, Ring::rationals()).betti);
}

TEST_CASE("epimorphism construction is functorial on under-categories") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const int x = static_cast<int>(rng() % 3), y = static_cast<int>(rng() % 3), z = static_cast<int>(rng() % 3);
    auto hf = enumerate_hom(x, y, HomVariant::kAll);
    auto hg = enumerate_hom(y, z, HomVariant::kAll);
    const auto f = hf[rng() % hf.size()];
    const auto g = hg[rng() % hg.size()];
    const auto ff = factorize(f);
    // E(g f) = E(g o mono_f) o E(f)
    CHECK(epimorphism_construction(ifas_compose(g, f)) ==
          ifas_compose(epimorphism_construction(ifas_compose(g, ff.mono)), epimorphism_construction(f)));
    if (f.is_epi()) CHECK(epimorphism_construction(f) == f);
  }
  // delta_1 : [0] -> [1] maps to the identity of [0]
  const auto d1 = IFasMorphism(0, 1, {{LabeledPoint{0, false}}, {}});
  CHECK(epimorphism_construction(d1) == IFasMorphism::identity(0));
}
