#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "catsuite.hpp"
#include "croscat.hpp"

using namespace hyperoct;

namespace {

LabeledPoint P(int i, bool t = false) { return LabeledPoint{static_cast<std::uint8_t>(i), t}; }

IFasMorphism random_morphism(std::mt19937& rng, int n, int m) {
  auto homs = enumerate_hom(n, m, HomVariant::kAll);
  return homs[std::uniform_int_distribution<std::size_t>(0, homs.size() - 1)(rng)];
}

HypElement random_hyp(std::mt19937& rng, int n) {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n + 1));
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint8_t>(i);
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<bool> s(p.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = rng() & 1U;
  return {s, p};
}

// Number of order-preserving maps [n] -> [m], counted over all set maps.
std::uint64_t brute_force_monotone(int n, int m) {
  std::uint64_t count = 0;
  std::vector<int> v(static_cast<std::size_t>(n + 1), 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 1; i < v.size(); ++i) ok = ok && v[i - 1] <= v[i];
    count += ok;
    std::size_t k = 0;
    while (k < v.size() && v[k] == m) v[k++] = 0;
    if (k == v.size()) break;
    ++v[k];
  }
  return count;
}

}  // namespace

TEST_CASE("hyperoctahedral relations") {
  const int n = 2;
  auto t = [&](int i) { return HypElement::t(n, i); };
  auto th = [&](int j) { return HypElement::theta(n, j); };
  const auto id = HypElement::identity(n);
  for (int i = 0; i <= n; ++i) {
    CHECK(hyp_compose(t(i), t(i)) == id);
    for (int j = 0; j <= n; ++j) CHECK(hyp_compose(t(i), t(j)) == hyp_compose(t(j), t(i)));
  }
  for (int i = 0; i < n; ++i) {
    CHECK(hyp_compose(th(i), th(i)) == id);
    CHECK(hyp_compose(th(i), t(i + 1)) == hyp_compose(t(i), th(i)));
    CHECK(hyp_compose(th(i), t(i)) == hyp_compose(t(i + 1), th(i)));
    for (int k = 0; k <= n; ++k)
      if (k != i && k != i + 1) CHECK(hyp_compose(th(i), t(k)) == hyp_compose(t(k), th(i)));
  }
  CHECK(hyp_compose(th(0), hyp_compose(th(1), th(0))) == hyp_compose(th(1), hyp_compose(th(0), th(1))));
}

TEST_CASE("closure of t0, t1, theta0 in H_2") {
  std::set<HypElement> seen{HypElement::identity(1)};
  std::vector<HypElement> gens{HypElement::t(1, 0), HypElement::t(1, 1), HypElement::theta(1, 0)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (auto x : std::vector<HypElement>(seen.begin(), seen.end()))
      for (const auto& g : gens) grew |= seen.insert(hyp_compose(g, x)).second;
  }
  CHECK(seen.size() == 8);
  CHECK(hyp_order(1) == 8);
  CHECK(enumerate_hyp(2).size() == 48);
}

TEST_CASE("group laws on random elements") {
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    auto a = random_hyp(rng, 2);
    auto b = random_hyp(rng, 2);
    auto c = random_hyp(rng, 2);
    CHECK(hyp_compose(HypElement::identity(2), a) == a);
    CHECK(hyp_compose(a, a.inverse()).is_identity());
    CHECK(hyp_compose(a, hyp_compose(b, c)) == hyp_compose(hyp_compose(a, b), c));
  }
  CHECK_THROWS_AS(hyp_compose(HypElement::identity(1), HypElement::identity(2)), std::invalid_argument);
}

TEST_CASE("label flip") {
  LabeledSequence s{P(0), P(1, true)};
  CHECK(label_flip(s) == LabeledSequence{P(1), P(0, true)});
  CHECK(label_flip(LabeledSequence{}).empty());
  std::mt19937 rng(3);
  for (int k = 0; k < 100; ++k) {
    LabeledSequence r;
    for (int i = 0; i < int(rng() % 6); ++i) r.push_back(P(int(rng() % 8), rng() & 1U));
    CHECK(label_flip(label_flip(r)) == r);
  }
}

TEST_CASE("ifas composition") {
  auto sigma0 = IFasMorphism(1, 0, {{P(0), P(1)}});
  auto t0 = IFasMorphism(1, 1, {{P(0, true)}, {P(1)}});
  auto c = ifas_compose(sigma0, t0);
  CHECK(c.preimage(0).size() == 2);
  CHECK(LabeledSequence(c.preimage(0).begin(), c.preimage(0).end()) == LabeledSequence{P(0, true), P(1)});
  DeltaHMorphism pair{DeltaMorphism::degeneracy(0, 0), HypElement::t(1, 0)};
  CHECK(pair_to_ifas(pair) == c);

  std::mt19937 rng(11);
  for (int k = 0; k < 1000; ++k) {
    int a = int(rng() % 4), b = int(rng() % 4), cc = int(rng() % 4), d = int(rng() % 4);
    auto f = random_morphism(rng, a, b);
    auto g = random_morphism(rng, b, cc);
    auto h = random_morphism(rng, cc, d);
    CHECK(ifas_compose(h, ifas_compose(g, f)) == ifas_compose(ifas_compose(h, g), f));
    CHECK(ifas_compose(IFasMorphism::identity(b), f) == f);
    CHECK(ifas_compose(f, IFasMorphism::identity(a)) == f);
  }
  CHECK_THROWS_AS(ifas_compose(sigma0, sigma0), std::invalid_argument);
}

TEST_CASE("star relation tables") {
  // sigma_0^*(t_0) = theta_0 t_1 t_0
  auto w = star_upper({SimplicialGenerator::kDegeneracy, 0, 1}, {Generator::kT, 0});
  CHECK(w == std::vector<Generator>{{Generator::kTheta, 0}, {Generator::kT, 1}, {Generator::kT, 0}});
  // (sigma_0, id) o (id_1, t_0) = (sigma_0, t_0)
  DeltaHMorphism s{DeltaMorphism::degeneracy(0, 0), HypElement::identity(1)};
  DeltaHMorphism t{DeltaMorphism::identity(1), HypElement::t(1, 0)};
  CHECK(deltah_compose(s, t) == DeltaHMorphism{DeltaMorphism::degeneracy(0, 0), HypElement::t(1, 0)});
  for (int i = 0; i <= 1; ++i) {
    DeltaHMorphism d{DeltaMorphism::face(0, i), HypElement::identity(0)};
    DeltaHMorphism id{DeltaMorphism::identity(0), HypElement::identity(0)};
    CHECK(deltah_compose(d, id) == d);
  }
}

TEST_CASE("word decompositions evaluate back") {
  for (int n = 0; n <= 3; ++n)
    for (const auto& g : enumerate_hyp(n)) CHECK(evaluate_word(n, generator_word(g)) == g);
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      for (const auto& phi : enumerate_delta(n, m)) {
        auto word = simplicial_word(phi);
        DeltaMorphism acc = DeltaMorphism::identity(m);
        for (const auto& w : word)
          acc = delta_compose(acc, w.kind == SimplicialGenerator::kFace ? DeltaMorphism::face(w.source, w.index)
                                                                        : DeltaMorphism::degeneracy(w.source - 1, w.index));
        CHECK(acc == phi);
      }
}

TEST_CASE("isomorphism of presentations") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (const auto& f : enumerate_hom(a, b, HomVariant::kAll)) {
        auto pair = ifas_to_pair(f);
        CHECK(pair_to_ifas(pair) == f);
        CHECK(ifas_to_pair(pair_to_ifas(pair)) == pair);
      }
  // Monotone maps with identity group part have canonical preimages, labels 1.
  for (const auto& phi : enumerate_delta(2, 1)) {
    auto f = pair_to_ifas({phi, HypElement::identity(2)});
    int last = -1;
    for (const auto& p : f.word()) {
      CHECK_FALSE(p.flipped);
      CHECK(int(p.point) > last);
      last = p.point;
    }
  }
  std::mt19937 rng(5);
  for (int k = 0; k < 1000; ++k) {
    int a = int(rng() % 4), b = int(rng() % 4), c = int(rng() % 4);
    auto f1 = random_morphism(rng, a, b);
    auto f2 = random_morphism(rng, b, c);
    auto p = deltah_compose(ifas_to_pair(f2), ifas_to_pair(f1));
    CHECK(pair_to_ifas(p) == ifas_compose(f2, f1));
  }
}

TEST_CASE("hom enumeration") {
  CHECK(enumerate_hom(1, 0, HomVariant::kAll).size() == 8);
  CHECK(enumerate_hom(0, 1, HomVariant::kEpi).empty());
  CHECK(enumerate_hom(1, 1, HomVariant::kAll).size() == 24);
  CHECK(brute_force_monotone(1, 1) == 3);
  CHECK(enumerate_hom(0, 0, HomVariant::kAll).size() == 2);
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      auto homs = enumerate_hom(n, m, HomVariant::kAll);
      CHECK(homs.size() == brute_force_monotone(n, m) * hyp_order(n));
      CHECK(count_delta(n, m) == brute_force_monotone(n, m));
      CHECK(std::is_sorted(homs.begin(), homs.end()));
      CHECK(std::adjacent_find(homs.begin(), homs.end()) == homs.end());
      auto epis = enumerate_hom(n, m, HomVariant::kEpi);
      CHECK(epis.empty() == (n < m));
      for (const auto& f : epis) CHECK(f.is_epi());
      std::size_t n_epi = 0;
      for (const auto& f : homs) n_epi += f.is_epi();
      CHECK(n_epi == epis.size());
      for (const auto& f : homs) CHECK(IFasMorphism::from_code(f.code()) == f);
    }
  CHECK(enumerate_hom(-1, 2, HomVariant::kAll).size() == 1);
  CHECK(enumerate_hom(1, -1, HomVariant::kAll).empty());
  CHECK(enumerate_hom(-1, -1, HomVariant::kAll).size() == 1);
}

TEST_CASE("epi-mono factorization") {
  DeltaHMorphism f{DeltaMorphism::face(0, 1), HypElement::identity(0)};
  auto fm = epi_mono_factorize(f);
  CHECK(fm.mono == DeltaMorphism::face(0, 1));
  CHECK(fm.epi == DeltaHMorphism{DeltaMorphism::identity(0), HypElement::identity(0)});

  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 2; ++m)
      for (const auto& h : enumerate_hom(n, m, HomVariant::kAll)) {
        auto p = ifas_to_pair(h);
        auto em = epi_mono_factorize(p);
        CHECK(em.mono.is_injective());
        CHECK(em.epi.phi.is_surjective());
        CHECK(em.mono.image_size() == p.phi.image_size());
        DeltaHMorphism mono{em.mono, HypElement::identity(em.mono.source())};
        CHECK(deltah_compose(mono, em.epi) == p);
        if (p.phi.is_surjective()) CHECK(em.mono == DeltaMorphism::identity(m));
        auto fz = factorize(h);
        CHECK(fz.mono.is_mono());
        CHECK(fz.epi.is_epi());
        CHECK(ifas_compose(fz.mono, fz.epi) == h);
        CHECK(pair_to_ifas(em.epi) == fz.epi);
      }
  // Uniqueness for objects up to [2]: search every mono-with-identity-group / epi pair.
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (const auto& h : enumerate_hom(n, m, HomVariant::kAll)) {
        int found = 0;
        for (int r = 0; r <= std::min(n, m); ++r)
          for (const auto& mono : enumerate_delta(r, m)) {
            if (!mono.is_injective()) continue;
            auto im = pair_to_ifas({mono, HypElement::identity(r)});
            for (const auto& e : enumerate_hom(n, r, HomVariant::kEpi)) found += ifas_compose(im, e) == h;
          }
        CHECK(found == 1);
      }
}

TEST_CASE("monoidal structure") {
  std::mt19937 rng(13);
  auto empty = IFasMorphism::identity(-1);
  for (int k = 0; k < 200; ++k) {
    int a = int(rng() % 3), b = int(rng() % 3), c = int(rng() % 3), d = int(rng() % 3), e = int(rng() % 2),
        f = int(rng() % 2);
    auto x = random_morphism(rng, a, b);
    auto y = random_morphism(rng, c, d);
    auto z = random_morphism(rng, e, f);
    CHECK(monoidal_product(x, empty) == x);
    CHECK(monoidal_product(empty, x) == x);
    CHECK(monoidal_product(monoidal_product(x, y), z) == monoidal_product(x, monoidal_product(y, z)));
    // naturality: sym o (x u y) = (y u x) o sym
    CHECK(ifas_compose(monoidal_symmetry(b, d), monoidal_product(x, y)) ==
          ifas_compose(monoidal_product(y, x), monoidal_symmetry(a, c)));
    CHECK(ifas_compose(monoidal_symmetry(c, a), monoidal_symmetry(a, c)) == IFasMorphism::identity(a + c + 1));
  }
  auto init = enumerate_hom(-1, 1, HomVariant::kAll).front();
  CHECK(ifas_compose(random_morphism(rng, 1, 2), init) == enumerate_hom(-1, 2, HomVariant::kAll).front());
}

TEST_CASE("truncated category") {
  TruncatedCategory c(CategoryKind::kDeltaH, 1);
  CHECK(c.morphism_count() == 2 + 4 + 8 + 24);
  CHECK(c.hom_size(0, 0) == 2);
  CHECK(c.hom_size(1, 0) == 8);
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    const auto& m = c.morphism(f);
    CHECK(c.compose(c.identity(m.target()), f) == f);
    CHECK(c.compose(f, c.identity(m.source())) == f);
  }
  TruncatedCategory again(CategoryKind::kDeltaH, 1, c.codes());
  CHECK(again.codes() == c.codes());
  TruncatedCategory epi(CategoryKind::kEpiDeltaH, 1);
  CHECK(epi.hom_size(1, 1) == 8);
  CHECK(epi.hom_size(0, 1) == 0);
  TruncatedCategory plus(CategoryKind::kDeltaHPlus, 1);
  CHECK(plus.hom_size(-1, 1) == 1);
  CHECK(plus.hom_size(1, -1) == 0);
  CHECK(plus.hom_size(-1, -1) == 1);
}

TEST_CASE("category suite") {
  for (int depth = 0; depth <= 1; ++depth) {
    auto r = verify_category(depth);
    CHECK(r.ok());
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.failed == 0);
    }
  }
  auto r0 = verify_category(0);
  CHECK(r0.checks.back().name == "endomorphisms_of_0");
  CHECK(r0.checks.back().passed == 1);
  CHECK_THROWS(verify_category(-1));
}
