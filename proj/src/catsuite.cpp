#include "catsuite.hpp"

#include <stdexcept>

#include "croscat.hpp"

namespace hyperoct {

namespace {

struct Counter {
  SuiteCheck& c;
  void operator()(bool ok) { ++(ok ? c.passed : c.failed); }
};

void group_relations(int depth, SuiteCheck& out) {
  Counter check{out};
  for (int n = 0; n <= depth; ++n) {
    auto t = [&](int i) { return HypElement::t(n, i); };
    auto th = [&](int j) { return HypElement::theta(n, j); };
    const auto id = HypElement::identity(n);
    for (int i = 0; i <= n; ++i) {
      check(hyp_compose(t(i), t(i)) == id);
      for (int j = 0; j <= n; ++j) check(hyp_compose(t(i), t(j)) == hyp_compose(t(j), t(i)));
    }
    for (int i = 0; i < n; ++i) {
      check(hyp_compose(th(i), th(i)) == id);
      check(hyp_compose(th(i), t(i + 1)) == hyp_compose(t(i), th(i)));
      check(hyp_compose(th(i), t(i)) == hyp_compose(t(i + 1), th(i)));
      for (int k = 0; k <= n; ++k)
        if (k != i && k != i + 1) check(hyp_compose(th(i), t(k)) == hyp_compose(t(k), th(i)));
      for (int j = 0; j < n; ++j) {
        if (j == i + 1)
          check(hyp_compose(th(i), hyp_compose(th(j), th(i))) == hyp_compose(th(j), hyp_compose(th(i), th(j))));
        else if (j > i + 1)
          check(hyp_compose(th(i), th(j)) == hyp_compose(th(j), th(i)));
      }
    }
    check(enumerate_hyp(n).size() == hyp_order(n));
  }
}

void simplicial_relations(int depth, SuiteCheck& out) {
  Counter check{out};
  auto d = [](int n, int i) { return DeltaMorphism::face(n, i); };
  auto s = [](int n, int j) { return DeltaMorphism::degeneracy(n, j); };
  // faces [n] -> [n+1] -> [n+2]
  for (int n = 0; n + 2 <= depth; ++n)
    for (int i = 0; i <= n + 2; ++i)
      for (int j = i + 1; j <= n + 2; ++j) check(delta_compose(d(n + 1, j), d(n, i)) == delta_compose(d(n + 1, i), d(n, j - 1)));
  // degeneracies [n+2] -> [n+1] -> [n]
  for (int n = 0; n + 2 <= depth; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j) check(delta_compose(s(n, j), s(n + 1, i)) == delta_compose(s(n, i), s(n + 1, j + 1)));
  // sigma_j delta_i : [n] -> [n+1] -> [n]
  for (int n = 0; n + 1 <= depth; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const auto lhs = delta_compose(s(n, j), d(n, i));
        if (i == j || i == j + 1)
          check(lhs == DeltaMorphism::identity(n));
        else if (i < j)
          check(lhs == delta_compose(d(n - 1, i), s(n - 1, j - 1)));
        else
          check(lhs == delta_compose(d(n - 1, i - 1), s(n - 1, j)));
      }
}

SimplicialGenerator::Kind kind_of(const SimplicialGenerator& w) { return w.kind; }

DeltaMorphism as_delta(const SimplicialGenerator& w) {
  return w.kind == SimplicialGenerator::kFace ? DeltaMorphism::face(w.source, w.index)
                                              : DeltaMorphism::degeneracy(w.source - 1, w.index);
}

void crossed_relations(int depth, SuiteCheck& out) {
  Counter check{out};
  for (int n = 0; n <= depth; ++n) {
    std::vector<SimplicialGenerator> ws;
    if (n + 1 <= depth)
      for (int i = 0; i <= n + 1; ++i) ws.push_back({SimplicialGenerator::kFace, i, n});
    if (n >= 1)
      for (int j = 0; j < n; ++j) ws.push_back({SimplicialGenerator::kDegeneracy, j, n});
    for (const auto& w : ws) {
      const DeltaMorphism wd = as_delta(w);
      const int target = wd.target();
      std::vector<Generator> gens;
      for (int i = 0; i <= target; ++i) gens.push_back({Generator::kT, i});
      for (int j = 0; j < target; ++j) gens.push_back({Generator::kTheta, j});
      for (const auto& h : gens) {
        const HypElement hg = evaluate_word(target, std::vector<Generator>{h});
        // h o w = h_*(w) o w^*(h)
        const auto lower = star_lower(h, w);
        const auto upper = star_upper(w, h);
        const DeltaHMorphism lhs = deltah_compose({DeltaMorphism::identity(target), hg}, {wd, HypElement::identity(n)});
        const DeltaHMorphism rhs{as_delta(lower), evaluate_word(n, upper)};
        check(kind_of(lower) == w.kind);
        check(lhs == rhs);
        check(pair_to_ifas(lhs) == ifas_compose(pair_to_ifas({DeltaMorphism::identity(target), hg}),
                                                pair_to_ifas({wd, HypElement::identity(n)})));
      }
    }
  }
}

}  // namespace

CategorySuiteResult verify_category(int depth) {
  if (depth < 0 || depth > 3) throw std::invalid_argument("category suite: depth must be between 0 and 3");
  CategorySuiteResult r;
  r.depth = depth;
  r.checks.resize(9);
  const char* names[] = {"hyperoctahedral_relations", "simplicial_relations", "crossed_relations",
                         "hom_counts",                "identities",           "associativity",
                         "iso_round_trip",            "composition_preserved", "endomorphisms_of_0"};
  for (std::size_t i = 0; i < r.checks.size(); ++i) r.checks[i].name = names[i];

  group_relations(depth, r.checks[0]);
  simplicial_relations(depth, r.checks[1]);
  crossed_relations(depth, r.checks[2]);

  TruncatedCategory c(CategoryKind::kDeltaH, depth);
  Counter counts{r.checks[3]};
  for (int a = 0; a <= depth; ++a)
    for (int b = 0; b <= depth; ++b) counts(c.hom_size(a, b) == count_delta(a, b) * hyp_order(a));
  Counter(r.checks[8])(c.hom_size(0, 0) == 2);

  const auto m = static_cast<MorphismId>(c.morphism_count());
  Counter ids{r.checks[4]};
  for (MorphismId f = 0; f < m; ++f) {
    const auto& mf = c.morphism(f);
    ids(c.compose(c.identity(mf.target()), f) == f);
    ids(c.compose(f, c.identity(mf.source())) == f);
  }

  // Composition table: comp[f][k] = g_k o f for g_k the k-th morphism out of target(f).
  std::vector<MorphismId> out_begin(static_cast<std::size_t>(depth) + 1);
  std::vector<std::uint32_t> out_size(static_cast<std::size_t>(depth) + 1);
  for (int b = 0; b <= depth; ++b) {
    out_begin[static_cast<std::size_t>(b)] = c.hom_begin(b, 0);
    for (int y = 0; y <= depth; ++y) out_size[static_cast<std::size_t>(b)] += c.hom_size(b, y);
  }
  std::vector<std::uint64_t> row(m);
  std::uint64_t total = 0;
  for (MorphismId f = 0; f < m; ++f) {
    row[f] = total;
    total += out_size[static_cast<std::size_t>(c.morphism(f).target())];
  }
  std::vector<MorphismId> table(total);
  Counter preserved{r.checks[7]};
  std::vector<DeltaHMorphism> pairs;
  pairs.reserve(m);
  Counter round{r.checks[6]};
  for (MorphismId f = 0; f < m; ++f) {
    pairs.push_back(ifas_to_pair(c.morphism(f)));
    round(pair_to_ifas(pairs.back()) == c.morphism(f));
    round(ifas_to_pair(pair_to_ifas(pairs.back())) == pairs.back());
  }
  for (MorphismId f = 0; f < m; ++f) {
    const auto b = static_cast<std::size_t>(c.morphism(f).target());
    for (std::uint32_t k = 0; k < out_size[b]; ++k) {
      const MorphismId g = out_begin[b] + k;
      const MorphismId gf = c.compose(g, f);
      table[row[f] + k] = gf;
      preserved(pair_to_ifas(deltah_compose(pairs[g], pairs[f])) == c.morphism(gf));
    }
  }
  for (MorphismId f = 0; f < m; ++f) {
    const auto b = static_cast<std::size_t>(c.morphism(f).target());
    for (std::uint32_t k = 0; k < out_size[b]; ++k) {
      const MorphismId g = out_begin[b] + k;
      const MorphismId gf = table[row[f] + k];
      const auto cc = static_cast<std::size_t>(c.morphism(g).target());
      const std::uint64_t rg = row[g], rgf = row[gf];
      std::uint64_t bad = 0;
      for (std::uint32_t l = 0; l < out_size[cc]; ++l) {
        // h o (g o f) == (h o g) o f
        const MorphismId hg = table[rg + l];
        const auto lhs = table[rgf + l];
        const auto hb = out_begin[static_cast<std::size_t>(c.morphism(f).target())];
        bad += lhs != table[row[f] + (hg - hb)];
      }
      r.checks[5].failed += bad;
      r.checks[5].passed += out_size[cc] - bad;
    }
  }
  return r;
}

}  // namespace hyperoct
