#include "complexes.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace hyperoct {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return ~std::uint64_t{0};
  return r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) return ~std::uint64_t{0};
  return r;
}

std::uint32_t row32(std::uint64_t v) {
  if (v > 0xfffffffeULL) throw std::length_error("generator index does not fit the sparse row type");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t, std::uint64_t)>& body) {
  const std::uint64_t threads = std::max(1U, std::thread::hardware_concurrency());
  if (threads == 1 || n < 4096) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (std::uint64_t t = 0; t < threads; ++t) {
    const std::uint64_t b = t * chunk;
    const std::uint64_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, t, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Functors

SparseVector BarModule::apply(std::uint32_t f, std::uint64_t basis) const {
  auto col = bar_->evaluate(view_->category().morphism(f)).column(basis);
  return {col.begin(), col.end()};
}

SubModule::SubModule(const FiniteCategory& c, const ModuleFunctor& base, std::vector<std::vector<std::uint64_t>> basis)
    : c_(&c), base_(&base), basis_(std::move(basis)) {
  if (static_cast<int>(basis_.size()) != c.object_count()) throw std::invalid_argument("submodule: one basis per object");
  for (int x = 0; x < c.object_count(); ++x) {
    std::vector<std::uint64_t> inv(base.dim(x), npos);
    const auto& b = basis_[static_cast<std::size_t>(x)];
    for (std::uint64_t i = 0; i < b.size(); ++i) {
      if (b[i] >= inv.size() || inv[b[i]] != npos) throw std::invalid_argument("submodule: bad basis subset");
      inv[b[i]] = i;
    }
    inverse_.push_back(std::move(inv));
  }
}

std::uint64_t SubModule::sub_index(int x, std::uint64_t base) const { return inverse_[static_cast<std::size_t>(x)][base]; }

SparseVector SubModule::apply(std::uint32_t f, std::uint64_t basis) const {
  const int x = c_->source(f);
  const int y = c_->target(f);
  SparseVector v = base_->apply(f, base_index(x, basis));
  for (auto& e : v) {
    const std::uint64_t k = sub_index(y, e.row);
    if (k == npos) throw std::logic_error("submodule is not closed under the functor");
    e.row = row32(k);
  }
  std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
  return v;
}

SparseVector RepresentableModule::apply(std::uint32_t f, std::uint64_t basis) const {
  const int x = c_->source(f);
  const int y = c_->target(f);
  const std::uint32_t g = c_->hom_begin(a_, x) + static_cast<std::uint32_t>(basis);
  const std::uint32_t h = c_->compose(f, g);
  return {{h - c_->hom_begin(a_, y), Rational(1)}};
}

// ---------------------------------------------------------------------------
// GZ index

GZIndex::GZIndex(const FiniteCategory& c, const ModuleFunctor& f, int top_degree)
    : c_(&c), f_(&f), top_(top_degree), objects_(c.object_count()) {
  if (top_degree < 0) throw std::invalid_argument("GZ index: negative degree");
  const auto K = static_cast<std::size_t>(objects_);
  const auto T = static_cast<std::size_t>(top_degree);
  s_.assign((T + 1) * K, 0);
  prefix_.assign((T + 1) * K * K, 0);
  for (std::size_t x = 0; x < K; ++x) s_[x] = 1;
  for (std::size_t k = 1; k <= T; ++k)
    for (std::size_t x = 0; x < K; ++x) {
      std::uint64_t acc = 0;
      for (std::size_t y = 0; y < K; ++y) {
        prefix_[(k * K + x) * K + y] = acc;
        acc = sat_add(acc, sat_mul(c.hom_size(static_cast<int>(x), static_cast<int>(y)), s_[(k - 1) * K + y]));
      }
      s_[k * K + x] = acc;
    }
  offset_.assign((T + 1) * (K + 1), 0);
  for (std::size_t n = 0; n <= T; ++n) {
    std::uint64_t acc = 0;
    for (std::size_t x = 0; x < K; ++x) {
      offset_[n * (K + 1) + x] = acc;
      acc = sat_add(acc, sat_mul(f.dim(static_cast<int>(x)), s_[n * K + x]));
    }
    offset_[n * (K + 1) + K] = acc;
    count_.push_back(acc);
  }
}

std::uint64_t GZIndex::strings(int x, int k) const {
  return s_[static_cast<std::size_t>(k) * static_cast<std::size_t>(objects_) + static_cast<std::size_t>(x)];
}

std::uint64_t GZIndex::encode(int x0, std::uint64_t basis, std::span<const std::uint32_t> string) const {
  const auto K = static_cast<std::size_t>(objects_);
  const std::size_t n = string.size();
  std::uint64_t r = offset_[n * (K + 1) + static_cast<std::size_t>(x0)] + basis * strings(x0, static_cast<int>(n));
  int x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t f = string[k];
    if (c_->source(f) != x) throw std::logic_error("GZ index: string is not composable");
    const int y = c_->target(f);
    const std::size_t len = n - k;
    r += prefix_[(len * K + static_cast<std::size_t>(x)) * K + static_cast<std::size_t>(y)] +
         (f - c_->hom_begin(x, y)) * strings(y, static_cast<int>(len - 1));
    x = y;
  }
  return r;
}

GZIndex::Generator GZIndex::decode(int n, std::uint64_t index) const {
  const auto K = static_cast<std::size_t>(objects_);
  const auto N = static_cast<std::size_t>(n);
  Generator g;
  std::size_t x0 = 0;
  while (x0 + 1 < K && offset_[N * (K + 1) + x0 + 1] <= index) ++x0;
  std::uint64_t rem = index - offset_[N * (K + 1) + x0];
  const std::uint64_t s = strings(static_cast<int>(x0), n);
  g.x0 = static_cast<int>(x0);
  g.basis = rem / s;
  rem %= s;
  std::size_t x = x0;
  for (std::size_t len = N; len >= 1; --len) {
    std::size_t y = K - 1;
    while (prefix_[(len * K + x) * K + y] > rem) --y;
    rem -= prefix_[(len * K + x) * K + y];
    const std::uint64_t tail = strings(static_cast<int>(y), static_cast<int>(len - 1));
    g.string.push_back(c_->hom_begin(static_cast<int>(x), static_cast<int>(y)) + static_cast<std::uint32_t>(rem / tail));
    rem %= tail;
    x = y;
  }
  return g;
}

std::vector<std::uint64_t> gz_counts(const FiniteCategory& c, const ModuleFunctor& f, int top_degree) {
  GZIndex index(c, f, top_degree);
  std::vector<std::uint64_t> out;
  for (int n = 0; n <= top_degree; ++n) out.push_back(index.count(n));
  return out;
}

ChainComplex build_gz_complex(const GZIndex& index, std::uint64_t max_generators) {
  const int top = index.top_degree();
  for (int n = 0; n <= top; ++n)
    if (index.count(n) > max_generators) throw CapExceeded(n, index.count(n), max_generators);
  const FiniteCategory& c = index.category();
  const ModuleFunctor& F = index.functor();
  ChainComplex out;
  for (int n = 0; n <= top; ++n) out.dims.push_back(index.count(n));
  out.d.emplace_back(0, out.dims[0]);
  for (int n = 1; n <= top; ++n) {
    std::vector<SparseVector> cols(index.count(n));
    parallel_for(index.count(n), [&](std::uint64_t begin, std::uint64_t end) {
      std::vector<std::uint32_t> face;
      for (std::uint64_t g = begin; g < end; ++g) {
        const auto gen = index.decode(n, g);
        const auto& s = gen.string;
        SparseVector col;
        // d_0: F(f_1) on the tensor
        face.assign(s.begin() + 1, s.end());
        for (const auto& e : F.apply(s[0], gen.basis))
          col.push_back({row32(index.encode(c.target(s[0]), e.row, face)), e.value});
        // d_i: compose f_{i+1} f_i
        for (int i = 1; i < n; ++i) {
          face.clear();
          for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            face.push_back(k == i - 1 ? c.compose(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(k)])
                                      : s[static_cast<std::size_t>(k)]);
          }
          col.push_back({row32(index.encode(gen.x0, gen.basis, face)), Rational(i % 2 ? -1 : 1)});
        }
        // d_n: drop f_n
        face.assign(s.begin(), s.end() - 1);
        col.push_back({row32(index.encode(gen.x0, gen.basis, face)), Rational(n % 2 ? -1 : 1)});
        canonicalize(col);
        cols[g] = std::move(col);
      }
    });
    out.d.push_back(SparseMatrix::from_columns(out.dims[static_cast<std::size_t>(n) - 1], cols));
  }
  return out;
}

ChainMap induced_chain_map(const GZIndex& from, const GZIndex& to, const NaturalMap& eta) {
  ChainMap out;
  const int top = std::min(from.top_degree(), to.top_degree());
  for (int n = 0; n <= top; ++n) {
    std::vector<SparseVector> cols(from.count(n));
    for (std::uint64_t g = 0; g < from.count(n); ++g) {
      const auto gen = from.decode(n, g);
      SparseVector col;
      for (const auto& e : eta(gen.x0, gen.basis)) col.push_back({row32(to.encode(gen.x0, e.row, gen.string)), e.value});
      canonicalize(col);
      cols[g] = std::move(col);
    }
    out.f.push_back(SparseMatrix::from_columns(to.count(n), cols));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nerve variant

NerveQuotientModule::NerveQuotientModule(const FiniteCategory& c, const ModuleFunctor& f) : c_(&c), f_(&f) {
  const int K = c.object_count();
  basis_.resize(static_cast<std::size_t>(K));
  projection_.resize(static_cast<std::size_t>(K));
  for (int x = 0; x < K; ++x) {
    // Block order: c = x first (identity first inside it), then the others.
    std::vector<std::uint64_t> start(static_cast<std::size_t>(K) + 1, 0);
    std::vector<int> order{x};
    for (int y = 0; y < K; ++y)
      if (y != x) order.push_back(y);
    std::uint64_t acc = 0;
    std::vector<std::uint64_t> block(static_cast<std::size_t>(K), 0);
    for (int y : order) {
      block[static_cast<std::size_t>(y)] = acc;
      acc += std::uint64_t{c.hom_size(y, x)} * f.dim(y);
    }
    block_start_.push_back(block);
    gen_count_.push_back(acc);

    // Relations (f0 a, b) - (f0, F(a) b), reduced with the largest index as pivot.
    std::map<std::uint64_t, SparseVector> pivots;
    std::uint64_t relations = 0;
    auto reduce = [&](SparseVector v) {
      while (!v.empty()) {
        auto it = pivots.find(v.back().row);
        if (it == pivots.end()) {
          const Rational lead = v.back().value;
          for (auto& e : v) e.value /= lead;
          const std::uint32_t r = v.back().row;
          pivots.emplace(r, std::move(v));
          return;
        }
        v = axpy(v, -v.back().value, it->second);
      }
    };
    for (int cc = 0; cc < K; ++cc)
      for (std::uint32_t f0 = c.hom_begin(cc, x); f0 < c.hom_begin(cc, x) + c.hom_size(cc, x); ++f0)
        for (int cp = 0; cp < K; ++cp)
          for (std::uint32_t a = c.hom_begin(cp, cc); a < c.hom_begin(cp, cc) + c.hom_size(cp, cc); ++a) {
            if (a == c.identity(cc)) continue;
            const std::uint32_t fa = c.compose(f0, a);
            for (std::uint64_t b = 0; b < f.dim(cp); ++b) {
              SparseVector v{{row32(generator_index(x, fa, b)), Rational(1)}};
              for (const auto& e : f.apply(a, b)) v.push_back({row32(generator_index(x, f0, e.row)), -e.value});
              canonicalize(v);
              ++relations;
              reduce(std::move(v));
            }
          }
    rel_count_.push_back(relations);
    // Back-substitution: every pivot row in terms of non-pivot generators.
    for (auto& [r, row] : pivots) {
      while (true) {
        std::size_t k = row.size();
        for (std::size_t q = row.size() - 1; q-- > 0;)
          if (pivots.count(row[q].row) && row[q].row != r) {
            k = q;
            break;
          }
        if (k == row.size()) break;
        const auto& other = pivots.at(row[k].row);
        row = axpy(row, -row[k].value, other);
      }
    }
    std::vector<std::uint64_t> quotient_index(acc, SubModule::npos);
    auto& basis = basis_[static_cast<std::size_t>(x)];
    for (std::uint64_t g = 0; g < acc; ++g) {
      if (pivots.count(g)) continue;
      quotient_index[g] = basis.size();
      basis.push_back({0, 0});
    }
    // Fill representatives by walking the generator numbering.
    for (int y = 0; y < K; ++y)
      for (std::uint32_t f0 = c.hom_begin(y, x); f0 < c.hom_begin(y, x) + c.hom_size(y, x); ++f0)
        for (std::uint64_t b = 0; b < f.dim(y); ++b) {
          const std::uint64_t g = generator_index(x, f0, b);
          if (quotient_index[g] != SubModule::npos) basis[quotient_index[g]] = Pair{f0, b};
        }
    auto& proj = projection_[static_cast<std::size_t>(x)];
    proj.resize(acc);
    for (std::uint64_t g = 0; g < acc; ++g) {
      if (quotient_index[g] != SubModule::npos) {
        proj[g] = {{row32(quotient_index[g]), Rational(1)}};
        continue;
      }
      SparseVector v;
      for (const auto& e : pivots.at(g))
        if (e.row != g) v.push_back({row32(quotient_index[e.row]), -e.value});
      canonicalize(v);
      proj[g] = std::move(v);
    }
  }
}

std::uint64_t NerveQuotientModule::generator_index(int x, std::uint32_t f0, std::uint64_t b) const {
  const int y = c_->source(f0);
  const std::uint32_t begin = c_->hom_begin(y, x);
  const std::uint32_t id = y == x ? c_->identity(x) : begin;
  // identity first inside the endomorphism block
  std::uint64_t local = f0 - begin;
  if (y == x) local = f0 == id ? 0 : (f0 < id ? local + 1 : local);
  return block_start_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] + local * f_->dim(y) + b;
}

SparseVector NerveQuotientModule::project(int x, std::uint32_t f0, std::uint64_t b) const {
  return projection_[static_cast<std::size_t>(x)][generator_index(x, f0, b)];
}

SparseVector NerveQuotientModule::apply(std::uint32_t f, std::uint64_t basis) const {
  const int x = c_->source(f);
  const int y = c_->target(f);
  const Pair p = representative(x, basis);
  return project(y, c_->compose(f, p.f0), p.b);
}

ChainMap gz_nerve_iso(const GZIndex& nerve, const NerveQuotientModule& q, const GZIndex& gz) {
  const ModuleFunctor& F = gz.functor();
  return induced_chain_map(nerve, gz, [&](int x, std::uint64_t i) {
    const auto p = q.representative(x, i);
    return F.apply(p.f0, p.b);
  });
}

// ---------------------------------------------------------------------------
// Reduced splitting

std::vector<std::vector<std::uint64_t>> ideal_part_basis(const CategoryView& view, const BarFunctor& bar) {
  std::vector<std::vector<std::uint64_t>> out;
  for (int x = 0; x < view.object_count(); ++x) {
    const int obj = view.object_of(x);
    std::vector<std::uint64_t> b;
    for (std::uint64_t i = 0; i < bar.dim(obj); ++i) {
      bool nontrivial = false;
      if (obj >= 0)
        for (auto a : bar.factors(obj, i)) nontrivial = nontrivial || a != 0;
      if (nontrivial) b.push_back(i);
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> unit_part_basis(const CategoryView& view, const BarFunctor& bar) {
  std::vector<std::vector<std::uint64_t>> out;
  for (int x = 0; x < view.object_count(); ++x) {
    (void)bar;
    out.push_back({0});  // the all-unit tensor is index 0 in the adapted basis
  }
  return out;
}

SparseMatrix splitting_map(const GZIndex& full, const GZIndex& ideal, const SubModule& ideal_module,
                           const GZIndex& unit, const SubModule& unit_module, int degree) {
  SparseMatrix m(full.count(degree), 0);
  for (std::uint64_t g = 0; g < ideal.count(degree); ++g) {
    const auto gen = ideal.decode(degree, g);
    SparseEntry e{row32(full.encode(gen.x0, ideal_module.base_index(gen.x0, gen.basis), gen.string)), Rational(1)};
    m.push_column(std::span<const SparseEntry>(&e, 1));
  }
  for (std::uint64_t g = 0; g < unit.count(degree); ++g) {
    const auto gen = unit.decode(degree, g);
    SparseEntry e{row32(full.encode(gen.x0, unit_module.base_index(gen.x0, gen.basis), gen.string)), Rational(1)};
    m.push_column(std::span<const SparseEntry>(&e, 1));
  }
  return m;
}

ConeContraction cone_contraction(const GZIndex& lift, int max_degree) {
  const FiniteCategory& c = lift.category();
  const std::uint32_t id0 = c.identity(0);
  const std::uint64_t id0_local = id0 - c.hom_begin(0, 0);
  ConeContraction out;
  for (int n = 0; n <= max_degree; ++n) {
    SparseMatrix h(lift.count(n + 1), 0);
    std::vector<std::uint32_t> s;
    for (std::uint64_t g = 0; g < lift.count(n); ++g) {
      const auto gen = lift.decode(n, g);
      const std::uint32_t f0 = c.hom_begin(0, gen.x0) + static_cast<std::uint32_t>(gen.basis);
      s.assign(1, f0);
      s.insert(s.end(), gen.string.begin(), gen.string.end());
      SparseEntry e{row32(lift.encode(0, id0_local, s)), Rational(1)};
      h.push_column(std::span<const SparseEntry>(&e, 1));
    }
    out.h.push_back(std::move(h));
  }
  for (std::uint64_t g = 0; g < lift.count(0); ++g) out.augmentation.push_back({row32(g), Rational(1)});
  out.unit_index = lift.encode(0, id0_local, {});
  return out;
}

// ---------------------------------------------------------------------------
// Epimorphism construction

IFasMorphism epimorphism_construction(const IFasMorphism& f) { return factorize(f).epi; }

EpiComparison epi_comparison(const GZIndex& epi, const CategoryView& epi_view, const BarFunctor& ideal_bar,
                             const GZIndex& ideal, const SubModule& ideal_module, const CategoryView& full_view,
                             const BarFunctor& full_bar, int max_degree) {
  const TruncatedCategory& ec = epi_view.category();
  const TruncatedCategory& fc = full_view.category();
  if (ec.min_object() != 0 || fc.min_object() != 0) throw std::invalid_argument("epi comparison: plain truncations only");
  EpiComparison out;

  for (int n = 0; n <= max_degree; ++n) {
    SparseMatrix inc(ideal.count(n), 0);
    std::vector<std::uint32_t> s;
    for (std::uint64_t g = 0; g < epi.count(n); ++g) {
      const auto gen = epi.decode(n, g);
      const auto factors = ideal_bar.factors(gen.x0, gen.basis);
      const std::uint64_t sub = ideal_module.sub_index(gen.x0, full_bar.index_of(factors));
      s.clear();
      for (auto f : gen.string) s.push_back(fc.id_of(ec.morphism(f)));
      SparseEntry e{row32(ideal.encode(gen.x0, sub, s)), Rational(1)};
      inc.push_column(std::span<const SparseEntry>(&e, 1));
    }
    out.inclusion.f.push_back(std::move(inc));
  }

  for (int n = 0; n <= max_degree; ++n) {
    SparseMatrix chi(epi.count(n), 0);
    SparseMatrix hom(n < max_degree ? ideal.count(n + 1) : 0, 0);
    std::vector<std::uint32_t> s;
    for (std::uint64_t g = 0; g < ideal.count(n); ++g) {
      const auto gen = ideal.decode(n, g);
      const auto factors = full_bar.factors(gen.x0, ideal_module.base_index(gen.x0, gen.basis));
      std::vector<int> support;
      std::vector<std::uint32_t> y;
      for (std::size_t k = 0; k < factors.size(); ++k)
        if (factors[k] != 0) {
          support.push_back(static_cast<int>(k));
          y.push_back(factors[k]);
        }
      const int s0 = static_cast<int>(support.size()) - 1;
      std::vector<IFasMorphism> monos{monotone_injection(gen.x0, support)};
      std::vector<IFasMorphism> epis;
      for (auto f : gen.string) {
        auto fz = factorize(ifas_compose(fc.morphism(f), monos.back()));
        epis.push_back(fz.epi);
        monos.push_back(fz.mono);
      }
      s.clear();
      for (const auto& e : epis) s.push_back(ec.id_of(e));
      SparseEntry ce{row32(epi.encode(s0, ideal_bar.index_of(y), s)), Rational(1)};
      chi.push_column(std::span<const SparseEntry>(&ce, 1));

      if (n < max_degree) {
        const std::uint64_t ybase = ideal_module.sub_index(s0, full_bar.index_of(y));
        SparseVector col;
        for (int j = 0; j <= n; ++j) {
          s.clear();
          for (int k = 0; k < j; ++k) s.push_back(fc.id_of(epis[static_cast<std::size_t>(k)]));
          s.push_back(fc.id_of(monos[static_cast<std::size_t>(j)]));
          for (int k = j; k < n; ++k) s.push_back(gen.string[static_cast<std::size_t>(k)]);
          col.push_back({row32(ideal.encode(s0, ybase, s)), Rational(j % 2 ? -1 : 1)});
        }
        canonicalize(col);
        hom.push_column(col);
      }
    }
    out.chi.f.push_back(std::move(chi));
    if (n < max_degree) out.homotopy.push_back(std::move(hom));
  }
  return out;
}

}  // namespace hyperoct
