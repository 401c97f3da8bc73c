#include "slominska.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperoct {

namespace {

constexpr std::uint32_t kNone = ~std::uint32_t{0};

std::size_t position(const std::vector<int>& elements, int x) {
  auto it = std::find(elements.begin(), elements.end(), x);
  if (it == elements.end()) throw std::invalid_argument("S0: target is not a subset of the source");
  return static_cast<std::size_t>(it - elements.begin());
}

IFasMorphism composite(const EpiString& e, std::size_t begin, std::size_t end, int object) {
  IFasMorphism out = IFasMorphism::identity(object);
  for (std::size_t i = begin; i < end; ++i) out = ifas_compose(e[i], out);
  return out;
}

using Dense = std::vector<std::vector<Rational>>;  // list of columns

bool is_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

// Incremental column echelon: keeps reduced copies with their pivot rows.
struct Echelon {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivots;

  // Returns true and records the vector when it is independent of the others.
  bool insert(std::vector<Rational> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    const Rational lead = v[p];
    for (auto& x : v) x /= lead;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
  void reduce(std::vector<Rational>& v) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Rational c = v[pivots[k]];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!rows[k][i].is_zero()) v[i] -= c * rows[k][i];
    }
  }
};

// Coordinates of u in the span of cols; throws when u is outside.
std::vector<Rational> solve_in_span(const Dense& cols, const std::vector<Rational>& u) {
  const std::size_t k = cols.size();
  const std::size_t n = u.size();
  // Row-reduce the augmented n x (k + 1) system.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = cols[c][r];
    a[r][k] = u[r];
  }
  std::vector<std::size_t> pivot_row(k, n);
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < n; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    const Rational lead = a[row][c];
    for (auto& x : a[row]) x /= lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      const Rational f = a[r][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_row[c] = row++;
  }
  for (std::size_t r = row; r < n; ++r)
    if (!a[r][k].is_zero()) throw std::logic_error("coinvariants: image is not invariant");
  std::vector<Rational> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (pivot_row[c] == n) throw std::logic_error("coinvariants: dependent basis");
    out[c] = a[pivot_row[c]][k];
  }
  return out;
}

AutTuple compose_tuples(const AutTuple& g, const AutTuple& h) {
  AutTuple out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(ifas_compose(g[i], h[i]));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

S0Category::S0Category(int max_object) : n_(max_object) {
  if (max_object < 0 || max_object > kMaxObject) throw std::invalid_argument("S0: max object out of range");
  const int k = object_count();
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      start_.push_back(static_cast<std::uint32_t>(src_.size()));
      if ((mask(y) & ~mask(x)) == 0) {
        src_.push_back(x);
        tgt_.push_back(y);
      }
    }
  start_.push_back(static_cast<std::uint32_t>(src_.size()));
}

std::vector<int> S0Category::elements(int x) const {
  std::vector<int> out;
  for (int i = n_; i >= 0; --i)
    if (mask(x) >> i & 1U) out.push_back(i);
  return out;
}

std::uint32_t S0Category::compose(std::uint32_t f2, std::uint32_t f1) const {
  if (tgt_[f1] != src_[f2]) throw std::invalid_argument("S0: morphisms are not composable");
  return hom_begin(src_[f1], tgt_[f2]);
}

std::vector<AutTuple> automorphism_group(const std::vector<int>& elements) {
  std::vector<std::vector<IFasMorphism>> factors;
  for (int x : elements) {
    auto autos = enumerate_hom(x, x, HomVariant::kEpi);
    auto id = std::find(autos.begin(), autos.end(), IFasMorphism::identity(x));
    std::rotate(autos.begin(), id, id + 1);
    factors.push_back(std::move(autos));
  }
  std::vector<AutTuple> out{{}};
  for (const auto& f : factors) {
    std::vector<AutTuple> next;
    for (const auto& t : out)
      for (const auto& g : f) {
        next.push_back(t);
        next.back().push_back(g);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<EpiString> hom_product(const std::vector<int>& elements) {
  std::vector<EpiString> out{{}};
  for (std::size_t i = 1; i < elements.size(); ++i) {
    const auto homs = enumerate_hom(elements[i - 1], elements[i], HomVariant::kEpi);
    std::vector<EpiString> next;
    for (const auto& s : out)
      for (const auto& f : homs) {
        next.push_back(s);
        next.back().push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

EpiString act(const AutTuple& g, const EpiString& e) {
  EpiString out;
  for (std::size_t i = 1; i < g.size(); ++i) out.push_back(ifas_compose(g[i], ifas_compose(e[i - 1], g[i - 1].inverse())));
  return out;
}

EpiStringImage hom_product_map(const std::vector<int>& from, const std::vector<int>& to, const EpiString& e) {
  std::vector<std::size_t> kept;
  for (int x : to) kept.push_back(position(from, x));
  EpiStringImage out{{}, composite(e, 0, kept[0], from[0])};
  for (std::size_t j = 1; j < kept.size(); ++j)
    out.string.push_back(composite(e, kept[j - 1], kept[j], from[kept[j - 1]]));
  return out;
}

AutTuple automorphism_map(const std::vector<int>& from, const std::vector<int>& to, const AutTuple& g) {
  AutTuple out;
  for (int x : to) out.push_back(g[position(from, x)]);
  return out;
}

// ---------------------------------------------------------------------------

CoinvariantModule::CoinvariantModule(const S0Category& s0, const BarFunctor& ideal, std::uint64_t work_cap)
    : s0_(&s0), ideal_(&ideal) {
  if (ideal.variant() != BarVariant::kIdeal) throw std::invalid_argument("coinvariants need the ideal bar functor");
  if (!ideal.algebra().ring().char_zero()) throw std::invalid_argument("coinvariants need characteristic zero");
  objects_.resize(static_cast<std::size_t>(s0.object_count()));
  for (int x = 0; x < s0.object_count(); ++x) build_object(x, work_cap);
  build_images();
}

std::string CoinvariantModule::key(const EpiString& e) {
  std::string k;
  for (const auto& f : e) {
    const std::uint64_t c = f.code();
    k.append(reinterpret_cast<const char*>(&c), sizeof c);
  }
  return k;
}

std::vector<Rational> CoinvariantModule::tensor_apply(const IFasMorphism& f, const std::vector<Rational>& w) const {
  std::vector<Rational> out(ideal_->dim(f.target()), Rational(0));
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].is_zero()) continue;
    for (const auto& e : ideal_->apply(f, i)) out[e.row] += w[i] * e.value;
  }
  return out;
}

std::vector<std::vector<Rational>> CoinvariantModule::stabilizer_average(const ObjectData& o,
                                                                         std::uint32_t orbit) const {
  const int x0 = o.elements[0];
  const std::size_t dw = ideal_->dim(x0);
  Dense p(dw, std::vector<Rational>(dw, Rational(0)));
  const auto& stab = o.stabilizers[orbit];
  const Rational scale(1, static_cast<long>(stab.size()));
  for (auto gi : stab) {
    const auto& m = ideal_->evaluate(o.group[gi][0]);
    for (std::size_t c = 0; c < dw; ++c)
      for (const auto& e : m.column(c)) p[c][e.row] += scale * e.value;
  }
  return p;
}

void CoinvariantModule::build_object(int x, std::uint64_t work_cap) {
  ObjectData& o = objects_[static_cast<std::size_t>(x)];
  o.elements = s0_->elements(x);
  o.group = automorphism_group(o.elements);
  o.strings = hom_product(o.elements);
  for (std::uint32_t i = 0; i < o.strings.size(); ++i) o.lookup.emplace(key(o.strings[i]), i);
  o.orbit_of.assign(o.strings.size(), kNone);
  o.transporter.assign(o.strings.size(), kNone);
  std::uint64_t work = 0;
  for (std::uint32_t s = 0; s < o.strings.size(); ++s) {
    if (o.orbit_of[s] != kNone) continue;
    const auto orbit = static_cast<std::uint32_t>(o.reps.size());
    work += o.group.size();
    if (work > work_cap) throw CapExceeded(0, work, work_cap);
    o.reps.push_back(s);
    o.stabilizers.emplace_back();
    for (std::uint32_t g = 0; g < o.group.size(); ++g) {
      const std::uint32_t t = o.lookup.at(key(act(o.group[g], o.strings[s])));
      if (o.orbit_of[t] == kNone) {
        o.orbit_of[t] = orbit;
        o.transporter[t] = g;
      }
      if (t == s) o.stabilizers.back().push_back(g);
    }
  }
  o.orbit_basis.resize(o.reps.size());
  for (std::uint32_t orbit = 0; orbit < o.reps.size(); ++orbit) {
    const auto p = stabilizer_average(o, orbit);
    Echelon ech;
    for (const auto& col : p)
      if (ech.insert(col)) {
        o.orbit_basis[orbit].push_back(static_cast<std::uint32_t>(o.basis.size()));
        o.basis.push_back({orbit, col});
      }
  }
}

void CoinvariantModule::build_images() {
  images_.resize(s0_->morphism_count());
  for (std::uint32_t f = 0; f < s0_->morphism_count(); ++f) {
    const ObjectData& from = objects_[static_cast<std::size_t>(s0_->source(f))];
    const ObjectData& to = objects_[static_cast<std::size_t>(s0_->target(f))];
    // Members of each source orbit with their images.
    std::vector<std::vector<std::uint32_t>> members(from.reps.size());
    for (std::uint32_t s = 0; s < from.strings.size(); ++s) members[from.orbit_of[s]].push_back(s);
    std::vector<EpiStringImage> image;
    std::vector<std::uint32_t> target_index;
    for (const auto& s : from.strings) {
      image.push_back(hom_product_map(from.elements, to.elements, s));
      target_index.push_back(to.lookup.at(key(image.back().string)));
    }
    auto& out = images_[f];
    for (const auto& b : from.basis) {
      std::vector<std::vector<Rational>> comp(to.reps.size());
      for (auto s : members[b.orbit]) {
        const std::uint32_t t = target_index[s];
        const std::uint32_t orbit = to.orbit_of[t];
        if (to.reps[orbit] != t) continue;
        auto v = tensor_apply(image[s].lead, tensor_apply(from.group[from.transporter[s]][0], b.w));
        if (comp[orbit].empty())
          comp[orbit] = std::move(v);
        else
          for (std::size_t i = 0; i < v.size(); ++i) comp[orbit][i] += v[i];
      }
      SparseVector col;
      for (std::uint32_t orbit = 0; orbit < comp.size(); ++orbit) {
        if (comp[orbit].empty() || is_zero(comp[orbit])) continue;
        Dense cols;
        for (auto bi : to.orbit_basis[orbit]) cols.push_back(to.basis[bi].w);
        const auto coeff = solve_in_span(cols, comp[orbit]);
        for (std::size_t k = 0; k < coeff.size(); ++k)
          if (!coeff[k].is_zero()) col.push_back({to.orbit_basis[orbit][k], coeff[k]});
      }
      canonicalize(col);
      out.push_back(std::move(col));
    }
  }
}

SparseMatrix CoinvariantModule::full_projector(int x) const {
  const ObjectData& o = objects_[static_cast<std::size_t>(x)];
  const std::size_t dw = ideal_->dim(o.elements[0]);
  const std::size_t n = o.strings.size() * dw;
  const Rational scale(1, static_cast<long>(o.group.size()));
  std::vector<SparseVector> cols(n);
  for (std::uint32_t s = 0; s < o.strings.size(); ++s)
    for (const auto& g : o.group) {
      const std::uint32_t t = o.lookup.at(key(act(g, o.strings[s])));
      const auto& m = ideal_->evaluate(g[0]);
      for (std::size_t i = 0; i < dw; ++i)
        for (const auto& e : m.column(i))
          cols[s * dw + i].push_back({static_cast<std::uint32_t>(t * dw + e.row), scale * e.value});
    }
  for (auto& c : cols) canonicalize(c);
  return SparseMatrix::from_columns(n, cols);
}

SparseVector CoinvariantModule::invariant_vector(int x, std::uint64_t basis) const {
  const ObjectData& o = objects_[static_cast<std::size_t>(x)];
  const std::size_t dw = ideal_->dim(o.elements[0]);
  const auto& b = o.basis[basis];
  SparseVector v;
  for (std::uint32_t s = 0; s < o.strings.size(); ++s) {
    if (o.orbit_of[s] != b.orbit) continue;
    const auto w = tensor_apply(o.group[o.transporter[s]][0], b.w);
    for (std::size_t i = 0; i < dw; ++i)
      if (!w[i].is_zero()) v.push_back({static_cast<std::uint32_t>(s * dw + i), w[i]});
  }
  canonicalize(v);
  return v;
}

bool CoinvariantModule::check_action(int x, std::uint64_t budget, std::mt19937& rng) const {
  const ObjectData& o = objects_[static_cast<std::size_t>(x)];
  const std::uint64_t g = o.group.size();
  const std::uint64_t e = o.strings.size();
  for (const auto& s : o.strings)
    if (key(act(o.group[0], s)) != key(s)) return false;
  auto one = [&](std::size_t a, std::size_t b, std::size_t s) {
    return key(act(compose_tuples(o.group[a], o.group[b]), o.strings[s])) ==
           key(act(o.group[a], act(o.group[b], o.strings[s])));
  };
  if (g * g * e <= budget) {
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t b = 0; b < g; ++b)
        for (std::size_t s = 0; s < e; ++s)
          if (!one(a, b, s)) return false;
    return true;
  }
  for (std::uint64_t k = 0; k < budget; ++k)
    if (!one(rng() % g, rng() % g, rng() % e)) return false;
  return true;
}

bool CoinvariantModule::check_naturality(std::uint32_t f, std::uint64_t budget, std::mt19937& rng) const {
  const ObjectData& from = objects_[static_cast<std::size_t>(s0_->source(f))];
  const ObjectData& to = objects_[static_cast<std::size_t>(s0_->target(f))];
  auto one = [&](std::size_t gi, std::size_t s) {
    const auto& g = from.group[gi];
    const auto gp = automorphism_map(from.elements, to.elements, g);
    const auto lhs = hom_product_map(from.elements, to.elements, act(g, from.strings[s]));
    const auto img = hom_product_map(from.elements, to.elements, from.strings[s]);
    if (key(lhs.string) != key(act(gp, img.string))) return false;
    return ifas_compose(lhs.lead, g[0]) == ifas_compose(gp[0], img.lead);
  };
  const std::uint64_t n = from.group.size() * from.strings.size();
  if (n <= budget) {
    for (std::size_t gi = 0; gi < from.group.size(); ++gi)
      for (std::size_t s = 0; s < from.strings.size(); ++s)
        if (!one(gi, s)) return false;
    return true;
  }
  for (std::uint64_t k = 0; k < budget; ++k)
    if (!one(rng() % from.group.size(), rng() % from.strings.size())) return false;
  return true;
}

bool CoinvariantModule::check_projectors(int x) const {
  const ObjectData& o = objects_[static_cast<std::size_t>(x)];
  const std::size_t dw = ideal_->dim(o.elements[0]);
  for (std::uint32_t orbit = 0; orbit < o.reps.size(); ++orbit) {
    const auto p = stabilizer_average(o, orbit);
    // columns of p are fixed by p and by every stabilizer element
    for (std::size_t c = 0; c < dw; ++c) {
      std::vector<Rational> pc(dw, Rational(0));
      for (std::size_t k = 0; k < dw; ++k)
        for (std::size_t r = 0; r < dw; ++r) pc[r] += p[k][r] * p[c][k];
      if (pc != p[c]) return false;
      for (auto gi : o.stabilizers[orbit])
        if (tensor_apply(o.group[gi][0], p[c]) != p[c]) return false;
    }
  }
  return true;
}

}  // namespace hyperoct
