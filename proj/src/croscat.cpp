#include "croscat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hyperoct {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

LabeledSequence label_flip(std::span<const LabeledPoint> s) {
  LabeledSequence out(s.rbegin(), s.rend());
  for (auto& p : out) p.flipped = !p.flipped;
  return out;
}

std::string to_string(std::span<const LabeledPoint> s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) os << '<';
    os << int(s[k].point) << (s[k].flipped ? "^t" : "^1");
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// HypElement

HypElement::HypElement(std::vector<bool> signs, std::vector<std::uint8_t> perm)
    : signs_(std::move(signs)), perm_(std::move(perm)) {
  require(!perm_.empty() && perm_.size() == signs_.size(), "hyperoctahedral element: size mismatch");
  std::vector<bool> seen(perm_.size(), false);
  for (auto v : perm_) {
    require(v < perm_.size() && !seen[v], "hyperoctahedral element: perm is not a bijection");
    seen[v] = true;
  }
}

HypElement HypElement::identity(int n) {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n + 1));
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  return {std::vector<bool>(p.size(), false), std::move(p)};
}

HypElement HypElement::t(int n, int i) {
  require(i >= 0 && i <= n, "t_i index out of range");
  HypElement g = identity(n);
  g.signs_[static_cast<std::size_t>(i)] = true;
  return g;
}

HypElement HypElement::theta(int n, int j) {
  require(j >= 0 && j < n, "theta_j index out of range");
  HypElement g = identity(n);
  std::swap(g.perm_[static_cast<std::size_t>(j)], g.perm_[static_cast<std::size_t>(j + 1)]);
  return g;
}

HypElement HypElement::inverse() const {
  const std::size_t k = perm_.size();
  std::vector<std::uint8_t> p(k);
  std::vector<bool> s(k);
  for (std::size_t i = 0; i < k; ++i) {
    p[perm_[i]] = static_cast<std::uint8_t>(i);
    s[perm_[i]] = signs_[i];
  }
  return {std::move(s), std::move(p)};
}

bool HypElement::is_identity() const {
  for (std::size_t i = 0; i < perm_.size(); ++i)
    if (perm_[i] != i || signs_[i]) return false;
  return true;
}

HypElement hyp_compose(const HypElement& a, const HypElement& b) {
  require(a.perm().size() == b.perm().size(), "hyp_compose: elements act on different objects");
  const std::size_t k = a.perm().size();
  std::vector<std::uint8_t> p(k);
  std::vector<bool> s(k);
  for (std::size_t i = 0; i < k; ++i) {
    p[i] = a.perm()[b.perm()[i]];
    s[i] = b.signs()[i] != a.signs()[b.perm()[i]];
  }
  return {std::move(s), std::move(p)};
}

std::uint64_t hyp_order(int n) {
  std::uint64_t r = 1;
  for (int k = 1; k <= n + 1; ++k) r *= 2ULL * static_cast<std::uint64_t>(k);
  return r;
}

std::vector<HypElement> enumerate_hyp(int n) {
  std::vector<HypElement> out;
  const auto k = static_cast<std::size_t>(n + 1);
  std::vector<std::uint8_t> p(k);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do {
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
      std::vector<bool> s(k);
      for (std::size_t i = 0; i < k; ++i) s[i] = (mask >> i) & 1U;
      out.emplace_back(std::move(s), p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Delta

DeltaMorphism::DeltaMorphism(int source, int target, std::vector<std::uint8_t> values)
    : source_(source), target_(target), values_(std::move(values)) {
  require(source >= 0 && target >= 0, "Delta morphisms need non-empty objects");
  require(values_.size() == static_cast<std::size_t>(source + 1), "Delta morphism: wrong number of values");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    require(values_[i] <= target, "Delta morphism: value outside the target");
    require(i == 0 || values_[i - 1] <= values_[i], "Delta morphism: not order-preserving");
  }
}

DeltaMorphism DeltaMorphism::identity(int n) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(n + 1));
  std::iota(v.begin(), v.end(), std::uint8_t{0});
  return {n, n, std::move(v)};
}

DeltaMorphism DeltaMorphism::face(int n, int i) {
  require(i >= 0 && i <= n + 1, "face index out of range");
  std::vector<std::uint8_t> v;
  for (int k = 0; k <= n; ++k) v.push_back(static_cast<std::uint8_t>(k < i ? k : k + 1));
  return {n, n + 1, std::move(v)};
}

DeltaMorphism DeltaMorphism::degeneracy(int n, int j) {
  require(j >= 0 && j <= n, "degeneracy index out of range");
  std::vector<std::uint8_t> v;
  for (int k = 0; k <= n + 1; ++k) v.push_back(static_cast<std::uint8_t>(k <= j ? k : k - 1));
  return {n + 1, n, std::move(v)};
}

bool DeltaMorphism::is_injective() const { return image_size() == source_ + 1; }
bool DeltaMorphism::is_surjective() const { return image_size() == target_ + 1; }

int DeltaMorphism::image_size() const {
  int r = 0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (i == 0 || values_[i] != values_[i - 1]) ++r;
  return r;
}

DeltaMorphism delta_compose(const DeltaMorphism& a, const DeltaMorphism& b) {
  require(b.target() == a.source(), "delta_compose: objects do not match");
  std::vector<std::uint8_t> v;
  for (auto x : b.values()) v.push_back(a.values()[x]);
  return {b.source(), a.target(), std::move(v)};
}

std::vector<DeltaMorphism> enumerate_delta(int n, int m) {
  std::vector<DeltaMorphism> out;
  std::vector<std::uint8_t> v(static_cast<std::size_t>(n + 1), 0);
  while (true) {
    out.emplace_back(n, m, v);
    int k = n;
    while (k >= 0 && v[static_cast<std::size_t>(k)] == m) --k;
    if (k < 0) break;
    const auto next = static_cast<std::uint8_t>(v[static_cast<std::size_t>(k)] + 1);
    for (int q = k; q <= n; ++q) v[static_cast<std::size_t>(q)] = next;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation tables

SimplicialGenerator star_lower(const Generator& h, const SimplicialGenerator& w) {
  if (h.kind == Generator::kT) return w;
  auto swap = [&](int i) { return i == h.index ? i + 1 : (i == h.index + 1 ? i - 1 : i); };
  return {w.kind, swap(w.index), w.source};
}

std::vector<Generator> star_upper(const SimplicialGenerator& w, const Generator& h) {
  const int k = h.index;
  if (w.kind == SimplicialGenerator::kFace) {
    const int i = w.index;
    if (h.kind == Generator::kTheta) {
      if (k < i - 1) return {{Generator::kTheta, k}};
      if (k == i - 1 || k == i) return {};
      return {{Generator::kTheta, k - 1}};
    }
    if (k < i) return {{Generator::kT, k}};
    if (k == i) return {};
    return {{Generator::kT, k - 1}};
  }
  const int j = w.index;
  if (h.kind == Generator::kTheta) {
    if (k < j - 1) return {{Generator::kTheta, k}};
    if (k == j - 1) return {{Generator::kTheta, j}, {Generator::kTheta, j - 1}};
    if (k == j) return {{Generator::kTheta, j}, {Generator::kTheta, j + 1}};
    return {{Generator::kTheta, k + 1}};
  }
  if (k < j) return {{Generator::kT, k}};
  if (k == j) return {{Generator::kTheta, k}, {Generator::kT, k + 1}, {Generator::kT, k}};
  return {{Generator::kT, k + 1}};
}

std::vector<Generator> generator_word(const HypElement& g) {
  std::vector<Generator> word;
  std::vector<std::uint8_t> p = g.perm();
  // Left-multiplying by theta_a swaps the values a and a+1.
  while (true) {
    std::vector<std::uint8_t> where(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) where[p[i]] = static_cast<std::uint8_t>(i);
    int a = -1;
    for (std::size_t v = 0; v + 1 < p.size(); ++v)
      if (where[v + 1] < where[v]) {
        a = static_cast<int>(v);
        break;
      }
    if (a < 0) break;
    word.push_back({Generator::kTheta, a});
    std::swap(p[where[static_cast<std::size_t>(a)]], p[where[static_cast<std::size_t>(a) + 1]]);
  }
  for (std::size_t i = 0; i < g.signs().size(); ++i)
    if (g.signs()[i]) word.push_back({Generator::kT, static_cast<int>(i)});
  return word;
}

std::vector<SimplicialGenerator> simplicial_word(const DeltaMorphism& phi) {
  std::vector<SimplicialGenerator> faces;
  std::vector<SimplicialGenerator> degeneracies;
  std::vector<int> v(phi.values().begin(), phi.values().end());
  int target = phi.target();
  while (true) {
    std::vector<bool> hit(static_cast<std::size_t>(target + 1), false);
    for (int x : v) hit[static_cast<std::size_t>(x)] = true;
    int missing = -1;
    for (int a = target; a >= 0; --a)
      if (!hit[static_cast<std::size_t>(a)]) {
        missing = a;
        break;
      }
    if (missing < 0) break;
    faces.push_back({SimplicialGenerator::kFace, missing, target - 1});
    for (int& x : v)
      if (x > missing) --x;
    --target;
  }
  while (true) {
    int i = -1;
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
      if (v[k] == v[k + 1]) {
        i = static_cast<int>(k);
        break;
      }
    if (i < 0) break;
    degeneracies.insert(degeneracies.begin(),
                        {SimplicialGenerator::kDegeneracy, i, static_cast<int>(v.size()) - 1});
    v.erase(v.begin() + i + 1);
  }
  faces.insert(faces.end(), degeneracies.begin(), degeneracies.end());
  return faces;
}

HypElement evaluate_word(int n, std::span<const Generator> word) {
  HypElement g = HypElement::identity(n);
  for (const auto& w : word) {
    HypElement x = w.kind == Generator::kT ? HypElement::t(n, w.index) : HypElement::theta(n, w.index);
    g = hyp_compose(g, x);
  }
  return g;
}

namespace {

DeltaMorphism to_delta(const SimplicialGenerator& w) {
  return w.kind == SimplicialGenerator::kFace ? DeltaMorphism::face(w.source, w.index)
                                              : DeltaMorphism::degeneracy(w.source - 1, w.index);
}

}  // namespace

DeltaHMorphism deltah_compose(const DeltaHMorphism& f2, const DeltaHMorphism& f1) {
  require(f1.target() == f2.source(), "deltah_compose: objects do not match");
  require(f1.g.object() == f1.source() && f2.g.object() == f2.source(), "deltah_compose: group on wrong object");
  // h o phi = h_*(phi) o phi^*(h), one simplicial generator at a time.
  std::vector<Generator> group = generator_word(f2.g);
  std::vector<SimplicialGenerator> moved;
  for (const auto& w : simplicial_word(f1.phi)) {
    SimplicialGenerator cur = w;
    std::vector<std::vector<Generator>> uppers(group.size());
    for (std::size_t k = group.size(); k-- > 0;) {
      uppers[k] = star_upper(cur, group[k]);
      cur = star_lower(group[k], cur);
    }
    moved.push_back(cur);
    std::vector<Generator> next;
    for (const auto& u : uppers) next.insert(next.end(), u.begin(), u.end());
    group = std::move(next);
  }
  DeltaMorphism phi = f2.phi;
  for (const auto& w : moved) phi = delta_compose(phi, to_delta(w));
  if (moved.empty()) phi = f2.phi;
  HypElement g = hyp_compose(evaluate_word(f1.source(), group), f1.g);
  return {std::move(phi), std::move(g)};
}

// ---------------------------------------------------------------------------
// IF(as)

IFasMorphism::IFasMorphism(int source, int target, const std::vector<LabeledSequence>& preimages) {
  require(source >= -1 && source <= kMaxObject && target >= -1 && target <= kMaxObject,
          "IF(as) morphism: object out of range");
  require(preimages.size() == static_cast<std::size_t>(target + 1), "IF(as) morphism: wrong number of preimages");
  source_ = static_cast<std::int8_t>(source);
  target_ = static_cast<std::int8_t>(target);
  std::vector<bool> seen(static_cast<std::size_t>(source + 1), false);
  std::size_t pos = 0;
  start_[0] = 0;
  for (std::size_t j = 0; j < preimages.size(); ++j) {
    for (const auto& p : preimages[j]) {
      require(p.point <= source && !seen[p.point], "IF(as) morphism: preimages must partition the source");
      seen[p.point] = true;
      word_[pos++] = p;
    }
    start_[j + 1] = static_cast<std::uint8_t>(pos);
  }
  require(pos == static_cast<std::size_t>(source + 1), "IF(as) morphism: preimages must cover the source");
}

IFasMorphism IFasMorphism::identity(int n) {
  std::vector<LabeledSequence> pre;
  for (int i = 0; i <= n; ++i) pre.push_back({LabeledPoint{static_cast<std::uint8_t>(i), false}});
  return {n, n, pre};
}

void IFasMorphism::set_blocks(const std::vector<int>& sizes) {
  start_[0] = 0;
  for (std::size_t j = 0; j < sizes.size(); ++j) start_[j + 1] = static_cast<std::uint8_t>(start_[j] + sizes[j]);
}

int IFasMorphism::value(int i) const {
  for (int j = 0; j <= target_; ++j)
    for (const auto& p : preimage(j))
      if (p.point == i) return j;
  throw std::out_of_range("IF(as) morphism: point outside the source");
}

bool IFasMorphism::is_epi() const {
  for (int j = 0; j <= target_; ++j)
    if (start_[j + 1] == start_[j]) return false;
  return true;
}

bool IFasMorphism::is_mono() const {
  for (int j = 0; j <= target_; ++j)
    if (start_[j + 1] - start_[j] > 1) return false;
  return true;
}

int IFasMorphism::image_size() const {
  int r = 0;
  for (int j = 0; j <= target_; ++j)
    if (start_[j + 1] != start_[j]) ++r;
  return r;
}

IFasMorphism IFasMorphism::inverse() const {
  require(is_iso(), "inverse of a non-invertible IF(as) morphism");
  // f sends word_[j].point to j with label word_[j].flipped.
  std::vector<LabeledSequence> pre(static_cast<std::size_t>(source_ + 1));
  for (int j = 0; j <= target_; ++j) pre[word_[j].point] = {LabeledPoint{static_cast<std::uint8_t>(j), word_[j].flipped}};
  return {source_, target_, pre};
}

std::uint64_t IFasMorphism::code() const {
  std::uint64_t c = static_cast<std::uint64_t>(source_ + 1) | (static_cast<std::uint64_t>(target_ + 1) << 4);
  for (int j = 0; j <= target_; ++j)
    for (int p = start_[j]; p < start_[j + 1]; ++p) {
      c |= static_cast<std::uint64_t>(j) << (8 + 3 * word_[p].point);
      c |= static_cast<std::uint64_t>(word_[p].point | (word_[p].flipped ? 8U : 0U)) << (32 + 4 * p);
    }
  return c;
}

IFasMorphism IFasMorphism::from_code(std::uint64_t c) {
  const int source = static_cast<int>(c & 0xfU) - 1;
  const int target = static_cast<int>((c >> 4) & 0xfU) - 1;
  require(source <= kMaxObject && target <= kMaxObject, "IF(as) code: object out of range");
  std::vector<int> value(static_cast<std::size_t>(source + 1));
  for (int i = 0; i <= source; ++i) value[static_cast<std::size_t>(i)] = static_cast<int>((c >> (8 + 3 * i)) & 7U);
  std::vector<LabeledSequence> pre(static_cast<std::size_t>(target + 1));
  for (int p = 0; p <= source; ++p) {
    const auto e = static_cast<std::uint8_t>((c >> (32 + 4 * p)) & 0xfU);
    const LabeledPoint lp{static_cast<std::uint8_t>(e & 7U), (e & 8U) != 0};
    require(lp.point <= source, "IF(as) code: point out of range");
    const int j = value[lp.point];
    require(j <= target, "IF(as) code: value out of range");
    pre[static_cast<std::size_t>(j)].push_back(lp);
  }
  IFasMorphism f(source, target, pre);
  require(f.code() == c, "IF(as) code: not canonical");
  return f;
}

std::string IFasMorphism::str() const {
  std::ostringstream os;
  os << '[' << int(source_) << "]->[" << int(target_) << "] ";
  for (int j = 0; j <= target_; ++j) {
    if (j) os << ' ';
    os << j << ':' << to_string(preimage(j));
  }
  return os.str();
}

std::strong_ordering operator<=>(const IFasMorphism& a, const IFasMorphism& b) {
  if (auto c = a.source_ <=> b.source_; c != 0) return c;
  if (auto c = a.target_ <=> b.target_; c != 0) return c;
  for (int i = 0; i <= a.source_; ++i)
    if (auto c = a.value(i) <=> b.value(i); c != 0) return c;
  for (int p = 0; p <= a.source_; ++p)
    if (auto c = a.word_[p].point <=> b.word_[p].point; c != 0) return c;
  for (int p = 0; p <= a.source_; ++p)
    if (auto c = a.word_[p].flipped <=> b.word_[p].flipped; c != 0) return c;
  return std::strong_ordering::equal;
}

IFasMorphism ifas_compose(const IFasMorphism& f2, const IFasMorphism& f1) {
  require(f1.target() == f2.source(), "ifas_compose: objects do not match");
  IFasMorphism out;
  out.source_ = f1.source_;
  out.target_ = f2.target_;
  std::size_t pos = 0;
  out.start_[0] = 0;
  for (int i = 0; i <= f2.target(); ++i) {
    for (const auto& jp : f2.preimage(i)) {
      auto s = f1.preimage(jp.point);
      if (!jp.flipped) {
        for (const auto& p : s) out.word_[pos++] = p;
      } else {
        for (auto it = s.rbegin(); it != s.rend(); ++it) out.word_[pos++] = LabeledPoint{it->point, !it->flipped};
      }
    }
    out.start_[static_cast<std::size_t>(i) + 1] = static_cast<std::uint8_t>(pos);
  }
  return out;
}

IFasMorphism pair_to_ifas(const DeltaHMorphism& f) {
  const int n = f.source();
  const int m = f.target();
  require(f.g.object() == n, "pair_to_ifas: group element on the wrong object");
  std::vector<LabeledSequence> pre(static_cast<std::size_t>(m + 1));
  std::vector<LabeledPoint> by_position(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i)
    by_position[f.g.perm()[static_cast<std::size_t>(i)]] =
        LabeledPoint{static_cast<std::uint8_t>(i), f.g.signs()[static_cast<std::size_t>(i)]};
  for (int p = 0; p <= n; ++p) pre[f.phi.values()[static_cast<std::size_t>(p)]].push_back(by_position[static_cast<std::size_t>(p)]);
  return {n, m, pre};
}

DeltaHMorphism ifas_to_pair(const IFasMorphism& f) {
  require(f.source() >= 0 && f.target() >= 0, "ifas_to_pair: the empty object has no pair presentation");
  const auto k = static_cast<std::size_t>(f.source() + 1);
  std::vector<std::uint8_t> values;
  std::vector<std::uint8_t> perm(k);
  std::vector<bool> signs(k);
  std::size_t p = 0;
  for (int j = 0; j <= f.target(); ++j)
    for (const auto& lp : f.preimage(j)) {
      values.push_back(static_cast<std::uint8_t>(j));
      perm[lp.point] = static_cast<std::uint8_t>(p);
      signs[lp.point] = lp.flipped;
      ++p;
    }
  return {DeltaMorphism(f.source(), f.target(), std::move(values)), HypElement(std::move(signs), std::move(perm))};
}

std::uint64_t count_delta(int n, int m) {
  // binomial(n + m + 1, n + 1)
  std::uint64_t r = 1;
  const int top = n + m + 1;
  const int k = n + 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(top - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<IFasMorphism> enumerate_hom(int n, int m, HomVariant variant) {
  require(n >= -1 && m >= -1 && n <= kMaxObject && m <= kMaxObject, "enumerate_hom: object out of range");
  std::vector<IFasMorphism> out;
  if (n == -1) {
    if (variant == HomVariant::kAll || m == -1)
      out.emplace_back(-1, m, std::vector<LabeledSequence>(static_cast<std::size_t>(m + 1)));
    return out;
  }
  if (m == -1) return out;
  const auto k = static_cast<std::size_t>(n + 1);
  const int min_block = variant == HomVariant::kEpi ? 1 : 0;
  // Compositions of n+1 into m+1 parts.
  std::vector<std::vector<int>> compositions;
  std::vector<int> parts(static_cast<std::size_t>(m + 1), 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == m) {
      if (left >= min_block) {
        parts[static_cast<std::size_t>(j)] = left;
        compositions.push_back(parts);
      }
      return;
    }
    for (int s = min_block; s <= left; ++s) {
      parts[static_cast<std::size_t>(j)] = s;
      self(self, j + 1, left - s);
    }
  };
  rec(rec, 0, static_cast<int>(k));
  std::vector<std::uint8_t> order(k);
  for (const auto& comp : compositions) {
    std::iota(order.begin(), order.end(), std::uint8_t{0});
    do {
      for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
        std::vector<LabeledSequence> pre(static_cast<std::size_t>(m + 1));
        std::size_t pos = 0;
        for (std::size_t j = 0; j < comp.size(); ++j)
          for (int s = 0; s < comp[j]; ++s, ++pos)
            pre[j].push_back(LabeledPoint{order[pos], ((mask >> pos) & 1U) != 0});
        out.emplace_back(n, m, pre);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

EpiMonoFactorization epi_mono_factorize(const DeltaHMorphism& f) {
  std::vector<std::uint8_t> image;
  for (auto v : f.phi.values())
    if (image.empty() || image.back() != v) image.push_back(v);
  std::vector<std::uint8_t> proj;
  for (auto v : f.phi.values())
    proj.push_back(static_cast<std::uint8_t>(std::find(image.begin(), image.end(), v) - image.begin()));
  const int r = static_cast<int>(image.size());
  return {DeltaMorphism(r - 1, f.target(), std::move(image)),
          DeltaHMorphism{DeltaMorphism(f.source(), r - 1, std::move(proj)), f.g}};
}

IFasMorphism monotone_injection(int target, std::span<const int> image) {
  std::vector<LabeledSequence> pre(static_cast<std::size_t>(target + 1));
  for (std::size_t k = 0; k < image.size(); ++k) {
    require(k == 0 || image[k - 1] < image[k], "monotone_injection: image must be strictly increasing");
    require(image[k] >= 0 && image[k] <= target, "monotone_injection: image outside the target");
    pre[static_cast<std::size_t>(image[k])].push_back(LabeledPoint{static_cast<std::uint8_t>(k), false});
  }
  return {static_cast<int>(image.size()) - 1, target, pre};
}

IFasFactorization factorize(const IFasMorphism& f) {
  std::vector<int> image;
  std::vector<LabeledSequence> epi_pre;
  for (int j = 0; j <= f.target(); ++j) {
    auto s = f.preimage(j);
    if (s.empty()) continue;
    image.push_back(j);
    epi_pre.emplace_back(s.begin(), s.end());
  }
  const int r = static_cast<int>(image.size());
  return {monotone_injection(f.target(), image), IFasMorphism(f.source(), r - 1, epi_pre)};
}

IFasMorphism monoidal_product(const IFasMorphism& f, const IFasMorphism& h) {
  const int source = f.source() + h.source() + 1;
  const int target = f.target() + h.target() + 1;
  require(source <= kMaxObject && target <= kMaxObject, "monoidal_product: object out of range");
  std::vector<LabeledSequence> pre;
  for (int j = 0; j <= f.target(); ++j) pre.emplace_back(f.preimage(j).begin(), f.preimage(j).end());
  const auto shift = static_cast<std::uint8_t>(f.source() + 1);
  for (int j = 0; j <= h.target(); ++j) {
    LabeledSequence s;
    for (const auto& p : h.preimage(j)) s.push_back(LabeledPoint{static_cast<std::uint8_t>(p.point + shift), p.flipped});
    pre.push_back(std::move(s));
  }
  return {source, target, pre};
}

IFasMorphism monoidal_symmetry(int n, int m) {
  const int total = n + m + 1;
  require(total <= kMaxObject, "monoidal_symmetry: object out of range");
  std::vector<LabeledSequence> pre;
  for (int k = 0; k <= m; ++k) pre.push_back({LabeledPoint{static_cast<std::uint8_t>(n + 1 + k), false}});
  for (int i = 0; i <= n; ++i) pre.push_back({LabeledPoint{static_cast<std::uint8_t>(i), false}});
  return {total, total, pre};
}

// ---------------------------------------------------------------------------
// TruncatedCategory

std::string to_string(CategoryKind kind) {
  switch (kind) {
    case CategoryKind::kDeltaH:
      return "deltah";
    case CategoryKind::kEpiDeltaH:
      return "epideltah";
    case CategoryKind::kDeltaHPlus:
      return "deltahplus";
  }
  return "?";
}

TruncatedCategory::TruncatedCategory(CategoryKind kind, int max_object) : kind_(kind), max_object_(max_object) {
  require(max_object >= 0 && max_object <= kMaxObject, "truncated category: max object out of range");
  const HomVariant variant = kind == CategoryKind::kEpiDeltaH ? HomVariant::kEpi : HomVariant::kAll;
  for (int x = min_object(); x <= max_object_; ++x)
    for (int y = min_object(); y <= max_object_; ++y) {
      auto homs = enumerate_hom(x, y, variant);
      morphisms_.insert(morphisms_.end(), homs.begin(), homs.end());
    }
  index();
}

TruncatedCategory::TruncatedCategory(CategoryKind kind, int max_object, const std::vector<std::uint64_t>& codes)
    : kind_(kind), max_object_(max_object) {
  require(max_object >= 0 && max_object <= kMaxObject, "truncated category: max object out of range");
  morphisms_.reserve(codes.size());
  for (auto c : codes) morphisms_.push_back(IFasMorphism::from_code(c));
  index();
}

void TruncatedCategory::index() {
  const std::size_t pairs = static_cast<std::size_t>(object_count()) * object_count();
  hom_start_.assign(pairs + 1, 0);
  std::size_t expected = 0;
  for (std::size_t k = 0; k < morphisms_.size(); ++k) {
    const auto& f = morphisms_[k];
    require(f.source() >= min_object() && f.target() >= min_object() && f.source() <= max_object_ &&
                f.target() <= max_object_,
            "truncated category: morphism outside the truncation");
    const std::size_t p = pair_index(f.source(), f.target());
    require(k == 0 || morphisms_[k - 1] < f, "truncated category: morphisms out of order");
    while (expected <= p) hom_start_[expected++] = static_cast<MorphismId>(k);
    lookup_.emplace(f.code(), static_cast<MorphismId>(k));
  }
  while (expected <= pairs) hom_start_[expected++] = static_cast<MorphismId>(morphisms_.size());
  require(lookup_.size() == morphisms_.size(), "truncated category: duplicate morphisms");
}

std::vector<int> TruncatedCategory::objects() const {
  std::vector<int> out;
  for (int x = min_object(); x <= max_object_; ++x) out.push_back(x);
  return out;
}

MorphismId TruncatedCategory::id_of(const IFasMorphism& f) const {
  auto it = lookup_.find(f.code());
  if (it == lookup_.end()) throw std::out_of_range("morphism outside the truncated category: " + f.str());
  return it->second;
}

bool TruncatedCategory::contains(const IFasMorphism& f) const { return lookup_.count(f.code()) != 0; }

MorphismId TruncatedCategory::identity(int x) const { return id_of(IFasMorphism::identity(x)); }

MorphismId TruncatedCategory::compose(MorphismId f2, MorphismId f1) const {
  return id_of(ifas_compose(morphisms_[f2], morphisms_[f1]));
}

std::vector<std::uint64_t> TruncatedCategory::codes() const {
  std::vector<std::uint64_t> out;
  out.reserve(morphisms_.size());
  for (const auto& f : morphisms_) out.push_back(f.code());
  return out;
}

}  // namespace hyperoct
