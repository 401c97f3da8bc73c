#pragma once

// Hyperoctahedral groups and the categories Delta, Delta H, IF(as),
// Epi Delta H and Delta H_+.
//
// Conventions, fixed project-wide:
//   * Objects are [n] = {0..n}; the empty object of Delta H_+ is n = -1.
//   * Permutations are in one-line notation, perm[i] = sigma(i).
//   * Composition a * b means "b first, then a".
//   * A hyperoctahedral element (z; sigma) sends the labelled point i^a to
//     sigma(i)^(z_i a), so (z; s)(z'; s') = ((z o s') z'; s s').
//   * IFasMorphism is the canonical representation. A morphism is a set map
//     together with an ordered, C2-labelled preimage of every target point,
//     stored as one word (the concatenated preimages) plus block offsets.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperoct {

inline constexpr int kMaxObject = 7;
inline constexpr int kMaxPoints = kMaxObject + 1;

struct LabeledPoint {
  std::uint8_t point = 0;
  bool flipped = false;  // label t when set, 1 otherwise

  friend auto operator<=>(const LabeledPoint&, const LabeledPoint&) = default;
};

using LabeledSequence = std::vector<LabeledPoint>;

// Reverses the order and multiplies every label by t.
LabeledSequence label_flip(std::span<const LabeledPoint> s);

std::string to_string(std::span<const LabeledPoint> s);

// ---------------------------------------------------------------------------
// Hyperoctahedral group H_{n+1} = C2^{n+1} x| Sigma_{n+1}

class HypElement {
 public:
  HypElement() = default;
  HypElement(std::vector<bool> signs, std::vector<std::uint8_t> perm);

  static HypElement identity(int n);
  static HypElement t(int n, int i);      // sign flip at position i
  static HypElement theta(int n, int j);  // transposition (j j+1)

  [[nodiscard]] int object() const noexcept { return static_cast<int>(perm_.size()) - 1; }
  [[nodiscard]] const std::vector<bool>& signs() const noexcept { return signs_; }
  [[nodiscard]] const std::vector<std::uint8_t>& perm() const noexcept { return perm_; }
  [[nodiscard]] HypElement inverse() const;
  [[nodiscard]] bool is_identity() const;

  friend bool operator==(const HypElement&, const HypElement&) = default;
  friend auto operator<=>(const HypElement& a, const HypElement& b) {
    if (auto c = a.perm_ <=> b.perm_; c != 0) return c;
    return a.signs_ <=> b.signs_;
  }

 private:
  std::vector<bool> signs_;
  std::vector<std::uint8_t> perm_;
};

// a after b. Throws std::invalid_argument on a size mismatch.
HypElement hyp_compose(const HypElement& a, const HypElement& b);

// Order of H_{n+1}: 2^{n+1} (n+1)!
std::uint64_t hyp_order(int n);

// All elements of H_{n+1}, sorted.
std::vector<HypElement> enumerate_hyp(int n);

// ---------------------------------------------------------------------------
// Delta

class DeltaMorphism {
 public:
  DeltaMorphism() = default;
  DeltaMorphism(int source, int target, std::vector<std::uint8_t> values);

  static DeltaMorphism identity(int n);
  static DeltaMorphism face(int n, int i);        // delta_i : [n] -> [n+1], omits i
  static DeltaMorphism degeneracy(int n, int j);  // sigma_j : [n+1] -> [n], hits j twice

  [[nodiscard]] int source() const noexcept { return source_; }
  [[nodiscard]] int target() const noexcept { return target_; }
  [[nodiscard]] const std::vector<std::uint8_t>& values() const noexcept { return values_; }
  [[nodiscard]] bool is_injective() const;
  [[nodiscard]] bool is_surjective() const;
  [[nodiscard]] int image_size() const;

  friend bool operator==(const DeltaMorphism&, const DeltaMorphism&) = default;
  friend auto operator<=>(const DeltaMorphism&, const DeltaMorphism&) = default;

 private:
  int source_ = 0;
  int target_ = 0;
  std::vector<std::uint8_t> values_;
};

// a after b.
DeltaMorphism delta_compose(const DeltaMorphism& a, const DeltaMorphism& b);

// All order-preserving maps [n] -> [m] in lexicographic order.
std::vector<DeltaMorphism> enumerate_delta(int n, int m);

// ---------------------------------------------------------------------------
// Delta H, pair presentation

struct DeltaHMorphism {
  DeltaMorphism phi;
  HypElement g;  // acts on the source of phi

  [[nodiscard]] int source() const noexcept { return phi.source(); }
  [[nodiscard]] int target() const noexcept { return phi.target(); }

  friend bool operator==(const DeltaHMorphism&, const DeltaHMorphism&) = default;
};

// Composite f2 after f1 computed by pushing group elements past faces and
// degeneracies with the crossed simplicial group relation tables.
DeltaHMorphism deltah_compose(const DeltaHMorphism& f2, const DeltaHMorphism& f1);

// The tabulated action of a single generator past a single face or
// degeneracy: gen o w = gen_*(w) o w^*(gen). Exposed for testing.
struct Generator {
  enum Kind : std::uint8_t { kT, kTheta } kind;
  int index;
  friend bool operator==(const Generator&, const Generator&) = default;
};
struct SimplicialGenerator {
  enum Kind : std::uint8_t { kFace, kDegeneracy } kind;
  int index;
  int source;  // object the map starts at
  friend bool operator==(const SimplicialGenerator&, const SimplicialGenerator&) = default;
};
SimplicialGenerator star_lower(const Generator& h, const SimplicialGenerator& w);
std::vector<Generator> star_upper(const SimplicialGenerator& w, const Generator& h);

// Words such that composing left to right (rightmost first) reproduces the input.
std::vector<Generator> generator_word(const HypElement& g);
std::vector<SimplicialGenerator> simplicial_word(const DeltaMorphism& phi);
HypElement evaluate_word(int n, std::span<const Generator> word);

// ---------------------------------------------------------------------------
// IF(as)

class IFasMorphism {
 public:
  IFasMorphism() = default;
  // Validates that the preimages partition {0..n} with each point once.
  IFasMorphism(int source, int target, const std::vector<LabeledSequence>& preimages);

  static IFasMorphism identity(int n);
  static IFasMorphism from_code(std::uint64_t code);

  [[nodiscard]] int source() const noexcept { return source_; }
  [[nodiscard]] int target() const noexcept { return target_; }
  [[nodiscard]] int source_size() const noexcept { return source_ + 1; }
  [[nodiscard]] int target_size() const noexcept { return target_ + 1; }

  [[nodiscard]] std::span<const LabeledPoint> preimage(int j) const {
    return {word_.data() + start_[j], word_.data() + start_[j + 1]};
  }
  [[nodiscard]] std::span<const LabeledPoint> word() const { return {word_.data(), word_.data() + source_size()}; }
  // Underlying set map.
  [[nodiscard]] int value(int i) const;

  [[nodiscard]] bool is_epi() const;
  [[nodiscard]] bool is_mono() const;
  [[nodiscard]] bool is_iso() const { return source_ == target_ && is_epi(); }
  [[nodiscard]] int image_size() const;
  [[nodiscard]] IFasMorphism inverse() const;  // isomorphisms only

  // Injective 64-bit code: usable as a hash key and for the on-disk cache.
  [[nodiscard]] std::uint64_t code() const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const IFasMorphism& a, const IFasMorphism& b) { return a.code() == b.code(); }
  // Lexicographic: underlying map values, then preimage orders, then labels.
  friend std::strong_ordering operator<=>(const IFasMorphism& a, const IFasMorphism& b);

 private:
  friend IFasMorphism ifas_compose(const IFasMorphism&, const IFasMorphism&);
  void set_blocks(const std::vector<int>& sizes);

  std::int8_t source_ = 0;
  std::int8_t target_ = 0;
  std::array<LabeledPoint, kMaxPoints> word_{};
  std::array<std::uint8_t, kMaxPoints + 1> start_{};
};

// f2 after f1; preimages are ordered disjoint unions of labelled sets.
IFasMorphism ifas_compose(const IFasMorphism& f2, const IFasMorphism& f1);

IFasMorphism pair_to_ifas(const DeltaHMorphism& f);
DeltaHMorphism ifas_to_pair(const IFasMorphism& f);

enum class HomVariant { kAll, kEpi };

// Complete, duplicate free and sorted by the IFasMorphism ordering. Objects
// may be -1 (the empty object of Delta H_+).
std::vector<IFasMorphism> enumerate_hom(int n, int m, HomVariant variant);

// Number of order-preserving maps [n] -> [m], binomial(n+m+1, n+1).
std::uint64_t count_delta(int n, int m);

struct EpiMonoFactorization {
  DeltaMorphism mono;
  DeltaHMorphism epi;
};
EpiMonoFactorization epi_mono_factorize(const DeltaHMorphism& f);

// Same decomposition on the canonical representation: f = mono * epi with
// mono an order-preserving injection (all labels 1) and epi surjective.
struct IFasFactorization {
  IFasMorphism mono;
  IFasMorphism epi;
};
IFasFactorization factorize(const IFasMorphism& f);

// Delta H_+ : disjoint union [n] u [m] = [n+m+1], unit the empty object.
IFasMorphism monoidal_product(const IFasMorphism& f, const IFasMorphism& h);
// Block transposition [n] u [m] -> [m] u [n].
IFasMorphism monoidal_symmetry(int n, int m);

// Order-preserving injection with the given sorted image, labels 1.
IFasMorphism monotone_injection(int target, std::span<const int> image);

// ---------------------------------------------------------------------------
// Truncated categories used to assemble complexes.

enum class CategoryKind { kDeltaH, kEpiDeltaH, kDeltaHPlus };

std::string to_string(CategoryKind kind);

using MorphismId = std::uint32_t;

// Objects 0..N (and -1 for Delta H_+). Morphisms are numbered consecutively
// by (source, target) and, within a hom-set, by the enumeration order.
class TruncatedCategory {
 public:
  TruncatedCategory(CategoryKind kind, int max_object);
  // Rebuilds from a previously enumerated list (the on-disk cache).
  TruncatedCategory(CategoryKind kind, int max_object, const std::vector<std::uint64_t>& codes);

  [[nodiscard]] CategoryKind kind() const noexcept { return kind_; }
  [[nodiscard]] int max_object() const noexcept { return max_object_; }
  [[nodiscard]] int min_object() const noexcept { return kind_ == CategoryKind::kDeltaHPlus ? -1 : 0; }
  [[nodiscard]] std::vector<int> objects() const;
  [[nodiscard]] int object_count() const noexcept { return max_object_ - min_object() + 1; }

  [[nodiscard]] std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  [[nodiscard]] const IFasMorphism& morphism(MorphismId id) const { return morphisms_[id]; }
  [[nodiscard]] MorphismId id_of(const IFasMorphism& f) const;
  [[nodiscard]] bool contains(const IFasMorphism& f) const;

  // Ids of Hom(x, y), contiguous.
  [[nodiscard]] MorphismId hom_begin(int x, int y) const { return hom_start_[pair_index(x, y)]; }
  [[nodiscard]] std::uint32_t hom_size(int x, int y) const {
    return hom_start_[pair_index(x, y) + 1] - hom_start_[pair_index(x, y)];
  }
  [[nodiscard]] MorphismId identity(int x) const;
  [[nodiscard]] MorphismId compose(MorphismId f2, MorphismId f1) const;

  [[nodiscard]] std::vector<std::uint64_t> codes() const;

 private:
  [[nodiscard]] std::size_t pair_index(int x, int y) const {
    return static_cast<std::size_t>(x - min_object()) * object_count() + (y - min_object());
  }
  void index();

  CategoryKind kind_;
  int max_object_;
  std::vector<IFasMorphism> morphisms_;
  std::vector<MorphismId> hom_start_;
  std::unordered_map<std::uint64_t, MorphismId> lookup_;
};

}  // namespace hyperoct
