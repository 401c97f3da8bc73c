#include "job.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <unistd.h>

#include "catsuite.hpp"
#include "slominska.hpp"

namespace hyperoct {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& field, std::string what) {
  if (what.rfind("algebra: ", 0) == 0) what.erase(0, 9);
  throw SchemaError(field + ": " + what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rational parse_scalar(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
    const auto den = v[1].get<std::int64_t>();
    if (den == 0) schema(field, "zero denominator");
    return Rational(v[0].get<std::int64_t>(), den);
  }
  schema(field, "expected an integer or a [numerator, denominator] pair");
}

Vector parse_vector(const json& v, std::size_t d, const std::string& field) {
  if (!v.is_array() || v.size() != d) schema(field, "expected " + std::to_string(d) + " scalars");
  Vector out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(parse_scalar(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json big_integer(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json torsion_json(const std::vector<std::vector<mpz_class>>& t) {
  json out = json::array();
  for (const auto& degree : t) {
    json d = json::array();
    for (const auto& a : degree) d.push_back(big_integer(a));
    out.push_back(std::move(d));
  }
  return out;
}

CategoryKind kind_for(Pipeline p) {
  switch (p) {
    case Pipeline::kEpi:
      return CategoryKind::kEpiDeltaH;
    case Pipeline::kExtended:
      return CategoryKind::kDeltaHPlus;
    default:
      return CategoryKind::kDeltaH;
  }
}

// ---------------------------------------------------------------------------
// Cache

class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  [[nodiscard]] bool enabled() const { return !dir_.empty(); }

  std::unique_ptr<TruncatedCategory> load_category(CategoryKind kind, int n) const {
    const std::string key = "hom|" + to_string(kind) + "|" + std::to_string(n);
    std::ifstream in(path("hom", key));
    if (!in || !header_ok(in, key)) return nullptr;
    std::size_t count = 0;
    if (!(in >> count)) return nullptr;
    std::vector<std::uint64_t> codes(count);
    for (auto& c : codes)
      if (!(in >> c)) return nullptr;
    try {
      return std::make_unique<TruncatedCategory>(kind, n, codes);
    } catch (const std::exception&) {
      return nullptr;
    }
  }

  void store_category(const TruncatedCategory& c) const {
    const std::string key = "hom|" + to_string(c.kind()) + "|" + std::to_string(c.max_object());
    std::ostringstream os;
    os << "hyperoct-cache 1\n" << key << '\n';
    const auto codes = c.codes();
    os << codes.size() << '\n';
    for (auto x : codes) os << x << '\n';
    write_atomic(path("hom", key), os.str());
  }

  // Returns the number of matrices preloaded.
  std::size_t load_evaluations(const std::string& key, const TruncatedCategory& c, const BarFunctor& bar) const {
    std::ifstream in(path("eval", key));
    if (!in || !header_ok(in, key)) return 0;
    std::string line;
    std::size_t loaded = 0;
    std::map<std::uint64_t, SparseMatrix> staged;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string tag;
      std::uint64_t index = 0, rows = 0, cols = 0;
      if (!(ls >> tag >> index >> rows >> cols) || tag != "m" || index >= c.morphism_count()) return 0;
      SparseMatrix m(rows, 0);
      for (std::uint64_t k = 0; k < cols; ++k) {
        if (!std::getline(in, line)) return 0;
        std::istringstream cs(line);
        SparseVector v;
        std::uint32_t r = 0;
        std::string value;
        while (cs >> r >> value) v.push_back({r, Rational(mpq_class(value))});
        m.push_column(v);
      }
      staged.emplace(index, std::move(m));
    }
    for (auto& [index, m] : staged) {
      bar.preload(c.morphism(static_cast<MorphismId>(index)).code(), std::move(m));
      ++loaded;
    }
    return loaded;
  }

  void store_evaluations(const std::string& key, const TruncatedCategory& c, const BarFunctor& bar) const {
    std::ostringstream os;
    os << "hyperoct-cache 1\n" << key << '\n';
    for (MorphismId f = 0; f < c.morphism_count(); ++f) {
      const SparseMatrix* m = bar.memoized(c.morphism(f).code());
      if (!m) continue;
      os << "m " << f << ' ' << m->rows() << ' ' << m->cols() << '\n';
      for (std::size_t col = 0; col < m->cols(); ++col) {
        bool first = true;
        for (const auto& e : m->column(col)) {
          os << (first ? "" : " ") << e.row << ' ' << e.value.str();
          first = false;
        }
        os << '\n';
      }
    }
    write_atomic(path("eval", key), os.str());
  }

 private:
  [[nodiscard]] std::string path(const std::string& prefix, const std::string& key) const {
    return (std::filesystem::path(dir_) / (prefix + "-" + fnv_hex(key) + ".txt")).string();
  }
  static bool header_ok(std::istream& in, const std::string& key) {
    std::string magic, k;
    std::getline(in, magic);
    std::getline(in, k);
    return magic == "hyperoct-cache 1" && k == key;
  }
  static void write_atomic(const std::string& target, const std::string& content) {
    const std::string tmp = target + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out) throw std::runtime_error("cache: cannot write " + tmp);
    }
    std::filesystem::rename(tmp, target);
  }

  std::string dir_;
};

// ---------------------------------------------------------------------------
// Matrix checks

SparseMatrix shift_rows(const SparseMatrix& m, std::size_t rows, std::uint32_t shift) {
  SparseMatrix out(rows, 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    SparseVector v = m.column_vector(c);
    for (auto& e : v) e.row += shift;
    out.push_column(v);
  }
  return out;
}

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
    if (col.size() != 1 || !col[0].value.is_one() || seen[col[0].row]) return false;
    seen[col[0].row] = true;
  }
  return true;
}

// d h + h d = id - g in degrees 0..h.size()-1 (g per degree, or nullptr for 0).
bool homotopy_identity(const ChainComplex& c, const std::vector<SparseMatrix>& h,
                       const std::function<SparseMatrix(int)>& rhs) {
  for (std::size_t n = 0; n < h.size(); ++n) {
    SparseMatrix lhs = c.d[n + 1] * h[n];
    if (n >= 1) lhs = lhs + h[n - 1] * c.d[n];
    if (!(lhs == rhs(static_cast<int>(n)))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Runner

struct Outcome {
  HomologyResult homology;
  std::vector<std::uint64_t> sizes;
  std::optional<HomologyResult> coefficient_homology;
  std::map<std::string, std::string> verifications;
  double assembly = 0;
  double homology_seconds = 0;
  double verification = 0;
};

class Runner {
 public:
  explicit Runner(const JobSpec& spec)
      : spec_(spec),
        ring_(parse_ring(spec.ring)),
        algebra_(job_algebra(spec)),
        cache_(spec.cache_dir),
        full_bar_(algebra_, BarVariant::kFull),
        extended_bar_(algebra_, BarVariant::kExtended) {
    if (spec.coefficients) coefficients_ = Coefficients::parse(*spec.coefficients);
  }

  Report run();

 private:
  const TruncatedCategory& category(CategoryKind kind, int n);
  const InvolutiveAlgebra& adapted();
  const BarFunctor& adapted_full();
  const BarFunctor& ideal();
  void load_evaluations(const BarFunctor& bar, const std::string& tag, const TruncatedCategory& c);
  void save_evaluations();

  Outcome run_one(Pipeline p, int n);
  HomologyResult compute_homology(const ChainComplex& c, Outcome& out);
  void check_d2(const ChainComplex& c, const std::string& name, Outcome& out) const;
  void verify_uct(const ChainComplex& c, Outcome& out) const;

  const JobSpec& spec_;
  Ring ring_;
  InvolutiveAlgebra algebra_;
  std::optional<InvolutiveAlgebra> adapted_;
  std::optional<Coefficients> coefficients_;
  Cache cache_;
  BarFunctor full_bar_;
  BarFunctor extended_bar_;
  std::unique_ptr<BarFunctor> adapted_full_;
  std::unique_ptr<BarFunctor> ideal_;
  std::map<std::pair<int, int>, std::unique_ptr<TruncatedCategory>> categories_;
  struct EvalUse {
    const BarFunctor* bar;
    std::string key;
    const TruncatedCategory* category;
  };
  std::map<std::string, EvalUse> eval_uses_;
};

const TruncatedCategory& Runner::category(CategoryKind kind, int n) {
  auto& slot = categories_[{static_cast<int>(kind), n}];
  if (!slot) {
    if (cache_.enabled()) slot = cache_.load_category(kind, n);
    if (!slot) {
      slot = std::make_unique<TruncatedCategory>(kind, n);
      if (cache_.enabled()) cache_.store_category(*slot);
    }
  }
  return *slot;
}

const InvolutiveAlgebra& Runner::adapted() {
  if (!adapted_) {
    try {
      adapted_ = adapt_basis_to_augmentation(algebra_);
    } catch (const std::invalid_argument& e) {
      schema("algebra.augmentation", e.what());
    }
  }
  return *adapted_;
}

const BarFunctor& Runner::adapted_full() {
  if (!adapted_full_) adapted_full_ = std::make_unique<BarFunctor>(adapted(), BarVariant::kFull);
  return *adapted_full_;
}

const BarFunctor& Runner::ideal() {
  if (!ideal_) ideal_ = std::make_unique<BarFunctor>(adapted(), BarVariant::kIdeal);
  return *ideal_;
}

void Runner::load_evaluations(const BarFunctor& bar, const std::string& tag, const TruncatedCategory& c) {
  if (!cache_.enabled()) return;
  const std::string key =
      "eval|" + bar.algebra().fingerprint() + "|" + tag + "|" + to_string(c.kind()) + "|" + std::to_string(c.max_object());
  if (eval_uses_.count(key)) return;
  cache_.load_evaluations(key, c, bar);
  eval_uses_.emplace(key, EvalUse{&bar, key, &c});
}

void Runner::save_evaluations() {
  for (const auto& [key, use] : eval_uses_) cache_.store_evaluations(key, *use.category, *use.bar);
}

HomologyResult Runner::compute_homology(const ChainComplex& c, Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  auto h = homology(c, ring_);
  if (coefficients_) out.coefficient_homology = homology(tensor_with_coefficients(c, *coefficients_), ring_);
  out.homology_seconds += seconds_since(t0);
  return h;
}

void Runner::check_d2(const ChainComplex& c, const std::string& name, Outcome& out) const {
  out.verifications[name] = c.first_nonzero_square() == -1 ? "pass" : "fail";
}

void Runner::verify_uct(const ChainComplex& c, Outcome& out) const {
  if (!coefficients_ || ring_.kind != Ring::kIntegers) return;
  for (auto m : coefficients_->torsion) {
    const std::string name = "uct_z/" + std::to_string(m);
    if (!is_prime(m)) {
      out.verifications[name] = "skipped";
      continue;
    }
    bool ok = true;
    for (const auto& u : uct_check(c, static_cast<std::uint32_t>(m))) ok = ok && u.holds();
    out.verifications[name] = ok ? "pass" : "fail";
  }
}

Outcome Runner::run_one(Pipeline p, int n) {
  Outcome out;
  const int top = spec_.max_degree + 1;
  const std::uint64_t cap = spec_.max_generators;
  const bool verify = spec_.verify;
  auto t0 = std::chrono::steady_clock::now();

  auto assemble = [&](const GZIndex& index) {
    out.sizes.clear();
    for (int k = 0; k <= top; ++k) out.sizes.push_back(index.count(k));
    return build_gz_complex(index, cap);
  };
  auto fits = [&](const GZIndex& index) {
    for (int k = 0; k <= index.top_degree(); ++k)
      if (index.count(k) > cap) return false;
    return true;
  };
  auto same_betti = [&](const HomologyResult& a, const HomologyResult& b) {
    return a.betti == b.betti && a.torsion == b.torsion ? "pass" : "fail";
  };

  switch (p) {
    case Pipeline::kFull:
    case Pipeline::kNerve:
    case Pipeline::kExtended: {
      const bool extended = p == Pipeline::kExtended;
      const auto& cat = category(extended ? CategoryKind::kDeltaHPlus : CategoryKind::kDeltaH, n);
      const BarFunctor& bar = extended ? extended_bar_ : full_bar_;
      load_evaluations(bar, extended ? "extended" : "full", cat);
      CategoryView view(cat);
      BarModule module(view, bar);
      GZIndex gz(view, module, top);
      if (p == Pipeline::kNerve) {
        NerveQuotientModule q(view, module);
        GZIndex nerve(view, q, top);
        auto c = assemble(nerve);
        out.assembly = seconds_since(t0);
        out.homology = compute_homology(c, out);
        if (verify) {
          t0 = std::chrono::steady_clock::now();
          check_d2(c, "d_squared_zero", out);
          if (fits(gz)) {
            auto g = build_gz_complex(gz, cap);
            auto iso = gz_nerve_iso(nerve, q, gz);
            out.verifications["iso_chain_map"] = first_noncommuting_degree(c, g, iso) == -1 ? "pass" : "fail";
            bool bijective = true;
            for (int k = 0; k <= top; ++k)
              bijective = bijective && nerve.count(k) == gz.count(k) &&
                          rank_rational(iso.f[static_cast<std::size_t>(k)]) == gz.count(k);
            out.verifications["iso_bijective"] = bijective ? "pass" : "fail";
            out.verifications["equals_full"] = same_betti(out.homology, homology(g, ring_));
          } else {
            out.verifications["iso_chain_map"] = out.verifications["iso_bijective"] =
                out.verifications["equals_full"] = "skipped";
          }
          out.verification = seconds_since(t0);
        }
        return out;
      }
      auto c = assemble(gz);
      out.assembly = seconds_since(t0);
      out.homology = compute_homology(c, out);
      if (verify) {
        t0 = std::chrono::steady_clock::now();
        check_d2(c, "d_squared_zero", out);
        verify_uct(c, out);
        if (extended) {
          const auto& fcat = category(CategoryKind::kDeltaH, n);
          load_evaluations(full_bar_, "full", fcat);
          CategoryView fview(fcat);
          BarModule fmodule(fview, full_bar_);
          GZIndex fgz(fview, fmodule, top);
          if (fits(fgz))
            out.verifications["equals_full"] = same_betti(out.homology, homology(build_gz_complex(fgz, cap), ring_));
          else
            out.verifications["equals_full"] = "skipped";
        }
        out.verification = seconds_since(t0);
      }
      return out;
    }

    case Pipeline::kReduced: {
      const auto& cat = category(CategoryKind::kDeltaH, n);
      const BarFunctor& bar = adapted_full();
      load_evaluations(bar, "full", cat);
      CategoryView view(cat);
      BarModule module(view, bar);
      SubModule ideal_module(view, module, ideal_part_basis(view, bar));
      GZIndex ci_index(view, ideal_module, top);
      auto ci = assemble(ci_index);
      out.assembly = seconds_since(t0);
      out.homology = compute_homology(ci, out);
      if (verify) {
        t0 = std::chrono::steady_clock::now();
        check_d2(ci, "d_squared_zero", out);
        verify_uct(ci, out);
        SubModule unit_module(view, module, unit_part_basis(view, bar));
        GZIndex full_index(view, module, top);
        GZIndex unit_index(view, unit_module, top);
        if (fits(full_index)) {
          auto c = build_gz_complex(full_index, cap);
          auto ck = build_gz_complex(unit_index, cap);
          check_d2(c, "d_squared_zero_full", out);
          check_d2(ck, "d_squared_zero_trivial_part", out);
          bool split = true;
          std::vector<SparseMatrix> perms;
          for (int k = 0; k <= top; ++k) {
            perms.push_back(splitting_map(full_index, ci_index, ideal_module, unit_index, unit_module, k));
            split = split && is_permutation(perms.back());
          }
          for (int k = 1; k <= top && split; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            split = c.d[uk] * perms[uk] == perms[uk - 1] * block_diagonal(ci.d[uk], ck.d[uk]);
          }
          out.verifications["splitting_block_diagonal"] = split ? "pass" : "fail";
          const auto hk = homology(ck, ring_);
          bool point = hk.betti[0] == 1;
          for (std::size_t k = 1; k < hk.betti.size(); ++k) point = point && hk.betti[k] == 0;
          for (const auto& t : hk.torsion) point = point && t.empty();
          out.verifications["trivial_part_homology"] = point ? "pass" : "fail";
          const auto hc = homology(c, ring_);
          bool sum = true;
          for (std::size_t k = 0; k < hc.betti.size(); ++k)
            sum = sum && hc.betti[k] == out.homology.betti[k] + hk.betti[k];
          out.verifications["splitting_betti_sum"] = sum ? "pass" : "fail";
        } else {
          out.verifications["splitting_block_diagonal"] = out.verifications["trivial_part_homology"] =
              out.verifications["splitting_betti_sum"] = "skipped";
        }
        RepresentableModule rep(view, 0);
        GZIndex lift(view, rep, top);
        if (fits(lift)) {
          auto l = build_gz_complex(lift, cap);
          auto cone = cone_contraction(lift, top - 1);
          const bool ok = homotopy_identity(l, cone.h, [&](int k) {
            auto id = SparseMatrix::identity(lift.count(k));
            if (k > 0) return id;
            SparseMatrix eta_eps(lift.count(0), 0);
            const SparseEntry e{static_cast<std::uint32_t>(cone.unit_index), Rational(1)};
            for (std::uint64_t g = 0; g < lift.count(0); ++g) eta_eps.push_column(std::span<const SparseEntry>(&e, 1));
            return id - eta_eps;
          });
          out.verifications["cone_contraction"] = ok ? "pass" : "fail";
        } else {
          out.verifications["cone_contraction"] = "skipped";
        }
        out.verification = seconds_since(t0);
      }
      return out;
    }

    case Pipeline::kEpi: {
      const auto& cat = category(CategoryKind::kEpiDeltaH, n);
      const BarFunctor& bar = ideal();
      load_evaluations(bar, "ideal", cat);
      CategoryView view(cat);
      BarModule module(view, bar);
      GZIndex epi(view, module, top);
      auto e = assemble(epi);
      out.assembly = seconds_since(t0);
      out.homology = compute_homology(e, out);
      if (verify) {
        t0 = std::chrono::steady_clock::now();
        check_d2(e, "d_squared_zero", out);
        verify_uct(e, out);
        const auto& fcat = category(CategoryKind::kDeltaH, n);
        const BarFunctor& fbar = adapted_full();
        load_evaluations(fbar, "full", fcat);
        CategoryView fview(fcat);
        BarModule fmodule(fview, fbar);
        SubModule ideal_module(fview, fmodule, ideal_part_basis(fview, fbar));
        GZIndex ci_index(fview, ideal_module, top);
        const char* names[] = {"inclusion_chain_map", "chi_chain_map", "chi_after_inclusion", "homotopy_identity",
                               "equals_reduced"};
        if (fits(ci_index)) {
          auto ci = build_gz_complex(ci_index, cap);
          auto cmp = epi_comparison(epi, view, bar, ci_index, ideal_module, fview, fbar, top);
          out.verifications[names[0]] = first_noncommuting_degree(e, ci, cmp.inclusion) == -1 ? "pass" : "fail";
          out.verifications[names[1]] = first_noncommuting_degree(ci, e, cmp.chi) == -1 ? "pass" : "fail";
          bool retract = true;
          for (int k = 0; k <= top; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            retract = retract && cmp.chi.f[uk] * cmp.inclusion.f[uk] == SparseMatrix::identity(epi.count(k));
          }
          out.verifications[names[2]] = retract ? "pass" : "fail";
          const bool htpy = homotopy_identity(ci, cmp.homotopy, [&](int k) {
            const auto uk = static_cast<std::size_t>(k);
            return SparseMatrix::identity(ci_index.count(k)) - cmp.inclusion.f[uk] * cmp.chi.f[uk];
          });
          out.verifications[names[3]] = htpy ? "pass" : "fail";
          out.verifications[names[4]] = same_betti(out.homology, homology(ci, ring_));
        } else {
          for (auto name : names) out.verifications[name] = "skipped";
        }
        out.verification = seconds_since(t0);
      }
      return out;
    }

    case Pipeline::kSlominska: {
      S0Category s0(n);
      const BarFunctor& bar = ideal();
      CoinvariantModule module(s0, bar);
      GZIndex index(s0, module, top);
      auto c = assemble(index);
      out.assembly = seconds_since(t0);
      out.homology = compute_homology(c, out);
      if (verify) {
        t0 = std::chrono::steady_clock::now();
        check_d2(c, "d_squared_zero", out);
        std::mt19937 rng(12345);
        bool action = true, natural = true, projectors = true;
        for (int x = 0; x < s0.object_count(); ++x) {
          action = action && module.check_action(x, 200'000, rng);
          projectors = projectors && module.check_projectors(x);
        }
        for (std::uint32_t f = 0; f < s0.morphism_count(); ++f)
          natural = natural && module.check_naturality(f, 200'000, rng);
        out.verifications["group_action"] = action ? "pass" : "fail";
        out.verifications["naturality"] = natural ? "pass" : "fail";
        out.verifications["projectors"] = projectors ? "pass" : "fail";
        const auto& ecat = category(CategoryKind::kEpiDeltaH, n);
        load_evaluations(bar, "ideal", ecat);
        CategoryView eview(ecat);
        BarModule emodule(eview, bar);
        GZIndex epi(eview, emodule, top);
        if (fits(epi))
          out.verifications["equals_epi"] = same_betti(out.homology, homology(build_gz_complex(epi, cap), ring_));
        else
          out.verifications["equals_epi"] = "skipped";
        out.verification = seconds_since(t0);
      }
      return out;
    }
  }
  throw std::logic_error("unknown pipeline");
}

Report Runner::run() {
  Report report;
  const auto start = std::chrono::steady_clock::now();
  json& body = report.body;
  json params;
  params["algebra"] = spec_.algebra;
  params["algebra_fingerprint"] = algebra_.fingerprint();
  params["algebra_dim"] = algebra_.dim();
  params["ring"] = ring_.str();
  params["pipelines"] = json::array();
  for (auto p : spec_.pipelines) params["pipelines"].push_back(to_string(p));
  params["max_object"] = {spec_.min_object, spec_.max_object};
  params["max_degree"] = spec_.max_degree;
  params["coefficients"] = coefficients_ ? json(coefficients_->str()) : json(nullptr);
  params["verify"] = spec_.verify;
  params["max_generators"] = spec_.max_generators;
  params["truncation"] =
      "(N, D)-truncated: objects [0..N], chains through degree D+1; degree 0 is exact, higher degrees are truncated values";
  body["parameters"] = params;
  body["betti"] = json::object();
  body["sizes"] = json::object();
  body["verifications"] = json::object();
  if (ring_.kind == Ring::kIntegers) body["torsion"] = json::object();
  if (coefficients_) body["coefficient_homology"] = json::object();
  report.timing = json::object();

  for (auto p : spec_.pipelines) {
    const std::string pname = to_string(p);
    std::vector<std::pair<int, HomologyResult>> series;
    for (int n = spec_.min_object; n <= spec_.max_object; ++n) {
      const std::string key = std::to_string(n);
      Outcome o;
      try {
        o = run_one(p, n);
      } catch (const CapExceeded& e) {
        report.complete = false;
        json cap;
        cap["pipeline"] = pname;
        cap["max_object"] = n;
        cap["degree"] = e.degree();
        cap["generators"] = e.count();
        cap["cap"] = spec_.max_generators;
        body["cap_exceeded"].push_back(cap);
        // projected sizes for the offending truncation
        json projected = json::array();
        try {
          const int top = spec_.max_degree + 1;
          const auto kind = kind_for(p);
          if (p == Pipeline::kSlominska) {
            projected = nullptr;
          } else {
            const auto& cat = category(kind, n);
            CategoryView view(cat);
            std::vector<std::uint64_t> counts;
            if (p == Pipeline::kEpi) {
              BarModule m(view, ideal());
              counts = gz_counts(view, m, top);
            } else if (p == Pipeline::kReduced) {
              BarModule m(view, adapted_full());
              SubModule sub(view, m, ideal_part_basis(view, adapted_full()));
              counts = gz_counts(view, sub, top);
            } else {
              BarModule m(view, p == Pipeline::kExtended ? extended_bar_ : full_bar_);
              counts = gz_counts(view, m, top);
            }
            projected = counts;
          }
        } catch (const std::exception&) {
          projected = nullptr;
        }
        body["sizes"][pname][key] = projected;
        if (spec_.verify) body["verifications"][pname + "[N=" + key + "]"] = "skipped";
        break;
      }
      body["betti"][pname][key] = o.homology.betti;
      if (ring_.kind == Ring::kIntegers) body["torsion"][pname][key] = torsion_json(o.homology.torsion);
      if (o.coefficient_homology) {
        json ch;
        ch["module"] = coefficients_->str();
        ch["betti"] = o.coefficient_homology->betti;
        ch["torsion"] = torsion_json(o.coefficient_homology->torsion);
        body["coefficient_homology"][pname][key] = ch;
      }
      body["sizes"][pname][key] = o.sizes;
      for (const auto& [name, result] : o.verifications) {
        body["verifications"][pname + "[N=" + key + "]." + name] = result;
        if (result == "fail") report.verifications_passed = false;
      }
      json t;
      t["assembly_s"] = o.assembly;
      t["homology_s"] = o.homology_seconds;
      if (spec_.verify) t["verification_s"] = o.verification;
      report.timing[pname][key] = t;
      series.emplace_back(n, std::move(o.homology));
    }
    // Stabilization: degree d is stable from N once its value agrees at N and N+1 and stays.
    json stab = json::array();
    for (int d = 0; d <= spec_.max_degree; ++d) {
      json row;
      row["degree"] = d;
      json values = json::array();
      for (const auto& [n, h] : series) values.push_back(h.betti[static_cast<std::size_t>(d)]);
      row["betti_by_N"] = values;
      json from = nullptr;
      for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        bool stays = true;
        for (std::size_t j = i; j + 1 < series.size(); ++j) {
          const auto ud = static_cast<std::size_t>(d);
          stays = stays && series[j].second.betti[ud] == series[j + 1].second.betti[ud] &&
                  (series[j].second.torsion.empty() || series[j].second.torsion[ud] == series[j + 1].second.torsion[ud]);
        }
        if (stays) {
          from = series[i].first;
          break;
        }
      }
      row["stable_from"] = from;
      stab.push_back(row);
    }
    body["stabilization"][pname] = stab;
  }
  body["status"] = report.complete ? "complete" : "cap_exceeded";
  if (cache_.enabled()) save_evaluations();
  report.timing["total_s"] = seconds_since(start);
  return report;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::kFull:
      return "full";
    case Pipeline::kNerve:
      return "nerve";
    case Pipeline::kReduced:
      return "reduced";
    case Pipeline::kEpi:
      return "epi";
    case Pipeline::kSlominska:
      return "slominska";
    case Pipeline::kExtended:
      return "extended";
  }
  return "?";
}

Pipeline parse_pipeline(const std::string& name) {
  for (auto p : {Pipeline::kFull, Pipeline::kNerve, Pipeline::kReduced, Pipeline::kEpi, Pipeline::kSlominska,
                 Pipeline::kExtended})
    if (to_string(p) == name) return p;
  schema("pipeline", "unknown pipeline '" + name + "'");
}

Ring parse_ring(const std::string& text) {
  if (text == "q") return Ring::rationals();
  if (text == "z") return Ring::integers();
  if (text.size() >= 2 && text[0] == 'f' &&
      std::all_of(text.begin() + 1, text.end(), [](char c) { return c >= '0' && c <= '9'; }) && text.size() <= 10) {
    const auto p = std::stoull(text.substr(1));
    if (!is_prime(p) || p > 0xffffffffULL) schema("ring", "characteristic " + text.substr(1) + " is not prime");
    return Ring::prime_field(static_cast<std::uint32_t>(p));
  }
  schema("ring", "expected q, z or f<p>, got '" + text + "'");
}

void parse_object_range(const std::string& text, int& lo, int& hi) {
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 2)
      schema("max_object", "expected N or N1..N2, got '" + text + "'");
    return std::stoi(s);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    lo = hi = number(text);
  } else {
    lo = number(text.substr(0, dots));
    hi = number(text.substr(dots + 2));
  }
  if (lo > hi) schema("max_object", "empty range '" + text + "'");
  if (hi > kMaxObject) schema("max_object", "at most " + std::to_string(kMaxObject));
}

InvolutiveAlgebra parse_algebra(const json& spec, Ring ring) {
  if (!spec.is_object()) schema("algebra", "expected a JSON object");
  if (!spec.contains("dim") || !spec["dim"].is_number_integer()) schema("algebra.dim", "missing or not an integer");
  const auto dim = spec["dim"].get<std::int64_t>();
  if (dim < 1 || dim > 64) schema("algebra.dim", "must be between 1 and 64");
  const auto d = static_cast<std::size_t>(dim);

  std::vector<std::string> basis;
  if (spec.contains("basis")) {
    const auto& b = spec["basis"];
    if (!b.is_array() || b.size() != d) schema("algebra.basis", "expected " + std::to_string(d) + " names");
    for (const auto& name : b) {
      if (!name.is_string()) schema("algebra.basis", "names must be strings");
      basis.push_back(name.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) basis.push_back("b" + std::to_string(i));
  }

  if (!spec.contains("structure") || !spec["structure"].is_array()) schema("algebra.structure", "missing list");
  std::vector<Rational> structure(d * d * d, Rational(0));
  std::vector<bool> seen(d * d * d, false);
  for (std::size_t e = 0; e < spec["structure"].size(); ++e) {
    const auto& t = spec["structure"][e];
    const std::string field = "algebra.structure[" + std::to_string(e) + "]";
    if (!t.is_array() || (t.size() != 5 && t.size() != 4)) schema(field, "expected [i, j, k, num, den]");
    std::size_t idx[3];
    for (int q = 0; q < 3; ++q) {
      if (!t[q].is_number_integer() || t[q].get<std::int64_t>() < 0 || t[q].get<std::int64_t>() >= dim)
        schema(field, "index out of range");
      idx[q] = t[q].get<std::size_t>();
    }
    const Rational v = t.size() == 5 ? parse_scalar(json::array({t[3], t[4]}), field) : parse_scalar(t[3], field);
    const std::size_t pos = (idx[0] * d + idx[1]) * d + idx[2];
    if (seen[pos]) schema(field, "repeated entry");
    seen[pos] = true;
    structure[pos] = v;
  }

  if (!spec.contains("involution")) schema("algebra.involution", "missing");
  const auto& inv = spec["involution"];
  std::vector<Rational> involution;
  if (inv.is_array() && inv.size() == d) {
    bool rows = true;
    for (const auto& r : inv) rows = rows && r.is_array() && r.size() == d;
    if (rows)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          involution.push_back(
              parse_scalar(inv[r][c], "algebra.involution[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
  }
  if (involution.empty()) {
    if (!inv.is_array() || inv.size() != d * d) schema("algebra.involution", "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    for (std::size_t i = 0; i < d * d; ++i)
      involution.push_back(parse_scalar(inv[i], "algebra.involution[" + std::to_string(i) + "]"));
  }

  if (!spec.contains("unit")) schema("algebra.unit", "missing");
  Vector unit = parse_vector(spec["unit"], d, "algebra.unit");
  std::optional<Vector> augmentation;
  if (spec.contains("augmentation") && !spec["augmentation"].is_null())
    augmentation = parse_vector(spec["augmentation"], d, "algebra.augmentation");
  try {
    return InvolutiveAlgebra(basis, structure, involution, unit, augmentation, ring);
  } catch (const std::invalid_argument& e) {
    schema("algebra", e.what());
  }
}

InvolutiveAlgebra job_algebra(const JobSpec& spec) {
  const Ring ring = parse_ring(spec.ring);
  if (spec.algebra_json) return parse_algebra(*spec.algebra_json, ring);
  try {
    return builtin_algebra(spec.algebra, ring);
  } catch (const std::invalid_argument& e) {
    schema("algebra", e.what());
  }
}

std::string Report::dump(bool with_timing) const {
  json out = body;
  if (with_timing) out["timing"] = timing;
  return out.dump(2) + "\n";
}

Report run_job(const JobSpec& spec) {
  const Ring ring = parse_ring(spec.ring);
  if (spec.pipelines.empty()) schema("pipeline", "no pipeline given");
  if (spec.max_degree < 0 || spec.max_degree > 8) schema("max_degree", "must be between 0 and 8");
  if (spec.min_object < 0 || spec.max_object < spec.min_object || spec.max_object > kMaxObject)
    schema("max_object", "invalid range");
  if (spec.max_generators == 0) schema("max_generators", "must be positive");
  for (auto p : spec.pipelines) {
    if ((p == Pipeline::kSlominska || p == Pipeline::kNerve) && ring.kind != Ring::kRationals)
      schema("ring", to_string(p) + " needs ring q");
  }
  if (spec.coefficients) {
    Coefficients m;
    try {
      m = Coefficients::parse(*spec.coefficients);
    } catch (const std::invalid_argument& e) {
      schema("coefficients", e.what());
    }
    if (ring.kind != Ring::kIntegers) schema("coefficients", "coefficient modules need ring z");
  }
  Runner runner(spec);
  return runner.run();
}

json category_suite_report(int depth, bool& all_passed) {
  const auto t0 = std::chrono::steady_clock::now();
  CategorySuiteResult r;
  try {
    r = verify_category(depth);
  } catch (const std::invalid_argument& e) {
    schema("depth", e.what());
  }
  json out;
  out["depth"] = depth;
  out["checks"] = json::object();
  for (const auto& c : r.checks) out["checks"][c.name] = {{"passed", c.passed}, {"failed", c.failed}};
  all_passed = r.ok();
  out["status"] = all_passed ? "pass" : "fail";
  out["timing"] = {{"total_s", seconds_since(t0)}};
  return out;
}

}  // namespace hyperoct
