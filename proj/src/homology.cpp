#include "homology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperoct {

// ---------------------------------------------------------------------------
// Complex checks

void ChainComplex::check_shapes() const {
  if (dims.empty()) throw std::logic_error("chain complex without degrees");
  if (d.size() != dims.size()) throw std::logic_error("chain complex: one boundary slot per degree expected");
  for (int n = 1; n <= top(); ++n) {
    const auto& m = d[static_cast<std::size_t>(n)];
    if (m.cols() != dims[static_cast<std::size_t>(n)] || m.rows() != dims[static_cast<std::size_t>(n) - 1])
      throw std::logic_error("chain complex: boundary in degree " + std::to_string(n) + " has the wrong shape");
  }
}

int ChainComplex::first_nonzero_square() const {
  for (int n = 2; n <= top(); ++n)
    if (!(d[static_cast<std::size_t>(n) - 1] * d[static_cast<std::size_t>(n)]).is_zero()) return n;
  return -1;
}

int first_noncommuting_degree(const ChainComplex& source, const ChainComplex& target, const ChainMap& map) {
  const int top = std::min({source.top(), target.top(), static_cast<int>(map.f.size()) - 1});
  for (int n = 1; n <= top; ++n) {
    const auto k = static_cast<std::size_t>(n);
    if (!(map.f[k - 1] * source.d[k] == target.d[k] * map.f[k])) return n;
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Sparse elimination

namespace {

struct RationalOps {
  using S = Rational;
  static bool pivot_ok(const S& a) { return !a.is_zero(); }
  static S ratio(const S& a, const S& p) { return a / p; }
  static S from(const Rational& x) { return x; }
  static bool is_zero(const S& a) { return a.is_zero(); }
  static S fms(const S& a, const S& f, const S& b) { return a - f * b; }
  static S neg_mul(const S& f, const S& b) { return -(f * b); }
};

struct ModOps {
  using S = std::uint32_t;
  std::uint32_t p;
  static bool pivot_ok(S a) { return a != 0; }
  [[nodiscard]] S inv(S a) const {
    std::uint64_t r = 1, b = a;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1U) r = r * b % p;
      b = b * b % p;
    }
    return static_cast<S>(r);
  }
  [[nodiscard]] S ratio(S a, S piv) const { return static_cast<S>(std::uint64_t{a} * inv(piv) % p); }
  [[nodiscard]] S from(const Rational& x) const { return x.mod(p); }
  static bool is_zero(S a) { return a == 0; }
  [[nodiscard]] S fms(S a, S f, S b) const {
    return static_cast<S>((std::uint64_t{a} + p - std::uint64_t{f} * b % p) % p);
  }
  [[nodiscard]] S neg_mul(S f, S b) const { return static_cast<S>((p - std::uint64_t{f} * b % p) % p); }
};

struct IntegerOps {
  using S = mpz_class;
  static bool pivot_ok(const S& a) { return a == 1 || a == -1; }
  static S ratio(const S& a, const S& p) { return a * p; }  // p is a unit
  static S from(const Rational& x) {
    if (!x.is_integer()) throw std::invalid_argument("integral elimination on a non-integral entry");
    return x.numerator();
  }
  static bool is_zero(const S& a) { return a == 0; }
  static S fms(const S& a, const S& f, const S& b) { return a - f * b; }
  static S neg_mul(const S& f, const S& b) { return -(f * b); }
};

template <class Ops>
class Eliminator {
 public:
  using S = typename Ops::S;
  struct Entry {
    std::uint32_t col;
    S v;
  };
  using Row = std::vector<Entry>;

  Eliminator(Ops ops, std::size_t ncols, std::vector<Row> rows)
      : ops_(ops), rows_(std::move(rows)), col_rows_(ncols), col_count_(ncols, 0), active_(rows_.size(), true) {
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) active_[r] = false;
      for (const auto& e : rows_[r]) {
        col_rows_[e.col].push_back(r);
        ++col_count_[e.col];
      }
    }
  }

  std::uint64_t run() {
    std::uint64_t rank = 0;
    std::vector<bool> in_queue(rows_.size(), false);
    std::set<std::pair<std::size_t, std::uint32_t>> queue;
    for (std::uint32_t r = 0; r < rows_.size(); ++r)
      if (active_[r]) {
        queue.insert({rows_[r].size(), r});
        in_queue[r] = true;
      }
    std::vector<std::uint32_t> deferred;
    while (true) {
      while (!queue.empty()) {
        const std::uint32_t r = queue.begin()->second;
        queue.erase(queue.begin());
        in_queue[r] = false;
        if (!active_[r]) continue;
        const Row& row = rows_[r];
        std::size_t best = row.size();
        for (std::size_t k = 0; k < row.size(); ++k)
          if (Ops::pivot_ok(row[k].v) && (best == row.size() || col_count_[row[k].col] < col_count_[row[best].col]))
            best = k;
        if (best == row.size()) {
          deferred.push_back(r);
          continue;
        }
        const std::uint32_t c = row[best].col;
        const S piv = row[best].v;
        std::vector<std::uint32_t> users;
        users.swap(col_rows_[c]);
        for (auto i : users) {
          if (i == r || !active_[i]) continue;
          auto it = find(rows_[i], c);
          if (it == rows_[i].end()) continue;
          const S f = ops_.ratio(it->v, piv);
          const std::size_t before = rows_[i].size();
          subtract(i, f, r);
          if (in_queue[i] && rows_[i].size() != before) {
            queue.erase({before, i});
            queue.insert({rows_[i].size(), i});
          }
          if (rows_[i].empty()) {
            active_[i] = false;
            if (in_queue[i]) queue.erase({0, i});
            in_queue[i] = false;
          }
        }
        for (const auto& e : rows_[r]) --col_count_[e.col];
        active_[r] = false;
        ++rank;
      }
      bool again = false;
      for (auto r : deferred) {
        if (!active_[r]) continue;
        for (const auto& e : rows_[r]) again = again || Ops::pivot_ok(e.v);
      }
      if (!again) break;
      for (auto r : deferred)
        if (active_[r] && !in_queue[r]) {
          queue.insert({rows_[r].size(), r});
          in_queue[r] = true;
        }
      deferred.clear();
    }
    return rank;
  }

  [[nodiscard]] std::vector<const Row*> remaining() const {
    std::vector<const Row*> out;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (active_[r] && !rows_[r].empty()) out.push_back(&rows_[r]);
    return out;
  }

 private:
  static typename Row::iterator find(Row& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::uint32_t col) { return e.col < col; });
    return (it != row.end() && it->col == c) ? it : row.end();
  }

  // rows_[i] -= f * rows_[r]
  void subtract(std::uint32_t i, const S& f, std::uint32_t r) {
    const Row& b = rows_[r];
    Row& a = rows_[i];
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t x = 0, y = 0;
    while (x < a.size() || y < b.size()) {
      if (y == b.size() || (x < a.size() && a[x].col < b[y].col)) {
        out.push_back(std::move(a[x++]));
      } else if (x == a.size() || b[y].col < a[x].col) {
        out.push_back({b[y].col, ops_.neg_mul(f, b[y].v)});
        ++col_count_[b[y].col];
        col_rows_[b[y].col].push_back(i);
        ++y;
      } else {
        S v = ops_.fms(a[x].v, f, b[y].v);
        if (Ops::is_zero(v)) {
          --col_count_[a[x].col];
        } else {
          out.push_back({a[x].col, std::move(v)});
        }
        ++x;
        ++y;
      }
    }
    a.swap(out);
  }

  Ops ops_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  std::vector<bool> active_;
};

// Matrix columns become eliminator rows; the rank and the Smith form do not
// see the transposition.
template <class Ops>
Eliminator<Ops> make_eliminator(const Ops& ops, const SparseMatrix& m) {
  using E = Eliminator<Ops>;
  std::vector<typename E::Row> rows(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto col = m.column(c);
    rows[c].reserve(col.size());
    for (const auto& e : col) {
      auto v = ops.from(e.value);
      if (!Ops::is_zero(v)) rows[c].push_back({e.row, std::move(v)});
    }
  }
  return E(ops, m.rows(), std::move(rows));
}

// Dense Smith normal form; returns the nonzero diagonal.
std::vector<mpz_class> dense_smith(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the remaining block goes to (t, t).
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        clean = clean && a[t][j] == 0;
      }
      if (clean) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

void normalize_invariants(std::vector<mpz_class>& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g = gcd(d[i], d[j]);
      mpz_class l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::sort(d.begin(), d.end());
}

}  // namespace

std::uint64_t rank_rational(const SparseMatrix& m) { return make_eliminator(RationalOps{}, m).run(); }

std::uint64_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("rank_mod_p: modulus is not prime");
  return make_eliminator(ModOps{p}, m).run();
}

SmithForm smith_form(const SparseMatrix& m) {
  auto elim = make_eliminator(IntegerOps{}, m);
  SmithForm out;
  out.rank = elim.run();
  std::vector<mpz_class> diag(out.rank, mpz_class(1));
  auto rest = elim.remaining();
  if (!rest.empty()) {
    std::map<std::uint32_t, std::size_t> col_index;
    for (const auto* row : rest)
      for (const auto& e : *row) col_index.emplace(e.col, 0);
    std::size_t k = 0;
    for (auto& [col, idx] : col_index) idx = k++;
    std::vector<std::vector<mpz_class>> dense(rest.size(), std::vector<mpz_class>(col_index.size()));
    for (std::size_t r = 0; r < rest.size(); ++r)
      for (const auto& e : *rest[r]) dense[r][col_index[e.col]] = e.v;
    auto more = dense_smith(std::move(dense));
    out.rank += more.size();
    diag.insert(diag.end(), more.begin(), more.end());
  }
  normalize_invariants(diag);
  out.invariant_factors = std::move(diag);
  return out;
}

HomologyResult homology(const ChainComplex& c, const Ring& ring) {
  c.check_shapes();
  const int top = c.top();
  HomologyResult out;
  std::vector<std::uint64_t> rank(static_cast<std::size_t>(top) + 2, 0);
  std::vector<std::vector<mpz_class>> factors(static_cast<std::size_t>(top) + 2);
  for (int n = 1; n <= top; ++n) {
    const auto& m = c.d[static_cast<std::size_t>(n)];
    switch (ring.kind) {
      case Ring::kRationals:
        rank[static_cast<std::size_t>(n)] = rank_rational(m);
        break;
      case Ring::kPrimeField:
        rank[static_cast<std::size_t>(n)] = rank_mod_p(m, ring.p);
        break;
      case Ring::kIntegers: {
        auto s = smith_form(m);
        rank[static_cast<std::size_t>(n)] = s.rank;
        for (auto& f : s.invariant_factors)
          if (f > 1) factors[static_cast<std::size_t>(n)].push_back(f);
        break;
      }
    }
  }
  for (int n = 0; n < top; ++n) {
    const auto k = static_cast<std::size_t>(n);
    out.betti.push_back(c.dims[k] - rank[k] - rank[k + 1]);
    out.torsion.push_back(factors[k + 1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficients

Coefficients Coefficients::parse(const std::string& text) {
  Coefficients out;
  out.free_rank = 0;
  std::stringstream ss(text);
  std::string part;
  bool any = false;
  while (std::getline(ss, part, '+')) {
    part.erase(std::remove_if(part.begin(), part.end(), ::isspace), part.end());
    std::transform(part.begin(), part.end(), part.begin(), ::tolower);
    if (part == "z") {
      ++out.free_rank;
    } else if (part.rfind("z/", 0) == 0) {
      std::size_t pos = 0;
      unsigned long long m = 0;
      try {
        m = std::stoull(part.substr(2), &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != part.size() - 2 || m < 2)
        throw std::invalid_argument("coefficients: bad cyclic summand '" + part + "'");
      out.torsion.push_back(m);
    } else {
      throw std::invalid_argument("coefficients: expected z or z/m, got '" + part + "'");
    }
    any = true;
  }
  if (!any) throw std::invalid_argument("coefficients: empty module");
  return out;
}

std::string Coefficients::str() const {
  std::string s;
  for (std::uint64_t i = 0; i < free_rank; ++i) s += s.empty() ? "z" : "+z";
  for (auto m : torsion) s += (s.empty() ? "z/" : "+z/") + std::to_string(m);
  return s;
}

ChainComplex multiplication_cone(const ChainComplex& c, std::uint64_t m) {
  c.check_shapes();
  // Cone_n = C_{n-1} + C_n, d(a, b) = (-d a, m a + d b).
  ChainComplex out;
  const int top = c.top();
  auto dim = [&](int n) -> std::uint64_t { return n < 0 ? 0 : c.dims[static_cast<std::size_t>(n)]; };
  for (int n = 0; n <= top; ++n) out.dims.push_back(dim(n - 1) + dim(n));
  out.d.emplace_back(0, out.dims[0]);
  const Rational scale(static_cast<std::int64_t>(m));
  for (int n = 1; n <= top; ++n) {
    const std::uint64_t lower_shift = dim(n - 2);  // offset of C_{n-1} inside Cone_{n-1}
    SparseMatrix d(out.dims[static_cast<std::size_t>(n) - 1], 0);
    for (std::uint64_t a = 0; a < dim(n - 1); ++a) {
      SparseVector col;
      if (n >= 2)
        for (const auto& e : c.d[static_cast<std::size_t>(n) - 1].column(a)) col.push_back({e.row, -e.value});
      col.push_back({static_cast<std::uint32_t>(lower_shift + a), scale});
      canonicalize(col);
      d.push_column(col);
    }
    for (std::uint64_t b = 0; b < dim(n); ++b) {
      SparseVector col;
      for (const auto& e : c.d[static_cast<std::size_t>(n)].column(b))
        col.push_back({static_cast<std::uint32_t>(lower_shift + e.row), e.value});
      d.push_column(col);
    }
    out.d.push_back(std::move(d));
  }
  return out;
}

ChainComplex tensor_with_coefficients(const ChainComplex& c, const Coefficients& m) {
  c.check_shapes();
  std::vector<ChainComplex> parts(m.free_rank, c);
  for (auto t : m.torsion) parts.push_back(multiplication_cone(c, t));
  ChainComplex out;
  const int top = c.top();
  out.dims.assign(static_cast<std::size_t>(top) + 1, 0);
  for (const auto& p : parts)
    for (int n = 0; n <= top; ++n) out.dims[static_cast<std::size_t>(n)] += p.dims[static_cast<std::size_t>(n)];
  out.d.emplace_back(0, out.dims[0]);
  for (int n = 1; n <= top; ++n) {
    const auto k = static_cast<std::size_t>(n);
    SparseMatrix d(out.dims[k - 1], 0);
    std::uint64_t row_shift = 0;
    for (const auto& p : parts) {
      for (std::size_t col = 0; col < p.d[k].cols(); ++col) {
        SparseVector v;
        for (const auto& e : p.d[k].column(col)) v.push_back({static_cast<std::uint32_t>(row_shift + e.row), e.value});
        d.push_column(v);
      }
      row_shift += p.dims[k - 1];
    }
    out.d.push_back(std::move(d));
  }
  return out;
}

std::vector<UctDegree> uct_check(const ChainComplex& c, std::uint32_t p) {
  const auto integral = homology(c, Ring::integers());
  const auto modp = homology(c, Ring::prime_field(p));
  const auto cone = homology(multiplication_cone(c, p), Ring::integers());
  auto divisible = [&](const std::vector<mpz_class>& t) {
    std::uint64_t k = 0;
    for (const auto& a : t) k += (a % p) == 0;
    return k;
  };
  std::vector<UctDegree> out;
  for (std::size_t n = 0; n < integral.betti.size(); ++n) {
    UctDegree u;
    u.degree = static_cast<int>(n);
    u.middle = modp.betti[n];
    u.tensor_part = integral.betti[n] + divisible(integral.torsion[n]);
    u.tor_part = n == 0 ? 0 : divisible(integral.torsion[n - 1]);
    u.cone = cone.betti[n] + cone.torsion[n].size();
    out.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundary solving

std::optional<SparseVector> solve_is_boundary(const ChainComplex& c, int n, const SparseVector& z) {
  c.check_shapes();
  if (n < 0 || n >= c.top()) throw std::out_of_range("solve_is_boundary: degree outside the built range");
  if (n >= 1 && !c.d[static_cast<std::size_t>(n)].apply(z).empty())
    throw std::invalid_argument("solve_is_boundary: vector is not a cycle");
  const SparseMatrix& d = c.d[static_cast<std::size_t>(n) + 1];
  struct Pivot {
    SparseVector v;
    SparseVector comb;
  };
  std::map<std::uint32_t, Pivot> pivots;
  auto reduce = [&](SparseVector& v, SparseVector& comb) {
    while (!v.empty()) {
      auto it = pivots.find(v.back().row);
      if (it == pivots.end()) return;
      const Rational f = v.back().value / it->second.v.back().value;
      v = axpy(v, -f, it->second.v);
      comb = axpy(comb, -f, it->second.comb);
    }
  };
  for (std::size_t j = 0; j < d.cols(); ++j) {
    SparseVector v = d.column_vector(j);
    SparseVector comb{{static_cast<std::uint32_t>(j), Rational(1)}};
    reduce(v, comb);
    if (!v.empty()) {
      const std::uint32_t r = v.back().row;
      pivots.emplace(r, Pivot{std::move(v), std::move(comb)});
    }
  }
  SparseVector v = z;
  SparseVector comb;
  reduce(v, comb);
  if (!v.empty()) return std::nullopt;
  // z - d(-comb) = 0
  for (auto& e : comb) e.value = -e.value;
  return comb;
}

}  // namespace hyperoct
