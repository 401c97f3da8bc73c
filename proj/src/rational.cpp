#include "rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace hyperoct {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  u128 u = abs128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits64(const mpz_class& z) { return z.fits_slong_p(); }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  assign128(num, den);
}

Rational::Rational(const mpq_class& q) { assign(q); }

void Rational::assign(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (fits64(c.get_num()) && fits64(c.get_den())) {
    num_ = c.get_num().get_si();
    den_ = c.get_den().get_si();
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(std::move(c));
  }
}

void Rational::assign128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  u128 g = gcd128(abs128(num), static_cast<u128>(den));
  num /= static_cast<i128>(g);
  den /= static_cast<i128>(g);
  if (num <= kMax64 && num >= kMin64 && den <= kMax64) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(to_mpz(num), to_mpz(den));
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const {
  return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_));
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::uint32_t Rational::mod(std::uint32_t p) const {
  auto residue = [p](const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return static_cast<std::uint64_t>(r.get_ui());
  };
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  if (big_) {
    n = residue(big_->get_num());
    d = residue(big_->get_den());
  } else {
    auto m = static_cast<std::int64_t>(p);
    n = static_cast<std::uint64_t>(((num_ % m) + m) % m);
    d = static_cast<std::uint64_t>(den_ % m);
  }
  if (d == 0) throw std::domain_error("denominator divisible by the characteristic " + std::to_string(p));
  // d^(p-2) mod p
  std::uint64_t inv = 1;
  std::uint64_t base = d;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1U) inv = inv * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(n * inv % p);
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r = 0;
      if (!__builtin_add_overflow(num_, o.num_, &r)) {
        num_ = r;
        return *this;
      }
    }
    assign128(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
              static_cast<i128>(den_) * o.den_);
    return *this;
  }
  assign(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r = 0;
      if (!__builtin_sub_overflow(num_, o.num_, &r)) {
        num_ = r;
        return *this;
      }
    }
    assign128(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
              static_cast<i128>(den_) * o.den_);
    return *this;
  }
  assign(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t r = 0;
      if (!__builtin_mul_overflow(num_, o.num_, &r)) {
        num_ = r;
        return *this;
      }
    }
    assign128(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
    return *this;
  }
  assign(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (!big_ && !o.big_) {
    assign128(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
    return *this;
  }
  assign(to_mpq() / o.to_mpq());
  return *this;
}

Rational operator-(const Rational& a) {
  if (!a.big_ && a.num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  return Rational(mpq_class(-a.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: a big value never equals a small one
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_)
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hyperoct
