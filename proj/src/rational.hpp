#pragma once

// Exact rational scalar with an inline 64-bit fast path. Values that do not
// fit a reduced int64 fraction are promoted to GMP and demoted again as soon
// as they fit. Every assembled matrix in the library uses this type.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace hyperoct {

class Rational {
 public:
  Rational() noexcept = default;
  Rational(std::int64_t n) noexcept : num_(n) {}  // NOLINT: implicit from integers
  Rational(int n) noexcept : num_(n) {}           // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q);
  explicit Rational(const mpz_class& z) : Rational(mpq_class(z)) {}

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] int sign() const;

  [[nodiscard]] mpq_class to_mpq() const;
  [[nodiscard]] mpz_class numerator() const;
  [[nodiscard]] mpz_class denominator() const;
  [[nodiscard]] std::string str() const;

  // Residue modulo a prime p. Throws std::domain_error when p divides the
  // denominator.
  [[nodiscard]] std::uint32_t mod(std::uint32_t p) const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void assign(const mpq_class& q);
  void assign128(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;            // > 0 whenever big_ is null
  std::unique_ptr<mpq_class> big_;  // set only when the value exceeds int64
};

}  // namespace hyperoct
