// Copyright 2026 The mprefs Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mprefs {

// Exact rational number. Values whose reduced numerator and denominator fit
// in int64 are stored inline; anything larger is promoted to a GMP rational
// and demoted again as soon as it fits.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(int value) : num_(value), den_(1) {}           // NOLINT
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    set_reduced(static_cast<__int128>(num), static_cast<__int128>(den));
  }
  explicit Rational(const mpq_class& q) { assign_big(q); }

  Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
    if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other) {
    if (this != &other) {
      num_ = other.num_;
      den_ = other.den_;
      big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "p", "-p" and "p/q".
  static Rational parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : text) {
      if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9'))) {
        throw std::invalid_argument("malformed rational literal '" +
                                    std::string(text) + "'");
      }
    }
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) {
      throw std::invalid_argument("malformed rational literal '" +
                                  std::string(text) + "'");
    }
    if (q.get_den() == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                  "'");
    }
    q.canonicalize();
    return Rational(q);
  }

  bool is_big() const { return big_ != nullptr; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num_);
    mpz_set_si(q.get_den_mpz_t(), den_);
    return q;
  }
  mpz_class numerator() const { return to_mpq().get_num(); }
  mpz_class denominator() const { return to_mpq().get_den(); }

  double to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r(*this);
    r.negate();
    return r;
  }
  void negate() {
    if (big_) {
      *big_ = -*big_;
    } else if (num_ == std::numeric_limits<std::int64_t>::min()) {
      assign_big(-to_mpq());
    } else {
      num_ = -num_;
    }
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.den_ +
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_sub_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.den_ -
                        static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_mul_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.num_,
                    static_cast<__int128>(a.den_) * b.den_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    if (!a.big_ && !b.big_) {
      Rational r;
      r.set_reduced(static_cast<__int128>(a.num_) * b.den_,
                    static_cast<__int128>(a.den_) * b.num_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    // Both operands are canonical, so small and big never hold equal values.
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
      const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    unsigned __int128 x = a < 0 ? -static_cast<unsigned __int128>(a) : a;
    unsigned __int128 y = b < 0 ? -static_cast<unsigned __int128>(b) : b;
    while (y != 0) {
      const unsigned __int128 t = x % y;
      x = y;
      y = t;
    }
    return static_cast<__int128>(x);
  }

  static bool fits(__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
  }

  static mpz_class to_mpz(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & ~0ULL));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
  }

  void set_reduced(__int128 num, __int128 den) {
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
    if (den != 1) {
      const __int128 g = gcd128(num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
    }
    if (fits(num) && fits(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
      big_.reset();
      return;
    }
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    assign_big(q);
  }

  void assign_big(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
      return;
    }
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(q);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Least common multiple of the denominators of `values`.
template <typename Range>
mpz_class common_denominator(const Range& values) {
  mpz_class l = 1;
  for (const Rational& v : values) {
    mpz_class d = v.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

}  // namespace mprefs
