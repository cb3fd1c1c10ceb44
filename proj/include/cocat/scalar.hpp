#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "cocat/error.hpp"

namespace cocat {

/// The ground field: either the rationals or a prime field F_p, p < 2^31.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
      throw Error(ErrorKind::NotPrime, "field characteristic " + std::to_string(p) + " is not a prime below 2^31");
    }
    Field f;
    f.p_ = static_cast<std::uint32_t>(p);
    return f;
  }

  /// "Q" or "F<p>".
  static Field parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text[0] == 'F') {
      std::uint64_t p = 0;
      for (std::size_t i = 1; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9' || p > (std::uint64_t{1} << 32)) {
          throw Error(ErrorKind::ParseError, "bad field '" + text + "'");
        }
        p = p * 10 + static_cast<std::uint64_t>(text[i] - '0');
      }
      return prime(p);
    }
    throw Error(ErrorKind::ParseError, "bad field '" + text + "'");
  }

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

  friend bool operator==(Field, Field) = default;

  static constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

 private:
  std::uint32_t p_ = 0;
};

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in [0, p).
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(Field field, long value) : field_(field) {
    if (field.is_rational()) {
      value_ = mpq_class(value);
    } else {
      long p = static_cast<long>(field.characteristic());
      long r = value % p;
      value_ = static_cast<std::uint64_t>(r < 0 ? r + p : r);
    }
  }
  Scalar(Field field, long num, long den) : Scalar(Scalar(field, num) / Scalar(field, den)) {}

  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }

  /// Parses "n", "-n", "n/d" over Q or a decimal residue over F_p (any
  /// integer is accepted and reduced).
  static Scalar parse(Field field, const std::string& text) {
    auto bad = [&] { return Error(ErrorKind::ParseError, "bad scalar '" + text + "' over " + field.name()); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto digits_ok = [](const std::string& s) {
      std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
      if (start == s.size()) return false;
      for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
      }
      return true;
    };
    if (field.is_rational()) {
      std::string num = text.substr(0, slash);
      std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
      if (!digits_ok(num) || !digits_ok(den) || den[0] == '-') throw bad();
      mpz_class n(num, 10), d(den, 10);
      if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
      Scalar s;
      s.field_ = field;
      mpq_class q(n, d);
      q.canonicalize();
      s.value_ = q;
      return s;
    }
    if (slash != std::string::npos || !digits_ok(text)) throw bad();
    mpz_class n(text, 10);
    mpz_class r = n % static_cast<unsigned long>(field.characteristic());
    if (r < 0) r += field.characteristic();
    Scalar s;
    s.field_ = field;
    s.value_ = static_cast<std::uint64_t>(r.get_ui());
    return s;
  }

  Field field() const { return field_; }

  bool is_zero() const {
    if (field_.is_rational()) return sgn(std::get<mpq_class>(value_)) == 0;
    return std::get<std::uint64_t>(value_) == 0;
  }
  bool is_one() const {
    if (field_.is_rational()) return std::get<mpq_class>(value_) == 1;
    return std::get<std::uint64_t>(value_) == 1;
  }

  /// Canonical text: "n" or "n/d" over Q, the residue over F_p.
  std::string to_string() const {
    if (field_.is_rational()) return std::get<mpq_class>(value_).get_str();
    return std::to_string(std::get<std::uint64_t>(value_));
  }

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    Scalar s;
    s.field_ = field_;
    if (field_.is_rational()) {
      s.value_ = mpq_class(1 / std::get<mpq_class>(value_));
    } else {
      s.value_ = pow_mod(std::get<std::uint64_t>(value_), field_.characteristic() - 2, field_.characteristic());
    }
    return s;
  }

  Scalar operator-() const {
    Scalar s;
    s.field_ = field_;
    if (field_.is_rational()) {
      s.value_ = mpq_class(-std::get<mpq_class>(value_));
    } else {
      auto v = std::get<std::uint64_t>(value_);
      s.value_ = v == 0 ? 0 : field_.characteristic() - v;
    }
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (field_.is_rational()) {
      std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
    } else {
      auto& v = std::get<std::uint64_t>(value_);
      v = (v + std::get<std::uint64_t>(o.value_)) % field_.characteristic();
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (field_.is_rational()) {
      std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
    } else {
      auto& v = std::get<std::uint64_t>(value_);
      v = (v * std::get<std::uint64_t>(o.value_)) % field_.characteristic();
    }
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    check(o);
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// a += b * c without temporaries on the hot path.
  void add_product(const Scalar& b, const Scalar& c) {
    if (field_.is_rational()) {
      check(b);
      check(c);
      mpq_class t = std::get<mpq_class>(b.value_) * std::get<mpq_class>(c.value_);
      std::get<mpq_class>(value_) += t;
    } else {
      check(b);
      check(c);
      auto p = field_.characteristic();
      auto& v = std::get<std::uint64_t>(value_);
      v = (v + std::get<std::uint64_t>(b.value_) * std::get<std::uint64_t>(c.value_)) % p;
    }
  }

 private:
  void check(const Scalar& o) const {
    if (!(field_ == o.field_)) {
      throw Error(ErrorKind::FieldMismatch, "operands over " + field_.name() + " and " + o.field_.name());
    }
  }

  static std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1;
    base %= mod;
    while (exp > 0) {
      if (exp & 1) result = result * base % mod;
      base = base * base % mod;
      exp >>= 1;
    }
    return result;
  }

  Field field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

}  // namespace cocat
