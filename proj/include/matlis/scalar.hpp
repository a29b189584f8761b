#pragma once

// Exact coefficient fields: the rationals (GMP backed) and prime fields F_p.
// Both scalar types plug into Eigen through NumTraits so that dense
// Eigen::Matrix<Scalar, Dynamic, Dynamic> works for storage and products.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include <Eigen/Core>

#include "matlis/error.hpp"

namespace matlis {

class Rational;
class Fp;

/// The field Q.
struct RationalField {
  using Scalar = Rational;

  Scalar make(std::int64_t num, std::int64_t den = 1) const;
  std::string name() const { return "Q"; }
  bool is_finite() const { return false; }
  std::uint32_t characteristic() const { return 0; }
  bool operator==(const RationalField&) const = default;
};

/// The prime field F_p, p < 2^31.
struct PrimeField {
  using Scalar = Fp;

  std::uint32_t p = 2;

  Scalar make(std::int64_t num, std::int64_t den = 1) const;
  Scalar element(std::uint32_t residue) const;
  std::string name() const { return "Fp:" + std::to_string(p); }
  bool is_finite() const { return true; }
  std::uint32_t characteristic() const { return p; }
  bool operator==(const PrimeField&) const = default;
};

class Rational {
 public:
  using Field = RationalField;

  Rational() = default;
  Rational(int v) : q_(v) {}  // NOLINT: Eigen builds literals via Scalar(0), Scalar(1)
  Rational(long v) : q_(v) {}  // NOLINT
  Rational(long long v) : q_(static_cast<long>(v)) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den)
      : q_(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den == 0 ? 1 : den))) {
    if (den == 0) throw Error(Errc::DomainError, "rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Errc::DomainError, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  Rational inverse() const { return Rational(1) / *this; }

  /// "n" or "n/d" in lowest terms.
  std::string str() const { return q_.get_str(); }
  std::string numerator_str() const { return q_.get_num().get_str(); }
  std::string denominator_str() const { return q_.get_den().get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

// An element of F_p. The modulus travels with the value; modulus 0 marks an
// unbound integer literal (what Eigen produces for Zero()/Identity()) that
// adopts the modulus of the first bound operand it meets.
class Fp {
 public:
  using Field = PrimeField;

  Fp() = default;
  Fp(int v) : v_(v) {}  // NOLINT
  Fp(long v) : v_(v) {}  // NOLINT
  Fp(long long v) : v_(v) {}  // NOLINT
  Fp(std::int64_t v, std::uint32_t p) : v_(v), p_(p) { normalize(); }

  std::uint32_t modulus() const { return p_; }
  std::int64_t residue() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fp& operator+=(const Fp& o) { bind(o); v_ += o.reduced(p_); normalize(); return *this; }
  Fp& operator-=(const Fp& o) { bind(o); v_ -= o.reduced(p_); normalize(); return *this; }
  Fp& operator*=(const Fp& o) {
    bind(o);
    v_ = v_ * o.reduced(p_);
    normalize();
    return *this;
  }
  Fp& operator/=(const Fp& o) {
    bind(o);
    if (o.reduced(p_) == 0) throw Error(Errc::DomainError, "division by zero in F_p");
    if (p_ == 0) {
      if (v_ % o.v_ != 0) throw Error(Errc::DomainError, "unbound F_p literal division");
      v_ /= o.v_;
      return *this;
    }
    return *this *= o.bound(p_).inverse();
  }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return Fp(0) - a; }
  friend bool operator==(const Fp& a, const Fp& b) {
    const std::uint32_t p = a.p_ ? a.p_ : b.p_;
    return a.reduced(p) == b.reduced(p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp inverse() const {
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) return *this;
      throw Error(Errc::DomainError, "inverse of unbound F_p literal");
    }
    if (v_ == 0) throw Error(Errc::DomainError, "division by zero in F_p");
    // Fermat: a^(p-2)
    std::int64_t result = 1;
    std::int64_t base = v_;
    std::uint64_t e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return Fp(result, p_);
  }

  std::string str() const { return std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.str(); }

 private:
  void normalize() {
    if (p_) {
      v_ %= static_cast<std::int64_t>(p_);
      if (v_ < 0) v_ += p_;
    }
  }
  void bind(const Fp& o) {
    if (p_ == 0 && o.p_ != 0) {
      p_ = o.p_;
      normalize();
    } else if (p_ != 0 && o.p_ != 0 && p_ != o.p_) {
      throw Error(Errc::DomainError, "mixing F_p elements of different characteristic");
    }
  }
  std::int64_t reduced(std::uint32_t p) const {
    if (p == 0 || p == p_) return v_;
    std::int64_t r = v_ % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
  }
  Fp bound(std::uint32_t p) const { return Fp(reduced(p), p); }

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline Rational RationalField::make(std::int64_t num, std::int64_t den) const {
  return Rational(num, den);
}

inline Fp PrimeField::make(std::int64_t num, std::int64_t den) const {
  if (den == 1) return Fp(num, p);
  const Fp d(den, p);
  if (d.is_zero()) throw Error(Errc::DomainError, "denominator divisible by the characteristic");
  return Fp(num, p) / d;
}

inline Fp PrimeField::element(std::uint32_t residue) const { return Fp(residue, p); }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

template <typename Scalar>
bool is_zero(const Scalar& s) {
  return s.is_zero();
}

}  // namespace matlis

namespace Eigen {

template <>
struct NumTraits<matlis::Rational> : GenericNumTraits<matlis::Rational> {
  using Real = matlis::Rational;
  using NonInteger = matlis::Rational;
  using Nested = matlis::Rational;
  using Literal = matlis::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<matlis::Fp> : GenericNumTraits<matlis::Fp> {
  using Real = matlis::Fp;
  using NonInteger = matlis::Fp;
  using Nested = matlis::Fp;
  using Literal = matlis::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 3
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
