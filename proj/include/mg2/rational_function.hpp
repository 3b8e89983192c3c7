#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "mg2/polynomial.hpp"

namespace mg2 {

// Element of GF(p)(t), kept as a reduced fraction: denominator monic,
// gcd(num, den) = 1, zero represented as 0/1. Equality of canonical forms is
// representational equality.
class RatF {
 public:
  RatF() = default;
  RatF(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }
  explicit RatF(Poly num)
      : num_(std::move(num)), den_(Poly::constant(num_.modulus(), 1)) {
    normalize();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::uint32_t modulus() const { return num_.modulus(); }
  bool is_zero() const { return num_.is_zero(); }

  friend RatF operator+(const RatF& a, const RatF& b) {
    return RatF(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatF operator-(const RatF& a, const RatF& b) {
    return RatF(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatF operator*(const RatF& a, const RatF& b) {
    return RatF(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatF operator/(const RatF& a, const RatF& b) {
    if (b.is_zero()) throw DivideByZeroError();
    return RatF(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatF operator-() const {
    RatF r = *this;
    r.num_ = Poly(modulus()) - r.num_;
    return r;
  }
  RatF& operator+=(const RatF& o) { return *this = *this + o; }
  RatF& operator-=(const RatF& o) { return *this = *this - o; }
  RatF& operator*=(const RatF& o) { return *this = *this * o; }
  RatF& operator/=(const RatF& o) { return *this = *this / o; }

  RatF inverse() const {
    if (is_zero()) throw DivideByZeroError();
    return RatF(den_, num_);
  }

  friend bool operator==(const RatF& a, const RatF& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatF& a, const RatF& b) { return !(a == b); }

  // "num/den" with each side parenthesized when it has several terms.
  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    auto wrap = [](const std::string& s) {
      return s.find(' ') == std::string::npos ? s : "(" + s + ")";
    };
    return wrap(num_.to_string()) + "/" + wrap(den_.to_string());
  }

 private:
  void normalize() {
    if (num_.modulus() == 0 || num_.modulus() != den_.modulus())
      throw FieldMismatchError();
    if (den_.is_zero()) throw DivideByZeroError();
    if (num_.is_zero()) {
      den_ = Poly::constant(num_.modulus(), 1);
      return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0 || g.leading() != 1) {
      num_ = Poly::divmod(num_, g).first;
      den_ = Poly::divmod(den_, g).first;
    }
    std::uint32_t lead = den_.leading();
    if (lead != 1) {
      std::uint32_t inv = Fp::raw(lead, den_.modulus()).inverse().value();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Poly num_;
  Poly den_;
};

// GF(p)(t): the univariate rational function field over GF(p).
class RatFuncField {
 public:
  using Element = RatF;

  explicit RatFuncField(std::uint32_t p) : base_(p) {}

  std::uint32_t characteristic() const { return base_.characteristic(); }
  Element zero() const {
    return RatF(Poly(characteristic()));
  }
  Element one() const {
    return RatF(Poly::constant(characteristic(), 1));
  }
  Element from_int(std::int64_t n) const {
    return RatF(Poly::constant(characteristic(), base_.from_int(n).value()));
  }
  Element t() const { return RatF(Poly::t_power(characteristic(), 1)); }
  Element from_poly(Poly p) const { return RatF(std::move(p)); }
  std::string to_string(const Element& e) const { return e.to_string(); }
  bool operator==(const RatFuncField& o) const {
    return characteristic() == o.characteristic();
  }

  static constexpr bool is_rational_function_field = true;

 private:
  PrimeField base_;
};

}  // namespace mg2
