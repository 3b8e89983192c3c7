#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mg2/prime_field.hpp"

namespace mg2 {

// Dense univariate polynomial over GF(p), coefficients stored lowest degree
// first with no trailing zeros (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly() : p_(0) {}
  explicit Poly(std::uint32_t p) : p_(p) {}
  Poly(std::uint32_t p, std::vector<std::uint32_t> coeffs)
      : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
  }

  static Poly constant(std::uint32_t p, std::uint32_t v) {
    return Poly(p, {v});
  }
  static Poly t_power(std::uint32_t p, std::size_t k, std::uint32_t coeff = 1) {
    std::vector<std::uint32_t> c(k + 1, 0);
    c[k] = coeff;
    return Poly(p, std::move(c));
  }

  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint32_t coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : 0;
  }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      std::uint32_t s = a.coeff(i) + b.coeff(i);
      if (s >= a.p_) s -= a.p_;
      r.c_[i] = s;
    }
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.p_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      std::uint32_t av = a.coeff(i), bv = b.coeff(i);
      r.c_[i] = av >= bv ? av - bv : av + a.p_ - bv;
    }
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.p_);
    Poly r(a.p_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        r.c_[i + j] = static_cast<std::uint32_t>(
            (r.c_[i + j] + std::uint64_t(a.c_[i]) * b.c_[j]) % a.p_);
      }
    }
    r.trim();
    return r;
  }

  Poly scaled(std::uint32_t s) const {
    Poly r(p_);
    s %= p_;
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& x : r.c_)
      x = static_cast<std::uint32_t>((std::uint64_t(x) * s) % p_);
    return r;
  }

  // Quotient and remainder; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    a.check(b);
    if (b.is_zero()) throw DivideByZeroError();
    Poly rem = a;
    Poly quot(a.p_);
    if (rem.degree() >= b.degree())
      quot.c_.assign(rem.degree() - b.degree() + 1, 0);
    std::uint32_t lead_inv = Fp::raw(b.leading(), a.p_).inverse().value();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      std::size_t shift = rem.degree() - b.degree();
      std::uint32_t factor = static_cast<std::uint32_t>(
          (std::uint64_t(rem.leading()) * lead_inv) % a.p_);
      quot.c_[shift] = factor;
      for (std::size_t i = 0; i < b.c_.size(); ++i) {
        std::uint32_t sub = static_cast<std::uint32_t>(
            (std::uint64_t(b.c_[i]) * factor) % a.p_);
        std::uint32_t& dst = rem.c_[i + shift];
        dst = dst >= sub ? dst - sub : dst + a.p_ - sub;
      }
      rem.trim();
    }
    quot.trim();
    return {quot, rem};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    std::uint32_t inv = Fp::raw(leading(), p_).inverse().value();
    return scaled(inv);
  }

  static Poly gcd(Poly a, Poly b) {
    a.check(b);
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Ascending rendering: "c0 + c1*t + c2*t^2 + ...".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += " + ";
      if (k == 0) {
        s += std::to_string(c_[k]);
      } else {
        if (c_[k] != 1) s += std::to_string(c_[k]) + "*";
        s += "t";
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void check(const Poly& o) const {
    if (p_ == 0 || p_ != o.p_) throw FieldMismatchError();
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::uint32_t p_;
  std::vector<std::uint32_t> c_;
};

}  // namespace mg2
