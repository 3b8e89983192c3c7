#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mg2 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldMismatchError : Error {
  FieldMismatchError() : Error("field mismatch between operands") {}
};

struct DivideByZeroError : Error {
  DivideByZeroError() : Error("division by zero field element") {}
};

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Element of GF(p). Carries its modulus so arithmetic can reject mixed-field
// operands; value is kept canonical in [0, p).
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(std::uint32_t value, std::uint32_t p) : v_(value % p), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    a.check(b);
    std::uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp::raw(s, a.p_);
  }
  friend Fp operator-(Fp a, Fp b) {
    a.check(b);
    std::uint32_t s = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_;
    return Fp::raw(s, a.p_);
  }
  friend Fp operator*(Fp a, Fp b) {
    a.check(b);
    return Fp::raw(static_cast<std::uint32_t>(
                       (std::uint64_t(a.v_) * b.v_) % a.p_),
                   a.p_);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const {
    require_init();
    return Fp::raw(v_ == 0 ? 0 : p_ - v_, p_);
  }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }

  // Extended Euclid; uniform with the polynomial case.
  Fp inverse() const {
    require_init();
    if (v_ == 0) throw DivideByZeroError();
    std::int64_t t = 0, t1 = 1;
    std::int64_t r = p_, r1 = v_;
    while (r1 != 0) {
      std::int64_t q = r / r1;
      std::int64_t tmp = t - q * t1;
      t = t1;
      t1 = tmp;
      tmp = r - q * r1;
      r = r1;
      r1 = tmp;
    }
    if (t < 0) t += p_;
    return Fp::raw(static_cast<std::uint32_t>(t), p_);
  }

  Fp pow(std::uint64_t e) const {
    require_init();
    Fp acc = Fp::raw(1 % p_, p_);
    Fp base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp e;
    e.v_ = v;
    e.p_ = p;
    return e;
  }

 private:
  void require_init() const {
    if (p_ == 0) throw FieldMismatchError();
  }
  void check(const Fp& o) const {
    if (p_ == 0 || p_ != o.p_) throw FieldMismatchError();
  }
  std::uint32_t v_;
  std::uint32_t p_;
};

// GF(p) for a prime p < 2^16. Factory and descriptor for Fp elements.
class PrimeField {
 public:
  using Element = Fp;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw Error("not prime: " + std::to_string(p));
    if (p >= (1u << 16)) throw Error("prime exceeds supported range");
  }

  std::uint32_t characteristic() const { return p_; }
  Element zero() const { return Fp::raw(0, p_); }
  Element one() const { return Fp::raw(1 % p_, p_); }
  Element from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fp::raw(static_cast<std::uint32_t>(r), p_);
  }
  std::string to_string(const Element& e) const {
    return std::to_string(e.value());
  }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  static constexpr bool is_rational_function_field = false;

 private:
  std::uint32_t p_;
};

}  // namespace mg2
