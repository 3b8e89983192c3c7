#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include "mg2/prime_field.hpp"
#include "mg2/rational_function.hpp"

namespace mg2 {

template <class F>
concept FieldType = requires(const F f, const typename F::Element a,
                             const typename F::Element b) {
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_int(std::int64_t{}) } -> std::same_as<typename F::Element>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
  { a + b } -> std::same_as<typename F::Element>;
  { a - b } -> std::same_as<typename F::Element>;
  { a* b } -> std::same_as<typename F::Element>;
  { a / b } -> std::same_as<typename F::Element>;
  { -a } -> std::same_as<typename F::Element>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

static_assert(FieldType<PrimeField>);
static_assert(FieldType<RatFuncField>);

// Runtime field descriptor, parsed from the CLI grammar "p:<prime>" or
// "fn:<prime>" (rational function field over GF(prime)).
struct FieldSpec {
  enum class Kind { Prime, RationalFunction };
  Kind kind = Kind::Prime;
  std::uint32_t p = 2;

  static FieldSpec parse(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw Error("bad field spec '" + s + "' (expected p:<prime> or fn:<prime>)");
    std::string head = s.substr(0, colon);
    std::string tail = s.substr(colon + 1);
    FieldSpec spec;
    if (head == "p")
      spec.kind = Kind::Prime;
    else if (head == "fn")
      spec.kind = Kind::RationalFunction;
    else
      throw Error("bad field spec '" + s + "' (expected p:<prime> or fn:<prime>)");
    try {
      spec.p = static_cast<std::uint32_t>(std::stoul(tail));
    } catch (const std::exception&) {
      throw Error("bad field spec '" + s + "'");
    }
    if (!is_prime(spec.p)) throw Error("not prime: " + tail);
    return spec;
  }

  std::string str() const {
    return (kind == Kind::Prime ? "p:" : "fn:") + std::to_string(p);
  }
  std::string kind_name() const {
    return kind == Kind::Prime ? "prime" : "rational-function";
  }
  bool operator==(const FieldSpec&) const = default;
};

template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Prime)
    return std::forward<Fn>(fn)(PrimeField(spec.p));
  return std::forward<Fn>(fn)(RatFuncField(spec.p));
}

namespace detail {

// Recursive-descent parser for the element rendering grammar: integers, 't',
// '^', '*', '/', '+', '-', parentheses.
template <FieldType F>
class ElementParser {
 public:
  ElementParser(const F& f, const std::string& text) : f_(f), s_(text) {}

  typename F::Element parse() {
    auto v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw Error("trailing input in element '" + s_ + "'");
    return v;
  }

 private:
  using Elt = typename F::Element;

  Elt expr() {
    Elt v = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v = v + term();
      } else if (peek() == '-') {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Elt term() {
    Elt v = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v = v * factor();
      } else if (peek() == '/') {
        ++pos_;
        v = v / factor();
      } else {
        return v;
      }
    }
  }

  Elt factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Elt v = expr();
      skip_ws();
      if (peek() != ')') throw Error("unbalanced ')' in element '" + s_ + "'");
      ++pos_;
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == 't') {
      ++pos_;
      return power_suffix(indeterminate());
    }
    if (c >= '0' && c <= '9') {
      std::int64_t n = 0;
      while (peek() >= '0' && peek() <= '9') n = n * 10 + (s_[pos_++] - '0');
      return power_suffix(f_.from_int(n));
    }
    throw Error("cannot parse element '" + s_ + "'");
  }

  Elt power_suffix(Elt base) {
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    if (!(peek() >= '0' && peek() <= '9'))
      throw Error("bad exponent in element '" + s_ + "'");
    std::uint64_t e = 0;
    while (peek() >= '0' && peek() <= '9') e = e * 10 + (s_[pos_++] - '0');
    Elt acc = f_.one();
    for (std::uint64_t i = 0; i < e; ++i) acc = acc * base;
    return acc;
  }

  Elt indeterminate() {
    if constexpr (F::is_rational_function_field) {
      return f_.t();
    } else {
      throw Error("'t' is not an element of a prime field");
    }
  }

  void skip_ws() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  const F& f_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <FieldType F>
typename F::Element parse_element(const F& f, const std::string& text) {
  return detail::ElementParser<F>(f, text).parse();
}

}  // namespace mg2
