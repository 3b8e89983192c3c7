#pragma once

#include <cstdint>

#include "mg2/fields.hpp"

namespace mg2 {

inline constexpr std::uint64_t kDefaultSeed = 1729;

// splitmix64; deterministic across platforms so seeded runs reproduce exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t state_;
};

template <FieldType F>
typename F::Element random_element(const F& f, Rng& rng) {
  if constexpr (F::is_rational_function_field) {
    std::uint32_t p = f.characteristic();
    auto random_poly = [&](std::size_t max_deg, bool nonzero) {
      for (;;) {
        std::vector<std::uint32_t> c(rng.below(max_deg + 1) + 1);
        for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(p));
        Poly poly(p, std::move(c));
        if (!nonzero || !poly.is_zero()) return poly;
      }
    };
    return RatF(random_poly(2, false), random_poly(2, true));
  } else {
    return f.from_int(static_cast<std::int64_t>(rng.below(f.characteristic())));
  }
}

}  // namespace mg2
