#pragma once

#include <cstdint>

#include "tautilt/errors.hpp"

namespace tautilt {

/** Prime field F_p with arithmetic on residues in [0, p).
    Products are taken in 64 bits, so any prime below 2^31 is safe. */
struct Fp {
  std::uint32_t p = 2;

  Fp() = default;
  explicit Fp(std::uint32_t prime) : p(prime) {
    if (p < 2) throw InvalidInputError("field order must be a prime >= 2");
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw InvalidInputError("field order must be prime");
  }

  std::uint32_t norm(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p);
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw InvalidInputError("division by zero in F_p");
    // Extended Euclid on (a, p).
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return norm(t);
  }

  bool operator==(const Fp& o) const { return p == o.p; }
  bool operator!=(const Fp& o) const { return p != o.p; }
};

/** Deterministic splitmix64 stream; used where a fixed-seed pseudo-random
    search is part of a documented fallback. */
struct DetRng {
  std::uint64_t state;
  explicit DetRng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next() % n);
  }
};

}  // namespace tautilt
