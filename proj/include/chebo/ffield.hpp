#pragma once

// Finite fields GF(p^e). Elements are carried as a single integer repr in
// [0, p^e): the base-p digits of the repr are the polynomial coefficients,
// low degree first. The modulus is the lexicographically least monic
// irreducible of degree e, comparing coefficient tuples (c0,...,c_{e-1}),
// so fields are reproducible across runs and machines.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/rational.hpp"

namespace chebo {

namespace detail {

// Dense polynomials over GF(p), coefficient vector low-degree first,
// trailing zeros trimmed.
inline void poly_trim(std::vector<std::uint32_t>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo monic m.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& m,
                                           std::uint64_t p) {
  poly_trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t v = a[shift + i] + p * lead - (lead * m[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>(v % p);
    }
    poly_trim(a);
  }
  return a;
}

inline bool poly_divides(const std::vector<std::uint32_t>& g,
                         const std::vector<std::uint32_t>& f, std::uint64_t p) {
  return poly_mod(f, g, p).empty();
}

// Irreducibility by trial division against every monic polynomial of degree
// <= deg(f)/2. Quadratic in the divisor count, which is small at our caps.
inline bool poly_irreducible(const std::vector<std::uint32_t>& f, std::uint64_t p) {
  const std::size_t e = f.size() - 1;
  if (e == 1) return true;
  for (std::size_t d = 1; 2 * d <= e; ++d) {
    std::vector<std::uint32_t> g(d + 1, 0);
    g[d] = 1;
    // odometer over the d lower coefficients
    for (;;) {
      if (poly_divides(g, f, p)) return false;
      std::size_t i = 0;
      while (i < d && ++g[i] == p) g[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace detail

struct FField {
  std::uint64_t p = 2;
  std::uint32_t e = 1;
  std::uint64_t q = 2;                   // p^e
  std::vector<std::uint32_t> modulus;    // length e+1, monic

  bool prime_field() const { return e == 1; }

  std::vector<std::uint32_t> digits(std::uint64_t repr) const {
    std::vector<std::uint32_t> d(e);
    for (std::uint32_t i = 0; i < e; ++i) {
      d[i] = static_cast<std::uint32_t>(repr % p);
      repr /= p;
    }
    return d;
  }

  std::uint64_t from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint64_t r = 0;
    for (std::size_t i = d.size(); i-- > 0;) r = r * p + d[i];
    return r;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (prime_field()) return (a + b) % p;
    std::uint64_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      r += ((a % p + b % p) % p) * mult;
      a /= p;
      b /= p;
      mult *= p;
    }
    return r;
  }

  std::uint64_t neg(std::uint64_t a) const {
    if (prime_field()) return (p - a) % p;
    std::uint64_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      r += ((p - a % p) % p) * mult;
      a /= p;
      mult *= p;
    }
    return r;
  }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (prime_field()) return (a * b) % p;
    auto da = digits(a), db = digits(b);
    std::vector<std::uint32_t> prod(2 * e - 1, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      if (!da[i]) continue;
      for (std::uint32_t j = 0; j < e; ++j)
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + std::uint64_t(da[i]) * db[j]) % p);
    }
    auto rem = detail::poly_mod(std::move(prod), modulus, p);
    rem.resize(e, 0);
    return from_digits(rem);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t n) const {
    std::uint64_t acc = 1;
    while (n) {
      if (n & 1) acc = mul(acc, a);
      a = mul(a, a);
      n >>= 1;
    }
    return acc;
  }

  std::uint64_t inv(std::uint64_t a) const {
    require(a != 0, errc::usage, "inverse of zero field element");
    return pow(a, q - 2);
  }

  std::string name() const {
    std::ostringstream os;
    os << "gf(" << p << "," << e << ")";
    return os.str();
  }
};

// Build GF(p^e) with the deterministic lex-least modulus.
inline FField make_field(std::uint64_t p, std::uint32_t e, const Caps& caps = {}) {
  require(is_prime_u64(p), errc::non_prime, "characteristic must be prime");
  require(e >= 1, errc::usage, "field degree must be positive");
  BigInt size = big_pow(BigInt(p), e);
  require(size <= BigInt(caps.field), errc::cap_exceeded, "field size exceeds cap");
  FField f;
  f.p = p;
  f.e = e;
  f.q = size.convert_to<std::uint64_t>();
  if (e == 1) {
    f.modulus = {0, 1};  // x
    return f;
  }
  // lex-least tuple (c0,...,c_{e-1}): c0 is the most significant position
  std::vector<std::uint32_t> c(e, 0);
  for (;;) {
    std::vector<std::uint32_t> m(c);
    m.push_back(1);
    if (detail::poly_irreducible(m, p)) {
      f.modulus = std::move(m);
      return f;
    }
    std::size_t i = e;
    while (i > 0 && ++c[i - 1] == p) c[--i] = 0;
    require(i != 0, errc::internal, "no irreducible polynomial found");
  }
}

// Multiplicative order of a nonzero element.
inline std::uint64_t element_order(const FField& f, std::uint64_t a) {
  require(a != 0, errc::usage, "order of zero");
  std::uint64_t n = f.q - 1;
  for (auto [pr, ex] : factorize_u64(n)) {
    (void)ex;
    while (n % pr == 0 && f.pow(a, n / pr) == 1) n /= pr;
  }
  return n;
}

// The least repr whose multiplicative order is q-1.
inline std::uint64_t primitive_element(const FField& f) {
  if (f.q == 2) return 1;
  for (std::uint64_t a = 1; a < f.q; ++a)
    if (element_order(f, a) == f.q - 1) return a;
  fail(errc::internal, "no primitive element");  // unreachable: F_q^* is cyclic
}

}  // namespace chebo
