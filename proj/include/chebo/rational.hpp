#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals
// (boost.multiprecision), plus the small number-theoretic helpers the rest
// of the library leans on. Rationals are always in lowest terms with a
// positive denominator; nothing here ever rounds.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chebo/common.hpp"

namespace chebo {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt acc = 1, b = base;
  while (exp) {
    if (exp & 1) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

// floor(sqrt(n)) for n >= 0; boost's integer sqrt already truncates.
inline BigInt isqrt_floor(const BigInt& n) {
  require(n >= 0, errc::usage, "isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline BigInt isqrt_ceil(const BigInt& n) {
  BigInt r = isqrt_floor(n);
  return r * r == n ? r : r + 1;
}

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime factorization by trial division; fine for the 32-bit-sized inputs
// (divisors of q-1, group orders) that appear here.
inline std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) n /= d, ++e;
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Moebius function mu(d) in {-1, 0, 1}.
inline int moebius(std::uint64_t d) {
  require(d >= 1, errc::usage, "moebius: d must be positive");
  int parity = 1;
  for (auto [p, e] : factorize_u64(d)) {
    (void)p;
    if (e > 1) return 0;
    parity = -parity;
  }
  return parity;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// q = p^e with p prime, e >= 1; throws not_prime_power otherwise.
inline std::pair<std::uint64_t, std::uint32_t> prime_power_split(std::uint64_t q) {
  require(q >= 2, errc::not_prime_power, "q must be at least 2");
  auto fac = factorize_u64(q);
  require(fac.size() == 1, errc::not_prime_power, "q is not a prime power");
  return {fac[0].first, static_cast<std::uint32_t>(fac[0].second)};
}

}  // namespace chebo
