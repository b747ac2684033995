// Arbitrary-precision integers and word-sized modular arithmetic.

#ifndef TRAPDOOR_LINALG_INTEGER_HPP_
#define TRAPDOOR_LINALG_INTEGER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "trapdoor/fail.hpp"

namespace trapdoor {

using Int = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline std::string to_string(Int const& x) { return x.str(); }

// Strict decimal parser: optional leading '-', then digits only.
inline Int parse_int(std::string_view s) {
  std::size_t pos = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+'))
    pos = 1;
  if (pos == s.size())
    fail("not a decimal integer: '", s, "'");
  for (std::size_t i = pos; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      fail("not a decimal integer: '", s, "'");
  Int r(std::string(s.substr(pos)));
  return s[0] == '-' ? Int(-r) : r;
}

inline Int abs(Int const& x) { return x < 0 ? Int(-x) : x; }

// Number of bits of |x|; 0 for x == 0.
inline std::size_t bit_length(Int const& x) {
  if (x == 0)
    return 0;
  return boost::multiprecision::msb(abs(x)) + 1;
}

// Number of decimal digits of |x|; 1 for x == 0.
inline std::size_t decimal_digits(Int const& x) {
  std::string s = abs(x).str();
  return s.size();
}

inline Int gcd(Int const& a, Int const& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

// Floor division and matching nonnegative-for-positive-divisor remainder.
inline Int floor_div(Int const& a, Int const& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

// Residue of x in [0, m).
inline u64 residue(Int const& x, u64 m) {
  Int r = x % m;
  if (r < 0)
    r += m;
  return static_cast<u64>(r);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s >= m || s < a)
    s -= m;
  return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 pow_mod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1)
      r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m; fails when gcd(a, m) != 1.
inline u64 inv_mod(u64 a, u64 m) {
  using i128 = __int128;
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    std::swap(t, new_t);
    new_t -= q * t;
    std::swap(r, new_r);
    new_r -= q * r;
  }
  if (r != 1)
    fail("residue ", a, " is not a unit modulo ", m);
  if (t < 0)
    t += m;
  return static_cast<u64>(t);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2)
    return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0)
      return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

// Probabilistic beyond 64 bits (25 Miller-Rabin rounds).
inline bool is_probable_prime(Int const& n) {
  if (n < 2)
    return false;
  if (n <= Int(std::numeric_limits<u64>::max()))
    return is_prime(static_cast<u64>(n));
  return boost::multiprecision::miller_rabin_test(n, 25);
}

inline bool fits_u64(Int const& x) {
  return x >= 0 && x <= Int(std::numeric_limits<u64>::max());
}

// Prime factors of |n| found by trial division up to `bound`; the leftover
// cofactor (if > 1) is appended when it is a probable prime.
inline std::vector<Int> small_prime_factors(Int n, u64 bound = 1000000) {
  std::vector<Int> out;
  n = abs(n);
  if (n < 2)
    return out;
  for (u64 p = 2; p <= bound && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.emplace_back(p);
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1 && is_probable_prime(n))
    out.push_back(n);
  return out;
}

} // namespace trapdoor

#endif
