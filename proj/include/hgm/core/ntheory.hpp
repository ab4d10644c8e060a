#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "hgm/core/error.hpp"

namespace hgm::nt {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Reduce a signed value into [0, m).
inline u64 mod(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  i64 x1, y1;
  i64 g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline u64 invmod(u64 a, u64 m) {
  i64 x, y;
  i64 g = ext_gcd(static_cast<i64>(a % m), static_cast<i64>(m), x, y);
  require(g == 1, ErrorKind::domain, "value not invertible modulo " + std::to_string(m));
  return mod(x, m);
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline u64 primitive_root(u64 p) {
  require(is_prime(p), ErrorKind::parameter, std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  auto fs = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : fs) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(ErrorKind::consistency, "no primitive root");
}

inline u64 euler_phi(u64 n) {
  u64 r = n;
  for (u64 p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

inline std::vector<u64> primes_upto(u64 n) {
  std::vector<u64> out;
  for (u64 k = 2; k <= n; ++k)
    if (is_prime(k)) out.push_back(k);
  return out;
}

// Primes p in [lo, hi] with p = 1 mod m.
inline std::vector<u64> primes_one_mod(u64 m, u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 p = lo; p <= hi; ++p)
    if (p % m == 1 && is_prime(p)) out.push_back(p);
  return out;
}

// Kronecker symbol (a/n).
inline int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    i64 am8 = ((a % 8) + 8) % 8;
    if ((v & 1) && (am8 == 3 || am8 == 5)) result = -result;
  }
  // Jacobi symbol (a/n), n odd positive
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline i64 lcm(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

}  // namespace hgm::nt
