#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "hgm/core/error.hpp"

namespace hgm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long n, long long d = 1) {
  require(d != 0, ErrorKind::domain, "zero denominator");
  return Rational(BigInt(n), BigInt(d));
}

inline BigInt num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt den(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rational& x) { return den(x) == 1; }

inline BigInt floor_of(const Rational& x) {
  BigInt n = num(x), d = den(x);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

// x - floor(x), in [0, 1)
inline Rational frac_part(const Rational& x) { return x - Rational(floor_of(x)); }

inline long long to_ll(const BigInt& v) {
  require(v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max(),
          ErrorKind::domain, "integer does not fit in 64 bits");
  return static_cast<long long>(v);
}

inline long long to_ll(const Rational& x) {
  require(is_integer(x), ErrorKind::domain, "rational is not an integer");
  return to_ll(num(x));
}

inline std::string to_string(const Rational& x) {
  if (is_integer(x)) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

// Accepts "a", "-a", "a/b"; returns false on any malformed input.
inline bool try_parse_rational(std::string_view s, Rational& out) {
  if (s.empty()) return false;
  auto slash = s.find('/');
  auto digits = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string_view a = s.substr(0, slash);
  if (!digits(a, true)) return false;
  BigInt n(std::string(a[0] == '+' ? a.substr(1) : a));
  BigInt d = 1;
  if (slash != std::string_view::npos) {
    std::string_view b = s.substr(slash + 1);
    if (!digits(b, false)) return false;
    d = BigInt(std::string(b));
    if (d == 0) return false;
  }
  out = Rational(n, d);
  return true;
}

inline Rational parse_rational(std::string_view s) {
  Rational r;
  if (!try_parse_rational(s, r)) fail(ErrorKind::parse, "bad rational '" + std::string(s) + "'");
  return r;
}

}  // namespace hgm
