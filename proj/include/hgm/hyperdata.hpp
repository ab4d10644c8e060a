#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgm/core/error.hpp"
#include "hgm/core/ntheory.hpp"
#include "hgm/core/rational.hpp"

namespace hgm {

/// Pair of parameter columns (alpha; beta). Column order is significant: the
/// period function pairs alpha[i] with beta[i].
struct HypergeometricDatum {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;

  HypergeometricDatum() = default;
  HypergeometricDatum(std::vector<Rational> a, std::vector<Rational> b) : alpha(std::move(a)), beta(std::move(b)) {
    require(alpha.size() == beta.size(), ErrorKind::parameter, "alpha and beta lengths differ");
    require(!alpha.empty(), ErrorKind::parameter, "empty datum");
    require(alpha.size() <= 8, ErrorKind::parameter, "datum longer than 8");
  }

  std::size_t length() const { return alpha.size(); }
  bool first_beta_is_one() const { return beta.front() == 1; }

  friend bool operator==(const HypergeometricDatum& a, const HypergeometricDatum& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
};

// Multiset comparison, ignoring column order.
inline bool same_multisets(const HypergeometricDatum& a, const HypergeometricDatum& b) {
  auto sorted = [](std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return sorted(a.alpha) == sorted(b.alpha) && sorted(a.beta) == sorted(b.beta);
}

struct DatumInvariants {
  long long M = 1;
  bool primitive = false;
  bool well_poised = false;
  bool very_well_poised = false;
  bool defined_over_Q = false;
};

namespace detail {

// Multiset of values mod 1 is closed under x -> k x for k coprime to the denominator,
// which is the condition for prod (X - e^{2 pi i x}) to have integer coefficients.
inline bool galois_stable_mod1(const std::vector<Rational>& v) {
  std::map<Rational, int> count;
  for (const auto& x : v) count[frac_part(x)]++;
  for (const auto& [x, c] : count) {
    long long d = to_ll(den(x));
    long long n = to_ll(num(x));
    for (long long k = 1; k < d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      Rational y = frac_part(Rational(BigInt(n * k), BigInt(d)));
      auto it = count.find(y);
      if (it == count.end() || it->second != c) return false;
    }
  }
  return true;
}

}  // namespace detail

inline DatumInvariants datum_invariants(const HypergeometricDatum& hd) {
  DatumInvariants inv;
  long long M = 1;
  for (const auto* col : {&hd.alpha, &hd.beta})
    for (const auto& x : *col) M = nt::lcm(M, to_ll(den(x)));
  inv.M = M;

  inv.primitive = true;
  for (const auto& r : hd.alpha)
    for (const auto& q : hd.beta)
      if (is_integer(r - q)) inv.primitive = false;

  inv.well_poised = true;
  const Rational sum0 = hd.alpha[0] + hd.beta[0];
  for (std::size_t i = 1; i < hd.length(); ++i)
    if (hd.alpha[i] + hd.beta[i] != sum0) inv.well_poised = false;

  inv.very_well_poised = false;
  if (inv.well_poised) {
    const Rational r1 = hd.alpha[0];
    for (std::size_t i = 1; i < hd.length(); ++i)
      if (hd.alpha[i] == 1 + r1 / 2 && hd.beta[i] == r1 / 2) inv.very_well_poised = true;
  }

  inv.defined_over_Q = detail::galois_stable_mod1(hd.alpha) && detail::galois_stable_mod1(hd.beta);
  return inv;
}

inline void check_family_index(int j) {
  require(j >= 1 && j <= 11, ErrorKind::parameter, "family index j=" + std::to_string(j) + " outside [1,11]");
}

/// {j/12, j/12, 1/2, 1/2 ; 1, 1, 1/2+j/12, 1/2+j/12}
inline HypergeometricDatum make_hd4(int j) {
  check_family_index(j);
  const Rational r = rat(j, 12), h = rat(1, 2);
  return {{r, r, h, h}, {1, 1, h + r, h + r}};
}

/// Very well-poised companion of make_hd4 with the extra column (1 + r/2 ; r/2).
inline HypergeometricDatum make_hd5(int j) {
  check_family_index(j);
  const Rational r = rat(j, 12), h = rat(1, 2);
  return {{r, 1 + r / 2, r, h, h}, {1, r / 2, 1, h + r, h + r}};
}

/// {1/2, 1/2, s-r ; 1, 1, s}
inline HypergeometricDatum make_hd3(const Rational& r, const Rational& s) {
  require(s - r > 0, ErrorKind::parameter, "make_hd3 needs s - r > 0");
  const Rational h = rat(1, 2);
  return {{h, h, s - r}, {1, 1, s}};
}

// Cuspidal weight-3 parameter set for the K2 family.
inline bool in_s2(const Rational& r, const Rational& s) {
  return r > 0 && r < s && s < rat(3, 2) && r != 1 && s != rat(1, 2) && is_integer(24 * s) &&
         is_integer(8 * (r + s));
}

// Cuspidal weight-2 parameter set for the K1 family.
inline bool in_s1(const Rational& r, const Rational& s) {
  return r > 0 && r < s && s < rat(3, 2) && s - r > rat(1, 2) && is_integer(24 * s) && is_integer(8 * (r + s));
}

inline int level_scale(const Rational& r) {
  require(is_integer(24 * r) && r >= 0, ErrorKind::parameter, "24r must be a nonnegative integer");
  return static_cast<int>(48 / std::gcd(to_ll(24 * r), 24LL));
}

struct G2Pair {
  Rational r;
  Rational s;
  int j = 0;
  int D = 0;
  int M = 0;
  int N = 0;
};

inline int family_D(int j) {
  check_family_index(j);
  return 24 / std::gcd(j, 24);
}

inline int family_M(int j) { return static_cast<int>(nt::lcm(4, family_D(j))); }

inline G2Pair g2_pair(int j) {
  check_family_index(j);
  G2Pair g;
  g.j = j;
  g.r = rat(j, 24);
  g.s = rat(24 - j, 24);
  g.D = family_D(j);
  g.M = family_M(j);
  g.N = level_scale(g.r);
  return g;
}

struct GaloisOrbit {
  int D = 0;
  std::vector<std::pair<Rational, Rational>> members;  // sorted by numerator i
};

inline GaloisOrbit galois_orbit(int D) {
  static constexpr int supported[] = {3, 4, 6, 8, 12, 24};
  require(std::find(std::begin(supported), std::end(supported), D) != std::end(supported), ErrorKind::parameter,
          "unsupported orbit modulus D=" + std::to_string(D));
  GaloisOrbit o;
  o.D = D;
  for (int i = 1; i < D; ++i) {
    if (std::gcd(i, D) != 1) continue;
    o.members.emplace_back(rat(i, D), rat(D - i, D) + (2 * i) / D);
  }
  return o;
}

/// Gamma quotient scalar * prod Gamma(arg)^exp, kept symbolic so it can be
/// evaluated over C, mod p^k via Gamma_p, or as Gauss sums.
struct GammaQuotient {
  Rational scalar{1};
  std::vector<std::pair<Rational, int>> factors;
};

enum class WhippleVariant { length4, length5 };

struct WhippleReduction {
  GammaQuotient prefactor;
  HypergeometricDatum target;  // 3F2 datum at z = 1, lower list includes the leading 1
};

// Specialisation r1 = r2 = r, r3 = r4 = 1/2 with r = j/12.
inline WhippleReduction whipple_reduce(int j, WhippleVariant variant) {
  check_family_index(j);
  const Rational r = rat(j, 12), h = rat(1, 2);
  WhippleReduction w;
  w.prefactor.scalar = 1 / r;
  w.prefactor.factors = {{r + h, 2}, {r, -2}};
  if (variant == WhippleVariant::length4)
    w.target = HypergeometricDatum({1 - r / 2, h, h}, {1, 1 + r / 2, 1});
  else
    w.target = HypergeometricDatum({(1 - r) / 2, h, h}, {1, (1 + r) / 2, 1});
  return w;
}

/// Text form "r1,r2,...;q1,q2,...@lambda".
inline std::string render_datum(const HypergeometricDatum& hd, const Rational& lambda) {
  std::string out;
  for (std::size_t i = 0; i < hd.length(); ++i) out += (i ? "," : "") + to_string(hd.alpha[i]);
  out += ";";
  for (std::size_t i = 0; i < hd.length(); ++i) out += (i ? "," : "") + to_string(hd.beta[i]);
  out += "@" + to_string(lambda);
  return out;
}

struct ParsedDatum {
  HypergeometricDatum datum;
  Rational lambda;
};

// Tokens are numbered from 1 in reading order; errors report the offending token.
inline ParsedDatum parse_datum(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);

  const auto semi = s.find(';');
  const auto at = s.find('@');
  if (semi == std::string::npos || at == std::string::npos || at < semi)
    fail(ErrorKind::parse, "expected 'alpha;beta@lambda'");

  int token = 0;
  auto split = [&](std::string_view part) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
      auto comma = part.find(',', start);
      std::string_view tok = part.substr(start, comma == std::string_view::npos ? part.size() - start : comma - start);
      ++token;
      Rational x;
      if (!try_parse_rational(tok, x))
        fail(ErrorKind::parse, "malformed rational at token " + std::to_string(token) + " ('" + std::string(tok) + "')");
      out.push_back(x);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  };
  std::string_view sv(s);
  auto alpha = split(sv.substr(0, semi));
  auto beta = split(sv.substr(semi + 1, at - semi - 1));
  ++token;
  Rational lambda;
  if (!try_parse_rational(sv.substr(at + 1), lambda))
    fail(ErrorKind::parse, "malformed lambda at token " + std::to_string(token));
  if (alpha.size() != beta.size())
    fail(ErrorKind::parse, "alpha has " + std::to_string(alpha.size()) + " entries, beta has " +
                               std::to_string(beta.size()));
  return {HypergeometricDatum(std::move(alpha), std::move(beta)), lambda};
}

}  // namespace hgm
