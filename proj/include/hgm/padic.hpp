#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hgm/charsum.hpp"
#include "hgm/core/error.hpp"
#include "hgm/core/ntheory.hpp"
#include "hgm/core/rational.hpp"
#include "hgm/core/record.hpp"
#include "hgm/hyperdata.hpp"
#include "hgm/qmodular.hpp"

namespace hgm {

using nt::u64;

inline u64 ipow(u64 p, long long k) {
  u64 r = 1;
  for (long long i = 0; i < k; ++i) r *= p;
  return r;
}

// Largest p^k the Gamma_p tables will sweep.
inline constexpr u64 kGammaBudget = 50'000'000;

/// u p^v with u a unit known mod p^k (relative precision k). A zero carries
/// the absolute precision it is known to in v.
class PadicResidue {
 public:
  PadicResidue() = default;

  static PadicResidue unit(u64 u, long long p, long long k) {
    PadicResidue r(p, k);
    r.u_ = u % r.modulus();
    require(r.u_ % p != 0, ErrorKind::domain, "not a unit");
    return r;
  }

  static PadicResidue zero(long long p, long long abs_precision) {
    PadicResidue r(p, 0);
    r.zero_ = true;
    r.v_ = abs_precision;
    return r;
  }

  static PadicResidue from_rational(const Rational& x, long long p, long long k) {
    require(k >= 1, ErrorKind::parameter, "precision must be positive");
    if (x == 0) return zero(p, 1'000'000);
    BigInt n = num(x), d = den(x);
    long long v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    while (d % p == 0) {
      d /= p;
      --v;
    }
    PadicResidue r(p, k);
    const u64 P = r.modulus();
    const u64 nm = static_cast<u64>(to_ll(BigInt(((n % P) + P) % P)));
    const u64 dm = static_cast<u64>(to_ll(BigInt(((d % P) + P) % P)));
    r.u_ = nt::mulmod(nm, nt::invmod(dm, P), P);
    r.v_ = v;
    return r;
  }

  static PadicResidue from_integer(long long n, long long p, long long k) { return from_rational(Rational(n), p, k); }

  long long prime() const { return p_; }
  long long precision() const { return k_; }
  bool is_zero() const { return zero_; }
  long long valuation() const { return v_; }
  bool is_unit() const { return !zero_ && v_ == 0; }
  u64 unit_part() const { return u_; }
  u64 modulus() const { return ipow(static_cast<u64>(p_), k_); }
  long long abs_precision() const { return zero_ ? v_ : v_ + k_; }

  /// Value mod p^K; needs v >= 0 and absolute precision >= K.
  u64 residue(long long K) const {
    const u64 P = ipow(static_cast<u64>(p_), K);
    require(abs_precision() >= K, ErrorKind::precision,
            "residue known mod p^" + std::to_string(abs_precision()) + ", asked mod p^" + std::to_string(K));
    if (zero_) return 0;
    require(v_ >= 0, ErrorKind::integrality, "value has negative valuation " + std::to_string(v_));
    if (v_ >= K) return 0;
    return nt::mulmod(u_ % P, ipow(static_cast<u64>(p_), v_), P);
  }

  PadicResidue inverse() const {
    require(!zero_, ErrorKind::domain, "inverse of zero");
    PadicResidue r(p_, k_);
    r.u_ = nt::invmod(u_, modulus());
    r.v_ = -v_;
    return r;
  }

  friend PadicResidue operator*(const PadicResidue& a, const PadicResidue& b) {
    require(a.p_ == b.p_, ErrorKind::parameter, "mixed primes");
    if (a.zero_ || b.zero_) {
      if (a.zero_ && b.zero_) return zero(a.p_, a.v_ + b.v_);
      const auto& z = a.zero_ ? a : b;
      const auto& o = a.zero_ ? b : a;
      return zero(a.p_, z.v_ + o.v_);
    }
    PadicResidue r(a.p_, std::min(a.k_, b.k_));
    const u64 P = r.modulus();
    r.u_ = nt::mulmod(a.u_ % P, b.u_ % P, P);
    r.v_ = a.v_ + b.v_;
    return r;
  }

  friend PadicResidue operator/(const PadicResidue& a, const PadicResidue& b) { return a * b.inverse(); }

  friend PadicResidue operator-(const PadicResidue& a) {
    if (a.zero_) return a;
    PadicResidue r = a;
    r.u_ = (r.modulus() - r.u_) % r.modulus();
    return r;
  }

  friend PadicResidue operator+(const PadicResidue& a, const PadicResidue& b) {
    require(a.p_ == b.p_, ErrorKind::parameter, "mixed primes");
    const long long p = a.p_;
    if (a.zero_ && b.zero_) return zero(p, std::min(a.v_, b.v_));
    if (a.zero_ || b.zero_) {
      const auto& z = a.zero_ ? a : b;
      const auto& o = a.zero_ ? b : a;
      if (o.v_ >= z.v_) return zero(p, z.v_);
      PadicResidue r(p, std::min(o.k_, z.v_ - o.v_));
      r.u_ = o.u_ % r.modulus();
      r.v_ = o.v_;
      return r;
    }
    const auto& lo = a.v_ <= b.v_ ? a : b;
    const auto& hi = a.v_ <= b.v_ ? b : a;
    const long long d = hi.v_ - lo.v_;
    const long long kk = std::min(lo.k_, hi.k_ + d);
    const u64 P = ipow(static_cast<u64>(p), kk);
    u64 s = lo.u_ % P;
    if (d < kk) s = (s + nt::mulmod(hi.u_ % P, ipow(static_cast<u64>(p), d), P)) % P;
    if (s == 0) return zero(p, lo.v_ + kk);
    long long w = 0;
    while (s % static_cast<u64>(p) == 0) {
      s /= static_cast<u64>(p);
      ++w;
    }
    PadicResidue r(p, kk - w);
    r.u_ = s % r.modulus();
    r.v_ = lo.v_ + w;
    return r;
  }

  friend PadicResidue operator-(const PadicResidue& a, const PadicResidue& b) { return a + (-b); }

  std::string str(long long K) const { return std::to_string(residue(K)); }

 private:
  PadicResidue(long long p, long long k) : p_(p), k_(k) {}

  long long p_ = 2, k_ = 1;
  long long v_ = 0;
  u64 u_ = 1;
  bool zero_ = false;
};

inline bool congruent(const PadicResidue& a, const PadicResidue& b, long long K) { return a.residue(K) == b.residue(K); }

/// Gamma_p(n) for representatives n in [1, p^k], from prefix products stored every p steps.
class GammaPTable {
 public:
  GammaPTable(long long p, long long k) : p_(p), k_(k), P_(ipow(static_cast<u64>(p), k)) {
    require(nt::is_prime(static_cast<u64>(p)), ErrorKind::parameter, "Gamma_p needs p prime");
    require(k >= 1 && k <= (p > 300 ? 2 : 3), ErrorKind::parameter, "Gamma_p precision must be 1..3, and 1..2 above p=300");
    require(P_ <= kGammaBudget, ErrorKind::parameter, "p^k=" + std::to_string(P_) + " exceeds the Gamma_p budget");
    const u64 blocks = P_ / static_cast<u64>(p);
    check_.resize(static_cast<std::size_t>(blocks + 1));
    u64 acc = 1;
    for (u64 b = 0; b < blocks; ++b) {
      check_[b] = acc;  // product over 1 <= i < b p, p !| i
      const u64 base = b * static_cast<u64>(p);
      for (u64 i = base + 1; i < base + static_cast<u64>(p); ++i) acc = P_ < (1ULL << 32) ? acc * i % P_ : nt::mulmod(acc, i, P_);
    }
    check_[blocks] = acc;
  }

  long long prime() const { return p_; }
  long long precision() const { return k_; }
  u64 modulus() const { return P_; }

  u64 at(u64 n) const {
    require(n >= 1 && n <= P_, ErrorKind::parameter, "Gamma_p representative out of range");
    const u64 p = static_cast<u64>(p_);
    const u64 b = (n - 1) / p;
    u64 acc = check_[b];
    for (u64 i = b * p + 1; i < n; ++i)
      if (i % p) acc = nt::mulmod(acc, i, P_);
    return (n % 2) ? (P_ - acc) % P_ : acc;
  }

  // representative of a p-integral rational in [1, p^k]
  u64 representative(const Rational& x) const {
    const BigInt d = den(x);
    require(d % p_ != 0, ErrorKind::domain, "p divides the denominator of " + to_string(x));
    const u64 nm = static_cast<u64>(to_ll(BigInt(((num(x) % P_) + P_) % P_)));
    const u64 dm = static_cast<u64>(to_ll(BigInt(d % P_)));
    u64 n = nt::mulmod(nm, nt::invmod(dm, P_), P_);
    return n == 0 ? P_ : n;
  }

  PadicResidue operator()(const Rational& x) const { return PadicResidue::unit(at(representative(x)), p_, k_); }

  static const GammaPTable& shared(long long p, long long k) {
    static std::mutex mu;
    static std::map<std::pair<long long, long long>, std::unique_ptr<GammaPTable>> tables;
    std::lock_guard lock(mu);
    auto& slot = tables[{p, k}];
    if (!slot) slot = std::make_unique<GammaPTable>(p, k);
    return *slot;
  }

 private:
  long long p_, k_;
  u64 P_;
  std::vector<u64> check_;
};

inline PadicResidue gamma_p(const Rational& x, long long p, long long k) { return GammaPTable::shared(p, k)(x); }

/// omega_p(a) = a^{p^{k-1}} mod p^k
inline PadicResidue teichmuller(long long a, long long p, long long k) {
  require(nt::mod(a, static_cast<u64>(p)) != 0, ErrorKind::domain, "Teichmuller lift of a multiple of p");
  const u64 P = ipow(static_cast<u64>(p), k);
  return PadicResidue::unit(nt::powmod(nt::mod(a, P), ipow(static_cast<u64>(p), k - 1), P), p, k);
}

inline PadicResidue power(PadicResidue x, long long e) {
  if (e < 0) return power(x.inverse(), -e);
  PadicResidue r = PadicResidue::unit(1, x.prime(), x.precision());
  while (e) {
    if (e & 1) r = r * x;
    x = x * x;
    e >>= 1;
  }
  return r;
}

/// (r)_m by the running product.
inline PadicResidue pochhammer_mod(const Rational& r, long long m, long long p, long long k) {
  require(m >= 0, ErrorKind::parameter, "Pochhammer index must be nonnegative");
  PadicResidue acc = PadicResidue::unit(1, p, k);
  for (long long i = 0; i < m; ++i) acc = acc * PadicResidue::from_rational(r + i, p, k);
  return acc;
}

/// (r)_m = (-1)^m Gamma_p(r+m)/Gamma_p(r) (r + a)^{[m > a]}, a = [-r]_0, for 0 <= m <= p-1.
inline PadicResidue pochhammer_via_gamma(const Rational& r, long long m, long long p, long long k) {
  require(m >= 0 && m <= p - 1, ErrorKind::parameter, "index must lie in [0, p-1]");
  const auto& G = GammaPTable::shared(p, k);
  PadicResidue v = G(r + m) / G(r);
  if (m % 2) v = -v;
  const long long a = static_cast<long long>(GammaPTable::shared(p, 1).representative(-r) % static_cast<u64>(p));
  if (m > a) v = v * PadicResidue::from_rational(r + a, p, k);
  return v;
}

/// sum_{m<terms} prod (alpha_i)_m / prod (beta_i)_m lambda^m over Q.
inline Rational truncated_sum_exact(const std::vector<Rational>& alpha, const std::vector<Rational>& beta,
                                    const Rational& lambda, long long terms) {
  Rational term = 1, sum = 0;
  for (long long m = 0; m < terms; ++m) {
    sum += term;
    Rational ratio = lambda;
    for (const auto& a : alpha) ratio *= a + m;
    for (const auto& b : beta) {
      require(b + m != 0, ErrorKind::domain, "lower parameter hits a nonpositive integer");
      ratio /= b + m;
    }
    term *= ratio;
    if (term == 0) break;
  }
  return sum;
}

namespace detail {

inline void require_p_integral(const std::vector<Rational>& xs, long long p) {
  for (const auto& x : xs)
    require(den(x) % p != 0, ErrorKind::domain, "p divides the denominator of " + to_string(x));
}

// term ratio products as p-adic residues; factor(m) multiplies term m
template <class Extra>
PadicResidue truncated(const HypergeometricDatum& hd, const Rational& lambda, long long p, long long k, Extra&& factor) {
  std::vector<Rational> all = hd.alpha;
  all.insert(all.end(), hd.beta.begin(), hd.beta.end());
  all.push_back(lambda);
  require_p_integral(all, p);
  const u64 P = ipow(static_cast<u64>(p), k);
  if (lambda == 0) return PadicResidue::unit(1, p, k);
  const auto lam = PadicResidue::from_rational(lambda, p, k + 2);
  PadicResidue term = PadicResidue::unit(1, p, k + 2);
  u64 sum = 0;
  for (long long m = 0; m <= p - 1; ++m) {
    if (m > 0) {
      for (const auto& a : hd.alpha) term = term * PadicResidue::from_rational(a + m - 1, p, k + 2);
      for (const auto& b : hd.beta) term = term / PadicResidue::from_rational(b + m - 1, p, k + 2);
      term = term * lam;
    }
    if (term.is_zero()) break;
    const PadicResidue t = factor(m, term);
    require(t.is_zero() || t.valuation() >= 0, ErrorKind::integrality,
            "term " + std::to_string(m) + " has valuation " + std::to_string(t.valuation()) + " at p=" + std::to_string(p));
    sum = (sum + t.residue(k)) % P;
  }
  return sum == 0 ? PadicResidue::zero(p, k) : PadicResidue::from_integer(static_cast<long long>(sum), p, k);
}

}  // namespace detail

/// F(alpha; beta; lambda)_{p-1} mod p^k; a term of negative valuation is an integrality error.
inline PadicResidue truncated_f(const HypergeometricDatum& hd, const Rational& lambda, long long p, long long k) {
  return detail::truncated(hd, lambda, p, k, [](long long, const PadicResidue& t) { return t; });
}

/// truncated F(HD5(j/12); -1)_{p-1}, via term_m(HD5) = (1 + 2m/r1) term_m(HD4)
inline PadicResidue truncated_f5(int j, long long p, long long k) {
  check_family_index(j);
  require(j <= 6, ErrorKind::parameter, "the length 5 sum is only used for j <= 6");
  const Rational r1 = rat(j, 12);
  return detail::truncated(make_hd4(j), Rational(-1), p, k, [&](long long m, const PadicResidue& t) {
    return t * PadicResidue::from_rational((r1 + 2 * m) / r1, p, k + 2);
  });
}

namespace detail {

inline void require_family_prime(int j, long long p, bool low_only = true) {
  check_family_index(j);
  if (low_only) require(j <= 6, ErrorKind::parameter, "j=" + std::to_string(j) + " > 6 is outside the p-adic range");
  require(p >= 5 && nt::is_prime(static_cast<u64>(p)) && p % family_M(j) == 1, ErrorKind::parameter,
          "p=" + std::to_string(p) + " must be a prime >= 5 that is 1 mod " + std::to_string(family_M(j)));
}

}  // namespace detail

/// Gamma_p(j/12)^2 / Gamma_p(j/12 + 1/2)^2
inline PadicResidue omega_padic(int j, long long p, long long k) {
  detail::require_family_prime(j, p, false);
  const auto& G = GammaPTable::shared(p, k);
  const Rational r = rat(j, 12);
  auto a = G(r) / G(r + rat(1, 2));
  return a * a;
}

struct UnitRoot {
  PadicResidue unit;        // (a_p)_0
  PadicResidue complement;  // (a_p)_1 = p / (a_p)_0
};

/// Unit root of the weight 2 form; both closed forms must agree.
inline UnitRoot unit_root_f2(int j, long long p, long long k) {
  detail::require_family_prime(j, p);
  const auto& G = GammaPTable::shared(p, k);
  const Rational r = rat(j, 12);
  const long long e = to_ll(r * (p - 1));
  const auto w4 = teichmuller(4, p, k);
  auto a0 = G(r / 2) * G(1 - r) / G(1 - r / 2) * power(w4, e);
  auto b0 = power(w4, -e) * G(r) / (G((1 + r) / 2) * G((1 + r) / 2));
  if (to_ll(r * (p - 1) / 2) % 2 == 0) b0 = -b0;
  require(congruent(a0, b0, k), ErrorKind::consistency, "the two closed forms of the unit root disagree");
  return {a0, PadicResidue::from_integer(p, p, k + 1) / a0};
}

/// Teichmuller image of J_{omega-bar}(r, s) from the exact cyclotomic Jacobi sum.
inline PadicResidue teichmuller_jacobi(const Rational& r, const Rational& s, long long p, long long k) {
  PrimeFieldContext ctx(p);
  const long long M = lcd({r, s});
  const CycInt J = jacobi_sum_exact(ctx, r, s, M);
  // zeta_{p-1} -> omega_p(g)^e with e c = -1 mod p-1
  const long long n = p - 1;
  const long long e = static_cast<long long>(nt::mod(-static_cast<long long>(nt::invmod(ctx.root_choice(), n)), n));
  const auto zM = power(teichmuller(ctx.g(), p, k), e * (n / M));
  const long long z = static_cast<long long>(zM.residue(k));
  const u64 P = ipow(static_cast<u64>(p), k);
  const long long v = J.eval_mod(z, static_cast<long long>(P));
  return v == 0 ? PadicResidue::zero(p, k) : PadicResidue::from_integer(v, p, k);
}

/// Gross-Koblitz: -J_{omega-bar}(r,s) = Gamma_p(r) Gamma_p(s) / Gamma_p(r+s).
inline PadicResidue gk_jacobi(const Rational& r, const Rational& s, long long p, long long k) {
  require(r > 0 && r < 1 && s > 0 && s < 1, ErrorKind::domain, "gk_jacobi needs r, s in (0,1)");
  require(r + s < 1, ErrorKind::domain, "gk_jacobi needs r + s < 1; reduce by reflection first");
  require((p - 1) % lcd({r, s}) == 0, ErrorKind::incompatible_prime, "p is not 1 mod the denominators");
  const auto& G = GammaPTable::shared(p, k);
  return G(r) * G(s) / G(r + s);
}

inline std::string mod_label(long long p, long long K) { return std::to_string(p) + "^" + std::to_string(K); }

/// a_p(f2) = Gamma_p(1/D)Gamma_p(1-2/D)/Gamma_p(1-1/D) 4^{2(p-1)/D} = -J(1/D, 1-2/D) 4^{2(p-1)/D} mod p.
inline VerificationRecord formal_group_ap_check(int D, long long p) {
  require(D == 3 || D == 4 || D == 6 || D == 8 || D == 12 || D == 24, ErrorKind::parameter, "unsupported D");
  require(nt::is_prime(static_cast<u64>(p)) && p % nt::lcm(4, D) == 1, ErrorKind::parameter,
          "p must be a prime that is 1 mod lcm(4, D)");
  VerificationRecord rec;
  rec.check_id = "padic.formal_group_ap";
  rec.param("D", D).param("p", p);
  RecordTimer timer(rec);
  const Rational a = rat(1, D), b = 1 - rat(2, D);
  const u64 four = nt::powmod(4, 2 * (p - 1) / D, p);
  const auto& G = GammaPTable::shared(p, 1);
  const u64 gam = nt::mulmod((G(a) * G(b) / G(1 - a)).residue(1), four, p);
  const u64 jac = nt::mulmod((-teichmuller_jacobi(a, b, p, 1)).residue(1), four, p);
  const u64 ap = nt::mod(eigen_ap_f2(D, p), p);
  rec.lhs = std::to_string(ap);
  rec.rhs = std::to_string(gam) + "," + std::to_string(jac);
  rec.modulus_or_tolerance = std::to_string(p);
  rec.status = (ap == gam && gam == jac) ? Status::pass : Status::fail;
  return rec;
}

/// Sign on the right-hand side of the supercongruences.
enum class SupercongruenceSign { as_stated, corrected };

inline const char* to_string(SupercongruenceSign s) { return s == SupercongruenceSign::as_stated ? "as_stated" : "corrected"; }

/// Omega_{j,Q_p} F(HD4(j/12); -1)_{p-1} == (a_p)_0 a_p(f3) mod p^2 (as stated); corrected uses -(a_p)_0 a_p(f3).
inline VerificationRecord supercongruence_check_4(int j, long long p,
                                                  SupercongruenceSign sign = SupercongruenceSign::as_stated) {
  detail::require_family_prime(j, p);
  VerificationRecord rec;
  rec.check_id = std::string("padic.supercongruence_4.") + to_string(sign);
  rec.param("j", j).param("p", p);
  RecordTimer timer(rec);
  const long long K = 2;
  const auto F = truncated_f(make_hd4(j), Rational(-1), p, K);
  const auto lhs = omega_padic(j, p, K) * F;
  auto rhs = unit_root_f2(j, p, K).unit * PadicResidue::from_integer(eigen_ap_f3(family_D(j), p), p, K);
  if (sign == SupercongruenceSign::corrected) rhs = -rhs;
  rec.lhs = lhs.str(K);
  rec.rhs = rhs.str(K);
  rec.modulus_or_tolerance = mod_label(p, K);
  rec.status = congruent(lhs, rhs, K) ? Status::pass : Status::fail;
  return rec;
}

/// Omega_{j,Q_p} F(HD5(j/12); -1)_{p-1} == (a_p)_1 a_p(f3) mod p^K (as stated), K = 2 or 3.
inline VerificationRecord supercongruence_check_5(int j, long long p,
                                                  SupercongruenceSign sign = SupercongruenceSign::as_stated,
                                                  long long K = 2) {
  detail::require_family_prime(j, p);
  require(K == 2 || K == 3, ErrorKind::parameter, "modulus exponent must be 2 or 3");
  VerificationRecord rec;
  rec.check_id = std::string("padic.supercongruence_5.") + to_string(sign);
  rec.param("j", j).param("p", p).param("power", K);
  RecordTimer timer(rec);
  const auto F = truncated_f5(j, p, K);
  const auto lhs = omega_padic(j, p, K) * F;
  auto rhs = unit_root_f2(j, p, K).complement * PadicResidue::from_integer(eigen_ap_f3(family_D(j), p), p, K);
  if (sign == SupercongruenceSign::corrected) rhs = -rhs;
  rec.lhs = lhs.str(K);
  rec.rhs = rhs.str(K);
  rec.modulus_or_tolerance = mod_label(p, K);
  rec.status = congruent(lhs, rhs, K) ? Status::pass : Status::fail;
  return rec;
}

/// (a_p)_0 + p (a_p)_0^{-1} == a_p(f2) mod p^3 with (a_p)_0 a unit.
inline VerificationRecord unit_root_check(int j, long long p) {
  detail::require_family_prime(j, p);
  VerificationRecord rec;
  rec.check_id = "padic.unit_root";
  rec.param("j", j).param("p", p);
  RecordTimer timer(rec);
  const long long K = 3;
  const auto u = unit_root_f2(j, p, K);
  const auto sum = u.unit + u.complement;
  const auto ap = PadicResidue::from_integer(eigen_ap_f2(family_D(j), p), p, K);
  rec.lhs = sum.str(K);
  rec.rhs = ap.str(K);
  rec.modulus_or_tolerance = mod_label(p, K);
  rec.note = "v((a_p)_0)=" + std::to_string(u.unit.valuation()) + " v((a_p)_1)=" + std::to_string(u.complement.valuation());
  rec.status = (u.unit.is_unit() && u.complement.valuation() == 1 && congruent(sum, ap, K)) ? Status::pass : Status::fail;
  return rec;
}

/// F(HD4(1/2); -1)_{p-1} == p 3F2(1/2,1/2,3/4; 1,5/4; 1)_{p-1} mod p^2.
inline VerificationRecord truncated_version_check(long long p) {
  require(nt::is_prime(static_cast<u64>(p)) && p % 4 == 1, ErrorKind::parameter, "p must be a prime that is 1 mod 4");
  VerificationRecord rec;
  rec.check_id = "padic.truncated_version";
  rec.param("p", p);
  RecordTimer timer(rec);
  const Rational h = rat(1, 2);
  const auto lhs = truncated_f(make_hd4(6), Rational(-1), p, 2);
  const Rational s = p * truncated_sum_exact({h, h, rat(3, 4)}, {1, 1, rat(5, 4)}, 1, p);
  const auto rhs = PadicResidue::from_rational(s, p, 4);
  rec.lhs = lhs.str(2);
  rec.rhs = rhs.str(2);
  rec.modulus_or_tolerance = mod_label(p, 2);
  rec.status = congruent(lhs, rhs, 2) ? Status::pass : Status::fail;
  return rec;
}

/// p 3F2(1/2,1/2,1-r/2; 1,1+r/2; 1)_{p-1} == -Gamma-quotient 3F2(1/2,1/2,r/2; 1,r+1/2; 1)_{p-1} mod p^2.
inline VerificationRecord key1_check(int j, long long p) {
  detail::require_family_prime(j, p);
  VerificationRecord rec;
  rec.check_id = "padic.key1";
  rec.param("j", j).param("p", p);
  RecordTimer timer(rec);
  const Rational r = rat(j, 12), h = rat(1, 2);
  // individual left terms can have valuation -1; only p times the exact sum is integral
  const Rational left = p * truncated_sum_exact({h, h, 1 - r / 2}, {1, 1, 1 + r / 2}, 1, p);
  const Rational right = truncated_sum_exact({h, h, r / 2}, {1, 1, r + h}, 1, p);
  const auto& G = GammaPTable::shared(p, 2);
  const auto c = -(G(r / 2) * G(r) / (G((1 + r) / 2) * G(r + h)));
  const auto L = PadicResidue::from_rational(left, p, 4);
  const auto R = c * PadicResidue::from_rational(right, p, 4);
  rec.lhs = L.str(2);
  rec.rhs = R.str(2);
  rec.modulus_or_tolerance = mod_label(p, 2);
  rec.status = congruent(L, R, 2) ? Status::pass : Status::fail;
  return rec;
}

/// C_l(xi) = prod_{i<=l} Gamma_p(xi_i) / prod_{i>l} Gamma_p(xi_i)
inline PadicResidue c_ell(const std::vector<Rational>& xi, std::size_t ell, long long p, long long k) {
  const auto& G = GammaPTable::shared(p, k);
  PadicResidue v = PadicResidue::unit(1, p, k);
  for (std::size_t i = 0; i < xi.size(); ++i) v = i < ell ? v * G(xi[i]) : v / G(xi[i]);
  return v;
}

/// (1/n) sum_j C_l(xi + w_j v p) == C_l(xi) mod p^K.
inline VerificationRecord perturbation_average_check(const std::vector<Rational>& xi, std::size_t ell,
                                                     const std::vector<Rational>& v, const std::vector<Rational>& w,
                                                     long long p, long long K = 2) {
  require(xi.size() == v.size() && ell <= xi.size(), ErrorKind::parameter, "xi and v must have equal length, l <= m");
  require(!w.empty(), ErrorKind::parameter, "w must be nonempty");
  Rational wsum = 0;
  for (const auto& x : w) wsum += x;
  require(wsum == 0, ErrorKind::parameter, "the weights w must sum to 0");
  const long long n = static_cast<long long>(w.size());
  require(n % p != 0, ErrorKind::parameter, "p divides n");
  detail::require_p_integral(xi, p);
  detail::require_p_integral(v, p);
  detail::require_p_integral(w, p);
  VerificationRecord rec;
  rec.check_id = "padic.perturbation_average";
  std::string xs;
  for (const auto& x : xi) xs += (xs.empty() ? "" : ",") + to_string(x);
  std::string vs;
  for (const auto& x : v) vs += (vs.empty() ? "" : ",") + to_string(x);
  std::string ws;
  for (const auto& x : w) ws += (ws.empty() ? "" : ",") + to_string(x);
  rec.param("xi", xs).param("l", static_cast<long long>(ell)).param("v", vs).param("w", ws).param("p", p);
  RecordTimer timer(rec);
  PadicResidue acc = PadicResidue::zero(p, K);
  for (const auto& wj : w) {
    std::vector<Rational> moved = xi;
    for (std::size_t i = 0; i < xi.size(); ++i) moved[i] += wj * v[i] * p;
    acc = acc + c_ell(moved, ell, p, K);
  }
  const auto avg = acc / PadicResidue::from_integer(n, p, K);
  const auto base = c_ell(xi, ell, p, K);
  rec.lhs = avg.str(K);
  rec.rhs = base.str(K);
  rec.modulus_or_tolerance = mod_label(p, K);
  rec.status = congruent(avg, base, K) ? Status::pass : Status::fail;
  return rec;
}

/// Omega^{-1} (a_p)_1 a_p(f3) / p mod p.
inline PadicResidue egk_obstruction(int j, long long p) {
  detail::require_family_prime(j, p);
  const auto u = unit_root_f2(j, p, 2);
  const auto a3 = PadicResidue::from_integer(eigen_ap_f3(family_D(j), p), p, 2);
  const auto v = u.complement * a3 / (omega_padic(j, p, 2) * PadicResidue::from_integer(p, p, 3));
  return v.is_zero() ? PadicResidue::zero(p, 1) : PadicResidue::from_integer(static_cast<long long>(v.residue(1)), p, 1);
}

}  // namespace hgm
