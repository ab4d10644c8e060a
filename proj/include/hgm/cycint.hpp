#pragma once

#include <complex>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "hgm/core/error.hpp"
#include "hgm/core/ntheory.hpp"

namespace hgm {

namespace detail {

inline long long ck_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::domain, "cyclotomic coefficient overflow");
  return r;
}
inline long long ck_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::domain, "cyclotomic coefficient overflow");
  return r;
}

// Phi_M, coefficients from x^0 upwards.
inline const std::vector<long long>& cyclotomic_poly(long long M) {
  static std::mutex mu;
  static std::map<long long, std::vector<long long>> memo;
  {
    std::lock_guard lock(mu);
    auto it = memo.find(M);
    if (it != memo.end()) return it->second;
  }
  // x^M - 1 divided by Phi_d for every proper divisor d
  std::vector<long long> poly(static_cast<std::size_t>(M + 1), 0);
  poly[0] = -1;
  poly[M] = 1;
  for (long long d = 1; d < M; ++d) {
    if (M % d) continue;
    const auto& q = cyclotomic_poly(d);
    const std::size_t dq = q.size() - 1;
    std::vector<long long> out(poly.size() - dq, 0);
    for (std::size_t k = poly.size() - 1; k + 1 > dq; --k) {
      long long c = poly[k];
      out[k - dq] = c;
      for (std::size_t i = 0; i <= dq; ++i) poly[k - dq + i] -= c * q[i];
      if (k == dq) break;
    }
    poly = out;
  }
  std::lock_guard lock(mu);
  return memo.emplace(M, poly).first->second;
}

}  // namespace detail

/// Element of Z[zeta_M] on the power basis 1, zeta, ..., zeta^{phi(M)-1}.
class CycInt {
 public:
  CycInt() : CycInt(1) {}
  explicit CycInt(long long M) : M_(M) {
    require(M >= 1, ErrorKind::parameter, "cyclotomic order must be positive");
    coeffs_.assign(static_cast<std::size_t>(nt::euler_phi(static_cast<nt::u64>(M))), 0);
  }

  static CycInt integer(long long M, long long n) {
    CycInt z(M);
    z.coeffs_[0] = n;
    return z;
  }

  // zeta_M^e
  static CycInt root_power(long long M, long long e) {
    std::vector<long long> v(static_cast<std::size_t>(M), 0);
    v[nt::mod(e, static_cast<nt::u64>(M))] = 1;
    return from_powers(M, v);
  }

  // sum counts[k] zeta^k for any length, reduced mod Phi_M
  static CycInt from_powers(long long M, std::vector<long long> v) {
    const auto& phi = detail::cyclotomic_poly(M);
    const std::size_t d = phi.size() - 1;
    for (std::size_t k = v.size(); k-- > d;) {
      long long c = v[k];
      if (c == 0) continue;
      for (std::size_t i = 0; i <= d; ++i) v[k - d + i] = detail::ck_add(v[k - d + i], -detail::ck_mul(c, phi[i]));
    }
    CycInt z(M);
    for (std::size_t i = 0; i < d && i < v.size(); ++i) z.coeffs_[i] = v[i];
    return z;
  }

  long long order() const { return M_; }
  const std::vector<long long>& coeffs() const { return coeffs_; }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  long long rational_value() const {
    require(is_rational(), ErrorKind::consistency, "cyclotomic integer is not rational: " + str());
    return coeffs_[0];
  }

  // Same element in Z[zeta_L], L a multiple of M.
  CycInt lift(long long L) const {
    require(L % M_ == 0, ErrorKind::parameter, "lift needs a multiple of the order");
    std::vector<long long> v(static_cast<std::size_t>(L), 0);
    const long long f = L / M_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * f] = coeffs_[i];
    return from_powers(L, v);
  }

  // zeta -> zeta^k, k coprime to M
  CycInt sigma(long long k) const {
    require(std::gcd(nt::mod(k, static_cast<nt::u64>(M_)), static_cast<nt::u64>(M_)) == 1, ErrorKind::parameter,
            "sigma_k needs k coprime to the order");
    std::vector<long long> v(static_cast<std::size_t>(M_), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      auto e = nt::mod(static_cast<long long>(i) * k, static_cast<nt::u64>(M_));
      v[e] = detail::ck_add(v[e], coeffs_[i]);
    }
    return from_powers(M_, v);
  }

  CycInt conj() const { return sigma(-1); }

  // sum c_i z^i mod m, for z any image of zeta_M in Z/m
  long long eval_mod(long long z, long long m) const {
    nt::u64 acc = 0, pw = 1 % m;
    for (long long c : coeffs_) {
      acc = (acc + nt::mulmod(nt::mod(c, m), pw, m)) % m;
      pw = nt::mulmod(pw, nt::mod(z, m), m);
    }
    return static_cast<long long>(acc);
  }

  template <class Real>
  std::complex<Real> embed_value() const {
    std::complex<Real> s = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const long double ang = 2 * std::numbers::pi_v<long double> * static_cast<long double>(i) / M_;
      s += static_cast<Real>(coeffs_[i]) * std::complex<Real>(static_cast<Real>(std::cos(ang)), static_cast<Real>(std::sin(ang)));
    }
    return s;
  }

  long long l1_norm() const {
    long long s = 0;
    for (long long c : coeffs_) s = detail::ck_add(s, std::llabs(c));
    return s;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += coeffs_[i] < 0 ? " - " : " + ";
      else if (coeffs_[i] < 0) out += "-";
      long long a = std::llabs(coeffs_[i]);
      if (i == 0) out += std::to_string(a);
      else {
        if (a != 1) out += std::to_string(a) + "*";
        out += "z" + std::to_string(M_) + (i > 1 ? "^" + std::to_string(i) : "");
      }
    }
    return out.empty() ? "0" : out;
  }

  friend CycInt operator+(const CycInt& a, const CycInt& b) {
    auto [x, y] = common(a, b);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] = detail::ck_add(x.coeffs_[i], y.coeffs_[i]);
    return x;
  }
  friend CycInt operator-(const CycInt& a) {
    CycInt z = a;
    for (auto& c : z.coeffs_) c = -c;
    return z;
  }
  friend CycInt operator-(const CycInt& a, const CycInt& b) { return a + (-b); }
  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    auto [x, y] = common(a, b);
    std::vector<long long> v(x.coeffs_.size() * 2, 0);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (std::size_t k = 0; k < y.coeffs_.size(); ++k)
        v[i + k] = detail::ck_add(v[i + k], detail::ck_mul(x.coeffs_[i], y.coeffs_[k]));
    }
    return from_powers(x.M_, v);
  }
  friend CycInt operator*(long long n, const CycInt& a) {
    CycInt z = a;
    for (auto& c : z.coeffs_) c = detail::ck_mul(c, n);
    return z;
  }
  friend bool operator==(const CycInt& a, const CycInt& b) {
    auto [x, y] = common(a, b);
    return x.coeffs_ == y.coeffs_;
  }

 private:
  static std::pair<CycInt, CycInt> common(const CycInt& a, const CycInt& b) {
    if (a.M_ == b.M_) return {a, b};
    const long long L = nt::lcm(a.M_, b.M_);
    return {a.lift(L), b.lift(L)};
  }

  long long M_;
  std::vector<long long> coeffs_;
};

}  // namespace hgm
