#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "hgm/core/error.hpp"
#include "hgm/core/rational.hpp"
#include "hgm/core/record.hpp"
#include "hgm/fixtures.hpp"
#include "hgm/hyperdata.hpp"
#include "hgm/qmodular.hpp"

namespace hgm {

template <unsigned Digits>
using RealN = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                            boost::multiprecision::et_off>;
using Real = RealN<60>;
using RealHi = RealN<120>;

template <class R>
inline constexpr int digits_of = std::numeric_limits<R>::digits10;

// Scratch precision for ill-conditioned extrapolation.
template <class R>
using WideOf = RealN<2 * std::numeric_limits<R>::digits10 + 40>;

template <class R>
R pi_v() {
  return boost::math::constants::pi<R>();
}

template <class R>
R to_real(const Rational& x) {
  return R(num(x).str().c_str()) / R(den(x).str().c_str());
}

template <class R>
R pow10(int e) {
  return pow(R(10), e);
}

template <class R>
std::string decimal(const R& x, int digits = 30) {
  return x.str(digits, std::ios_base::scientific);
}

/// a + bi over a multiprecision real.
template <class R>
struct Cx {
  R re{0}, im{0};
  Cx() = default;
  Cx(R a) : re(std::move(a)) {}
  Cx(R a, R b) : re(std::move(a)), im(std::move(b)) {}

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cx operator*(const R& s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    const R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cx& operator+=(const Cx& b) { return *this = *this + b; }
  Cx conj() const { return {re, -im}; }
  R abs() const { return sqrt(re * re + im * im); }
};

template <class R>
Cx<R> cexp(const Cx<R>& z) {
  const R m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

template <class R>
Cx<R> csqrt(const Cx<R>& z) {
  const R m = z.abs();
  if (m == 0) return {};
  R a = sqrt((m + abs(z.re)) / 2);
  if (z.re >= 0) return {a, z.im / (2 * a)};
  R b = z.im >= 0 ? a : R(-a);
  return {abs(z.im) / (2 * a), b};
}

template <class R>
std::string decimal(const Cx<R>& z, int digits = 30) {
  return decimal(z.re, digits) + (z.im < 0 ? " - " : " + ") + decimal(R(abs(z.im)), digits) + "i";
}

// ---------------------------------------------------------------- Gamma, Beta

inline bool is_pole(const Rational& x) { return is_integer(x) && x <= 0; }

template <class R = Real>
R gamma_real(const Rational& x) {
  require(!is_pole(x), ErrorKind::domain, "Gamma has a pole at " + to_string(x));
  return boost::multiprecision::tgamma(to_real<R>(x));
}

/// B(a,b); negative non-integers go through MPFR's reflection-aware Gamma.
template <class R = Real>
R beta(const Rational& a, const Rational& b) {
  require(!is_pole(a) && !is_pole(b), ErrorKind::domain, "Beta has a pole at (" + to_string(a) + "," + to_string(b) + ")");
  if (is_pole(a + b)) return R(0);
  return gamma_real<R>(a) * gamma_real<R>(b) / gamma_real<R>(a + b);
}

// ---------------------------------------------------------------- AGM kernel

template <class R>
R agm(R a, R b) {
  // the gap squares each step, so (a+b)/2 is exact to ~gap^2 once the gap is below 10^{-d/2}
  const R eps = pow10<R>(-digits_of<R> / 2 - 3);
  for (int it = 0; it < 200; ++it) {
    if (abs(a - b) <= eps * a) return (a + b) / 2;
    R an = (a + b) / 2;
    b = sqrt(a * b);
    a = an;
  }
  fail(ErrorKind::precision, "AGM did not converge");
}

/// 2F1(1/2,1/2;1;lambda) with 1 - lambda passed separately so lambda near 1 keeps its digits.
template <class R>
R f21_agm_split(const R& lambda, const R& complement) {
  require(lambda >= 0 && complement > 0, ErrorKind::domain, "2F1(1/2,1/2;1;x) needs 0 <= x < 1");
  (void)lambda;
  return 1 / agm(R(1), sqrt(complement));
}

template <class R = Real>
R f21_agm(const R& lambda) {
  require(lambda >= 0 && lambda < 1, ErrorKind::domain, "2F1(1/2,1/2;1;x) needs 0 <= x < 1");
  return f21_agm_split(lambda, R(1 - lambda));
}

// ---------------------------------------------------------------- quadrature

template <class R>
struct Estimate {
  R value{0};
  R error{0};
};

/// Double-exponential rule on (0,1); f receives (x, 1-x).
template <class R, class F>
Estimate<R> de_quadrature(F&& f) {
  const R pi = pi_v<R>();
  const R tiny = pow10<R>(-digits_of<R> - 12);
  auto point = [&](const R& t) -> R {
    const R u = pi / 2 * sinh(t);
    R x, xc;
    if (u >= 0) {
      const R e = exp(-2 * u);
      x = 1 / (1 + e);
      xc = e / (1 + e);
    } else {
      const R e = exp(2 * u);
      x = e / (1 + e);
      xc = 1 / (1 + e);
    }
    if (x == 0 || xc == 0) return R(0);
    const R w = pi * cosh(t) * x * xc;
    return f(x, xc) * w;
  };

  // range from a coarse scan
  const int base = 8;
  R h = R(1) / base;
  R sum = point(R(0));
  int kmax[2] = {0, 0};
  for (int side = 0; side < 2; ++side) {
    const int sgn = side ? -1 : 1;
    int small = 0;
    for (int k = 1; k <= 12 * base; ++k) {
      const R v = point(R(sgn * k) / base);
      sum += v;
      kmax[side] = k;
      if (abs(v) <= tiny * abs(sum)) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
    }
  }
  R prev = h * sum;
  for (int level = 1; level <= 12; ++level) {
    h /= 2;
    const int scale = base << level;
    for (int side = 0; side < 2; ++side) {
      const int sgn = side ? -1 : 1;
      const long long top = static_cast<long long>(kmax[side]) << level;
      for (long long k = 1; k <= top; k += 2) sum += point(R(sgn * k) / scale);
    }
    const R cur = h * sum;
    const R diff = abs(cur - prev);
    if (level >= 2 && diff <= pow10<R>(-digits_of<R> + 8) * abs(cur)) return {cur, diff + tiny * abs(cur)};
    prev = cur;
  }
  fail(ErrorKind::precision, "double-exponential quadrature did not settle");
}

// ---------------------------------------------------------------- series at +-1

namespace detail {

template <class W>
std::vector<W> solve_linear(std::vector<std::vector<W>> A, std::vector<W> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    require(A[c][c] != 0, ErrorKind::precision, "singular extrapolation system");
    for (std::size_t r = c + 1; r < n; ++r) {
      const W f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<W> x(n);
  for (std::size_t i = n; i-- > 0;) {
    W s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= A[i][k] * x[k];
    x[i] = s / A[i][i];
  }
  return x;
}

template <class W>
W richardson_limit(const std::vector<W>& sums, const std::vector<long long>& Ks, const W& sigma, std::size_t m) {
  std::vector<std::vector<W>> A(m + 1, std::vector<W>(m + 1));
  std::vector<W> b(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    const W K(Ks[i]);
    A[i][0] = 1;
    W kp = pow(K, -sigma);
    for (std::size_t n = 0; n < m; ++n) {
      A[i][n + 1] = kp;
      kp /= K;
    }
    b[i] = sums[i];
  }
  return solve_linear(std::move(A), std::move(b))[0];
}

}  // namespace detail

/// 3F2(a,b,c;d,e;1) from partial sums with the tail K^{-sigma} sum c_n K^{-n} extrapolated away.
template <class R = Real>
Estimate<R> hyp3f2_one(const Rational& a, const Rational& b, const Rational& c, const Rational& d, const Rational& e) {
  using W = WideOf<R>;
  const Rational sigma = d + e - a - b - c;
  require(sigma > 0, ErrorKind::domain, "3F2(1) diverges: d+e-a-b-c = " + to_string(sigma));
  require(!is_pole(d) && !is_pole(e), ErrorKind::domain, "lower parameter at a pole");
  const std::size_t m = 24;
  const long long K0 = 200;
  std::vector<long long> Ks;
  for (std::size_t i = 0; i <= m; ++i) Ks.push_back(K0 * static_cast<long long>(i + 1));
  const W A = to_real<W>(a), B = to_real<W>(b), C = to_real<W>(c), D = to_real<W>(d), E = to_real<W>(e);
  std::vector<W> sums;
  W S = 0, t = 1;
  for (long long k = 0, idx = 0; idx < static_cast<long long>(Ks.size()); ++k) {
    if (k == Ks[static_cast<std::size_t>(idx)]) {
      sums.push_back(S);
      ++idx;
    }
    S += t;
    const W kk(k);
    t *= (A + kk) * (B + kk) * (C + kk) / ((D + kk) * (E + kk) * (kk + 1));
    if (t == 0) {
      // terminating series
      return {R(S), R(0)};
    }
  }
  const W sg = to_real<W>(sigma);
  const W full = detail::richardson_limit(sums, Ks, sg, m);
  std::vector<W> fewer(sums.begin(), sums.begin() + static_cast<long>(m - 3));
  std::vector<long long> kf(Ks.begin(), Ks.begin() + static_cast<long>(m - 3));
  const W coarse = detail::richardson_limit(fewer, kf, sg, m - 4);
  return {R(full), R(abs(full - coarse))};
}

/// sum_k (-1)^k a_k by the Chebyshev weights of Cohen, Rodriguez Villegas and Zagier.
template <class R, class Terms>
R alternating_sum(Terms&& a, int n) {
  R d = pow(3 + sqrt(R(8)), n);
  d = (d + 1 / d) / 2;
  R b = -1, c = -d, s = 0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a(k);
    b = R(k + n) * R(k - n) * b / ((R(k) + R(1) / 2) * R(k + 1));
  }
  return s / d;
}

/// pFq(alpha; beta; -1); beta lists the full lower row (a 1 stands for k!).
template <class R = Real>
Estimate<R> hyp_alternating(const std::vector<Rational>& alpha, const std::vector<Rational>& beta) {
  for (const auto& b : beta) require(!is_pole(b), ErrorKind::domain, "lower parameter at a pole");
  const int n = static_cast<int>(std::ceil(digits_of<R> * 1.31)) + 12;
  std::vector<R> terms;
  terms.reserve(static_cast<std::size_t>(n + 24));
  std::vector<R> A, B;
  for (const auto& x : alpha) A.push_back(to_real<R>(x));
  for (const auto& x : beta) B.push_back(to_real<R>(x));
  R t = 1;
  for (int k = 0; k < n + 24; ++k) {
    terms.push_back(t);
    for (const auto& x : A) t *= x + k;
    for (const auto& x : B) t /= x + k;
  }
  auto at = [&](int k) -> const R& { return terms[static_cast<std::size_t>(k)]; };
  const R s1 = alternating_sum<R>(at, n), s2 = alternating_sum<R>(at, n + 24);
  const R err = abs(s1 - s2);
  require(err <= pow10<R>(-digits_of<R> / 2) * std::max(R(1), abs(s2)), ErrorKind::precision,
          "alternating acceleration did not converge");
  return {s2, err};
}

// ---------------------------------------------------------------- period values

template <class R>
struct PeriodValue {
  Rational r, s;
  R value{0};
  R quadrature{0};
  R series{0};
  R error{0};
};

/// P(r,s) = pi int_0^1 x^{r-1} (1-x)^{s-r-1} 2F1(1/2,1/2;1;x) dx
template <class R = Real>
Estimate<R> p_value_quadrature(const Rational& r, const Rational& s) {
  require(r > 0 && s - r > 0, ErrorKind::domain, "P(r,s) needs r > 0 and s > r");
  const R a = to_real<R>(r - 1), b = to_real<R>(s - r - 1);
  auto est = de_quadrature<R>([&](const R& x, const R& xc) { return pow(x, a) * pow(xc, b) * f21_agm_split(x, xc); });
  const R pi = pi_v<R>();
  return {pi * est.value, pi * est.error};
}

/// P(r,s) = pi B(r, s-r) 3F2(1/2,1/2,r;1,s;1)
template <class R = Real>
Estimate<R> p_value_series(const Rational& r, const Rational& s) {
  require(r > 0 && s - r > 0, ErrorKind::domain, "P(r,s) needs r > 0 and s > r");
  const Rational h = rat(1, 2);
  const auto f = hyp3f2_one<R>(h, h, r, Rational(1), s);
  const R c = pi_v<R>() * beta<R>(r, s - r);
  return {c * f.value, abs(c) * f.error};
}

template <class R = Real>
PeriodValue<R> p_value(const Rational& r, const Rational& s) {
  PeriodValue<R> out;
  out.r = r;
  out.s = s;
  const auto a = p_value_quadrature<R>(r, s);
  const auto b = p_value_series<R>(r, s);
  out.quadrature = a.value;
  out.series = b.value;
  out.value = a.value;
  out.error = abs(a.value - b.value);
  const int agree = std::min(digits_of<R> / 2, 30);
  require(out.error <= pow10<R>(-agree) * abs(a.value), ErrorKind::precision,
          "P(" + to_string(r) + "," + to_string(s) + ") quadrature and series disagree by " + decimal(out.error, 5));
  return out;
}

/// P(m/24) = P(m/24, (24-m)/24 + floor(m/12))
template <class R = Real>
R p_m24(int m) {
  return p_value<R>(rat(m, 24), rat(24 - m, 24) + m / 12).value;
}

// ---------------------------------------------------------------- F(HD; -1)

enum class Length { length4, length5 };

/// F(HD4(j/12); -1) or F(HD5(j/12); -1) by accelerated summation, checked against the Whipple reduction.
template <class R = Real>
Estimate<R> f_minus1(int j, Length variant) {
  check_family_index(j);
  const auto hd = variant == Length::length4 ? make_hd4(j) : make_hd5(j);
  const auto series = hyp_alternating<R>(hd.alpha, hd.beta);
  // second route: C(r) 3F2(1/2,1/2,a; 1,s; 1) = C(r) P(a,s) / (pi B(a, s-a))
  const auto w = whipple_reduce(j, variant == Length::length4 ? WhippleVariant::length4 : WhippleVariant::length5);
  R pref = to_real<R>(w.prefactor.scalar);
  for (const auto& [arg, e] : w.prefactor.factors) pref *= pow(gamma_real<R>(arg), e);
  const Rational a = w.target.alpha[0], s = w.target.beta[1];
  const auto P = p_value_quadrature<R>(a, s);
  const R viaw = pref * P.value / (pi_v<R>() * beta<R>(a, s - a));
  const R diff = abs(viaw - series.value);
  require(diff <= pow10<R>(-std::min(digits_of<R> / 2, 30)) * abs(viaw), ErrorKind::precision,
          "series and Whipple routes disagree at j=" + std::to_string(j));
  return {series.value, diff + series.error};
}

template <class R = Real>
R omega_c(int j) {
  check_family_index(j);
  const Rational r = rat(j, 12);
  const R g = gamma_real<R>(r) / gamma_real<R>(r + rat(1, 2));
  return pi_v<R>() / sin(pi_v<R>() * to_real<R>(r)) * g * g;
}

/// L(K1(r,s), 1) = 2^{1-4r} B(r, s-r-1/2)
template <class R = Real>
R l_k1_closed(const Rational& r, const Rational& s) {
  return pow(R(2), to_real<R>(1 - 4 * r)) * beta<R>(r, s - r - rat(1, 2));
}

// K(r) = K1((1-r)/2, 1+r/2), E(r) = K1(-r/2, (3+r)/2)
inline std::pair<Rational, Rational> k_of(const Rational& r) { return {(1 - r) / 2, 1 + r / 2}; }
inline std::pair<Rational, Rational> e_of(const Rational& r) { return {-r / 2, (3 + r) / 2}; }

template <class R = Real>
R l_K(const Rational& r) {
  auto [a, b] = k_of(r);
  return l_k1_closed<R>(a, b);
}

template <class R = Real>
R l_E(const Rational& r) {
  auto [a, b] = e_of(r);
  return l_k1_closed<R>(a, b);
}

// ---------------------------------------------------------------- eta quotients and L-values

/// Image of an eta quotient under tau -> -1/(N tau): f(-1/(N tau)) = sqrt(constant_sq) (tau/i)^weight g(tau).
struct FrickeImage {
  Rational constant_sq;
  Rational weight;
  EtaQuotient image;
  long long level = 1;
};

inline FrickeImage fricke_transform(const EtaQuotient& q, long long N) {
  require(N > 0, ErrorKind::parameter, "Fricke level must be positive");
  FrickeImage out;
  out.level = N;
  out.constant_sq = 1;
  out.weight = q.weight();
  for (const auto& f : q.normalized().factors) {
    const Rational t = Rational(N) / f.scale;
    require(is_integer(t), ErrorKind::domain, "eta scale " + to_string(f.scale) + " does not divide " + std::to_string(N));
    Rational c = 1;
    for (int i = 0; i < std::abs(f.exponent); ++i) c *= t;
    out.constant_sq *= f.exponent > 0 ? c : 1 / c;
    out.image.factors.push_back({t, f.exponent});
  }
  out.image = out.image.normalized();
  return out;
}

template <class R>
R fricke_constant(const FrickeImage& img) {
  return sqrt(to_real<R>(img.constant_sq));
}

/// eta quotient at a point of the upper half plane, by the product.
template <class R>
Cx<R> eta_quotient_value(const EtaQuotient& q, const Cx<R>& tau) {
  require(tau.im > 0, ErrorKind::domain, "tau must lie in the upper half plane");
  const R two_pi = 2 * pi_v<R>();
  const R eps = pow10<R>(-digits_of<R> - 5);
  Cx<R> total(R(1));
  for (const auto& f : q.normalized().factors) {
    const R m = to_real<R>(f.scale);
    const Cx<R> z = m * tau;
    // q = exp(2 pi i z)
    const Cx<R> qq = cexp(Cx<R>(-two_pi * z.im, two_pi * z.re));
    Cx<R> prod = cexp(Cx<R>(-two_pi * z.im / 24, two_pi * z.re / 24));
    Cx<R> qn = qq;
    for (int n = 1; n < 100000; ++n) {
      prod = prod * (Cx<R>(R(1)) - qn);
      if (qn.abs() < eps) break;
      qn = qn * qq;
    }
    for (int i = 0; i < std::abs(f.exponent); ++i) total = f.exponent > 0 ? total * prod : total / prod;
  }
  return total;
}

template <class R>
struct LValue {
  std::string form;
  int k = 1;
  Cx<R> value;
  R error{0};
};

namespace detail {

// sum_c a_c Gamma(s, 2 pi c y)/(2 pi c)^s over the expansion, s a positive integer
template <class R>
R incomplete_gamma_sum(const EtaQuotient& q, int s, const R& y) {
  require(q.leading_exponent() > 0, ErrorKind::domain, "eta quotient " + q.key() + " is not cuspidal at this cusp");
  const R two_pi = 2 * pi_v<R>();
  // first omitted term below 10^{-digits-10}
  const double need = (digits_of<R> + 10) * std::log(10.0) + 40.0;
  const double ymin = static_cast<double>(y);
  const Rational cut = Rational(static_cast<long long>(std::ceil(need / (2 * M_PI * ymin))) + 2);
  const auto ser = expand_eta_quotient(q, cut);
  R total = 0;
  R fact = 1;
  for (int i = 2; i < s; ++i) fact *= i;
  for (std::size_t i = 0; i < ser.coeffs.size(); ++i) {
    const auto a = ser.coeffs[i];
    if (a == 0) continue;
    const R c = R(ser.offset + static_cast<long long>(i)) / ser.grid;
    const R x = two_pi * c * y;
    // Gamma(s, x) = (s-1)! e^{-x} sum_{j<s} x^j / j!
    R poly = 0, term = 1;
    for (int jj = 0; jj < s; ++jj) {
      poly += term;
      term *= x / (jj + 1);
    }
    total += R(a) * fact * exp(-x) * poly / pow(two_pi * c, s);
  }
  return total;
}

}  // namespace detail

/// L(f, k) = (2 pi)^k / Gamma(k) int_0^inf f(iy) y^{k-1} dy, split at 1/sqrt(N) and folded by the Fricke involution.
template <class R = Real>
LValue<R> lvalue_eta(const EtaQuotient& q, long long N, int k) {
  require(k == 1 || k == 2, ErrorKind::parameter, "only L(f,1) and L(f,2) are supported");
  const Rational w = q.weight();
  require(is_integer(w) && w > k, ErrorKind::domain, "weight must be an integer above k");
  const auto img = fricke_transform(q, N);
  const R y0 = 1 / sqrt(R(N));
  const R upper = detail::incomplete_gamma_sum<R>(q, k, y0);
  const int wk = static_cast<int>(to_ll(w)) - k;
  const R lower = fricke_constant<R>(img) * pow(R(N), -k) * detail::incomplete_gamma_sum<R>(img.image, wk, y0);
  R gk = 1;
  for (int i = 2; i < k; ++i) gk *= i;
  LValue<R> out;
  out.form = q.key() + "@" + std::to_string(N);
  out.k = k;
  out.value = Cx<R>(pow(2 * pi_v<R>(), k) / gk * (upper + lower));
  out.error = pow10<R>(-digits_of<R> + 5) * abs(out.value.re);
  return out;
}

/// eta quotient of K2(r,s)(N tau)
inline EtaQuotient k2_eta_scaled(const Rational& r, const Rational& s, long long N) {
  auto q = k_eta_quotient(KFamily::k2, r, s);
  for (auto& f : q.factors) f.scale *= N;
  return q;
}

inline EtaQuotient k1_eta_scaled(const Rational& r, const Rational& s, long long N) {
  auto q = k_eta_quotient(KFamily::k1, r, s);
  for (auto& f : q.factors) f.scale *= N;
  return q;
}

/// L(K2(r,s)(N tau), k) with the period cross-check
/// P(r,s) = 2^{4r-1} N pi L(K2(r,s)(N.),1) and P(s-r,s) = 2^{4r-2} N^2 L(K2(r,s)(N.),2).
template <class R = Real>
LValue<R> lvalue_k2(const Rational& r, const Rational& s, long long N, int k) {
  require(in_s2(r, s), ErrorKind::parameter, "(" + to_string(r) + "," + to_string(s) + ") is not in S2");
  auto L = lvalue_eta<R>(k2_eta_scaled(r, s, N), 2 * N, k);
  L.form = "K2(" + to_string(r) + "," + to_string(s) + ")(" + std::to_string(N) + "tau)";
  const R pi = pi_v<R>();
  R period, via;
  if (k == 1) {
    period = p_value_quadrature<R>(r, s).value;
    via = pow(R(2), to_real<R>(4 * r - 1)) * N * pi * L.value.re;
  } else {
    period = p_value_quadrature<R>(s - r, s).value;
    via = pow(R(2), to_real<R>(4 * r - 2)) * R(N) * R(N) * L.value.re;
  }
  const R diff = abs(period - via);
  require(diff <= pow10<R>(-std::min(digits_of<R> / 2, 30)) * abs(period), ErrorKind::consistency,
          "period cross-check failed for " + L.form + ": " + decimal(diff, 5));
  L.error = std::max(L.error, diff);
  return L;
}

template <class R>
Cx<R> coeff_value(const AlgebraicCoeff& c) {
  R v = to_real<R>(c.c) * sqrt(R(c.radicand));
  return c.imag ? Cx<R>(R(0), v) : Cx<R>(v);
}

/// sum over fixture members of coeff * chi(member exponent class) * L(member, k)
template <class R = Real>
Cx<R> lvalue_combination(int weight, int D, int k, const std::string& variant = "",
                         const std::function<int(long long)>& chi = nullptr) {
  Cx<R> total;
  for (const auto& m : fixtures().combination(weight, D, variant)) {
    R l;
    long long cls;
    if (weight == 3) {
      l = lvalue_eta<R>(k2_eta_scaled(m.r, m.s, m.N), 2 * m.N, k).value.re;
      // member exponents are = i mod N/2, so the twist must have modulus dividing N/2
      cls = m.i;
      if (chi) {
        const long long step = m.N / 2;
        require(chi(cls) == chi(cls + step), ErrorKind::domain, "twist is not constant on the member support");
      }
    } else {
      l = lvalue_eta<R>(k1_eta_scaled(m.r, m.s, m.N), 2 * m.N, k).value.re;
      cls = 1;
    }
    const int sgn = chi ? chi(cls) : 1;
    if (sgn == 0) continue;
    total += R(sgn) * (coeff_value<R>(m.coeff) * Cx<R>(l));
  }
  return total;
}

// ---------------------------------------------------------------- records

namespace detail {

template <class Fn>
VerificationRecord timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationRecord rec = fn();
  rec.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

template <class R>
VerificationRecord compare(std::string id, const Cx<R>& lhs, const Cx<R>& rhs, double tol) {
  VerificationRecord rec;
  rec.check_id = std::move(id);
  const R scale = std::max(R(1), lhs.abs());
  const R rel = (lhs - rhs).abs() / scale;
  rec.lhs = decimal(lhs);
  rec.rhs = decimal(rhs);
  rec.modulus_or_tolerance = decimal(R(tol), 2);
  rec.error_bound = decimal(rel, 3);
  rec.status = rel <= R(tol) ? Status::pass : Status::fail;
  return rec;
}

template <class R>
VerificationRecord compare(std::string id, const R& lhs, const R& rhs, double tol) {
  auto rec = compare(std::move(id), Cx<R>(lhs), Cx<R>(rhs), tol);
  rec.lhs = decimal(lhs);
  rec.rhs = decimal(rhs);
  return rec;
}

}  // namespace detail

/// Runs fn at 60 digits, then at 120 on a precision failure; digits > 60 starts at 120.
template <class Fn>
auto with_precision(int digits, Fn&& fn) {
  require(digits >= 1 && digits <= 120, ErrorKind::parameter, "precision must be 1..120 digits");
  if (digits > 60) return fn.template operator()<RealHi>();
  try {
    return fn.template operator()<Real>();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::precision) throw;
    return fn.template operator()<RealHi>();
  }
}

enum class ClassicalForm { as_stated, corrected };

inline const char* to_string(ClassicalForm f) { return f == ClassicalForm::as_stated ? "as_stated" : "corrected"; }

/// Omega_C F(HD;-1) as a product of two weight-2/weight-3 L-values, and L(K) L(E), at j.
/// as_stated uses the printed powers of 2; corrected uses the ones the numerics support.
template <class R = Real>
std::vector<VerificationRecord> product_identity_check(int j, ClassicalForm form, double tol = 1e-20) {
  check_family_index(j);
  const Rational r = rat(j, 12);
  const R two = 2, pi = pi_v<R>(), sinj = sin(pi * to_real<R>(r));
  std::vector<VerificationRecord> out;
  const std::string tag = std::string(".") + to_string(form);
  auto [ka, kb] = k_of(r);
  // L(K) from the eta expansion of K1((1-r)/2, 1+r/2) at level 1, independent of the Beta closed form
  const R lk = lvalue_eta<R>(k_eta_quotient(KFamily::k1, ka, kb), 1, 1).value.re;
  out.push_back(detail::timed([&] {
    const R lhs = omega_c<R>(j) * f_minus1<R>(j, Length::length4).value;
    const R lk2 = lvalue_k2<R>(1 - rat(j, 24), 1 + rat(j, 24), 1, 1).value.re;
    const R c = form == ClassicalForm::as_stated ? pow(two, R(j) / 2 - 2) : pow(two, 4 - R(j) / 2);
    return detail::compare("lnum.product_identity.length4" + tag, lhs, R(c * lk * lk2), tol).param("j", j);
  }));
  out.push_back(detail::timed([&] {
    const R lhs = omega_c<R>(j) * f_minus1<R>(j, Length::length5).value;
    const R lk2 = lvalue_k2<R>(rat(12 - j, 24), rat(12 + j, 24), 1, 1).value.re;
    const R c = form == ClassicalForm::as_stated ? -pow(two, R(j) / 2 - 2) : -pow(two, -1 - R(j) / 2);
    return detail::compare("lnum.product_identity.length5" + tag, lhs, R(c * l_E<R>(r) * lk2), tol).param("j", j);
  }));
  out.push_back(detail::timed([&] {
    const R e = form == ClassicalForm::as_stated ? 5 - R(j) / 2 : 3 + R(j) / 2;
    const R rhs = -3 * pow(two, e) * pi / (j * sinj);
    return detail::compare("lnum.legendre_relation" + tag, R(lk * l_E<R>(r)), rhs, tol).param("j", j);
  }));
  return out;
}

// ---------------------------------------------------------------- the Q-defined case j = 6

/// L(f_{32.2.a.a}, 1) from eta(4 tau)^2 eta(8 tau)^2 at level 32.
template <class R = Real>
R l_weight2_j6() {
  return lvalue_eta<R>(parse_eta_spec("4^2,8^2"), 32, 1).value.re;
}

/// L(f_{32.3.c.a}, 1) from the fixture combination of K2 members.
template <class R = Real>
Cx<R> l_weight3_j6() {
  return lvalue_combination<R>(3, 4, 1);
}

/// F(HD(1/2); -1) against the weight-2 and weight-3 L-values of conductor 32, plus their closed forms.
template <class R = Real>
std::vector<VerificationRecord> j6_lvalue_checks(double tol = 1e-15) {
  std::vector<VerificationRecord> out;
  const R pi = pi_v<R>();
  const R l2 = l_weight2_j6<R>();
  const Cx<R> l3 = l_weight3_j6<R>();
  out.push_back(detail::timed([&] {
    const R lhs = f_minus1<R>(6, Length::length4).value;
    return detail::compare("lnum.j6.length4", lhs, R(32 / (pi * pi) * l2 * abs(l3.im)), tol);
  }));
  out.push_back(detail::timed([&] {
    const R lhs = f_minus1<R>(6, Length::length5).value;
    return detail::compare("lnum.j6.length5", lhs, R(2 / (pi * l2) * l3.re), tol);
  }));
  out.push_back(detail::timed([&] {
    const R closed = gamma_real<R>(rat(1, 4)) * gamma_real<R>(rat(1, 2)) / (8 * gamma_real<R>(rat(3, 4)));
    return detail::compare("lnum.j6.weight2_closed_form", l2, closed, tol);
  }));
  out.push_back(detail::timed([&] {
    const Rational h = rat(1, 2);
    const R g14 = gamma_real<R>(rat(1, 4)), g34 = gamma_real<R>(rat(3, 4));
    const R a = g14 / g34 * hyp3f2_one<R>(h, h, rat(1, 4), 1, rat(3, 4)).value;
    const R b = 4 * g34 / g14 * hyp3f2_one<R>(h, h, rat(3, 4), 1, rat(5, 4)).value;
    const R c = gamma_real<R>(h) / 8;
    return detail::compare("lnum.j6.weight3_series", l3, Cx<R>(c * a, c * b), tol);
  }));
  return out;
}

// ---------------------------------------------------------------- Whipple and Kummer

namespace detail {

template <class R>
VerificationRecord skipped(std::string id, std::string why) {
  VerificationRecord rec;
  rec.check_id = std::move(id);
  rec.status = Status::skipped;
  rec.lhs = rec.rhs = "-";
  rec.modulus_or_tolerance = "-";
  rec.note = std::move(why);
  return rec;
}

inline std::string tuple_text(const std::vector<Rational>& v) {
  std::string t;
  for (const auto& x : v) t += (t.empty() ? "" : ",") + to_string(x);
  return t;
}

}  // namespace detail

/// The alternating side decays faster than 1/k, the 3F2 side converges, and no lower parameter sits on a pole.
inline bool whipple_admissible(const Rational& r1, const Rational& r2, const Rational& r3, const Rational& r4) {
  const Rational s2 = 1 + r1 - r2, s3 = 1 + r1 - r3, s4 = 1 + r1 - r4;
  const Rational decay = s2 + s3 + s4 + 1 - r1 - r2 - r3 - r4;
  const Rational sigma = 1 + r1 - r3 - r4;
  const std::vector<Rational> all = {r1, r2, r3, r4, s2, s3, s4, 1 + r1, r1 / 2, (1 + r1) / 2, 1 + r1 / 2};
  const bool poles = std::any_of(all.begin(), all.end(), [](const Rational& x) { return is_pole(x); });
  return decay > 1 && sigma > rat(1, 10) && !poles;
}

inline bool kummer_admissible(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                              const Rational& e) {
  const Rational sigma = d + e - a - b - c;
  const std::vector<Rational> lower = {d, e, e - a, d + e - b - c, sigma};
  const bool poles = std::any_of(lower.begin(), lower.end(), [](const Rational& x) { return is_pole(x); });
  return sigma > rat(1, 10) && e - a > rat(1, 10) && !poles;
}

/// 4F3(r1..r4; 1+r1-r2, 1+r1-r3, 1+r1-r4; -1) and the well-poised 6F5 with r5 = (1+r1)/2
/// against their 3F2(1) reductions; skipped outside whipple_admissible.
template <class R = Real>
std::vector<VerificationRecord> whipple_numeric_check(const Rational& r1, const Rational& r2, const Rational& r3,
                                                      const Rational& r4, double tol = 1e-18) {
  const std::string params = detail::tuple_text({r1, r2, r3, r4});
  const Rational s2 = 1 + r1 - r2, s3 = 1 + r1 - r3, s4 = 1 + r1 - r4;
  if (!whipple_admissible(r1, r2, r3, r4)) {
    auto a = detail::skipped<R>("lnum.whipple.length4", "parameters outside the convergent range");
    auto b = detail::skipped<R>("lnum.whipple.length5", "parameters outside the convergent range");
    a.param("r", params);
    b.param("r", params);
    return {a, b};
  }
  const R C = gamma_real<R>(s3) * gamma_real<R>(s4) / (gamma_real<R>(1 + r1) * gamma_real<R>(s4 - r3));
  std::vector<VerificationRecord> out;
  out.push_back(detail::timed([&] {
    const R lhs = hyp_alternating<R>({r1, r2, r3, r4}, {s2, s3, s4, 1}).value;
    const R rhs = C * hyp3f2_one<R>(1 + r1 / 2 - r2, r3, r4, 1 + r1 / 2, s2).value;
    return detail::compare("lnum.whipple.length4", lhs, rhs, tol).param("r", params);
  }));
  out.push_back(detail::timed([&] {
    const Rational r5 = (1 + r1) / 2, s5 = 1 + r1 - r5;
    const R lhs = hyp_alternating<R>({r1, 1 + r1 / 2, r2, r3, r4, r5}, {r1 / 2, s2, s3, s4, s5, 1}).value;
    const R rhs = C * hyp3f2_one<R>(s5 - r2, r3, r4, s5, s2).value;
    return detail::compare("lnum.whipple.length5", lhs, rhs, tol).param("r", params);
  }));
  return out;
}

/// 3F2(a,b,c;d,e;1) = G(e)G(s)/(G(e-a)G(s+a)) 3F2(a,d-b,d-c;d,s+a;1), s = d+e-a-b-c.
template <class R = Real>
VerificationRecord kummer_numeric_check(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                        const Rational& e, double tol = 1e-18) {
  const std::string params = detail::tuple_text({a, b, c, d, e});
  const Rational sigma = d + e - a - b - c;
  if (!kummer_admissible(a, b, c, d, e)) {
    auto rec = detail::skipped<R>("lnum.kummer", "parameters outside the convergent range");
    rec.param("abcde", params);
    return rec;
  }
  return detail::timed([&] {
    const R lhs = hyp3f2_one<R>(a, b, c, d, e).value;
    const R g = gamma_real<R>(e) * gamma_real<R>(sigma) / (gamma_real<R>(e - a) * gamma_real<R>(d + e - b - c));
    const R rhs = g * hyp3f2_one<R>(a, d - b, d - c, d, d + e - b - c).value;
    return detail::compare("lnum.kummer", lhs, rhs, tol).param("abcde", params);
  });
}

// ---------------------------------------------------------------- period relations and L-value tables

/// Kronecker characters used for twists, indexed by their discriminant.
inline int kronecker_char(int disc, long long n) {
  switch (disc) {
    case -1: return n % 2 == 0 ? 0 : (n % 4 == 1 ? 1 : -1);
    case -2: {
      const long long m = n % 8;
      return n % 2 == 0 ? 0 : (m == 1 || m == 3 ? 1 : -1);
    }
    case -3: return n % 3 == 0 ? 0 : (n % 3 == 1 ? 1 : -1);
    case 1: return 1;
  }
  fail(ErrorKind::parameter, "unsupported character discriminant " + std::to_string(disc));
}

template <class R = Real>
std::vector<VerificationRecord> appendix_checks(double tol = 1e-10) {
  std::vector<VerificationRecord> out;
  const R pi = pi_v<R>(), two = 2, three = 3;
  const R sqrt2 = sqrt(two), sqrt3 = sqrt(three);
  const Rational h = rat(1, 2);
  auto add = [&](std::string id, std::string what, auto&& fn) {
    try {
      auto rec = detail::timed(fn);
      rec.check_id = std::move(id);
      if (!what.empty()) rec.params.insert(rec.params.begin(), {"relation", what});
      out.push_back(std::move(rec));
    } catch (const Error& e) {
      VerificationRecord rec;
      rec.check_id = std::move(id);
      rec.status = Status::error;
      rec.note = e.what();
      if (!what.empty()) rec.param("relation", what);
      out.push_back(std::move(rec));
    }
  };
  auto cmp = [&](const auto& lhs, const auto& rhs) { return detail::compare(std::string(), lhs, rhs, tol); };
  auto P = [](const Rational& r, const Rational& s) { return p_value<R>(r, s).value; };

  // 3F2(1) values with all-unit lower row
  const R f_half = hyp3f2_one<R>(h, h, h, 1, 1).value;
  const R f_sixth = hyp3f2_one<R>(h, rat(1, 6), rat(5, 6), 1, 1).value;
  const R f_third = hyp3f2_one<R>(h, rat(1, 3), rat(2, 3), 1, 1).value;
  const R f_quarter = hyp3f2_one<R>(h, rat(1, 4), rat(3, 4), 1, 1).value;
  const auto eta16 = parse_eta_spec("4^6");
  const auto eta12 = parse_eta_spec("2^3,6^3");
  const auto eta8 = parse_eta_spec("1^2,2^1,4^1,8^2");

  add("lnum.cubic_transformation", "3F2(1/2,1/6,5/6) = (sqrt3/2) 3F2(1/2,1/2,1/2)",
      [&] { return cmp(f_sixth, R(sqrt3 / 2 * f_half)); });
  add("lnum.eta_lvalue", "3F2(1/2,1/2,1/2) = (8/pi) L(eta(4t)^6,1)",
      [&] { return cmp(f_half, R(8 / pi * lvalue_eta<R>(eta16, 16, 1).value.re)).param("N", 16); });
  add("lnum.eta_lvalue", "3F2(1/2,1/2,1/2) = (16/pi^2) L(eta(4t)^6,2)",
      [&] { return cmp(f_half, R(16 / (pi * pi) * lvalue_eta<R>(eta16, 16, 2).value.re)).param("N", 16); });
  add("lnum.eta_lvalue", "3F2(1/2,1/3,2/3) = (6 sqrt3/pi) L(eta(2t)^3 eta(6t)^3,1)",
      [&] { return cmp(f_third, R(6 * sqrt3 / pi * lvalue_eta<R>(eta12, 12, 1).value.re)).param("N", 12); });
  add("lnum.eta_lvalue", "3F2(1/2,1/3,2/3) = (18/pi^2) L(eta(2t)^3 eta(6t)^3,2)",
      [&] { return cmp(f_third, R(18 / (pi * pi) * lvalue_eta<R>(eta12, 12, 2).value.re)).param("N", 12); });
  const R f_half_minus = hyp_alternating<R>({h, h, h}, {1, 1, 1}).value;
  add("lnum.quarter_vs_minus_one", "3F2(1/2,1/4,3/4;1) = sqrt2 3F2(1/2,1/2,1/2;-1)",
      [&] { return cmp(f_quarter, R(sqrt2 * f_half_minus)); });
  add("lnum.eta_lvalue", "3F2(1/2,1/4,3/4) = (12 sqrt2/pi) L(f8,1)",
      [&] { return cmp(f_quarter, R(12 * sqrt2 / pi * lvalue_eta<R>(eta8, 8, 1).value.re)).param("N", 8); });
  add("lnum.eta_lvalue", "3F2(1/2,1/4,3/4) = (24/pi^2) L(f8,2)",
      [&] { return cmp(f_quarter, R(24 / (pi * pi) * lvalue_eta<R>(eta8, 8, 2).value.re)).param("N", 8); });
  add("lnum.eta_lvalue", "3F2(1/2,1/2,1/2;-1) = (12/pi) L(f8,1)",
      [&] { return cmp(f_half_minus, R(12 / pi * lvalue_eta<R>(eta8, 8, 1).value.re)).param("N", 8); });

  // relations among P(r,s)
  const R c13 = pow(two, R(1) / 3);
  const R p16 = P(rat(1, 6), rat(5, 6)), p23 = P(rat(2, 3), rat(4, 3));
  const R b1414 = beta<R>(rat(1, 4), rat(1, 4)), b1412 = beta<R>(rat(1, 4), h);
  add("lnum.period_relation", "P(1/6,5/6) = 2^(-5/6) 3^(-1/4) B(1/4,1/4)^2",
      [&] { return cmp(p16, R(pow(two, R(-5) / 6) * pow(three, R(-1) / 4) * b1414 * b1414)); });
  add("lnum.period_relation", "P(1/6,5/6) = 2^(1/6) 3^(-1/4) B(1/4,1/2)^2",
      [&] { return cmp(p16, R(pow(two, R(1) / 6) * pow(three, R(-1) / 4) * b1412 * b1412)); });
  add("lnum.period_relation", "2^(1/3) P(1/3,2/3) = (2+sqrt3) P(2/3,4/3)",
      [&] { return cmp(R(c13 * P(rat(1, 3), rat(2, 3))), R((2 + sqrt3) * p23)); });
  add("lnum.period_relation", "2^(1/3) P(5/6,7/6) = P(1/6,5/6)",
      [&] { return cmp(R(c13 * P(rat(5, 6), rat(7, 6))), p16); });
  add("lnum.period_relation", "P(1/6,5/6) = (1+sqrt3) P(2/3,4/3)", [&] { return cmp(p16, R((1 + sqrt3) * p23)); });
  add("lnum.period_relation", "2^(1/3) P(1/3,7/6) = (2-sqrt3) P(2/3,5/6)",
      [&] { return cmp(R(c13 * P(rat(1, 3), rat(7, 6))), R((2 - sqrt3) * P(rat(2, 3), rat(5, 6)))); });
  add("lnum.period_relation", "2^(1/3) P(1/3,7/6) = sqrt3 P(2/3,4/3)",
      [&] { return cmp(R(c13 * P(rat(1, 3), rat(7, 6))), R(sqrt3 * p23)); });

  // D = 3 combination at N = 6 (the f36.3.d.a row)
  const Cx<R> l1_d3 = lvalue_combination<R>(3, 3, 1);
  const Cx<R> l2_d3 = lvalue_combination<R>(3, 3, 2);
  const R c23 = pow(two, R(2) / 3);
  add("lnum.period_relation", "(1+sqrt3) P(2/3,4/3) = 6 pi 2^(2/3) L(f3,1)",
      [&] { return cmp(R((1 + sqrt3) * p23), R(6 * pi * c23 * l1_d3.re)).param("D", 3); });
  add("lnum.period_relation", "(1+sqrt3) P(2/3,4/3) = 18 2^(2/3) L(f3,2)",
      [&] { return cmp(R((1 + sqrt3) * p23), R(18 * c23 * l2_d3.re)).param("D", 3); });

  // sign family 2^{1-mj/6} P(mj/12, 3/4 +- 1/4 + mj/24) = P(mj/24, 1-mj/24) -+ P(1/2+mj/24, 3/2-mj/24)
  for (int m = 1; m <= 3; ++m) {
    const int mod = 12 / m;
    for (int j = 1; j < mod; ++j) {
      if (std::gcd(j, mod) != 1) continue;
      const Rational t = rat(m * j, 24);
      const R lhs_pow = pow(two, 1 - R(m * j) / 6);
      const R base = P(t, 1 - t), other = P(h + t, rat(3, 2) - t);
      for (int sgn : {1, -1}) {
        add("lnum.sign_family", "", [&] {
          const R lhs = lhs_pow * P(2 * t, rat(3, 4) + sgn * rat(1, 4) + t);
          return cmp(lhs, R(base - sgn * other)).param("m", m).param("j", j).param("sign", sgn > 0 ? "+" : "-");
        });
      }
    }
  }

  // L(f, 1) of the weight-3 combinations as period values
  auto pm = [](int m) { return p_m24<R>(m); };
  const Cx<R> I(R(0), R(1));
  add("lnum.lvalue_periods", "", [&] {
    const Cx<R> rhs = R(1) / 8 * (Cx<R>(pm(6)) + I * Cx<R>(pm(18)));
    return cmp(R(pi) * lvalue_combination<R>(3, 4, 1), rhs).param("D", 4);
  });
  add("lnum.lvalue_periods", "", [&] {
    const Cx<R> rhs = R(1) / (12 * c13) * (Cx<R>(pm(2)) + I * Cx<R>(pm(14))) -
                      R(1) / (6 * c23) * (Cx<R>(pm(10)) + I * Cx<R>(pm(22)));
    return cmp(R(pi) * lvalue_combination<R>(3, 12, 1), rhs).param("D", 12);
  });
  add("lnum.lvalue_periods", "", [&] {
    const Cx<R> rhs = R(1) / (8 * sqrt2) * (Cx<R>(pm(3)) + I * Cx<R>(pm(15))) +
                      R(1) / 8 * (Cx<R>(pm(9)) + I * Cx<R>(pm(21)));
    return cmp(R(pi) * lvalue_combination<R>(3, 8, 1), rhs).param("D", 8);
  });
  const R closed3 = b1414 * b1414 / (pow(two, R(5) / 2) * pow(three, R(5) / 4));
  add("lnum.lvalue_periods", "", [&] { return cmp(R(pi * l1_d3.re), closed3).param("D", 3); });
  add("lnum.lvalue_periods", "twisted by chi_-3", [&] {
    const Cx<R> tw = lvalue_combination<R>(3, 3, 1, "", [](long long n) { return kronecker_char(-3, n); });
    return cmp(R(pi / sqrt3 * tw.re), closed3).param("D", 3);
  });
  // D = 24 row; the signed residual goes into the note as well
  add("lnum.lvalue_periods", "", [&] {
    const Cx<R> s7(R(0), 2 * sqrt(R(7))), s14(R(0), 2 * sqrt(R(14)));
    const Cx<R> b1 = s7, b2(R(0), R(4)), b3(4 * sqrt2), b4(8 * sqrt(R(7))), b5 = s14,
                b6(R(0), -16 * sqrt2), b7(8 * sqrt(R(14)));
    const Cx<R> first = Cx<R>(8 * pm(1)) - b5 * Cx<R>(4 * pm(7)) - b2 * Cx<R>(2 * pm(13)) - b7 * Cx<R>(pm(19));
    const Cx<R> second = b1 * Cx<R>(8 * pm(5)) + b3 * Cx<R>(4 * pm(11)) + b4 * Cx<R>(2 * pm(17)) + b6 * Cx<R>(pm(23));
    const Cx<R> rhs = R(1) / (192 * pow(two, R(1) / 6)) * first - R(1) / (192 * pow(two, R(5) / 6)) * second;
    const Cx<R> lhs = R(pi) * lvalue_combination<R>(3, 24, 1);
    auto rec = cmp(lhs, rhs).param("D", 24);
    rec.note = "signed residual " + decimal(lhs - rhs, 6);
    return rec;
  });

  // L(f, 2) against twisted L(f, 1)
  auto twisted = [&](int D, int disc) {
    return lvalue_combination<R>(3, D, 1, "", [disc](long long n) { return kronecker_char(disc, n); });
  };
  auto l2 = [&](int D) { return lvalue_combination<R>(3, D, 2); };
  const Cx<R> one_i(R(1), R(1));
  add("lnum.functional_twist", "", [&] {
    return cmp(l2(4), R(pi / 4) * (one_i * twisted(4, -1))).param("D", 4).param("character", -1);
  });
  add("lnum.functional_twist", "", [&] {
    return cmp(l2(12), R(-pi / 12) * (one_i * twisted(12, -1))).param("D", 12).param("character", -1);
  });
  add("lnum.functional_twist", "", [&] {
    return cmp(l2(12), R(pi / (12 * sqrt3)) * (one_i.conj() * twisted(12, -3))).param("D", 12).param("character", -3);
  });
  add("lnum.functional_twist", "", [&] {
    return cmp(l2(8), R(pi / 8) * (one_i * twisted(8, -2))).param("D", 8).param("character", -2);
  });
  add("lnum.functional_twist", "", [&] {
    const Cx<R> c(-(1 + sqrt2), 1 + sqrt2);
    return cmp(l2(8), R(pi / 8) * (c * twisted(8, -1))).param("D", 8).param("character", -1);
  });
  add("lnum.functional_twist", "", [&] { return cmp(l2_d3, R(pi / 3) * l1_d3).param("D", 3).param("character", 1); });
  add("lnum.functional_twist", "", [&] {
    auto rec = cmp(l2(24), R(-pi / 12) * (one_i * twisted(24, -2))).param("D", 24).param("character", -2);
    rec.note = "D=24 row recorded, not asserted";
    rec.status = Status::skipped;
    return rec;
  });
  return out;
}

}  // namespace hgm
