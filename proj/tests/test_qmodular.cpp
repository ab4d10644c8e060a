#include <gtest/gtest.h>

#include "hgm/qmodular.hpp"

using namespace hgm;

namespace {

// Independent expansion: prod (1 - x^{s n})^{e} by repeated multiplication and
// geometric-series division, x = q^{1/2}.
std::vector<ZZ> naive_product(const std::vector<std::pair<int, int>>& factors, std::size_t len) {
  std::vector<ZZ> f(len, 0);
  f[0] = 1;
  for (auto [s, e] : factors) {
    for (std::size_t n = 1;; ++n) {
      std::size_t k = s * n;
      if (k >= len) break;
      for (int rep = 0; rep < std::abs(e); ++rep) {
        if (e > 0) {
          for (std::size_t i = len; i-- > k;) f[i] -= f[i - k];
        } else {
          for (std::size_t i = k; i < len; ++i) f[i] += f[i - k];
        }
      }
    }
  }
  return f;
}

std::vector<ZZ> naive_k(KFamily fam, const Rational& r, const Rational& s, std::size_t len) {
  auto [a, b, c] = k_exponents(fam, r, s);
  return naive_product({{1, int(to_ll(a))}, {4, int(to_ll(b))}, {2, -int(to_ll(c))}}, len);
}

// a_p of y^2 = f(x) by point counting.
ZZ curve_ap(long long p, long long a3, long long a1, long long a0) {
  std::vector<int> sq(p, 0);
  for (long long y = 0; y < p; ++y) sq[y * y % p]++;
  long long affine = 0;
  for (long long x = 0; x < p; ++x) {
    long long v = ((x * x % p * x + a3 * x % p * x + a1 * x + a0) % p + p) % p;
    affine += sq[v];
  }
  return p - affine;
}

}  // namespace

TEST(QSeries, EtaMatchesPentagonalNumbers) {
  auto eta = eta_series(1, 60);
  EXPECT_EQ(eta.grid, 24);
  EXPECT_EQ(eta.leading_exponent(), rat(1, 24));
  std::vector<ZZ> pent(60, 0);
  for (long long k = -10; k <= 10; ++k) {
    long long n = k * (3 * k - 1) / 2;
    if (n >= 0 && n < 60) pent[n] += (k % 2 == 0) ? 1 : -1;
  }
  for (long long n = 0; n < 59; ++n) EXPECT_EQ(eta.coeff(rat(1, 24) + n), pent[n]) << n;
  EXPECT_EQ(eta_series(rat(1, 2), 10).grid, 48);
}

TEST(QSeries, RingOperations) {
  auto a = eta_series(1, 20), b = eta_series(2, 20);
  auto prod = a * b;
  auto direct = expand_eta_quotient(EtaQuotient{{{Rational(1), 1}, {Rational(2), 1}}}, 20);
  EXPECT_EQ(prod.leading_exponent(), direct.leading_exponent());
  for (long long n = 0; n < 18; ++n) EXPECT_EQ(prod.coeff(rat(1, 8) + n), direct.coeff(rat(1, 8) + n));
  auto z = a - a;
  EXPECT_TRUE(z.is_zero());
  EXPECT_THROW(a.coeff(Rational(25)), Error);
}

TEST(KFamily, MatchesNaiveExpansion) {
  for (auto [r, s] : std::vector<std::pair<Rational, Rational>>{
           {rat(1, 4), rat(3, 4)}, {rat(1, 24), rat(23, 24)}, {rat(13, 24), rat(35, 24)}, {rat(2, 3), rat(4, 3)}}) {
    auto k = k2_series(r, s, 1, 30);
    auto ref = naive_k(KFamily::k2, r, s, 60);
    for (int i = 0; i < 58; ++i) EXPECT_EQ(k.coeff(r / 2 + rat(i, 2)), ref[i]) << to_string(r) << " " << i;
  }
  auto k1 = k1_series(rat(1, 4), rat(5, 4), 1, 20);
  auto ref1 = naive_k(KFamily::k1, rat(1, 4), rat(5, 4), 40);
  for (int i = 0; i < 38; ++i) EXPECT_EQ(k1.coeff(rat(1, 8) + rat(i, 2)), ref1[i]);
}

TEST(KFamily, LeadingExponentIsHalfR) {
  for (const auto& m : fixtures().f3) {
    EXPECT_EQ(k2_series(m.r, m.s, 1, 4).leading_exponent(), m.r / 2);
    EXPECT_EQ(k2_series(m.r, m.s, m.N, 30).leading_exponent(), m.N * m.r / 2);
  }
  for (const auto& m : fixtures().f2) EXPECT_EQ(k1_series(m.r, m.s, 1, 4).leading_exponent(), m.r / 2);
  for (int j = 1; j <= 11; ++j) {
    auto g = g2_pair(j);
    EXPECT_EQ(k2_star(g.r, g.s, 1, 4).leading_exponent(), (g.s - g.r) / 2);
  }
}

TEST(KFamily, ScaledSupportAndGrid) {
  auto f = k2_series(rat(1, 24), rat(23, 24), 48, 200);
  EXPECT_EQ(f.grid, 1);
  EXPECT_EQ(f.coeff(1), 1);
  for (long long n = 2; n < 200; ++n)
    if (n % 24 != 1) {
      EXPECT_EQ(f.coeff(n), 0) << n;
    }
  EXPECT_THROW(k2_series(rat(1, 5), rat(4, 5), 1, 10), Error);
}

TEST(KFamily, StarIsInvolution) {
  auto a = k2_star(rat(1, 4), rat(3, 4), 1, 10);
  auto b = k2_series(rat(1, 2), rat(3, 4), 1, 10);
  for (long long i = 0; i < 18; ++i) EXPECT_EQ(a.coeff(rat(1, 4) + rat(i, 2)), b.coeff(rat(1, 4) + rat(i, 2)));
  auto back = k2_star(rat(1, 2), rat(3, 4), 1, 10);
  auto orig = k2_series(rat(1, 4), rat(3, 4), 1, 10);
  for (long long i = 0; i < 18; ++i) EXPECT_EQ(back.coeff(rat(1, 8) + rat(i, 2)), orig.coeff(rat(1, 8) + rat(i, 2)));
}

TEST(Theta, LambdaAndThetaSquared) {
  auto lam = lambda_series(6);
  EXPECT_EQ(lam.grid, 2);
  const ZZ expect[] = {16, -128, 704, -3072, 11488, -38400, 117632, -335872, 904784, -2320128};
  for (int i = 0; i < 10; ++i) EXPECT_EQ(lam.coeff(rat(i + 1, 2)), expect[i]);
  auto th = theta3_sq_series(10);
  // r_2(k): representations as a sum of two squares
  for (int k = 0; k < 20; ++k) {
    ZZ count = 0;
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b) count += (a * a + b * b == k);
    EXPECT_EQ(th.coeff(rat(k, 2)), count) << k;
  }
}

TEST(Theta, HypergeometricOfLambdaIsThetaSquared) {
  // 2F1(1/2,1/2;1;lambda) as a formal series in q^{1/2}, 30 terms
  const long long terms = 30;
  auto lam = convert<Rational>(lambda_series(Rational(terms, 2)));
  QSeries<Rational> sum(2, 0, terms);
  sum.coeffs[0] = 1;
  QSeries<Rational> power(2, 0, terms);
  power.coeffs[0] = 1;
  Rational c = 1;
  for (int k = 1; k < terms; ++k) {
    power = (power * lam).truncate(terms);
    c *= Rational(2 * k - 1, 2 * k) * Rational(2 * k - 1, 2 * k);
    for (std::size_t i = 0; i < power.coeffs.size(); ++i) {
      long long n = power.offset + static_cast<long long>(i);
      if (n < terms) sum.coeffs[n] += c * power.coeffs[i];
    }
  }
  auto th = theta3_sq_series(Rational(terms, 2));
  for (long long n = 0; n < terms; ++n) EXPECT_EQ(sum.coeffs[n], Rational(th.coeffs[n])) << n;
}

TEST(Theta, LambdaPowerIdentityGivesK2) {
  // 2 mu^r (1 - 16 mu)^{s-r-1} theta_3^2 (q dmu/dq)/mu = K2(r,s), lambda = 16 mu
  for (auto [r, s] : std::vector<std::pair<Rational, Rational>>{{rat(1, 4), rat(3, 4)}, {rat(1, 3), rat(2, 3)}}) {
    const Rational order = 12;
    auto mu = convert<Rational>(lambda_series(order + 1));
    for (auto& v : mu.coeffs) v /= 16;
    QSeries<Rational> one(2, 0, mu.order);
    one.coeffs[0] = 1;
    auto base = one - scale_by(mu, Rational(16));
    auto lhs = fractional_power(mu, r) * fractional_power(base, s - r - 1) * convert<Rational>(theta3_sq_series(order + 1)) *
               q_derivative(mu) * fractional_power(mu, Rational(-1));
    lhs = scale_by(lhs, Rational(2));
    auto k2 = k2_series(r, s, 1, order);
    for (long long i = 0; i < 20; ++i) {
      Rational e = r / 2 + rat(i, 2);
      EXPECT_EQ(lhs.coeff(e), Rational(k2.coeff(e))) << to_string(r) << " term " << i;
    }
  }
}

TEST(FractionalPower, Basics) {
  QSeries<Rational> f(2, 1, 8);
  f.coeffs[0] = 1;
  f.coeffs[1] = 1;  // q^{1/2}(1 + q^{1/2})
  auto sq = fractional_power(f, 2);
  EXPECT_EQ(sq.coeff(Rational(1)), 1);
  EXPECT_EQ(sq.coeff(rat(3, 2)), 2);
  EXPECT_EQ(sq.coeff(Rational(2)), 1);
  EXPECT_EQ(sq.coeff(rat(5, 2)), 0);
  auto z = fractional_power(f, 0);
  EXPECT_EQ(z.coeff(Rational(0)), 1);
  EXPECT_EQ(z.coeff(rat(1, 2)), 0);
  QSeries<Rational> g(1, 0, 4);
  g.coeffs[0] = 4;
  EXPECT_THROW(fractional_power(g, rat(1, 2)), Error);
  Rational two = 2;
  EXPECT_EQ(fractional_power(g, rat(1, 2), &two).coeff(Rational(0)), 2);
}

TEST(Hecke, Basics) {
  QSeries<ZZ> zero(1, 0, 100);
  auto t = hecke_tp(zero, 5, HeckeContext{2, 1}, 10);
  EXPECT_TRUE(t.is_zero());
  auto f = k1_series(rat(1, 4), rat(5, 4), 8, 200);
  auto tf = hecke_tp(f, 5, HeckeContext::for_k1(rat(5, 4)), 20);
  EXPECT_EQ(tf.coeff(1), f.coeff(5));
  EXPECT_THROW(hecke_tp(f, 5, HeckeContext{2, 1}, 100), Error);
  EXPECT_THROW(hecke_tp(f, 4, HeckeContext{2, 1}, 10), Error);
}

TEST(Hecke, K2IsEigenAtFive) {
  auto f = k2_series(rat(1, 4), rat(3, 4), 8, 5 * 50 + 1);
  EXPECT_EQ(hecke_eigenvalue(f, 5, HeckeContext::for_k2(rat(3, 4)), 50), 2);
}

TEST(Eigen, ApValuesFromNaiveExpansion) {
  // naive x = q^{1/2} expansion oracle: coefficient index (p - N r/2)/(N/2)
  EXPECT_EQ(eigen_ap_f3(4, 5), 2);
  EXPECT_EQ(eigen_ap_f3(4, 13), -14);
  EXPECT_EQ(eigen_ap_f3(4, 17), 18);
  EXPECT_EQ(eigen_ap_f3(24, 73), 26);
  EXPECT_EQ(eigen_ap_f3(24, 97), 18);
  EXPECT_EQ(eigen_ap_f3(6, 13), -10);
  EXPECT_EQ(eigen_ap_f3(3, 13), -10);
  EXPECT_EQ(eigen_ap_f3(12, 13), -2);
  EXPECT_EQ(eigen_ap_f3(8, 17), -10);
  EXPECT_EQ(eigen_ap_f2(24, 73), -14);
  EXPECT_EQ(eigen_ap_f2(8, 17), 6);
  EXPECT_EQ(eigen_ap_f2(12, 13), -6);
  EXPECT_THROW(eigen_ap_f3(4, 7), Error);
  EXPECT_THROW(eigen_ap_f3(4, 3), Error);
}

TEST(Eigen, WeightTwoMatchesCmCurves) {
  // f32.2.a.a <-> y^2 = x^3 - x, f36.2.a.a <-> y^2 = x^3 + 1
  for (long long p : {5, 13, 17, 29, 37, 41, 53}) EXPECT_EQ(eigen_ap_f2(4, p), curve_ap(p, 0, -1, 0)) << p;
  for (long long p : {13, 37, 61, 73}) {
    EXPECT_EQ(eigen_ap_f2(6, p), curve_ap(p, 0, 0, 1)) << p;
    EXPECT_EQ(eigen_ap_f2(3, p), curve_ap(p, 0, 0, 1)) << p;
  }
}

TEST(Eigen, OrbitConsistencyAcrossJ) {
  // all j sharing D give one eigenvalue; D=3 and D=6 share the weight 3 form f36.3.d.a
  for (long long p : nt::primes_one_mod(12, 5, 200)) EXPECT_EQ(eigen_ap_f3(3, p), eigen_ap_f3(6, p)) << p;
}

TEST(Eigen, ScalingInvariance) {
  auto f = k2_series(rat(1, 4), rat(3, 4), 8, 400);
  for (long long c : {2, 3, 7}) {
    auto g = k2_series(rat(1, 4), rat(3, 4), 8 * c, 400 * c);
    for (long long p : {5, 13, 17}) EXPECT_EQ(g.coeff(c * p), f.coeff(p));
  }
}

TEST(Eigen, GaussianCombinationCoefficient) {
  auto a3 = combination_coeff(3, 4, 3);
  EXPECT_EQ(a3, GaussInt(0, 4));
  auto a5 = combination_coeff(3, 4, 5);
  EXPECT_EQ(a5, GaussInt(2, 0));
  EXPECT_THROW(combination_coeff(3, 8, 5), Error);
}

TEST(Eigen, NonGaloisPair) {
  EXPECT_TRUE(nongalois_orbit_check(17).passed());
  EXPECT_TRUE(nongalois_orbit_check(41).passed());
  EXPECT_THROW(nongalois_orbit_check(3), Error);
}
