#include <gtest/gtest.h>

#include <sstream>

#include "hgm/fixtures.hpp"
#include "hgm/hyperdata.hpp"

using namespace hgm;

namespace {

HypergeometricDatum datum(std::initializer_list<Rational> a, std::initializer_list<Rational> b) {
  return HypergeometricDatum(std::vector<Rational>(a), std::vector<Rational>(b));
}

}  // namespace

TEST(Hyperdata, Hd4AtHalf) {
  const Rational h = rat(1, 2);
  EXPECT_EQ(make_hd4(6), datum({h, h, h, h}, {1, 1, 1, 1}));
  EXPECT_EQ(make_hd4(1), datum({rat(1, 12), rat(1, 12), h, h}, {1, 1, rat(7, 12), rat(7, 12)}));
  EXPECT_THROW(make_hd4(12), Error);
  EXPECT_THROW(make_hd4(0), Error);
}

TEST(Hyperdata, Hd5) {
  const Rational h = rat(1, 2);
  EXPECT_EQ(make_hd5(6), datum({h, rat(5, 4), h, h, h}, {1, rat(1, 4), 1, 1, 1}));
  EXPECT_EQ(make_hd5(1),
            datum({rat(1, 12), rat(25, 24), rat(1, 12), h, h}, {1, rat(1, 24), 1, rat(7, 12), rat(7, 12)}));
  for (int j = 1; j <= 11; ++j) {
    auto inv = datum_invariants(make_hd5(j));
    EXPECT_FALSE(inv.primitive) << j;
    EXPECT_TRUE(inv.very_well_poised) << j;
  }
}

TEST(Hyperdata, Hd3) {
  const Rational h = rat(1, 2);
  EXPECT_THROW(make_hd3(rat(1, 6), rat(1, 12)), Error);
  EXPECT_EQ(make_hd3(rat(1, 6), rat(1, 4)), datum({h, h, rat(1, 12)}, {1, 1, rat(1, 4)}));
  EXPECT_EQ(make_hd3(h, 1), datum({h, h, h}, {1, 1, 1}));
}

TEST(Hyperdata, Invariants) {
  auto inv = datum_invariants(make_hd4(6));
  EXPECT_EQ(inv.M, 2);
  EXPECT_TRUE(inv.primitive);
  EXPECT_TRUE(inv.well_poised);

  auto hd1 = datum({rat(1, 6), rat(1, 6), rat(5, 6), rat(5, 6)}, {rat(1, 3), rat(1, 3), rat(2, 3), rat(2, 3)});
  EXPECT_TRUE(datum_invariants(hd1).defined_over_Q);
  EXPECT_FALSE(datum_invariants(make_hd4(1)).defined_over_Q);
  EXPECT_TRUE(datum_invariants(make_hd4(6)).defined_over_Q);
}

TEST(Hyperdata, Hd4FamilyIsWellPoisedAndPrimitive) {
  for (int j = 1; j <= 11; ++j) {
    auto hd = make_hd4(j);
    auto inv = datum_invariants(hd);
    EXPECT_TRUE(inv.well_poised);
    EXPECT_TRUE(inv.primitive);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(hd.alpha[i] + hd.beta[i], 1 + rat(j, 12));
    EXPECT_EQ(g2_pair(j).M % inv.M, 0) << j;
  }
}

TEST(Hyperdata, G2PairsMatchFamilyTable) {
  EXPECT_EQ(g2_pair(1).D, 24);
  EXPECT_EQ(g2_pair(1).M, 24);
  EXPECT_EQ(g2_pair(4).D, 6);
  EXPECT_EQ(g2_pair(4).M, 12);
  EXPECT_EQ(g2_pair(8).D, 3);
  EXPECT_EQ(g2_pair(8).M, 12);
  EXPECT_EQ(g2_pair(6).N, 8);
  EXPECT_THROW(g2_pair(13), Error);

  const auto& fx = fixtures();
  ASSERT_EQ(fx.families.size(), 6u);
  for (const auto& row : fx.families)
    for (int j : row.js) {
      EXPECT_EQ(g2_pair(j).D, row.D);
      EXPECT_EQ(g2_pair(j).M, row.M);
      EXPECT_TRUE(in_s2(g2_pair(j).r, g2_pair(j).s));
    }
}

TEST(Hyperdata, GaloisOrbits) {
  auto o4 = galois_orbit(4);
  ASSERT_EQ(o4.members.size(), 2u);
  EXPECT_EQ(o4.members[0], std::make_pair(rat(1, 4), rat(3, 4)));
  EXPECT_EQ(o4.members[1], std::make_pair(rat(3, 4), rat(5, 4)));
  auto o3 = galois_orbit(3);
  EXPECT_EQ(o3.members[1], std::make_pair(rat(2, 3), rat(4, 3)));
  auto o24 = galois_orbit(24);
  ASSERT_EQ(o24.members.size(), 8u);
  EXPECT_THROW(galois_orbit(5), Error);
}

TEST(Hyperdata, OrbitsStableUnderUnits) {
  for (int D : {3, 4, 6, 8, 12, 24}) {
    auto o = galois_orbit(D);
    for (int c = 1; c < D; ++c) {
      if (std::gcd(c, D) != 1) continue;
      for (const auto& [r, s] : o.members) {
        Rational rc = frac_part(r * c), sc = frac_part(s * c);
        bool found = false;
        for (const auto& [r2, s2] : o.members)
          if (frac_part(r2) == rc && frac_part(s2) == sc) found = true;
        EXPECT_TRUE(found) << "D=" << D << " c=" << c;
      }
      for (const auto& [r, s] : o.members) EXPECT_TRUE(in_s2(r, s));
    }
  }
}

TEST(Hyperdata, OrbitsMatchFixtureMembers) {
  for (int D : {3, 4, 8, 12, 24}) {
    auto o = galois_orbit(D);
    auto combo = fixtures().combination(3, D);
    ASSERT_EQ(combo.size(), o.members.size()) << D;
    for (std::size_t k = 0; k < combo.size(); ++k) {
      EXPECT_EQ(combo[k].r, o.members[k].first);
      EXPECT_EQ(combo[k].s, o.members[k].second);
      EXPECT_EQ(combo[k].N, 2 * D);
    }
  }
}

TEST(Hyperdata, WhippleReduction) {
  const Rational h = rat(1, 2);
  auto w4 = whipple_reduce(6, WhippleVariant::length4);
  EXPECT_EQ(w4.target, datum({rat(3, 4), h, h}, {1, rat(5, 4), 1}));
  auto w5 = whipple_reduce(6, WhippleVariant::length5);
  EXPECT_EQ(w5.target, datum({rat(1, 4), h, h}, {1, rat(3, 4), 1}));
  // C(1/2) = 2 Gamma(1)^2 / Gamma(1/2)^2
  EXPECT_EQ(w4.prefactor.scalar, 2);
  ASSERT_EQ(w4.prefactor.factors.size(), 2u);
  EXPECT_EQ(w4.prefactor.factors[0], std::make_pair(Rational(1), 2));
  EXPECT_EQ(w4.prefactor.factors[1], std::make_pair(h, -2));
}

TEST(Hyperdata, ParseDatum) {
  auto p = parse_datum("1/2,1/2,1/2,1/2;1,1,1,1@-1");
  EXPECT_EQ(p.datum, make_hd4(6));
  EXPECT_EQ(p.lambda, -1);
  auto q = parse_datum("1/2;1@0");
  EXPECT_EQ(q.datum.length(), 1u);
  EXPECT_EQ(q.lambda, 0);
  try {
    parse_datum("1/2,;1@1");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("token 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_datum("1/2,1/3;1@1"), Error);
  EXPECT_THROW(parse_datum("1/0;1@1"), Error);
}

TEST(Hyperdata, RenderParseRoundTripOnFixtures) {
  std::vector<HypergeometricDatum> all;
  for (int j = 1; j <= 11; ++j) {
    all.push_back(make_hd4(j));
    all.push_back(make_hd5(j));
  }
  for (const auto& m : fixtures().f3) all.push_back(make_hd3(m.s - m.r, m.s));
  for (const auto& hd : all) {
    for (const Rational& lam : {Rational(-1), Rational(1), rat(-7, 3)}) {
      auto p = parse_datum(render_datum(hd, lam));
      EXPECT_EQ(p.datum, hd);
      EXPECT_EQ(p.lambda, lam);
    }
  }
}

TEST(Hyperdata, MultisetHelpers) {
  auto a = datum({rat(1, 3), rat(1, 2)}, {1, rat(2, 3)});
  auto b = datum({rat(1, 2), rat(1, 3)}, {rat(2, 3), 1});
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(same_multisets(a, b));
}

TEST(Fixtures, ParsesCoefficientGrammar) {
  auto c = parse_coeff("-2*i*sqrt7");
  EXPECT_EQ(c.c, -2);
  EXPECT_TRUE(c.imag);
  EXPECT_EQ(c.radicand, 7);
  EXPECT_THROW(parse_coeff("3*j"), Error);

  std::istringstream bad("family j=1 D=24\n");
  EXPECT_THROW(parse_fixtures(bad), Error);
  std::istringstream ok("format=hgm-fixtures version=1\ntwist D=3 label=x base=y char=-3\n");
  auto fx = parse_fixtures(ok);
  ASSERT_EQ(fx.twists.size(), 1u);
  EXPECT_EQ(fx.twists[0].character, -3);
}
