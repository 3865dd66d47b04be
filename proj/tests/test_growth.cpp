#include <random>

#include <gtest/gtest.h>

#include "sgforest/evaluator.hpp"
#include "sgforest/growth.hpp"

using namespace sgforest;

namespace {

Real mpfr_reference_log(const BigInt& x, int digits) {
  Real r(bits_for_digits(digits) + 64);
  mpfr_set_z(r.get(), x.get_mpz_t(), MPFR_RNDN);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r;
}

// |a - b| <= 10^-digits * max(1, |b|)
bool close(const Real& a, const Real& b, int digits) {
  Real diff(a.precision() + 64);
  mpfr_sub(diff.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  Real tol(64);
  mpfr_set_ui(tol.get(), 10, MPFR_RNDN);
  mpfr_pow_si(tol.get(), tol.get(), -digits, MPFR_RNDN);
  if (mpfr_cmp_ui(b.get(), 1) > 0) mpfr_mul(tol.get(), tol.get(), b.get(), MPFR_RNDN);
  return mpfr_lessequal_p(diff.get(), tol.get());
}

struct Run {
  RecursionSystem system;
  std::vector<ClassCountVector> vectors;
};

Run run(const Family& f, int n) {
  Run r{derive(composition_schema(f)), {}};
  r.vectors = iterate(r.system, initial_vector(r.system), n);
  return r;
}

}  // namespace

TEST(LogBig, SmallValues) {
  EXPECT_TRUE(mpfr_zero_p(log_big(BigInt(1), 30).get()));
  EXPECT_EQ(log_big(BigInt(7), 20).significant(10), "1.945910149");
  EXPECT_EQ(log_big(BigInt(2), 30).significant(25), "6.931471805599453094172321e-1");
  EXPECT_THROW(log_big(BigInt(0), 10), std::domain_error);
  EXPECT_THROW(log_big(BigInt(-5), 10), std::domain_error);
}

TEST(LogBig, AgreesWithMpfrOnRandomIntegers) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    BigInt x = 1;
    const int words = 1 + i % 40;
    for (int w = 0; w < words; ++w) x = x * BigInt(static_cast<unsigned long>(rng() | 1)) + 1;
    for (int digits : {15, 60, 150}) {
      EXPECT_TRUE(close(log_big(x, digits), mpfr_reference_log(x, digits), digits))
          << to_decimal(x) << " @" << digits;
    }
  }
}

TEST(LogBig, RepeatedSquaring) {
  const BigInt f3("8696126758781951722199");
  const Real base = log_big(f3, 80);
  BigInt power = f3;
  for (int j = 1; j <= 8; ++j) {
    power *= power;
    Real expected(base.precision());
    mpfr_mul_2ui(expected.get(), base.get(), j, MPFR_RNDN);
    EXPECT_TRUE(close(log_big(power, 80), expected, 75)) << "2^" << j;
  }
  EXPECT_TRUE(close(base, mpfr_reference_log(f3, 80), 80));
}

TEST(LogBig, ProductRule) {
  const BigInt a("123456789012345678901234567890"), b("98765432109876543210");
  Real sum(bits_for_digits(60));
  mpfr_add(sum.get(), log_big(a, 60).get(), log_big(b, 60).get(), MPFR_RNDN);
  EXPECT_TRUE(close(log_big(a * b, 60), sum, 58));
}

TEST(RealFormat, SignificantFixedScientific) {
  const Real x = real_from_decimal("1.2473371993149", 30);
  EXPECT_EQ(x.significant(12), "1.24733719931");
  EXPECT_EQ(x.fixed(3), "1.247");
  EXPECT_EQ(real_from_decimal("0.84066670765", 30).fixed(10), "0.8406667077");
  EXPECT_EQ(real_from_decimal("1.58496250072", 30).fixed(3), "1.585");
  EXPECT_EQ(real_from_decimal("0.000000300265", 30).significant(5), "3.0026e-7");
  EXPECT_THROW(real_from_decimal("1.2x", 20), std::invalid_argument);
}

TEST(NaiveUpperBound, Values) {
  EXPECT_EQ(naive_upper_bound(2, 2, 30).fixed(9), "1.297273433");
  EXPECT_EQ(naive_upper_bound(5, 2, 30).fixed(9), "2.661146688");
  EXPECT_EQ(naive_upper_bound(2, 3, 30).fixed(9), "1.389935821");
  EXPECT_EQ(naive_upper_bound(2, 0, 30).fixed(9), "1.945910149");
}

TEST(CompleteGraph, ForestCounts) {
  EXPECT_EQ(complete_graph_forest_count(3), 7);
  EXPECT_EQ(complete_graph_forest_count(4), 38);
  EXPECT_EQ(complete_graph_forest_count(5), 291);
  EXPECT_EQ(complete_graph_forest_count(6), 2932);
}

TEST(Bounds, MonotoneInStage) {
  for (const Family f : {Family{2, 2}, Family{2, 3}, Family{3, 2}}) {
    const auto r = run(f, default_bound_stage(f));
    for (int m = 1; m <= default_bound_stage(f); ++m) {
      const auto prev = bounds(r.system, r.vectors, m - 1, 20);
      const auto cur = bounds(r.system, r.vectors, m, 20);
      EXPECT_LE(mpfr_cmp(cur.upper.get(), prev.upper.get()), 0) << f.name() << " m=" << m;
      EXPECT_GE(mpfr_cmp(cur.lower.get(), prev.lower.get()), 0) << f.name() << " m=" << m;
      EXPECT_LE(mpfr_cmp(cur.lower.get(), cur.upper.get()), 0) << f.name() << " m=" << m;
    }
  }
}

TEST(Bounds, SmallStageWithoutCertificate) {
  const auto r = run(Family{2, 3}, 1);
  EXPECT_THROW(convergence_certificate(r.system, r.vectors, 0, 20), std::domain_error);
  const auto b = bounds(r.system, r.vectors, 0, 20);
  EXPECT_TRUE(mpfr_equal_p(b.enclosure_lower.get(), b.lower.get()));
}

TEST(Bounds, RejectsStageBeyondVectors) {
  const auto r = run(Family{2, 2}, 3);
  EXPECT_THROW(bounds(r.system, r.vectors, 4, 12), std::out_of_range);
}

TEST(Bounds, EnclosureContainsEstimate) {
  const auto r = run(Family{2, 2}, 8);
  const auto b = bounds(r.system, r.vectors, 8, 12);
  EXPECT_LE(mpfr_cmp(b.lower.get(), b.enclosure_lower.get()), 0);
  EXPECT_LE(mpfr_cmp(b.enclosure_lower.get(), b.z_estimate.get()), 0);
  EXPECT_LE(mpfr_cmp(b.z_estimate.get(), b.upper.get()), 0);
  EXPECT_EQ(b.certified, "1.24733719931");
  EXPECT_EQ(b.certified_digits, 12);
}

TEST(Certificate, BoundsTrueGap) {
  const int m_max = 8;
  const auto r = run(Family{2, 2}, m_max);
  const auto best = bounds(r.system, r.vectors, m_max, 30);
  for (int m = 0; m < m_max; ++m) {
    const auto b = bounds(r.system, r.vectors, m, 30);
    Real gap(b.upper.precision());
    mpfr_sub(gap.get(), b.upper.get(), best.z_estimate.get(), MPFR_RNDN);
    Real cert = convergence_certificate(r.system, r.vectors, m, 30);
    // both sides carry rounding error near 1e-45
    mpfr_add_d(cert.get(), cert.get(), 1e-40, MPFR_RNDU);
    EXPECT_GT(mpfr_cmp_d(gap.get(), -1e-40), 0) << "m=" << m;
    EXPECT_LE(mpfr_cmp(gap.get(), cert.get()), 0) << "m=" << m;
  }
}

TEST(Certificate, TriangleStageThree) {
  const auto r = run(Family{2, 2}, 8);
  const double c3 = convergence_certificate(r.system, r.vectors, 3, 20).to_double();
  EXPECT_GT(c3, 1.5e-7);
  EXPECT_LT(c3, 6e-7);
  const Real c8 = convergence_certificate(r.system, r.vectors, 8, 20);
  EXPECT_LT(mpfr_get_exp(c8.get()), -332);
}

TEST(Precision, ExtraGuardDigitsChangeNothing) {
  for (const Family f : {Family{2, 2}, Family{2, 4}}) {
    const auto r = run(f, default_bound_stage(f));
    const int m = default_bound_stage(f);
    const int p = default_precision(f);
    const auto base = bounds(r.system, r.vectors, m, p);
    const auto wide = bounds(r.system, r.vectors, m, p + kGuardDigits);
    EXPECT_EQ(wide.certified.substr(0, base.certified.size()), base.certified) << f.name();
  }
}

TEST(Prefactor, Values) {
  EXPECT_DOUBLE_EQ(bound_prefactor(Family{2, 2}, 0, 20).to_double(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(bound_prefactor(Family{3, 2}, 1, 20).to_double(), 2.0 / 16.0);
  EXPECT_DOUBLE_EQ(bound_prefactor(Family{2, 3}, 1, 20).to_double(), 5.0 / 42.0);
  EXPECT_DOUBLE_EQ(bound_prefactor(Family{2, 4}, 2, 20).to_double(), 6.0 / 800.0);
}
