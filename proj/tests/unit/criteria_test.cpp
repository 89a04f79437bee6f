#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "primpair/certify.hpp"
#include "primpair/criteria.hpp"
#include "primpair/errors.hpp"

namespace primpair::criteria {
namespace {

std::vector<std::uint64_t> primes_of(const SieveCertificate& c) {
  std::vector<std::uint64_t> out;
  for (const auto& p : c.sieve_primes) out.push_back(to_u64(p));
  return out;
}

std::set<unsigned> in_set(const GammaTable& t) { return {t.in.begin(), t.in.end()}; }
std::set<unsigned> out_set(const GammaTable& t) { return {t.out.begin(), t.out.end()}; }
std::set<unsigned> unknown_set(const GammaTable& t) {
  return {t.unknown.begin(), t.unknown.end()};
}

TEST(Corollary, Examples) {
  EXPECT_TRUE(check_corollary(2, 13, 3, 2));
  EXPECT_FALSE(check_corollary(2, 24, 3, 2));
  EXPECT_FALSE(check_corollary(3, 12, 3, 2));
  EXPECT_FALSE(check_corollary(2, 1, 1, 1));
}

TEST(Corollary, PassingRangesAtThreeTwo) {
  const auto passing = [](std::uint32_t p, unsigned k_max) {
    std::set<unsigned> out;
    for (unsigned k = 1; k <= k_max; ++k) {
      if (check_corollary(p, k, 3, 2)) out.insert(k);
    }
    return out;
  };
  const auto range = [](unsigned a, unsigned b, std::set<unsigned> except) {
    std::set<unsigned> out;
    for (unsigned k = a; k <= b; ++k) {
      if (!except.count(k)) out.insert(k);
    }
    return out;
  };
  EXPECT_EQ(passing(3, 48), range(11, 48, {12, 18}));
  EXPECT_EQ(passing(5, 33), range(7, 33, {8, 10, 12}));
  EXPECT_EQ(passing(7, 28), range(8, 28, {}));
  auto two = range(21, 76, {24, 28, 36});
  two.insert({13, 17, 19});
  EXPECT_EQ(passing(2, 76), two);
}

TEST(Sieve, Examples) {
  const auto c11 = sieve_search(2, 11, 3, 2);
  ASSERT_TRUE(c11.has_value());
  EXPECT_EQ(c11->ell_radical, 1);
  EXPECT_EQ(primes_of(*c11), (std::vector<std::uint64_t>{23, 89}));

  const auto c18 = sieve_search(3, 18, 3, 2);
  ASSERT_TRUE(c18.has_value());
  EXPECT_EQ(c18->ell_radical, 2);
  EXPECT_EQ(primes_of(*c18), (std::vector<std::uint64_t>{7, 13, 19, 37, 757}));

  const auto c512 = sieve_search(5, 12, 3, 2);
  ASSERT_TRUE(c512.has_value());
  EXPECT_EQ(primes_of(*c512), (std::vector<std::uint64_t>{7, 13, 31, 601}));
  EXPECT_EQ(c512->ell_radical, 6);

  const auto c77 = sieve_search(7, 7, 3, 2);
  ASSERT_TRUE(c77.has_value());
  EXPECT_EQ(c77->ell_radical, 2);
  EXPECT_EQ(primes_of(*c77), (std::vector<std::uint64_t>{3, 29, 4733}));

  EXPECT_FALSE(sieve_search(2, 6, 3, 2).has_value());
}

TEST(Sieve, CertificateFields) {
  const BigInt q = ipow(2, 11);
  const auto qm1 = arith::factorize(q - 1);
  const auto c = make_sieve_certificate(q, qm1, BigInt(1), 3, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->delta, 1 - Rational(2, 23) - Rational(2, 89));
  EXPECT_EQ(c->Delta, Rational(3) / c->delta + 2);
  EXPECT_TRUE(c->bound_ok);
  EXPECT_TRUE(verify_certificate(q, qm1, *c, 3, 2));
  auto bad = *c;
  bad.Delta += 1;
  EXPECT_FALSE(verify_certificate(q, qm1, bad, 3, 2));
  EXPECT_THROW(make_sieve_certificate(q, qm1, BigInt(3), 3, 2), DomainError);
  // delta <= 0: 2^4 - 1 = 3 * 5, sieving both primes.
  EXPECT_FALSE(make_sieve_certificate(BigInt(16), arith::factorize(15), BigInt(1), 3, 2));
}

TEST(Sieve, EveryEmittedCertificateVerifies) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (unsigned k = 1; k <= 40; ++k) {
      const BigInt q = ipow(p, k);
      if (q > ipow(2, 80)) break;
      const auto qm1 = arith::factorize(q - 1);
      for (const auto& c : sieve_search_all(q, qm1, 3, 2)) {
        EXPECT_TRUE(c.bound_ok);
        EXPECT_TRUE(verify_certificate(q, qm1, c, 3, 2)) << p << "^" << k;
      }
    }
  }
}

TEST(CotaT, ThresholdsAtTSix) {
  const auto near = [](double got, double want) { return std::abs(got - want) / want < 0.1; };
  EXPECT_TRUE(near(check_cota_t(BigInt(2), 2, 1).threshold, 5.6e21));
  EXPECT_TRUE(near(check_cota_t(BigInt(2), 2, 2).threshold, 3.2e22));
  EXPECT_TRUE(near(check_cota_t(BigInt(2), 3, 2).threshold, 1.2e23));
  EXPECT_THROW(check_cota_t(BigInt(2), 3, 2, 4.0), DomainError);
}

TEST(CotaT, ExactDecisionAroundThreshold) {
  const auto below = check_cota_t(2, 76, 3, 2);
  const auto above = check_cota_t(2, 77, 3, 2);
  EXPECT_TRUE(below.exact);
  EXPECT_FALSE(below.passes);
  EXPECT_TRUE(above.passes);
  EXPECT_LT(std::ldexp(1.0, 76), above.threshold);
  EXPECT_GE(std::ldexp(1.0, 77), above.threshold);
}

TEST(NoGamma, Examples) {
  EXPECT_TRUE(check_no_gamma(2, 3, 3, 2));
  EXPECT_TRUE(check_no_gamma(3, 2, 3, 2));
  EXPECT_FALSE(check_no_gamma(2, 4, 3, 2));
}

TEST(Mersenne, Examples) {
  EXPECT_TRUE(check_mersenne(5, 3, 2));
  EXPECT_FALSE(check_mersenne(9, 2, 2));
  EXPECT_FALSE(check_mersenne(2, 1, 1));
  EXPECT_THROW(check_mersenne(1, 1, 1), DomainError);
}

TEST(PhiDensity, Examples) {
  EXPECT_TRUE(check_phi_density(9, 3, 2));
  EXPECT_FALSE(check_phi_density(4, 3, 2));
  EXPECT_THROW(check_phi_density(3u, 2, 3, 2), DomainError);
  EXPECT_TRUE(check_phi_density(2u, 9, 3, 2));
}

TEST(Classify, Examples) {
  const auto v4 = classify(2, 4, 3, 2);
  EXPECT_EQ(v4.status, Status::NotInGamma);
  ASSERT_TRUE(std::holds_alternative<ByWitness>(v4.reason));
  const auto& w = std::get<ByWitness>(v4.reason);
  const auto ctx = w.field.rebuild();
  EXPECT_TRUE(certify::is_counterexample(ctx, w.f, 1, 1));
  // (a x + 1)/(x + a)
  EXPECT_EQ(w.f.f1().coeff(0), ctx.one());
  EXPECT_EQ(w.f.f2().coeff(0), w.f.f1().coeff(1));
  EXPECT_TRUE(ctx.is_primitive(w.f.f2().coeff(0)));

  const auto v6 = classify(2, 6, 3, 2);
  EXPECT_EQ(v6.status, Status::Unknown);
  EXPECT_FALSE(v6.attempted.empty());

  const auto v77 = classify(7, 7, 3, 2);
  EXPECT_EQ(v77.status, Status::InGamma);
  EXPECT_EQ(reason_name(v77.reason), "sieve");

  EXPECT_THROW(classify(4, 1, 3, 2), DomainError);
  EXPECT_THROW(classify(2, 0, 3, 2), DomainError);
}

TEST(Classify, ReasonsAlongTheCascade) {
  EXPECT_EQ(reason_name(classify(2, 3, 3, 2).reason), "phi_too_small");
  EXPECT_EQ(reason_name(classify(2, 5, 3, 2).reason), "mersenne");
  EXPECT_EQ(reason_name(classify(2, 9, 3, 2).reason), "phi_density");
  EXPECT_EQ(reason_name(classify(2, 13, 3, 2).reason), "corollary");
  EXPECT_EQ(reason_name(classify(2, 11, 3, 2).reason), "sieve");
  EXPECT_EQ(reason_name(classify(2, 90, 3, 2).reason), "cota_t");
  const auto brute = classify(2, 6, 2, 1);
  EXPECT_EQ(brute.status, Status::InGamma);
  EXPECT_EQ(reason_name(brute.reason), "brute_force");
  const auto v = classify(2, 2, 2, 1);
  EXPECT_EQ(v.status, Status::NotInGamma);
}

TEST(Classify, SymmetricInDegrees) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned k = 1; k <= 14; ++k) {
      EXPECT_EQ(classify(p, k, 3, 2).status, classify(p, k, 2, 3).status);
      EXPECT_EQ(classify(p, k, 2, 1).status, classify(p, k, 1, 2).status);
    }
  }
  const auto v = classify(3, 9, 2, 3);
  EXPECT_EQ(v.m1, 3u);
  EXPECT_EQ(v.m2, 2u);
}

TEST(Classify, ExclusionIsMonotone) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto big = gamma_table(p, 3, 2, 30);
    const auto small = gamma_table(p, 2, 2, 30);
    for (unsigned k = 1; k <= 30; ++k) {
      if (big.rows[k - 1].status == Status::InGamma) {
        EXPECT_NE(small.rows[k - 1].status, Status::NotInGamma) << p << " " << k;
      }
    }
  }
}

TEST(Classify, GuardPerturbationChangesNothing) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    ClassifyOptions lo;
    lo.cota_guard = 1e-10;
    ClassifyOptions hi;
    hi.cota_guard = 1e-8;
    const auto a = gamma_table(p, 3, 2, 100, lo);
    const auto b = gamma_table(p, 3, 2, 100, hi);
    EXPECT_EQ(a.in, b.in);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.unknown, b.unknown);
  }
}

TEST(GammaTable, EndpointSets) {
  const auto t2 = gamma_table(2, 3, 2, 100);
  EXPECT_EQ(out_set(t2), (std::set<unsigned>{1, 2, 3, 4}));
  EXPECT_EQ(unknown_set(t2), (std::set<unsigned>{6, 8, 10, 12}));
  const auto t3 = gamma_table(3, 3, 2, 100);
  EXPECT_EQ(out_set(t3), (std::set<unsigned>{1, 2}));
  for (unsigned k : {9u, 10u, 11u}) EXPECT_TRUE(in_set(t3).count(k));
  for (unsigned k = 13; k <= 100; ++k) EXPECT_TRUE(in_set(t3).count(k));
  for (std::uint32_t p : {5u, 7u}) {
    const auto t = gamma_table(p, 3, 2, 100);
    EXPECT_EQ(out_set(t), (std::set<unsigned>{1}));
    for (unsigned k = 7; k <= 100; ++k) EXPECT_TRUE(in_set(t).count(k)) << p << " " << k;
  }
}

TEST(GammaTable, ParallelMatchesSerial) {
  ClassifyOptions par;
  par.jobs = 4;
  const auto a = gamma_table(3, 3, 2, 60);
  const auto b = gamma_table(3, 3, 2, 60, par);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].status, b.rows[i].status);
    EXPECT_EQ(reason_name(a.rows[i].reason), reason_name(b.rows[i].reason));
  }
  EXPECT_THROW(gamma_table(2, 3, 2, 101), CapacityError);
}

}  // namespace
}  // namespace primpair::criteria
