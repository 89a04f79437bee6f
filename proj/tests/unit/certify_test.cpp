#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "primpair/certify.hpp"
#include "primpair/criteria.hpp"
#include "primpair/errors.hpp"

namespace primpair::certify {
namespace {

using Key = std::pair<oracle::Poly, oracle::Poly>;

std::set<Key> enumerated(const FieldContext& ctx, unsigned m1, unsigned m2) {
  std::set<Key> out;
  enumerate_upsilon(ctx, m1, m2, [&](const RationalFunction& f) {
    EXPECT_TRUE(polyff::in_upsilon(ctx, f, m1, m2));
    EXPECT_TRUE(polyff::is_canonical(ctx, f.f1(), f.f2()));
    EXPECT_TRUE(out.emplace(oracle::from(f.f1()), oracle::from(f.f2())).second);
    return true;
  });
  return out;
}

TEST(PairCount, Formula) {
  EXPECT_EQ(pair_count(2, 1, 1), 4 * 3);
  EXPECT_EQ(pair_count(16, 3, 2), BigInt(65536) * 273);
}

TEST(EnumerateUpsilon, MatchesDefinitionLevelOracle) {
  for (const auto& [p, k, m1, m2] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned,
                                                           unsigned>>{{2, 1, 1, 1},
                                                                      {2, 1, 3, 2},
                                                                      {3, 1, 2, 2},
                                                                      {2, 2, 2, 1},
                                                                      {2, 2, 1, 2},
                                                                      {5, 1, 2, 1},
                                                                      {2, 3, 1, 1},
                                                                      {3, 2, 1, 1}}) {
    const auto ctx = FieldContext::build(p, k);
    std::set<Key> want;
    for (const auto& u : oracle::upsilon_by_definition(ctx, m1, m2)) want.emplace(u.f1, u.f2);
    EXPECT_EQ(enumerated(ctx, m1, m2), want) << p << "^" << k << " (" << m1 << "," << m2 << ")";
  }
}

TEST(EnumerateUpsilon, ExcludesXAndIsOrdered) {
  const auto ctx = FieldContext::build(3, 1);
  std::uint64_t last1 = 0;
  std::uint64_t last2 = 0;
  bool first = true;
  enumerate_upsilon(ctx, 2, 2, [&](const RationalFunction& f) {
    EXPECT_FALSE(f.f1().is_x() && f.f2() == PolyQ::constant(ctx.one()));
    const auto i1 = polyff::poly_index(ctx, f.f1());
    const auto i2 = polyff::poly_index(ctx, f.f2());
    if (!first) EXPECT_TRUE(i1 > last1 || (i1 == last1 && i2 > last2));
    first = false;
    last1 = i1;
    last2 = i2;
    return true;
  });
}

TEST(EnumerateUpsilon, StrictlyGrowsWithDegrees) {
  for (const auto& [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{
           {2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {7, 1}, {3, 2}}) {
    const auto ctx = FieldContext::build(p, k);
    for (unsigned m1 = 1; m1 <= 2; ++m1) {
      for (unsigned m2 = 1; m2 <= 2; ++m2) {
        if (ctx.q() >= 7 && m1 + m2 > 3) continue;
        const auto small = enumerated(ctx, m1, m2);
        const auto big = enumerated(ctx, m1 + 1, m2 + 1);
        EXPECT_LT(small.size(), big.size());
        for (const auto& f : small) EXPECT_TRUE(big.count(f));
      }
    }
  }
}

TEST(EnumerateUpsilon, SizeSymmetricUnderInversion) {
  for (const auto& [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{
           {2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const auto ctx = FieldContext::build(p, k);
    EXPECT_EQ(enumerated(ctx, 2, 1).size(), enumerated(ctx, 1, 2).size());
    EXPECT_EQ(enumerated(ctx, 3, 1).size(), enumerated(ctx, 1, 3).size());
  }
}

TEST(EnumerateUpsilon, CapacityError) {
  const auto ctx = FieldContext::build(2, 6);
  EXPECT_THROW(enumerate_upsilon(ctx, 3, 2, [](const RationalFunction&) { return true; }),
               CapacityError);
}

TEST(CertifyK, NonMembers) {
  for (unsigned k = 1; k <= 3; ++k) {
    const auto ctx = FieldContext::build(2, k);
    const auto r = certify_k(ctx, 3, 2);
    EXPECT_EQ(r.status, CertifyStatus::NonMember) << k;
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_TRUE(is_counterexample(ctx, *r.counterexample, 3, 2));
  }
  const auto f16 = FieldContext::build(2, 4);
  const auto r = certify_k(f16, 1, 1);
  EXPECT_EQ(r.status, CertifyStatus::NonMember);
  ASSERT_TRUE(r.counterexample.has_value());
  const auto fresh = FieldContext::from_parts(2, f16.modulus(), f16.coords(f16.generator()));
  EXPECT_TRUE(is_counterexample(fresh, *r.counterexample, 1, 1));
}

TEST(CertifyK, Members) {
  const auto f32 = FieldContext::build(2, 5);
  const auto r = certify_k(f32, 2, 1);
  EXPECT_EQ(r.status, CertifyStatus::Member);
  EXPECT_FALSE(r.counterexample.has_value());
  EXPECT_FALSE(r.spot_checks.empty());
  for (const auto& s : r.spot_checks) {
    EXPECT_TRUE(f32.is_primitive(s.alpha));
    const auto v = s.f.evaluate(f32, s.alpha);
    ASSERT_TRUE(v.has_value());
    EXPECT_TRUE(f32.is_primitive(*v));
  }
  EXPECT_EQ(certify_k(FieldContext::build(2, 3), 2, 1).status, CertifyStatus::Member);
}

TEST(CertifyK, AgreesWithReference) {
  for (const auto& [p, k, m1, m2] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned,
                                                           unsigned>>{{2, 2, 3, 2},
                                                                      {2, 3, 3, 2},
                                                                      {2, 3, 2, 1},
                                                                      {2, 4, 1, 1},
                                                                      {2, 4, 2, 1},
                                                                      {3, 1, 3, 2},
                                                                      {3, 2, 2, 1},
                                                                      {5, 1, 2, 1},
                                                                      {7, 1, 1, 1},
                                                                      {3, 2, 1, 1}}) {
    const auto ctx = FieldContext::build(p, k);
    const auto fast = certify_k(ctx, m1, m2);
    const auto ref = certify_k_reference(ctx, m1, m2);
    EXPECT_EQ(fast.status, ref.status);
    EXPECT_EQ(fast.counterexample, ref.counterexample);
    if (fast.status == CertifyStatus::Member) {
      EXPECT_EQ(fast.stats.in_upsilon, ref.stats.in_upsilon);
    }
  }
}

TEST(CertifyK, JobsDoNotChangeTheAnswer) {
  const auto ctx = FieldContext::build(2, 4);
  CertifyOptions par;
  par.jobs = 3;
  for (const auto& [m1, m2] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {2, 1}, {3, 2}}) {
    const auto a = certify_k(ctx, m1, m2);
    const auto b = certify_k(ctx, m1, m2, par);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.counterexample, b.counterexample);
  }
}

TEST(CertifyK, AgreesWithCriteria) {
  struct Case {
    std::uint32_t p;
    unsigned k_max;
    unsigned m1;
    unsigned m2;
  };
  for (const auto& c : std::vector<Case>{
           {2, 4, 3, 2}, {2, 6, 1, 1}, {2, 6, 2, 1}, {3, 2, 3, 2}, {5, 1, 3, 2}, {7, 1, 3, 2}}) {
    criteria::ClassifyOptions no_brute;
    no_brute.brute_force = false;
    for (unsigned k = 1; k <= c.k_max; ++k) {
      const auto v = criteria::classify(c.p, k, c.m1, c.m2, no_brute);
      if (v.status == criteria::Status::Unknown) continue;
      const auto ctx = FieldContext::build(c.p, k);
      const auto r = certify_k(ctx, c.m1, c.m2);
      EXPECT_EQ(r.status == CertifyStatus::Member, v.status == criteria::Status::InGamma)
          << c.p << "^" << k << " (" << c.m1 << "," << c.m2 << ")";
    }
  }
}

TEST(NoGammaWitness, Examples) {
  const auto f8 = FieldContext::build(2, 3);
  const auto w8 = build_nogamma_witness(f8, 3, 2);
  ASSERT_TRUE(w8.has_value());
  for (auto a : f8.elements()) {
    if (!f8.is_primitive(a)) continue;
    const auto v = w8->evaluate(f8, a);
    EXPECT_FALSE(v.has_value() && f8.is_primitive(*v));
  }
  for (const auto& [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 1}, {2, 2}}) {
    const auto ctx = FieldContext::build(p, k);
    const auto w = build_nogamma_witness(ctx, 3, 2);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_counterexample(ctx, *w, 3, 2));
  }
  EXPECT_THROW(build_nogamma_witness(FieldContext::build(2, 5), 3, 2), DomainError);
}

TEST(KnownWitness, IsACounterexampleOverF16) {
  const auto w = criteria::known_witness_2_4();
  const auto ctx = w.field.rebuild();
  EXPECT_EQ(ctx.q(), 16u);
  EXPECT_TRUE(is_counterexample(ctx, w.f, 1, 1));
  EXPECT_FALSE(primitive_pair_alpha(ctx, w.f).has_value());
}

}  // namespace
}  // namespace primpair::certify
