#include <gtest/gtest.h>

#include <optional>

#include "oracles.hpp"
#include "primpair/errors.hpp"
#include "primpair/ff.hpp"

namespace primpair::ff {
namespace {

const std::vector<std::pair<std::uint32_t, unsigned>> kSmallFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 1}, {3, 2}, {3, 3},
    {5, 1}, {5, 2}, {7, 1}, {7, 2}, {11, 1}, {13, 1}, {2, 6}, {3, 4}};

TEST(BuildField, Examples) {
  const auto f2 = FieldContext::build(2, 1);
  EXPECT_EQ(f2.q(), 2u);
  EXPECT_EQ(f2.generator(), f2.one());

  const auto f16 = FieldContext::build(2, 4);
  EXPECT_EQ(f16.q(), 16u);
  EXPECT_EQ(oracle::order(f16, f16.generator()), 15u);
  EXPECT_EQ(f16.modulus(), (Coords{1, 0, 0, 1, 1}));

  EXPECT_EQ(FieldContext::build(7, 1).generator().code(), 3u);
}

TEST(BuildField, PrimeFieldGeneratorIsSmallestPrimitiveRoot) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 97u, 101u}) {
    EXPECT_EQ(FieldContext::build(p, 1).generator().code(), oracle::smallest_primitive_root(p))
        << p;
  }
}

TEST(BuildField, Errors) {
  EXPECT_THROW(FieldContext::build(4, 1), DomainError);
  EXPECT_THROW(FieldContext::build(1, 1), DomainError);
  EXPECT_THROW(FieldContext::build(2, 0), DomainError);
  EXPECT_THROW(FieldContext::build(2, 27), CapacityError);
  EXPECT_THROW(FieldContext::build(2, 10, 512), CapacityError);
}

TEST(BuildField, ModulusIsSmallestIrreducibleAndGeneratorSmallest) {
  for (const auto& [p, k] : kSmallFields) {
    if (k == 1) continue;
    const auto ctx = FieldContext::build(p, k);
    const auto base = FieldContext::build(p, 1);
    const auto irr = oracle::irreducibles_by_sieve(base, k);
    // Oracle lists degree-k monics by the same constant-term-first order.
    oracle::Poly first;
    for (const auto& g : irr) {
      if (g.size() == k + 1) {
        first = g;
        break;
      }
    }
    EXPECT_EQ(ctx.modulus(), first) << p << "^" << k;
    const auto prim = oracle::primitive_flags(ctx);
    std::optional<Coords> smallest;
    for (std::uint32_t c = 1; c < ctx.q(); ++c) {
      const auto v = ctx.coords(FieldElement(c));
      if (prim[c] && (!smallest || v < *smallest)) smallest = v;
    }
    EXPECT_EQ(ctx.coords(ctx.generator()), smallest);
  }
}

TEST(Arithmetic, TablesMatchReferenceExhaustively) {
  for (const auto& [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{
           {2, 4}, {3, 3}, {5, 2}, {7, 1}, {2, 6}}) {
    const auto ctx = FieldContext::build(p, k);
    for (auto a : ctx.elements()) {
      EXPECT_EQ(ctx.add(a, ctx.neg(a)), ctx.zero());
      for (auto b : ctx.elements()) {
        ASSERT_EQ(ctx.mul(a, b), ctx.mul_reference(a, b));
        ASSERT_EQ(ctx.add(a, b), ctx.add_reference(a, b));
        ASSERT_EQ(ctx.sub(ctx.add(a, b), b), a);
      }
    }
  }
}

TEST(Arithmetic, GroupIdentities) {
  for (const auto& [p, k] : kSmallFields) {
    const auto ctx = FieldContext::build(p, k);
    const auto g = ctx.generator();
    EXPECT_EQ(ctx.pow(g, ctx.q() - 1), ctx.one());
    EXPECT_EQ(ctx.inv(g), ctx.pow(g, ctx.q() - 2));
    EXPECT_EQ(ctx.pow(g, -1), ctx.inv(g));
    EXPECT_THROW(ctx.inv(ctx.zero()), DomainError);
    EXPECT_THROW(ctx.div(g, ctx.zero()), DomainError);
    for (auto a : ctx.elements()) {
      if (a.is_zero()) continue;
      EXPECT_EQ(ctx.mul(a, ctx.inv(a)), ctx.one());
      EXPECT_EQ(ctx.pow(a, 7), ctx.pow_reference(a, 7));
    }
  }
}

TEST(Dlog, Examples) {
  for (const auto& [p, k] : kSmallFields) {
    const auto ctx = FieldContext::build(p, k);
    const auto g = ctx.generator();
    EXPECT_EQ(ctx.dlog(ctx.one()), 0u);
    if (ctx.q() > 2) EXPECT_EQ(ctx.dlog(g), 1u);
    EXPECT_EQ(ctx.dlog(ctx.mul(ctx.pow(g, 5), ctx.pow(g, 7))), 12u % (ctx.q() - 1));
    EXPECT_THROW(ctx.dlog(ctx.zero()), DomainError);
    for (std::uint64_t e = 0; e + 1 < ctx.q(); ++e) ASSERT_EQ(ctx.dlog(ctx.exp(e)), e);
  }
}

TEST(IsPrimitive, Examples) {
  for (const auto& [p, k] : kSmallFields) {
    const auto ctx = FieldContext::build(p, k);
    EXPECT_TRUE(ctx.is_primitive(ctx.generator()));
    EXPECT_FALSE(ctx.is_primitive(ctx.zero()));
    if (ctx.q() > 2) EXPECT_FALSE(ctx.is_primitive(ctx.one()));
    const auto prim = oracle::primitive_flags(ctx);
    std::uint64_t count = 0;
    for (auto a : ctx.elements()) {
      EXPECT_EQ(ctx.is_primitive(a), static_cast<bool>(prim[a.code()]));
      count += ctx.is_primitive(a);
    }
    EXPECT_EQ(count, oracle::phi_by_count(ctx.q() - 1));
  }
  const auto f8 = FieldContext::build(2, 3);
  std::uint64_t c8 = 0;
  for (auto a : f8.elements()) c8 += f8.is_primitive(a);
  EXPECT_EQ(c8, 6u);
}

TEST(IsSFree, ExamplesAndErrors) {
  const auto ctx = FieldContext::build(2, 4);
  EXPECT_TRUE(ctx.is_s_free(ctx.generator(), 15));
  EXPECT_FALSE(ctx.is_s_free(ctx.one(), 3));
  EXPECT_TRUE(ctx.is_s_free(ctx.one(), 1));
  EXPECT_THROW(ctx.is_s_free(ctx.one(), 4), DomainError);
  EXPECT_THROW(ctx.is_s_free(ctx.zero(), 3), DomainError);
}

TEST(IsSFree, DivisorHeredityOverF16) {
  const auto ctx = FieldContext::build(2, 4);
  for (auto a : ctx.elements()) {
    if (a.is_zero()) continue;
    for (std::uint64_t s : oracle::divisors(15)) {
      if (!ctx.is_s_free(a, s)) continue;
      for (std::uint64_t e : oracle::divisors(s)) EXPECT_TRUE(ctx.is_s_free(a, e));
    }
  }
}

TEST(IsSFree, RadicalInvarianceAndFreeCount) {
  for (const auto& [p, k] : kSmallFields) {
    const auto ctx = FieldContext::build(p, k);
    const std::uint64_t n = ctx.q() - 1;
    for (std::uint64_t s : oracle::divisors(n)) {
      std::uint64_t rad = 1;
      for (const auto& [pr, e] : oracle::trial_factor(s)) rad *= pr;
      for (auto a : ctx.elements()) {
        if (a.is_zero()) continue;
        EXPECT_EQ(ctx.is_s_free(a, s), ctx.is_s_free(a, rad));
      }
    }
    std::uint64_t free = 0;
    for (auto a : ctx.elements()) free += !a.is_zero() && ctx.is_s_free(a, n);
    EXPECT_EQ(free, oracle::phi_by_count(n));
  }
}

TEST(FromParts, RoundTripsAndValidates) {
  const auto ctx = FieldContext::build(3, 3);
  const auto again = FieldContext::from_parts(3, ctx.modulus(), ctx.coords(ctx.generator()));
  EXPECT_EQ(again.modulus(), ctx.modulus());
  EXPECT_EQ(again.generator(), ctx.generator());
  EXPECT_THROW(FieldContext::from_parts(2, Coords{1, 0, 1}, Coords{0, 1}), DomainError);
  EXPECT_THROW(FieldContext::from_parts(2, Coords{1, 1, 1}, Coords{1, 0}), DomainError);
}

TEST(Coords, RoundTrip) {
  const auto ctx = FieldContext::build(5, 2);
  for (auto a : ctx.elements()) EXPECT_EQ(ctx.from_coords(ctx.coords(a)), a);
  EXPECT_EQ(ctx.from_int(-1), ctx.neg(ctx.one()));
  EXPECT_THROW(ctx.element(25), DomainError);
}

}  // namespace
}  // namespace primpair::ff
