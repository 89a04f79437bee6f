#include <gtest/gtest.h>

#include "primpair/errors.hpp"
#include "primpair/serialize.hpp"

namespace primpair::serialize {
namespace {

TEST(Factorization, RoundTrip) {
  const auto f = arith::factorize((std::uint64_t{1} << 36) - 1);
  const auto j = to_json(f);
  EXPECT_EQ(j["value"], "68719476735");
  EXPECT_EQ(j["factors"][0], json::array({"3", "3"}));
  EXPECT_EQ(j["proven"], true);
  EXPECT_EQ(factorization_from_json(j), f);
  EXPECT_EQ(factorization_from_json(to_json(arith::factorize(1))), arith::factorize(1));
}

TEST(Factorization, RejectsInconsistentInput) {
  auto j = to_json(arith::factorize(2047));
  j["value"] = "2048";
  EXPECT_THROW(factorization_from_json(j), DomainError);
  auto k = to_json(arith::factorize(2047));
  k["factors"][0][0] = "21";
  EXPECT_THROW(factorization_from_json(k), DomainError);
  EXPECT_THROW(factorization_from_json(json::object()), DomainError);
}

TEST(Field, RoundTrip) {
  const auto ctx = ff::FieldContext::build(3, 4);
  const auto j = to_json(ctx);
  EXPECT_EQ(j["p"], "3");
  EXPECT_EQ(j["k"], "4");
  EXPECT_EQ(j["modulus"].size(), 5u);
  EXPECT_EQ(j["generator"].size(), 4u);
  const auto spec = field_spec_from_json(j);
  const auto again = spec.rebuild();
  EXPECT_EQ(again.modulus(), ctx.modulus());
  EXPECT_EQ(again.generator(), ctx.generator());
  EXPECT_EQ(to_json(criteria::FieldSpec::of(ctx)), j);
}

TEST(RationalFunction, RoundTripAndCanonicalizes) {
  const auto ctx = ff::FieldContext::build(2, 4);
  const auto w = criteria::known_witness_2_4();
  const auto j = to_json(ctx, w.f);
  EXPECT_EQ(rational_function_from_json(ctx, j), w.f);
  EXPECT_EQ(j["f1"].size(), 2u);
  EXPECT_EQ(j["f1"][0], json::array({1, 0, 0, 0}));

  json scaled = {{"f1", {{0, 1, 0, 0}}}, {"f2", {{0, 1, 0, 0}, {0, 1, 0, 0}}}};
  const auto f = rational_function_from_json(ctx, scaled);
  EXPECT_TRUE(f.f2().is_monic());
  EXPECT_EQ(f.f1(), polyff::PolyQ::constant(ctx.one()));
  json zero = {{"f1", {{1, 0, 0, 0}}}, {"f2", json::array()}};
  EXPECT_THROW(rational_function_from_json(ctx, zero), DomainError);
  EXPECT_THROW(poly_from_json(ctx, json::array({json::array({2, 0, 0, 0})})), DomainError);
}

TEST(Verdict, Shapes) {
  const auto sieve = to_json(criteria::classify(2, 11, 3, 2));
  EXPECT_EQ(sieve["status"], "in");
  EXPECT_EQ(sieve["reason"], "sieve");
  EXPECT_EQ(sieve["k"], "11");
  EXPECT_EQ(sieve["certificate"]["ell_radical"], "1");
  EXPECT_EQ(sieve["certificate"]["sieve_primes"], json::array({"23", "89"}));

  const auto witness = to_json(criteria::classify(2, 4, 3, 2));
  EXPECT_EQ(witness["status"], "out");
  EXPECT_EQ(witness["reason"], "witness");
  EXPECT_TRUE(witness["certificate"].contains("field"));
  EXPECT_TRUE(witness["certificate"].contains("f"));

  const auto unknown = to_json(criteria::classify(2, 6, 3, 2));
  EXPECT_EQ(unknown["status"], "unknown");
  EXPECT_FALSE(unknown["attempted"].empty());
}

TEST(CertifyResult, TimingOnlyOnRequest) {
  const auto ctx = ff::FieldContext::build(2, 3);
  const auto r = certify::certify_k(ctx, 3, 2);
  const auto plain = to_json(ctx, r);
  EXPECT_EQ(plain["status"], "non_member");
  EXPECT_FALSE(plain["stats"].contains("wall_seconds"));
  EXPECT_TRUE(to_json(ctx, r, true)["stats"].contains("wall_seconds"));
  EXPECT_EQ(rational_function_from_json(ctx, plain["counterexample"]), *r.counterexample);
}

}  // namespace
}  // namespace primpair::serialize
