#pragma once

// Exhaustive decision of k in Gamma_p(m1, m2) for small fields: every
// f in Upsilon_q(m1, m2) must admit a primitive alpha with f(alpha) primitive.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "primpair/polyff.hpp"

namespace primpair::certify {

using ff::FieldContext;
using ff::FieldElement;
using polyff::PolyQ;
using polyff::RationalFunction;

inline constexpr std::uint64_t kDefaultPairCap = 100'000'000;

// Number of (f1, f2) with deg f1 <= m1 (f1 != 0) and f2 monic of degree
// <= m2, i.e. the size of the raw enumeration space.
BigInt pair_count(std::uint64_t q, unsigned m1, unsigned m2);

// Calls sink on every f in Upsilon_q(m1, m2) in canonical form, f1 by
// ascending poly_index, then f2 by ascending poly_index. Stops when sink
// returns false. Throws CapacityError when pair_count exceeds pair_cap.
void enumerate_upsilon(const FieldContext& ctx, unsigned m1, unsigned m2,
                       const std::function<bool(const RationalFunction&)>& sink,
                       std::uint64_t pair_cap = kDefaultPairCap);

// First primitive alpha (ascending dlog) with f(alpha) defined and primitive.
std::optional<FieldElement> primitive_pair_alpha(const FieldContext& ctx,
                                                 const RationalFunction& f);
// f in Upsilon_q(m1, m2) and no alpha makes (alpha, f(alpha)) primitive.
bool is_counterexample(const FieldContext& ctx, const RationalFunction& f, unsigned m1,
                       unsigned m2);

struct CertifyOptions {
  std::uint64_t pair_cap = kDefaultPairCap;
  unsigned jobs = 1;
  unsigned spot_check_samples = 8;
};

enum class CertifyStatus { Member, NonMember };

struct CertifyStats {
  std::uint64_t examined = 0;    // canonical functions considered
  std::uint64_t in_upsilon = 0;  // of which admissible
  double wall_seconds = 0;
};

struct SpotCheck {
  RationalFunction f;
  FieldElement alpha;
};

struct CertifyResult {
  CertifyStatus status = CertifyStatus::Member;
  // For NonMember: the first failing f in enumerate_upsilon order.
  std::optional<RationalFunction> counterexample;
  CertifyStats stats;
  // For Member: the first few admissible f with the alpha that serves them.
  std::vector<SpotCheck> spot_checks;
};

// Splits f = c * F1 / f2 with F1, f2 monic and decides, for each monic pair,
// which scalars c leave no primitive pair, from tables of discrete logs of
// monic polynomials at the primitive elements. Striped over jobs workers.
CertifyResult certify_k(const FieldContext& ctx, unsigned m1, unsigned m2,
                        const CertifyOptions& options = {});

// Straight enumeration with primitive_pair_alpha per function. Slow; used to
// cross-check certify_k.
CertifyResult certify_k_reference(const FieldContext& ctx, unsigned m1, unsigned m2,
                                  const CertifyOptions& options = {});

// For phi(q-1) <= m1 + m2 + 1: f1 vanishing on the first primitive elements,
// f2 on the next ones, f1 rescaled so that f takes the value 1 at the last
// one. Returned only if it checks out as a counterexample. Throws DomainError
// when phi(q-1) > m1 + m2 + 1.
std::optional<RationalFunction> build_nogamma_witness(const FieldContext& ctx, unsigned m1,
                                                      unsigned m2);

}  // namespace primpair::certify
