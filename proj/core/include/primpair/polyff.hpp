#pragma once

// Polynomials and rational functions over F_q, their factorization, and the
// admissibility tests behind Lambda_q and Upsilon_q(m1, m2).

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "primpair/ff.hpp"

namespace primpair::polyff {

using ff::FieldContext;
using ff::FieldElement;

// Polynomial degree with a distinct minus-infinity for the zero polynomial.
class Degree {
 public:
  static constexpr Degree minus_infinity() { return Degree(); }
  constexpr explicit Degree(unsigned d) : finite_(true), value_(d) {}

  constexpr bool is_finite() const { return finite_; }
  // Throws DomainError for minus infinity.
  unsigned value() const;
  // True for minus infinity and for finite degrees <= bound.
  constexpr bool at_most(unsigned bound) const { return !finite_ || value_ <= bound; }

  friend constexpr bool operator==(Degree, Degree) = default;
  friend constexpr std::strong_ordering operator<=>(Degree a, Degree b) {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::greater
                                                 : std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  constexpr Degree() = default;
  bool finite_ = false;
  unsigned value_ = 0;
};

// Coefficients constant term first, trailing zeros removed.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<FieldElement> coeffs);

  static PolyQ constant(FieldElement c);
  static PolyQ x();
  // x - a
  static PolyQ linear(const FieldContext& ctx, FieldElement a);

  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Degree degree() const;
  // Leading coefficient; zero for the zero polynomial.
  FieldElement lead() const;
  FieldElement coeff(std::size_t i) const;
  bool is_monic() const;
  bool is_x() const;

  friend bool operator==(const PolyQ&, const PolyQ&) = default;

 private:
  std::vector<FieldElement> coeffs_;
};

// Total order: by degree, then coefficient codes from the constant term up.
bool poly_less(const PolyQ& a, const PolyQ& b);

PolyQ add(const FieldContext& ctx, const PolyQ& a, const PolyQ& b);
PolyQ sub(const FieldContext& ctx, const PolyQ& a, const PolyQ& b);
PolyQ neg(const FieldContext& ctx, const PolyQ& a);
PolyQ mul(const FieldContext& ctx, const PolyQ& a, const PolyQ& b);
PolyQ scale(const FieldContext& ctx, const PolyQ& a, FieldElement c);
PolyQ pow(const FieldContext& ctx, const PolyQ& a, unsigned e);

struct DivMod {
  PolyQ quotient;
  PolyQ remainder;
};
// Throws DomainError for b == 0.
DivMod divmod(const FieldContext& ctx, const PolyQ& a, const PolyQ& b);
PolyQ mod(const FieldContext& ctx, const PolyQ& a, const PolyQ& b);
// a scaled to leading coefficient 1; zero stays zero.
PolyQ monic(const FieldContext& ctx, const PolyQ& a);
// Monic gcd. Throws DomainError when both are zero.
PolyQ poly_gcd(const FieldContext& ctx, const PolyQ& a, const PolyQ& b);
FieldElement eval(const FieldContext& ctx, const PolyQ& f, FieldElement a);

// Index sum_i code(c_i) q^i, a bijection between polynomials and integers.
// Throws CapacityError when it does not fit in 64 bits.
std::uint64_t poly_index(const FieldContext& ctx, const PolyQ& f);
PolyQ poly_from_index(const FieldContext& ctx, std::uint64_t index);

// Rabin's irreducibility test over F_q. Zero and constants are reducible.
bool is_irreducible(const FieldContext& ctx, const PolyQ& f);

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

// All monic irreducibles of degree 1..max_degree, ordered by poly_less.
class IrreducibleTable {
 public:
  // Throws CapacityError when sum_{d <= max_degree} q^d exceeds cap.
  IrreducibleTable(const FieldContext& ctx, unsigned max_degree,
                   std::uint64_t cap = kDefaultEnumerationCap);

  unsigned max_degree() const { return max_degree_; }
  const std::vector<PolyQ>& polys() const { return polys_; }
  // Those of exactly degree d.
  std::vector<PolyQ> of_degree(unsigned d) const;

 private:
  unsigned max_degree_ = 0;
  std::vector<PolyQ> polys_;
};

std::vector<PolyQ> monic_irreducibles(const FieldContext& ctx, unsigned max_degree,
                                      std::uint64_t cap = kDefaultEnumerationCap);

struct PolyFactor {
  PolyQ poly;  // monic irreducible
  unsigned multiplicity = 0;

  friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

struct PolyFactorization {
  FieldElement unit;
  std::vector<PolyFactor> factors;  // ordered by poly_less
};

inline constexpr unsigned kDefaultFactorDegreeCap = 12;

// Strips linear factors by root search, then trial-divides by irreducibles
// of degree up to half the remaining degree. Throws DomainError for f == 0
// and CapacityError for deg f > degree_cap.
PolyFactorization factor_poly(const FieldContext& ctx, const PolyQ& f,
                              unsigned degree_cap = kDefaultFactorDegreeCap);
// Same, reusing a prebuilt table when it reaches far enough.
PolyFactorization factor_poly(const FieldContext& ctx, const PolyQ& f,
                              const IrreducibleTable& table,
                              unsigned degree_cap = kDefaultFactorDegreeCap);
PolyQ expand(const FieldContext& ctx, const PolyFactorization& f);

struct LambdaWitness {
  unsigned multiplicity = 0;
  PolyQ g;
};

// First monic irreducible g != x (in poly_less order) dividing f1*f2 with
// exact multiplicity n, gcd(n, q-1) = 1. Throws DomainError if f1*f2 == 0.
std::optional<LambdaWitness> lambda_witness(const FieldContext& ctx, const PolyQ& f1,
                                            const PolyQ& f2);
bool lambda_nonempty(const FieldContext& ctx, const PolyQ& f1, const PolyQ& f2);

// f1/f2 in lowest terms with f2 monic.
class RationalFunction {
 public:
  // Cancels gcd(f1, f2) and makes f2 monic. Throws DomainError for f2 == 0.
  static RationalFunction canonical(const FieldContext& ctx, const PolyQ& f1,
                                    const PolyQ& f2);
  // Wraps a pair already known to be canonical, without checking.
  static RationalFunction from_canonical(PolyQ f1, PolyQ f2);

  const PolyQ& f1() const { return f1_; }
  const PolyQ& f2() const { return f2_; }
  // nullopt at poles.
  std::optional<FieldElement> evaluate(const FieldContext& ctx, FieldElement a) const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  RationalFunction(PolyQ f1, PolyQ f2) : f1_(std::move(f1)), f2_(std::move(f2)) {}
  PolyQ f1_;
  PolyQ f2_;
};

bool is_canonical(const FieldContext& ctx, const PolyQ& f1, const PolyQ& f2);

// deg f1 <= m1, deg f2 <= m2 and Lambda_q(f1, f2) nonempty. f1 == 0 is never
// admissible.
bool in_upsilon(const FieldContext& ctx, const RationalFunction& f, unsigned m1,
                unsigned m2);

}  // namespace primpair::polyff
