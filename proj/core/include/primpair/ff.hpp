#pragma once

// Explicit finite fields F_{p^k}: power-basis elements, a fixed generator and
// a full discrete-log table, plus the primitivity and s-free predicates built
// on top of it.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "primpair/arith.hpp"

namespace primpair::ff {

inline constexpr std::uint64_t kDefaultTableCap = std::uint64_t{1} << 26;

// A field element encoded as sum_i a_i p^i over its power-basis coordinates
// (a_0, ..., a_{k-1}). Code 0 is zero and code 1 is one in every field.
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t code) : code_(code) {}

  constexpr std::uint32_t code() const { return code_; }
  constexpr bool is_zero() const { return code_ == 0; }

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

 private:
  std::uint32_t code_ = 0;
};

using Coords = std::vector<std::uint32_t>;

class FieldContext {
 public:
  // Modulus: lexicographically smallest monic irreducible of degree k,
  // coefficients compared from the constant term up. Generator: smallest
  // coordinate vector (a_0 first) of multiplicative order q - 1.
  // Throws DomainError if p is not prime or k == 0, CapacityError if
  // p^k > table_cap.
  static FieldContext build(std::uint32_t p, unsigned k,
                            std::uint64_t table_cap = kDefaultTableCap);

  // Rebuilds a field from an explicit modulus and generator, verifying both.
  static FieldContext from_parts(std::uint32_t p, const Coords& modulus,
                                 const Coords& generator,
                                 std::uint64_t table_cap = kDefaultTableCap);

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // q - 1, the order of the multiplicative group.
  std::uint32_t group_order() const { return q_ - 1; }
  // Monic, constant term first, length k + 1.
  const Coords& modulus() const { return modulus_; }
  FieldElement generator() const { return generator_; }
  const arith::Factorization& qm1_factorization() const { return qm1_; }
  // Distinct primes dividing q - 1, ascending.
  const std::vector<std::uint32_t>& qm1_primes() const { return qm1_primes_; }

  FieldElement zero() const { return FieldElement(0); }
  FieldElement one() const { return FieldElement(1); }
  // Throws DomainError for code >= q.
  FieldElement element(std::uint32_t code) const;
  // Embedding of the integer c mod p.
  FieldElement from_int(std::int64_t c) const;
  FieldElement from_coords(std::span<const std::uint32_t> coords) const;
  Coords coords(FieldElement a) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  // Throws DomainError for a == 0.
  FieldElement inv(FieldElement a) const;
  // Negative exponents require a != 0.
  FieldElement pow(FieldElement a, std::int64_t e) const;

  // Table-free arithmetic on coordinate vectors: polynomial product reduced
  // by the modulus, and coordinate-wise sums. Used to build the tables and
  // as an oracle for the table-driven operations.
  FieldElement mul_reference(FieldElement a, FieldElement b) const;
  FieldElement add_reference(FieldElement a, FieldElement b) const;
  FieldElement pow_reference(FieldElement a, std::uint64_t e) const;

  // generator^e, e taken mod q - 1.
  FieldElement exp(std::uint64_t e) const { return FieldElement(exp_[e % (q_ - 1)]); }
  // Exponent in [0, q-2] with generator^dlog(a) == a. Throws for a == 0.
  std::uint32_t dlog(FieldElement a) const;

  bool is_primitive(FieldElement a) const;
  // a not a d-th power for every prime d | s. Requires s | q - 1 and a != 0.
  bool is_s_free(FieldElement a, std::uint64_t s) const;

  // Every element, in code order.
  std::vector<FieldElement> elements() const;

 private:
  FieldContext() = default;
  void build_tables();

  std::uint32_t p_ = 0;
  unsigned k_ = 0;
  std::uint32_t q_ = 0;
  Coords modulus_;
  FieldElement generator_;
  arith::Factorization qm1_;
  std::vector<std::uint32_t> qm1_primes_;
  std::vector<std::uint32_t> pow_p_;  // p^i, i < k
  std::vector<std::uint32_t> exp_;    // exp_[e] = code of g^e
  std::vector<std::uint32_t> log_;    // log_[code], code != 0
  // zech_[e] = dlog(1 + g^e), or kNoLog when 1 + g^e == 0. Odd p only.
  std::vector<std::uint32_t> zech_;
};

// Validates s | q - 1 (s >= 1) and returns its distinct prime divisors.
std::vector<std::uint32_t> prime_divisors_of_divisor(const FieldContext& ctx,
                                                     std::uint64_t s);

}  // namespace primpair::ff
