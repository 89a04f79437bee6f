#pragma once

// Multiplicative characters of F_q, the s-free characteristic function, and
// exact and character-theoretic counts of free pairs (alpha, f(alpha)).

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "primpair/polyff.hpp"

namespace primpair::pairs {

using ff::FieldContext;
using ff::FieldElement;
using polyff::PolyQ;
using polyff::RationalFunction;

// chi_n(g^a) = exp(2 pi i n a / (q - 1)).
struct CharacterIndex {
  std::uint32_t n = 0;
  std::uint32_t order = 1;

  bool is_trivial() const { return n == 0; }
  friend bool operator==(const CharacterIndex&, const CharacterIndex&) = default;
};

// Throws DomainError for n >= q - 1.
CharacterIndex character(const FieldContext& ctx, std::uint32_t n);
// The phi(d) characters of order exactly d, ascending n. Requires d | q - 1.
std::vector<CharacterIndex> characters_of_order(const FieldContext& ctx, std::uint64_t d);
// Requires a != 0.
std::complex<double> character_value(const FieldContext& ctx, CharacterIndex chi,
                                     FieldElement a);

// theta(s) sum_{d | s} mu(d)/phi(d) sum_{ord chi = d} chi(a); close to 1 when a
// is s-free and to 0 otherwise.
std::complex<double> rho_s(const FieldContext& ctx, FieldElement a, std::uint64_t s);

struct FreePairCount {
  std::uint64_t l1 = 1;
  std::uint64_t l2 = 1;
  std::uint64_t count = 0;
  std::optional<Rational> lower_bound;
};

// #{alpha not in S_f : alpha l1-free, f(alpha) l2-free}, where S_f is {0}
// together with the zeros of f1 and f2. Requires l1, l2 | q - 1.
FreePairCount count_free_pairs(const FieldContext& ctx, const RationalFunction& f,
                               std::uint64_t l1, std::uint64_t l2);
// Also attaches nf_lower_bound for (m1, m2) when q >= 4.
FreePairCount count_free_pairs(const FieldContext& ctx, const RationalFunction& f,
                               std::uint64_t l1, std::uint64_t l2, unsigned m1,
                               unsigned m2);

// rho_s tabulated by discrete log, for reuse across many functions.
class FreeIndicator {
 public:
  // Requires s | q - 1.
  FreeIndicator(const FieldContext& ctx, std::uint64_t s);

  std::uint64_t s() const { return s_; }
  // rho_s(g^e), 0 <= e < q - 1.
  std::complex<double> at_exponent(std::uint64_t e) const { return values_.at(e); }
  std::size_t size() const { return values_.size(); }

 private:
  std::uint64_t s_;
  std::vector<std::complex<double>> values_;
};

// The same count expanded over pairs of characters of square-free order.
std::complex<double> n_f_via_characters(const FieldContext& ctx, const RationalFunction& f,
                                        std::uint64_t l1, std::uint64_t l2);
// Throws DomainError when an indicator was built for a different group order.
std::complex<double> n_f_via_characters(const FieldContext& ctx, const RationalFunction& f,
                                        const FreeIndicator& rho1, const FreeIndicator& rho2);

struct HFactor {
  PolyQ poly;  // monic irreducible (x allowed)
  std::int64_t exponent = 0;
};

struct CharacterSum {
  std::complex<double> value;
  // (sum of degrees of the distinct factors - 1) * sqrt(q)
  double weil_budget = 0;
  // Some net exponent is not a multiple of ord(chi), i.e. h is not a full
  // ord(chi)-th power.
  bool hypothesis_holds = false;
  unsigned degree_sum = 0;
};

// sum over alpha with h(alpha) != 0, infinity of chi(h(alpha)), h given as
// prod poly^exponent. Throws DomainError for trivial chi or a non-monic or
// reducible factor.
CharacterSum character_sum(const FieldContext& ctx, const std::vector<HFactor>& h,
                           CharacterIndex chi);

// A rational r >= sqrt(n), exact when n is a perfect square and otherwise
// within 1e-12 of sqrt(n).
Rational sqrt_upper(const BigInt& n);

// theta(l1) theta(l2) (q - (m1+m2+1) - (m1+m2) sqrt(q) (W(l1) W(l2) - 1)),
// rounded down through sqrt_upper. Throws DomainError for q < 4.
Rational nf_lower_bound(const BigInt& q, unsigned m1, unsigned m2,
                        const arith::Factorization& l1, const arith::Factorization& l2);

struct SieveSides {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

// lhs = N_f(q-1, q-1); rhs = sum_i N_f(p_i l, l) + sum_i N_f(l, p_i l)
// - (2r - 1) N_f(l, l), or N_f(l, l) when r = 0. sieve_primes must be exactly
// the primes of q - 1 not dividing l.
SieveSides sieve_inequality_check(const FieldContext& ctx, const RationalFunction& f,
                                  const arith::Factorization& ell,
                                  const std::vector<std::uint64_t>& sieve_primes);

}  // namespace primpair::pairs
