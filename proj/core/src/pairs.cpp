#include "primpair/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "primpair/errors.hpp"

namespace primpair::pairs {
namespace {

using arith::Factorization;

std::complex<double> root_of_unity(std::uint64_t num, std::uint64_t den) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num % den) /
                       static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

void require_divisor(const FieldContext& ctx, std::uint64_t s, const char* what) {
  if (s == 0 || ctx.group_order() % s != 0) {
    throw DomainError(std::string(what) + "=" + std::to_string(s) + " does not divide q-1=" +
                      std::to_string(ctx.group_order()));
  }
}

// Sums of the characters of order exactly d: table[e] = sum_{ord chi = d}
// chi(g^e), which only depends on e mod d.
class OrderSums {
 public:
  OrderSums(const FieldContext& ctx, std::uint64_t d) : d_(d), sums_(d) {
    const auto chars = characters_of_order(ctx, d);
    for (std::uint64_t e = 0; e < d; ++e) {
      std::complex<double> acc = 0;
      for (const auto& chi : chars) {
        acc += root_of_unity(static_cast<std::uint64_t>(chi.n) * e, ctx.group_order());
      }
      sums_[e] = acc;
    }
  }
  std::complex<double> at(std::uint64_t e) const { return sums_[e % d_]; }

 private:
  std::uint64_t d_;
  std::vector<std::complex<double>> sums_;
};

struct Term {
  double weight;  // mu(d) / phi(d)
  OrderSums sums;
};

// Terms of theta(s) sum_{d | s} mu(d)/phi(d) sum_{ord chi = d} chi.
std::vector<Term> rho_terms(const FieldContext& ctx, std::uint64_t s) {
  const Factorization fs = ctx.qm1_factorization().restrict_to(from_u64(s));
  std::vector<Term> out;
  for (const auto& sd : arith::squarefree_divisors(fs)) {
    const std::uint64_t d = to_u64(sd.divisor);
    const double phi = arith::euler_phi(arith::factorize(d)).get_d();
    out.push_back({sd.mu / phi, OrderSums(ctx, d)});
  }
  return out;
}

std::complex<double> rho_from_terms(const std::vector<Term>& terms, double theta,
                                    std::uint64_t e) {
  std::complex<double> acc = 0;
  for (const auto& t : terms) acc += t.weight * t.sums.at(e);
  return theta * acc;
}

double theta_of(const FieldContext& ctx, std::uint64_t s) {
  return arith::theta(ctx.qm1_factorization().restrict_to(from_u64(s))).get_d();
}

bool free_exponent(const std::vector<std::uint32_t>& primes, std::uint32_t e) {
  for (std::uint32_t d : primes) {
    if (e % d == 0) return false;
  }
  return true;
}

}  // namespace

CharacterIndex character(const FieldContext& ctx, std::uint32_t n) {
  const std::uint32_t m = ctx.group_order();
  if (n >= m) {
    throw DomainError("character index " + std::to_string(n) + " out of range");
  }
  return {n, m / std::gcd(n, m)};
}

std::vector<CharacterIndex> characters_of_order(const FieldContext& ctx, std::uint64_t d) {
  require_divisor(ctx, d, "d");
  const std::uint64_t step = ctx.group_order() / d;
  std::vector<CharacterIndex> out;
  for (std::uint64_t j = 0; j < d; ++j) {
    if (std::gcd(j, d) != 1) continue;
    out.push_back({static_cast<std::uint32_t>(step * j), static_cast<std::uint32_t>(d)});
  }
  return out;
}

std::complex<double> character_value(const FieldContext& ctx, CharacterIndex chi,
                                     FieldElement a) {
  if (a.is_zero()) throw DomainError("characters are defined on nonzero elements");
  return root_of_unity(static_cast<std::uint64_t>(chi.n) * ctx.dlog(a), ctx.group_order());
}

std::complex<double> rho_s(const FieldContext& ctx, FieldElement a, std::uint64_t s) {
  require_divisor(ctx, s, "s");
  if (a.is_zero()) throw DomainError("rho_s is defined on nonzero elements");
  return rho_from_terms(rho_terms(ctx, s), theta_of(ctx, s), ctx.dlog(a));
}

FreePairCount count_free_pairs(const FieldContext& ctx, const RationalFunction& f,
                               std::uint64_t l1, std::uint64_t l2) {
  const auto p1 = ff::prime_divisors_of_divisor(ctx, l1);
  const auto p2 = ff::prime_divisors_of_divisor(ctx, l2);
  FreePairCount out{l1, l2, 0, std::nullopt};
  for (std::uint32_t c = 1; c < ctx.q(); ++c) {
    const FieldElement a(c);
    const FieldElement num = polyff::eval(ctx, f.f1(), a);
    const FieldElement den = polyff::eval(ctx, f.f2(), a);
    if (num.is_zero() || den.is_zero()) continue;
    if (!free_exponent(p1, ctx.dlog(a))) continue;
    if (!free_exponent(p2, ctx.dlog(ctx.div(num, den)))) continue;
    ++out.count;
  }
  return out;
}

FreePairCount count_free_pairs(const FieldContext& ctx, const RationalFunction& f,
                               std::uint64_t l1, std::uint64_t l2, unsigned m1,
                               unsigned m2) {
  FreePairCount out = count_free_pairs(ctx, f, l1, l2);
  if (ctx.q() >= 4) {
    const auto& qm1 = ctx.qm1_factorization();
    out.lower_bound = nf_lower_bound(BigInt(ctx.q()), m1, m2, qm1.restrict_to(from_u64(l1)),
                                     qm1.restrict_to(from_u64(l2)));
  }
  return out;
}

std::complex<double> n_f_via_characters(const FieldContext& ctx, const RationalFunction& f,
                                        std::uint64_t l1, std::uint64_t l2) {
  require_divisor(ctx, l1, "l1");
  require_divisor(ctx, l2, "l2");
  return n_f_via_characters(ctx, f, FreeIndicator(ctx, l1), FreeIndicator(ctx, l2));
}

FreeIndicator::FreeIndicator(const FieldContext& ctx, std::uint64_t s) : s_(s) {
  require_divisor(ctx, s, "s");
  const auto terms = rho_terms(ctx, s);
  const double theta = theta_of(ctx, s);
  values_.resize(ctx.group_order());
  for (std::uint64_t e = 0; e < values_.size(); ++e) values_[e] = rho_from_terms(terms, theta, e);
}

std::complex<double> n_f_via_characters(const FieldContext& ctx, const RationalFunction& f,
                                        const FreeIndicator& rho1, const FreeIndicator& rho2) {
  if (rho1.size() != ctx.group_order() || rho2.size() != ctx.group_order()) {
    throw DomainError("free indicator built for another field");
  }
  // Sum over alpha outside S_f of theta(l1) theta(l2) sum_{d1, d2} mu(d1) mu(d2) /
  // (phi(d1) phi(d2)) sum_{ord chi1 = d1, ord chi2 = d2} chi1(alpha) chi2(f(alpha)),
  // the inner double sum split as rho_l1(alpha) rho_l2(f(alpha)).
  std::complex<double> total = 0;
  for (std::uint32_t c = 1; c < ctx.q(); ++c) {
    const FieldElement a(c);
    const FieldElement num = polyff::eval(ctx, f.f1(), a);
    const FieldElement den = polyff::eval(ctx, f.f2(), a);
    if (num.is_zero() || den.is_zero()) continue;
    total += rho1.at_exponent(ctx.dlog(a)) * rho2.at_exponent(ctx.dlog(ctx.div(num, den)));
  }
  return total;
}

CharacterSum character_sum(const FieldContext& ctx, const std::vector<HFactor>& h,
                           CharacterIndex chi) {
  if (chi.is_trivial()) throw DomainError("the Weil bound needs a nontrivial character");
  std::vector<HFactor> merged;
  for (const auto& hf : h) {
    if (!hf.poly.is_monic() || !polyff::is_irreducible(ctx, hf.poly)) {
      throw DomainError("h factors must be monic irreducible polynomials");
    }
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const HFactor& m) { return m.poly == hf.poly; });
    if (it == merged.end()) {
      merged.push_back(hf);
    } else {
      it->exponent += hf.exponent;
    }
  }
  std::erase_if(merged, [](const HFactor& m) { return m.exponent == 0; });

  CharacterSum out;
  for (const auto& m : merged) {
    out.degree_sum += m.poly.degree().value();
    if (m.exponent % static_cast<std::int64_t>(chi.order) != 0) out.hypothesis_holds = true;
  }
  out.weil_budget = (static_cast<double>(out.degree_sum) - 1.0) *
                    std::sqrt(static_cast<double>(ctx.q()));

  const std::int64_t n = ctx.group_order();
  for (std::uint32_t c = 0; c < ctx.q(); ++c) {
    const FieldElement a(c);
    std::int64_t log_sum = 0;
    bool defined = true;
    for (const auto& m : merged) {
      const FieldElement v = polyff::eval(ctx, m.poly, a);
      if (v.is_zero()) {
        defined = false;
        break;
      }
      const std::int64_t e = ((m.exponent % n) + n) % n;
      const std::uint64_t term = static_cast<std::uint64_t>(e) * ctx.dlog(v);
      log_sum = (log_sum + static_cast<std::int64_t>(term % static_cast<std::uint64_t>(n))) % n;
    }
    if (!defined) continue;
    out.value += root_of_unity(static_cast<std::uint64_t>(chi.n) * log_sum,
                               static_cast<std::uint64_t>(n));
  }
  return out;
}

Rational sqrt_upper(const BigInt& n) {
  if (sgn(n) < 0) throw DomainError("square root of a negative number");
  if (is_perfect_square(n)) return Rational(isqrt(n));
  const BigInt scale = ipow(BigInt(10), 12);
  Rational r(isqrt(n * scale * scale) + 1, scale);
  r.canonicalize();
  return r;
}

Rational nf_lower_bound(const BigInt& q, unsigned m1, unsigned m2,
                        const arith::Factorization& l1, const arith::Factorization& l2) {
  if (q < 4) throw DomainError("the lower bound for N_f needs q >= 4");
  const unsigned m = m1 + m2;
  const BigInt ww = arith::omega_and_w(l1).w * arith::omega_and_w(l2).w;
  const Rational inner = Rational(q - (m + 1)) - Rational(m) * sqrt_upper(q) * Rational(ww - 1);
  Rational out = arith::theta(l1) * arith::theta(l2) * inner;
  out.canonicalize();
  return out;
}

SieveSides sieve_inequality_check(const FieldContext& ctx, const RationalFunction& f,
                                  const arith::Factorization& ell,
                                  const std::vector<std::uint64_t>& sieve_primes) {
  const BigInt qm1 = ctx.group_order();
  if (!ell.divides(qm1)) {
    throw DomainError("l=" + ell.value().get_str() + " does not divide q-1");
  }
  std::vector<std::uint64_t> expected;
  for (std::uint32_t r : ctx.qm1_primes()) {
    if (!mpz_divisible_ui_p(ell.value().get_mpz_t(), r)) expected.push_back(r);
  }
  std::vector<std::uint64_t> given = sieve_primes;
  std::sort(given.begin(), given.end());
  if (given != expected) {
    throw DomainError("sieve primes must be exactly the primes of q-1 not dividing l");
  }
  const std::uint64_t l = to_u64(ell.radical());
  const auto n = [&](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::int64_t>(count_free_pairs(ctx, f, a, b).count);
  };
  SieveSides out;
  out.lhs = n(ctx.group_order(), ctx.group_order());
  if (given.empty()) {
    out.rhs = n(l, l);
    return out;
  }
  const auto r = static_cast<std::int64_t>(given.size());
  std::int64_t rhs = -(2 * r - 1) * n(l, l);
  for (std::uint64_t p : given) rhs += n(p * l, l) + n(l, p * l);
  out.rhs = rhs;
  return out;
}

}  // namespace primpair::pairs
