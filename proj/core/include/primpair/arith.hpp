#pragma once

// Exact integer number theory: factorization and the multiplicative
// functions (phi, mu, omega, W, theta) consumed by the membership criteria.

#include <cstdint>
#include <vector>

#include "primpair/bigint.hpp"

namespace primpair::arith {

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Outcome of a primality test. `proven` is false when the answer rests on
// Miller-Rabin with fixed bases beyond the range where those bases are known
// to be deterministic.
struct PrimalityResult {
  bool prime = false;
  bool proven = true;
};

// Miller-Rabin with the 13 prime bases up to 41; deterministic for
// n < 3317044064679887385961981, probabilistic (fixed extra bases) above.
PrimalityResult check_prime(const BigInt& n);
bool is_prime(const BigInt& n);

// Lucas-Lehmer test for 2^k - 1, cached per k. Deterministic.
bool is_mersenne_prime(unsigned k);

// n = prod prime^exponent with primes strictly ascending. Immutable.
class Factorization {
 public:
  // The factorization of 1.
  Factorization();

  // Validates ordering, exponents and primality; throws DomainError.
  static Factorization from_factors(std::vector<PrimePower> factors);

  const BigInt& value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  std::vector<BigInt> primes() const;
  BigInt radical() const;
  // False when some prime was certified only probabilistically.
  bool proven() const { return proven_; }

  bool divides(const BigInt& n) const;
  // Factorization of a divisor d of value(), reusing the known primes.
  // Throws DomainError when d does not divide value().
  Factorization restrict_to(const BigInt& d) const;

  friend bool operator==(const Factorization& a, const Factorization& b) {
    return a.value_ == b.value_ && a.factors_ == b.factors_;
  }

 private:
  Factorization(BigInt value, std::vector<PrimePower> factors, bool proven);

  BigInt value_;
  std::vector<PrimePower> factors_;
  bool proven_ = true;

  friend Factorization factorize(const BigInt& n);
};

// Trial division by primes below 10^6, then Pollard-Brent rho with a fixed
// seed schedule, then Miller-Rabin on cofactors. Deterministic.
// Throws DomainError for n <= 0.
Factorization factorize(const BigInt& n);
Factorization factorize(std::uint64_t n);

BigInt euler_phi(const Factorization& f);
int moebius(const Factorization& f);

struct OmegaW {
  unsigned omega = 0;  // distinct prime divisors
  BigInt w;            // square-free divisors, 2^omega
};
OmegaW omega_and_w(const Factorization& f);

// phi(s)/s in lowest terms.
Rational theta(const Factorization& f);

inline constexpr std::uint64_t kPrimesBelowCap = std::uint64_t{1} << 24;

// All primes strictly below `bound`. Requires 2 <= bound <= 2^24.
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

struct SignedDivisor {
  BigInt divisor;
  int mu = 1;

  friend bool operator==(const SignedDivisor&, const SignedDivisor&) = default;
};

// All 2^omega square-free divisors with their Moebius value, ascending.
std::vector<SignedDivisor> squarefree_divisors(const Factorization& f);

}  // namespace primpair::arith
