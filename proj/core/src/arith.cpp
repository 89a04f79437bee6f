#include "primpair/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <unordered_map>

#include "primpair/errors.hpp"

namespace primpair::arith {
namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;

// Sieve of Eratosthenes, primes strictly below `bound`.
std::vector<std::uint64_t> sieve(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 3) return out;
  std::vector<bool> composite(bound, false);
  for (std::uint64_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
  }
  return out;
}

const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = sieve(kTrialBound);
  return primes;
}

constexpr std::array<unsigned long, 13> kDeterministicBases = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
constexpr std::array<unsigned long, 12> kExtraBases = {
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

const BigInt& deterministic_limit() {
  static const BigInt limit("3317044064679887385961981", 10);
  return limit;
}

// One Miller-Rabin round; n odd, n - 1 = d * 2^s.
bool strong_probable_prime(const BigInt& n, const BigInt& d, unsigned s,
                           unsigned long base) {
  BigInt a = base;
  BigInt nm1 = n - 1;
  if (a % n == 0) return true;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

BigInt step(const BigInt& y, const BigInt& n, unsigned long c) {
  BigInt out = y * y + c;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
  return out;
}

// Brent's variant of Pollard rho. Returns a divisor of n, possibly n itself
// when the cycle for this constant collapses.
BigInt brent_rho(const BigInt& n, unsigned long c) {
  constexpr unsigned long kBatch = 128;
  BigInt y = 2, x, ys, q = 1, g = 1;
  unsigned long r = 1;
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y, n, c);
    unsigned long k = 0;
    do {
      ys = y;
      const unsigned long batch = std::min(kBatch, r - k);
      for (unsigned long i = 0; i < batch; ++i) {
        y = step(y, n, c);
        BigInt diff = abs(x - y);
        q = (q * diff) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += batch;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = step(ys, n, c);
      BigInt diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

BigInt nontrivial_divisor(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt d = brent_rho(n, c);
    if (d != n && d != 1) return d;
  }
}

void split(const BigInt& m, std::map<BigInt, unsigned>& acc, bool& proven) {
  if (m == 1) return;
  const PrimalityResult pr = check_prime(m);
  if (pr.prime) {
    ++acc[m];
    proven = proven && pr.proven;
    return;
  }
  if (mpz_perfect_power_p(m.get_mpz_t())) {
    const std::size_t bits = bit_length(m);
    for (unsigned long e = 2; e <= bits; ++e) {
      BigInt root;
      if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), e) != 0) {
        for (unsigned long i = 0; i < e; ++i) split(root, acc, proven);
        return;
      }
    }
  }
  BigInt d = nontrivial_divisor(m);
  split(d, acc, proven);
  split(m / d, acc, proven);
}

}  // namespace

PrimalityResult check_prime(const BigInt& n) {
  if (n < 2) return {false, true};
  for (unsigned long b : kDeterministicBases) {
    if (n == b) return {true, true};
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return {false, true};
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (unsigned long b : kDeterministicBases) {
    if (!strong_probable_prime(n, d, s, b)) return {false, true};
  }
  if (n < deterministic_limit()) return {true, true};
  for (unsigned long b : kExtraBases) {
    if (!strong_probable_prime(n, d, s, b)) return {false, true};
  }
  return {true, false};
}

bool is_prime(const BigInt& n) { return check_prime(n).prime; }

bool is_mersenne_prime(unsigned k) {
  static std::mutex mu;
  static std::unordered_map<unsigned, bool> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  bool result = false;
  if (k == 2) {
    result = true;
  } else if (k > 2 && is_prime(BigInt(k))) {
    const BigInt m = ipow(BigInt(2), k) - 1;
    BigInt s = 4;
    for (unsigned i = 0; i < k - 2; ++i) {
      s = s * s - 2;
      mpz_mod(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
    }
    result = (s == 0);
  }
  std::lock_guard lock(mu);
  cache.emplace(k, result);
  return result;
}

Factorization::Factorization() : value_(1) {}

Factorization::Factorization(BigInt value, std::vector<PrimePower> factors,
                             bool proven)
    : value_(std::move(value)), factors_(std::move(factors)), proven_(proven) {}

Factorization Factorization::from_factors(std::vector<PrimePower> factors) {
  BigInt value = 1;
  bool proven = true;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& [prime, exponent] = factors[i];
    if (exponent == 0) throw DomainError("factor exponent must be >= 1");
    if (i > 0 && !(factors[i - 1].prime < prime)) {
      throw DomainError("factor primes must be strictly ascending");
    }
    const PrimalityResult pr = check_prime(prime);
    if (!pr.prime) throw DomainError(prime.get_str() + " is not prime");
    proven = proven && pr.proven;
    value *= ipow(prime, exponent);
  }
  return Factorization(std::move(value), std::move(factors), proven);
}

std::vector<BigInt> Factorization::primes() const {
  std::vector<BigInt> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.prime);
  return out;
}

BigInt Factorization::radical() const {
  BigInt r = 1;
  for (const auto& f : factors_) r *= f.prime;
  return r;
}

bool Factorization::divides(const BigInt& n) const {
  return sgn(value_) != 0 && n % value_ == 0;
}

Factorization Factorization::restrict_to(const BigInt& d) const {
  if (d <= 0 || value_ % d != 0) {
    throw DomainError(d.get_str() + " does not divide " + value_.get_str());
  }
  BigInt rest = d;
  std::vector<PrimePower> out;
  for (const auto& f : factors_) {
    unsigned e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), f.prime.get_mpz_t())) {
      rest /= f.prime;
      ++e;
    }
    if (e > 0) out.push_back({f.prime, e});
  }
  return Factorization(d, std::move(out), proven_);
}

Factorization factorize(const BigInt& n) {
  if (n <= 0) throw DomainError("factorize requires n >= 1");
  std::map<BigInt, unsigned> acc;
  BigInt m = n;
  for (std::uint64_t p : trial_primes()) {
    if (BigInt(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++acc[BigInt(p)];
    }
  }
  bool proven = true;
  if (m > 1) {
    // No factor below the trial bound: below its square, m is prime.
    const BigInt bound = BigInt(kTrialBound) * kTrialBound;
    if (m < bound) {
      ++acc[m];
    } else {
      split(m, acc, proven);
    }
  }
  std::vector<PrimePower> factors;
  factors.reserve(acc.size());
  for (auto& [prime, exponent] : acc) factors.push_back({prime, exponent});
  return Factorization(n, std::move(factors), proven);
}

Factorization factorize(std::uint64_t n) { return factorize(from_u64(n)); }

BigInt euler_phi(const Factorization& f) {
  BigInt out = 1;
  for (const auto& [prime, exponent] : f.factors()) {
    out *= (prime - 1) * ipow(prime, exponent - 1);
  }
  return out;
}

int moebius(const Factorization& f) {
  for (const auto& pp : f.factors()) {
    if (pp.exponent >= 2) return 0;
  }
  return f.factors().size() % 2 == 0 ? 1 : -1;
}

OmegaW omega_and_w(const Factorization& f) {
  const auto omega = static_cast<unsigned>(f.factors().size());
  return {omega, ipow(BigInt(2), omega)};
}

Rational theta(const Factorization& f) {
  Rational out(euler_phi(f), f.value());
  out.canonicalize();
  return out;
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  if (bound < 2) throw DomainError("primes_below requires bound >= 2");
  if (bound > kPrimesBelowCap) {
    throw CapacityError("primes_below supports bound <= 2^24");
  }
  return sieve(bound);
}

std::vector<SignedDivisor> squarefree_divisors(const Factorization& f) {
  std::vector<SignedDivisor> out{{BigInt(1), 1}};
  for (const auto& pp : f.factors()) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({out[i].divisor * pp.prime, -out[i].mu});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.divisor < b.divisor; });
  return out;
}

}  // namespace primpair::arith
