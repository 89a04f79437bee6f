#pragma once

// Sufficient and excluding criteria for k in Gamma_p(m1, m2), sieve
// certificates, and the verdict cascade over them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "primpair/arith.hpp"
#include "primpair/certify.hpp"
#include "primpair/polyff.hpp"

namespace primpair::criteria {

using arith::Factorization;

// q >= 4 and q > ((m1+m2) W(q-1)^2)^2, in integers.
bool check_corollary(const BigInt& q, const Factorization& qm1, unsigned m1, unsigned m2);
bool check_corollary(std::uint32_t p, unsigned k, unsigned m1, unsigned m2);

struct SieveCertificate {
  BigInt ell_radical;
  std::vector<BigInt> sieve_primes;  // ascending
  Rational delta;                    // 1 - 2 sum 1/p_i
  Rational Delta;                    // (2r - 1)/delta + 2
  bool bound_ok = false;             // q > ((m1+m2) W(l)^2 Delta)^2

  friend bool operator==(const SieveCertificate&, const SieveCertificate&) = default;
};

// Certificate for the split in which l collects the primes of q-1 dividing
// ell_radical and the rest are sieved. nullopt when delta <= 0. Throws
// DomainError unless ell_radical is a square-free divisor of q-1.
std::optional<SieveCertificate> make_sieve_certificate(const BigInt& q,
                                                       const Factorization& qm1,
                                                       const BigInt& ell_radical, unsigned m1,
                                                       unsigned m2);

// Ascending-prefix splits s = 0..omega(q-1): the first s primes go to l.
// sieve_search returns the first passing one; sieve_search_all all of them.
std::optional<SieveCertificate> sieve_search(const BigInt& q, const Factorization& qm1,
                                             unsigned m1, unsigned m2);
std::optional<SieveCertificate> sieve_search(std::uint32_t p, unsigned k, unsigned m1,
                                             unsigned m2);
std::vector<SieveCertificate> sieve_search_all(const BigInt& q, const Factorization& qm1,
                                               unsigned m1, unsigned m2);

// Recomputes delta, Delta and the bound from the stored primes and checks
// they partition the primes of q-1 and agree with the certificate.
bool verify_certificate(const BigInt& q, const Factorization& qm1,
                        const SieveCertificate& cert, unsigned m1, unsigned m2);

struct CotaT {
  double threshold = 0;  // ((m1+m2) A_t^2)^(2t/(t-4))
  bool passes = false;
  // The decision was made in integers: q^(t-4) (prod s)^4 >= (m1+m2)^(2t)
  // 2^(4 t pi(2^t)). Otherwise q >= threshold (1 + guard) in doubles.
  bool exact = false;
};

// Throws DomainError for t <= 4.
CotaT check_cota_t(const BigInt& q, unsigned m1, unsigned m2, double t = 6,
                   double guard = 1e-9);
CotaT check_cota_t(std::uint32_t p, unsigned k, unsigned m1, unsigned m2, double t = 6,
                   double guard = 1e-9);

// phi(q-1) <= m1 + m2 + 1 (k excluded).
bool check_no_gamma(const Factorization& qm1, unsigned m1, unsigned m2);
bool check_no_gamma(std::uint32_t p, unsigned k, unsigned m1, unsigned m2);

// p = 2: 2^k - 1 prime and 2^k - 2 > m1 + m2 + max(m1, m2). Throws DomainError
// for k <= 1.
bool check_mersenne(unsigned k, unsigned m1, unsigned m2);

// p = 2: phi(q-1) (1 + 1/m) > q with m = max(m1, m2).
bool check_phi_density(const Factorization& qm1, unsigned k, unsigned m1, unsigned m2);
bool check_phi_density(unsigned k, unsigned m1, unsigned m2);
// Throws DomainError for odd p.
bool check_phi_density(std::uint32_t p, unsigned k, unsigned m1, unsigned m2);

enum class Status { InGamma, NotInGamma, Unknown };

struct FieldSpec {
  std::uint32_t p = 0;
  unsigned k = 0;
  ff::Coords modulus;
  ff::Coords generator;

  static FieldSpec of(const ff::FieldContext& ctx);
  ff::FieldContext rebuild() const;
};

struct ByCorollary {
  BigInt w;  // W(q-1)
};
struct BySieve {
  SieveCertificate certificate;
};
struct ByCotaT {
  double t = 6;
  double threshold = 0;
  bool exact = false;
};
struct ByMersenne {};
struct ByPhiDensity {
  BigInt phi;
};
struct ByBruteForceMember {
  certify::CertifyStats stats;
};
struct ByPhiTooSmall {
  BigInt phi;
};
struct ByWitness {
  FieldSpec field;
  polyff::RationalFunction f;
};
struct ByBruteForceNonMember {
  FieldSpec field;
  polyff::RationalFunction f;
  certify::CertifyStats stats;
};

using Reason = std::variant<std::monostate, ByCorollary, BySieve, ByCotaT, ByMersenne,
                            ByPhiDensity, ByBruteForceMember, ByPhiTooSmall, ByWitness,
                            ByBruteForceNonMember>;

// "corollary", "sieve", "cota_t", "mersenne", "phi_density", "brute_force",
// "phi_too_small", "witness", or "" for no reason.
std::string reason_name(const Reason& r);
std::string status_name(Status s);

struct Verdict {
  std::uint32_t p = 0;
  unsigned k = 0;
  unsigned m1 = 0;  // normalized: m1 >= m2
  unsigned m2 = 0;
  Status status = Status::Unknown;
  Reason reason;
  std::vector<std::string> attempted;
};

using FactorProvider = std::function<Factorization(const BigInt&)>;

struct ClassifyOptions {
  double t = 6;
  double cota_guard = 1e-9;
  bool brute_force = true;
  std::uint64_t brute_field_cap = 64;
  std::uint64_t brute_pair_cap = certify::kDefaultPairCap;
  unsigned jobs = 1;
  // Factorization-based criteria are tried only when q - 1 < 2^factor_limit_bits.
  unsigned factor_limit_bits = 80;
  // Defaults to arith::factorize; must be thread-safe for gamma_table.
  FactorProvider factor;
};

// The counterexample f = (a x + 1)/(x + a) over F_16, a the first primitive
// element for which it has no primitive pair. Lies in Upsilon(1, 1).
ByWitness known_witness_2_4();

// Order: no_gamma, known witness, corollary, sieve, mersenne and phi_density
// (p = 2), cota_t, brute force, otherwise Unknown. Throws DomainError for p
// not prime or k, m1, m2 == 0.
Verdict classify(std::uint32_t p, unsigned k, unsigned m1, unsigned m2,
                 const ClassifyOptions& options = {});

inline constexpr unsigned kDefaultTableLimit = 100;

struct GammaTable {
  std::vector<Verdict> rows;  // k = 1..k_max
  std::vector<unsigned> in;
  std::vector<unsigned> out;
  std::vector<unsigned> unknown;
};

// Throws CapacityError for k_max > limit. Rows are computed by
// options.jobs workers and returned in k order.
GammaTable gamma_table(std::uint32_t p, unsigned m1, unsigned m2, unsigned k_max,
                       const ClassifyOptions& options = {},
                       unsigned limit = kDefaultTableLimit);

}  // namespace primpair::criteria
