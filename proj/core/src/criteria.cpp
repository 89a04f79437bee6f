#include "primpair/criteria.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "primpair/errors.hpp"

namespace primpair::criteria {
namespace {

BigInt w_of(const Factorization& f) { return arith::omega_and_w(f).w; }

void require_k(unsigned k) {
  if (k == 0) throw DomainError("k must be >= 1");
}

Factorization factor_qm1(std::uint32_t p, unsigned k) {
  require_k(k);
  return arith::factorize(BigInt(ipow(BigInt(p), k) - 1));
}

// q^(t-4) (prod s)^4 >= m^(2t) 2^(4 t pi(2^t)) for integer t.
bool cota_t_exact(const BigInt& q, unsigned m, unsigned t) {
  const auto primes = arith::primes_below(std::uint64_t{1} << t);
  BigInt prod = 1;
  for (std::uint64_t s : primes) prod *= from_u64(s);
  const BigInt lhs = ipow(q, t - 4) * ipow(prod, 4);
  const BigInt rhs = ipow(BigInt(m), 2UL * t) * ipow(BigInt(2), 4UL * t * primes.size());
  return lhs >= rhs;
}

double cota_t_threshold(unsigned m, double t) {
  const double bound = std::exp2(t);
  const auto primes = arith::primes_below(static_cast<std::uint64_t>(std::ceil(bound)));
  double log_a = 0;  // log A_t
  for (std::uint64_t s : primes) {
    if (static_cast<double>(s) >= bound) break;
    log_a += std::log(2.0) - std::log(static_cast<double>(s)) / t;
  }
  return std::exp((2 * t / (t - 4)) * (std::log(static_cast<double>(m)) + 2 * log_a));
}

}  // namespace

bool check_corollary(const BigInt& q, const Factorization& qm1, unsigned m1, unsigned m2) {
  if (q < 4) return false;
  const BigInt w = w_of(qm1);
  const BigInt rhs = BigInt(m1 + m2) * w * w;
  return q > rhs * rhs;
}

bool check_corollary(std::uint32_t p, unsigned k, unsigned m1, unsigned m2) {
  return check_corollary(ipow(BigInt(p), k), factor_qm1(p, k), m1, m2);
}

std::optional<SieveCertificate> make_sieve_certificate(const BigInt& q,
                                                       const Factorization& qm1,
                                                       const BigInt& ell_radical, unsigned m1,
                                                       unsigned m2) {
  if (qm1.value() != q - 1) throw DomainError("factorization is not of q-1");
  if (ell_radical < 1 || qm1.radical() % ell_radical != 0) {
    throw DomainError("l=" + ell_radical.get_str() + " is not a square-free divisor of q-1");
  }
  SieveCertificate cert;
  cert.ell_radical = ell_radical;
  Rational inv_sum = 0;
  for (const BigInt& prime : qm1.primes()) {
    if (ell_radical % prime == 0) continue;
    cert.sieve_primes.push_back(prime);
    inv_sum += Rational(BigInt(1), prime);
  }
  cert.delta = 1 - 2 * inv_sum;
  cert.delta.canonicalize();
  if (sgn(cert.delta) <= 0) return std::nullopt;
  const long r = static_cast<long>(cert.sieve_primes.size());
  cert.Delta = Rational(2 * r - 1) / cert.delta + 2;
  cert.Delta.canonicalize();
  const BigInt w = w_of(arith::factorize(ell_radical));
  const BigInt side = BigInt(m1 + m2) * w * w * cert.Delta.get_num();
  const BigInt den = cert.Delta.get_den();
  cert.bound_ok = q * den * den > side * side;
  return cert;
}

std::vector<SieveCertificate> sieve_search_all(const BigInt& q, const Factorization& qm1,
                                               unsigned m1, unsigned m2) {
  std::vector<SieveCertificate> out;
  BigInt ell = 1;
  const auto primes = qm1.primes();
  for (std::size_t s = 0; s <= primes.size(); ++s) {
    if (s > 0) ell *= primes[s - 1];
    auto cert = make_sieve_certificate(q, qm1, ell, m1, m2);
    if (cert && cert->bound_ok) out.push_back(std::move(*cert));
  }
  return out;
}

std::optional<SieveCertificate> sieve_search(const BigInt& q, const Factorization& qm1,
                                             unsigned m1, unsigned m2) {
  BigInt ell = 1;
  const auto primes = qm1.primes();
  for (std::size_t s = 0; s <= primes.size(); ++s) {
    if (s > 0) ell *= primes[s - 1];
    auto cert = make_sieve_certificate(q, qm1, ell, m1, m2);
    if (cert && cert->bound_ok) return cert;
  }
  return std::nullopt;
}

std::optional<SieveCertificate> sieve_search(std::uint32_t p, unsigned k, unsigned m1,
                                             unsigned m2) {
  return sieve_search(ipow(BigInt(p), k), factor_qm1(p, k), m1, m2);
}

bool verify_certificate(const BigInt& q, const Factorization& qm1,
                        const SieveCertificate& cert, unsigned m1, unsigned m2) {
  if (qm1.value() != q - 1) return false;
  if (cert.ell_radical < 1 || qm1.radical() % cert.ell_radical != 0) return false;
  const auto fresh = make_sieve_certificate(q, qm1, cert.ell_radical, m1, m2);
  return fresh && *fresh == cert && fresh->bound_ok;
}

CotaT check_cota_t(const BigInt& q, unsigned m1, unsigned m2, double t, double guard) {
  if (!(t > 4)) throw DomainError("cota-t needs t > 4");
  const unsigned m = m1 + m2;
  CotaT out;
  out.threshold = cota_t_threshold(m, t);
  if (t == std::floor(t) && t <= 24) {
    out.exact = true;
    out.passes = cota_t_exact(q, m, static_cast<unsigned>(t));
  } else {
    out.passes = q.get_d() >= out.threshold * (1 + guard);
  }
  return out;
}

CotaT check_cota_t(std::uint32_t p, unsigned k, unsigned m1, unsigned m2, double t,
                   double guard) {
  require_k(k);
  return check_cota_t(ipow(BigInt(p), k), m1, m2, t, guard);
}

bool check_no_gamma(const Factorization& qm1, unsigned m1, unsigned m2) {
  return arith::euler_phi(qm1) <= m1 + m2 + 1;
}

bool check_no_gamma(std::uint32_t p, unsigned k, unsigned m1, unsigned m2) {
  return check_no_gamma(factor_qm1(p, k), m1, m2);
}

bool check_mersenne(unsigned k, unsigned m1, unsigned m2) {
  if (k <= 1) throw DomainError("the Mersenne criterion needs k > 1");
  if (!arith::is_mersenne_prime(k)) return false;
  return ipow(BigInt(2), k) - 2 > m1 + m2 + std::max(m1, m2);
}

bool check_phi_density(const Factorization& qm1, unsigned k, unsigned m1, unsigned m2) {
  const BigInt q = ipow(BigInt(2), k);
  if (qm1.value() != q - 1) throw DomainError("factorization is not of 2^k - 1");
  const unsigned m = std::max(m1, m2);
  return arith::euler_phi(qm1) * (m + 1) > q * m;
}

bool check_phi_density(unsigned k, unsigned m1, unsigned m2) {
  return check_phi_density(factor_qm1(2, k), k, m1, m2);
}

bool check_phi_density(std::uint32_t p, unsigned k, unsigned m1, unsigned m2) {
  if (p != 2) throw DomainError("the phi-density criterion holds only in characteristic 2");
  return check_phi_density(k, m1, m2);
}

FieldSpec FieldSpec::of(const ff::FieldContext& ctx) {
  return {ctx.p(), ctx.k(), ctx.modulus(), ctx.coords(ctx.generator())};
}

ff::FieldContext FieldSpec::rebuild() const {
  return ff::FieldContext::from_parts(p, modulus, generator);
}

std::string reason_name(const Reason& r) {
  struct Name {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const ByCorollary&) const { return "corollary"; }
    std::string operator()(const BySieve&) const { return "sieve"; }
    std::string operator()(const ByCotaT&) const { return "cota_t"; }
    std::string operator()(const ByMersenne&) const { return "mersenne"; }
    std::string operator()(const ByPhiDensity&) const { return "phi_density"; }
    std::string operator()(const ByBruteForceMember&) const { return "brute_force"; }
    std::string operator()(const ByPhiTooSmall&) const { return "phi_too_small"; }
    std::string operator()(const ByWitness&) const { return "witness"; }
    std::string operator()(const ByBruteForceNonMember&) const { return "brute_force"; }
  };
  return std::visit(Name{}, r);
}

std::string status_name(Status s) {
  switch (s) {
    case Status::InGamma:
      return "in";
    case Status::NotInGamma:
      return "out";
    case Status::Unknown:
      break;
  }
  return "unknown";
}

ByWitness known_witness_2_4() {
  static const ByWitness witness = [] {
    const auto ctx = ff::FieldContext::build(2, 4);
    const std::uint32_t n = ctx.group_order();
    for (std::uint32_t e = 1; e < n; ++e) {
      if (std::gcd(e, n) != 1) continue;
      const ff::FieldElement a = ctx.exp(e);
      const polyff::PolyQ f1({ctx.one(), a});
      const polyff::PolyQ f2({a, ctx.one()});
      auto f = polyff::RationalFunction::canonical(ctx, f1, f2);
      if (certify::is_counterexample(ctx, f, 1, 1)) return ByWitness{FieldSpec::of(ctx), f};
    }
    throw std::logic_error("no (a x + 1)/(x + a) counterexample over F_16");
  }();
  return witness;
}

Verdict classify(std::uint32_t p, unsigned k, unsigned m1, unsigned m2,
                 const ClassifyOptions& options) {
  if (!arith::is_prime(BigInt(p))) throw DomainError(std::to_string(p) + " is not prime");
  require_k(k);
  if (m1 == 0 || m2 == 0) throw DomainError("m1 and m2 must be >= 1");
  Verdict v;
  v.p = p;
  v.k = k;
  v.m1 = std::max(m1, m2);
  v.m2 = std::min(m1, m2);
  m1 = v.m1;
  m2 = v.m2;
  const auto decide = [&](Status s, Reason r) {
    v.status = s;
    v.reason = std::move(r);
    return v;
  };

  const BigInt q = ipow(BigInt(p), k);
  const BigInt qm1 = q - 1;
  std::optional<Factorization> fact;
  if (bit_length(qm1) <= options.factor_limit_bits) {
    fact = options.factor ? options.factor(qm1) : arith::factorize(qm1);
  }

  if (fact) {
    v.attempted.push_back("no_gamma");
    if (check_no_gamma(*fact, m1, m2)) {
      return decide(Status::NotInGamma, ByPhiTooSmall{arith::euler_phi(*fact)});
    }
  }
  if (p == 2 && k == 4) {
    v.attempted.push_back("witness");
    return decide(Status::NotInGamma, known_witness_2_4());
  }
  if (fact) {
    v.attempted.push_back("corollary");
    if (check_corollary(q, *fact, m1, m2)) return decide(Status::InGamma, ByCorollary{w_of(*fact)});
    v.attempted.push_back("sieve");
    if (auto cert = sieve_search(q, *fact, m1, m2)) {
      return decide(Status::InGamma, BySieve{std::move(*cert)});
    }
  }
  if (p == 2) {
    if (k > 1) {
      v.attempted.push_back("mersenne");
      if (check_mersenne(k, m1, m2)) return decide(Status::InGamma, ByMersenne{});
    }
    if (fact) {
      v.attempted.push_back("phi_density");
      if (check_phi_density(*fact, k, m1, m2)) {
        return decide(Status::InGamma, ByPhiDensity{arith::euler_phi(*fact)});
      }
    }
  }
  v.attempted.push_back("cota_t");
  const CotaT cota = check_cota_t(q, m1, m2, options.t, options.cota_guard);
  if (cota.passes) return decide(Status::InGamma, ByCotaT{options.t, cota.threshold, cota.exact});

  if (options.brute_force && q <= from_u64(options.brute_field_cap) &&
      certify::pair_count(q.get_ui(), m1, m2) <= from_u64(options.brute_pair_cap)) {
    v.attempted.push_back("brute_force");
    const auto ctx = ff::FieldContext::build(p, k);
    certify::CertifyOptions co;
    co.pair_cap = options.brute_pair_cap;
    co.jobs = options.jobs;
    co.spot_check_samples = 0;
    const auto res = certify::certify_k(ctx, m1, m2, co);
    if (res.status == certify::CertifyStatus::Member) {
      return decide(Status::InGamma, ByBruteForceMember{res.stats});
    }
    return decide(Status::NotInGamma,
                  ByBruteForceNonMember{FieldSpec::of(ctx), *res.counterexample, res.stats});
  }
  return v;
}

GammaTable gamma_table(std::uint32_t p, unsigned m1, unsigned m2, unsigned k_max,
                       const ClassifyOptions& options, unsigned limit) {
  if (k_max > limit) {
    throw CapacityError("k_max=" + std::to_string(k_max) + " exceeds table limit " +
                        std::to_string(limit));
  }
  GammaTable table;
  table.rows.resize(k_max);
  const unsigned jobs = std::max(1U, std::min(options.jobs, std::max(1U, k_max)));
  ClassifyOptions row_options = options;
  if (jobs > 1) row_options.jobs = 1;

  std::atomic<unsigned> next{1};
  std::mutex error_mu;
  std::exception_ptr error;
  auto work = [&] {
    for (unsigned k = next++; k <= k_max; k = next++) {
      try {
        table.rows[k - 1] = classify(p, k, m1, m2, row_options);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (const auto& row : table.rows) {
    switch (row.status) {
      case Status::InGamma:
        table.in.push_back(row.k);
        break;
      case Status::NotInGamma:
        table.out.push_back(row.k);
        break;
      case Status::Unknown:
        table.unknown.push_back(row.k);
        break;
    }
  }
  return table;
}

}  // namespace primpair::criteria
