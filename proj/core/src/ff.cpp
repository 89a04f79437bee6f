#include "primpair/ff.hpp"

#include <array>
#include <limits>
#include <numeric>
#include <string>

#include "primpair/errors.hpp"

namespace primpair::ff {
namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();
constexpr unsigned kMaxDegree = 32;

// Dense polynomials over F_p, constant term first, used only while
// constructing the field.
using PolyP = std::vector<std::uint64_t>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// a mod f for monic f.
PolyP reduce(PolyP a, const PolyP& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * f[i]) % p;
    }
    trim(a);
  }
  return a;
}

PolyP mul_mod(const PolyP& a, const PolyP& b, const PolyP& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return reduce(std::move(out), f, p);
}

PolyP pow_mod(PolyP base, std::uint64_t e, const PolyP& f, std::uint64_t p) {
  PolyP r = reduce({1}, f, p);
  base = reduce(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, base, f, p);
    base = mul_mod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

PolyP sub_poly(PolyP a, const PolyP& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

PolyP gcd_poly(PolyP a, PolyP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // Make b monic, then a <- a mod b.
    const std::uint64_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = c * li % p;
    a = reduce(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test: f monic of degree k is irreducible over F_p iff
// x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for each prime r | k.
bool is_irreducible(const PolyP& f, std::uint64_t p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  const PolyP x = reduce({0, 1}, f, p);
  std::vector<PolyP> frob(k + 1);
  frob[0] = x;
  for (unsigned i = 1; i <= k; ++i) frob[i] = pow_mod(frob[i - 1], p, f, p);
  if (frob[k] != x) return false;
  for (std::uint64_t r : arith::primes_below(k + 2)) {
    if (k % r != 0) continue;
    const PolyP g = gcd_poly(f, sub_poly(frob[k / r], x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

FieldContext FieldContext::build(std::uint32_t p, unsigned k,
                                 std::uint64_t table_cap) {
  if (!arith::is_prime(BigInt(p))) {
    throw DomainError(std::to_string(p) + " is not prime");
  }
  if (k == 0) throw DomainError("field degree k must be >= 1");
  const BigInt q = ipow(BigInt(p), k);
  if (q > from_u64(table_cap) || k > kMaxDegree) {
    throw CapacityError("field of size " + q.get_str() + " exceeds table cap " +
                        std::to_string(table_cap));
  }
  FieldContext ctx;
  ctx.p_ = p;
  ctx.k_ = k;
  ctx.q_ = static_cast<std::uint32_t>(q.get_ui());
  ctx.pow_p_.resize(k);
  for (unsigned i = 0; i < k; ++i) ctx.pow_p_[i] = i == 0 ? 1 : ctx.pow_p_[i - 1] * p;

  // Enumerate (c_0, ..., c_{k-1}) with c_0 as the most significant digit.
  PolyP f(k + 1, 0);
  f[k] = 1;
  bool found = false;
  for (std::uint64_t t = 0; t < ctx.q_ && !found; ++t) {
    std::uint64_t rest = t;
    for (unsigned i = 0; i < k; ++i) {
      f[k - 1 - i] = rest % p;
      rest /= p;
    }
    found = is_irreducible(f, p);
  }
  ctx.modulus_.assign(f.begin(), f.end());

  ctx.qm1_ = arith::factorize(static_cast<std::uint64_t>(ctx.q_ - 1));
  for (const auto& pp : ctx.qm1_.factors()) {
    ctx.qm1_primes_.push_back(static_cast<std::uint32_t>(pp.prime.get_ui()));
  }

  const std::uint32_t n = ctx.q_ - 1;
  for (std::uint64_t t = 1; t < ctx.q_; ++t) {
    std::uint64_t rest = t;
    std::uint32_t code = 0;
    for (unsigned i = 0; i < k; ++i) {
      code += static_cast<std::uint32_t>(rest % p) * ctx.pow_p_[k - 1 - i];
      rest /= p;
    }
    const FieldElement a(code);
    bool generates = true;
    for (std::uint32_t r : ctx.qm1_primes_) {
      if (ctx.pow_reference(a, n / r) == ctx.one()) {
        generates = false;
        break;
      }
    }
    if (generates) {
      ctx.generator_ = a;
      break;
    }
  }
  ctx.build_tables();
  return ctx;
}

FieldContext FieldContext::from_parts(std::uint32_t p, const Coords& modulus,
                                      const Coords& generator,
                                      std::uint64_t table_cap) {
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw DomainError("modulus must be monic of degree >= 1");
  }
  const unsigned k = static_cast<unsigned>(modulus.size() - 1);
  FieldContext ctx = build(p, k, table_cap);
  PolyP f(modulus.begin(), modulus.end());
  for (auto c : f) {
    if (c >= p) throw DomainError("modulus coefficient out of range");
  }
  if (!is_irreducible(f, p)) throw DomainError("modulus is not irreducible");
  ctx.modulus_ = modulus;
  const FieldElement g = ctx.from_coords(generator);
  for (std::uint32_t r : ctx.qm1_primes_) {
    if (g.is_zero() || ctx.pow_reference(g, (ctx.q_ - 1) / r) == ctx.one()) {
      throw DomainError("generator does not have order q - 1");
    }
  }
  if (g.is_zero()) throw DomainError("generator must be nonzero");
  ctx.generator_ = g;
  ctx.build_tables();
  return ctx;
}

void FieldContext::build_tables() {
  const std::uint32_t n = q_ - 1;
  exp_.assign(n, 0);
  log_.assign(q_, kNoLog);
  FieldElement cur = one();
  for (std::uint32_t e = 0; e < n; ++e) {
    exp_[e] = cur.code();
    log_[cur.code()] = e;
    cur = mul_reference(cur, generator_);
  }
  zech_.clear();
  if (p_ != 2) {
    zech_.assign(n, kNoLog);
    for (std::uint32_t e = 0; e < n; ++e) {
      const FieldElement s = add_reference(one(), FieldElement(exp_[e]));
      zech_[e] = s.is_zero() ? kNoLog : log_[s.code()];
    }
  }
}

FieldElement FieldContext::element(std::uint32_t code) const {
  if (code >= q_) {
    throw DomainError("element code " + std::to_string(code) + " out of range for q=" +
                      std::to_string(q_));
  }
  return FieldElement(code);
}

FieldElement FieldContext::from_int(std::int64_t c) const {
  const std::int64_t r = ((c % static_cast<std::int64_t>(p_)) + p_) % p_;
  return FieldElement(static_cast<std::uint32_t>(r));
}

FieldElement FieldContext::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() > k_) throw DomainError("too many coordinates for field");
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= p_) throw DomainError("coordinate out of range");
    code += coords[i] * pow_p_[i];
  }
  return FieldElement(code);
}

Coords FieldContext::coords(FieldElement a) const {
  Coords out(k_, 0);
  std::uint32_t rest = a.code();
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = rest % p_;
    rest /= p_;
  }
  return out;
}

FieldElement FieldContext::add(FieldElement a, FieldElement b) const {
  if (p_ == 2) return FieldElement(a.code() ^ b.code());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::uint32_t n = q_ - 1;
  const std::uint32_t la = log_[a.code()];
  const std::uint32_t lb = log_[b.code()];
  const std::uint32_t z = zech_[(lb + n - la) % n];
  if (z == kNoLog) return zero();
  return FieldElement(exp_[(static_cast<std::uint64_t>(la) + z) % n]);
}

FieldElement FieldContext::neg(FieldElement a) const {
  if (p_ == 2 || a.is_zero()) return a;
  const std::uint32_t n = q_ - 1;
  return FieldElement(exp_[(static_cast<std::uint64_t>(log_[a.code()]) + n / 2) % n]);
}

FieldElement FieldContext::sub(FieldElement a, FieldElement b) const {
  return add(a, neg(b));
}

FieldElement FieldContext::mul(FieldElement a, FieldElement b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  const std::uint64_t s = static_cast<std::uint64_t>(log_[a.code()]) + log_[b.code()];
  return FieldElement(exp_[s % (q_ - 1)]);
}

FieldElement FieldContext::inv(FieldElement a) const {
  if (a.is_zero()) throw DomainError("inverse of zero");
  const std::uint32_t n = q_ - 1;
  return FieldElement(exp_[(n - log_[a.code()]) % n]);
}

FieldElement FieldContext::div(FieldElement a, FieldElement b) const {
  return mul(a, inv(b));
}

FieldElement FieldContext::pow(FieldElement a, std::int64_t e) const {
  if (a.is_zero()) {
    if (e < 0) throw DomainError("negative power of zero");
    return e == 0 ? one() : zero();
  }
  const std::int64_t n = q_ - 1;
  const std::int64_t r = ((e % n) + n) % n;
  const std::uint64_t prod = static_cast<std::uint64_t>(log_[a.code()]) *
                             static_cast<std::uint64_t>(r);
  return FieldElement(exp_[prod % static_cast<std::uint64_t>(n)]);
}

FieldElement FieldContext::mul_reference(FieldElement a, FieldElement b) const {
  std::array<std::uint64_t, 2 * kMaxDegree> prod{};
  const Coords ca = coords(a);
  const Coords cb = coords(b);
  for (unsigned i = 0; i < k_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_;
    }
  }
  for (unsigned d = 2 * k_ - 1; d-- > k_;) {
    const std::uint64_t lead = prod[d];
    if (lead == 0) continue;
    for (unsigned i = 0; i <= k_; ++i) {
      prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - lead) * modulus_[i]) % p_;
    }
  }
  std::uint32_t code = 0;
  for (unsigned i = 0; i < k_; ++i) code += static_cast<std::uint32_t>(prod[i]) * pow_p_[i];
  return FieldElement(code);
}

FieldElement FieldContext::add_reference(FieldElement a, FieldElement b) const {
  const Coords ca = coords(a);
  const Coords cb = coords(b);
  std::uint32_t code = 0;
  for (unsigned i = 0; i < k_; ++i) code += ((ca[i] + cb[i]) % p_) * pow_p_[i];
  return FieldElement(code);
}

FieldElement FieldContext::pow_reference(FieldElement a, std::uint64_t e) const {
  FieldElement r = one();
  while (e > 0) {
    if (e & 1) r = mul_reference(r, a);
    a = mul_reference(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t FieldContext::dlog(FieldElement a) const {
  if (a.is_zero()) throw DomainError("discrete log of zero");
  if (a.code() >= q_) throw DomainError("element not in field");
  return log_[a.code()];
}

bool FieldContext::is_primitive(FieldElement a) const {
  if (a.is_zero()) return false;
  return std::gcd(dlog(a), q_ - 1) == 1;
}

bool FieldContext::is_s_free(FieldElement a, std::uint64_t s) const {
  const auto primes = prime_divisors_of_divisor(*this, s);
  if (a.is_zero()) throw DomainError("s-free is defined on nonzero elements only");
  const std::uint32_t e = dlog(a);
  for (std::uint32_t d : primes) {
    if (e % d == 0) return false;
  }
  return true;
}

std::vector<FieldElement> FieldContext::elements() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (std::uint32_t c = 0; c < q_; ++c) out.emplace_back(c);
  return out;
}

std::vector<std::uint32_t> prime_divisors_of_divisor(const FieldContext& ctx,
                                                     std::uint64_t s) {
  if (s == 0 || (ctx.group_order() % s) != 0) {
    throw DomainError(std::to_string(s) + " does not divide q-1=" +
                      std::to_string(ctx.group_order()));
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t r : ctx.qm1_primes()) {
    if (s % r == 0) out.push_back(r);
  }
  return out;
}

}  // namespace primpair::ff
