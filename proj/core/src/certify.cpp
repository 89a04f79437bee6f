#include "primpair/certify.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "primpair/errors.hpp"

namespace primpair::certify {
namespace {

using polyff::Degree;

constexpr std::uint32_t kZeroLog = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kMaxMaskOrder = 4096;

using FactorIds = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (irreducible, mult)

std::vector<FieldElement> primitive_elements(const FieldContext& ctx) {
  std::vector<FieldElement> out;
  const std::uint32_t n = ctx.group_order();
  for (std::uint32_t e = 0; e < n; ++e) {
    if (std::gcd(e, n) == 1) out.push_back(ctx.exp(e));
  }
  return out;
}

BigInt monic_count(std::uint64_t q, unsigned max_degree) {
  BigInt total = 0;
  for (unsigned d = 0; d <= max_degree; ++d) total += ipow(BigInt(q), d);
  return total;
}

void check_cap(std::uint64_t q, unsigned m1, unsigned m2, std::uint64_t cap) {
  const BigInt count = pair_count(q, m1, m2);
  if (count > from_u64(cap)) {
    throw CapacityError("enumeration of " + count.get_str() + " pairs exceeds cap " +
                        std::to_string(cap));
  }
}

// Monic polynomials of degree <= max_degree, numbered by ascending poly_index,
// with factorizations built by multiplying out irreducibles and discrete logs
// of their values at the primitive elements.
class MonicTable {
 public:
  MonicTable(const FieldContext& ctx, unsigned max_degree,
             const std::vector<FieldElement>& prims)
      : q_(ctx.q()), prims_(prims.size()) {
    offset_.push_back(0);
    for (unsigned d = 0; d <= max_degree; ++d) {
      offset_.push_back(offset_.back() + to_u64(ipow(BigInt(q_), d)));
    }
    const std::uint64_t total = offset_.back();
    polys_.resize(total);
    factors_.resize(total);
    if (max_degree > 0) {
      irreducibles_ = polyff::monic_irreducibles(ctx, max_degree,
                                                 std::numeric_limits<std::uint64_t>::max());
    }
    FactorIds acc;
    build(ctx, 0, PolyQ::constant(ctx.one()), 0, max_degree, acc);

    logs_.assign(total * prims_, kZeroLog);
    for (std::uint64_t id = 0; id < total; ++id) {
      for (std::size_t j = 0; j < prims_; ++j) {
        const FieldElement v = polyff::eval(ctx, polys_[id], prims[j]);
        if (!v.is_zero()) logs_[id * prims_ + j] = ctx.dlog(v);
      }
    }
  }

  std::uint64_t begin(unsigned d) const { return offset_[d]; }
  std::uint64_t end(unsigned d) const { return offset_[d + 1]; }
  const PolyQ& poly(std::uint64_t id) const { return polys_[id]; }
  const FactorIds& factors(std::uint64_t id) const { return factors_[id]; }
  const std::uint32_t* logs(std::uint64_t id) const { return &logs_[id * prims_]; }
  const PolyQ& irreducible(std::uint32_t i) const { return irreducibles_[i]; }

 private:
  std::uint64_t id_of(const PolyQ& f) const {
    const unsigned d = f.degree().value();
    std::uint64_t lower = 0;
    for (unsigned i = d; i-- > 0;) lower = lower * q_ + f.coeffs()[i].code();
    return offset_[d] + lower;
  }

  void build(const FieldContext& ctx, std::uint32_t start, const PolyQ& f, unsigned deg,
             unsigned max_degree, FactorIds& acc) {
    const std::uint64_t id = id_of(f);
    polys_[id] = f;
    factors_[id] = acc;
    for (std::uint32_t i = start; i < irreducibles_.size(); ++i) {
      const unsigned di = irreducibles_[i].degree().value();
      if (deg + di > max_degree) break;
      const bool repeat = !acc.empty() && acc.back().first == i;
      if (repeat) {
        ++acc.back().second;
      } else {
        acc.emplace_back(i, 1);
      }
      build(ctx, i, polyff::mul(ctx, f, irreducibles_[i]), deg + di, max_degree, acc);
      if (repeat) {
        --acc.back().second;
      } else {
        acc.pop_back();
      }
    }
  }

  std::uint64_t q_;
  std::size_t prims_;
  std::vector<std::uint64_t> offset_;
  std::vector<PolyQ> irreducibles_;
  std::vector<PolyQ> polys_;
  std::vector<FactorIds> factors_;
  std::vector<std::uint32_t> logs_;
};

bool disjoint(const FactorIds& a, const FactorIds& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first == j->first) return false;
    if (i->first < j->first) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

bool admissible(const FactorIds& ids, std::uint32_t x_id, std::uint32_t n) {
  for (const auto& [irr, mult] : ids) {
    if (irr != x_id && std::gcd(mult, n) == 1) return true;
  }
  return false;
}

struct Key {
  std::uint64_t f1 = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t f2 = std::numeric_limits<std::uint64_t>::max();
  std::uint32_t scalar_log = 0;
  std::uint64_t monic_f1 = 0;
  std::uint64_t monic_f2 = 0;
  bool found = false;

  bool less_than(const Key& o) const {
    if (!o.found) return found;
    if (!found) return false;
    return std::pair(f1, f2) < std::pair(o.f1, o.f2);
  }
};

struct WorkerResult {
  std::uint64_t examined = 0;
  std::uint64_t in_upsilon = 0;
  Key first_failure;
};

// Bitsets over scalar exponents s in [0, n): rotated[t] has bit s set iff
// gcd((s + t) mod n, n) = 1.
class ScalarMasks {
 public:
  explicit ScalarMasks(std::uint32_t n) : n_(n), words_((n + 63) / 64) {
    if (n > kMaxMaskOrder) return;
    rotated_.assign(static_cast<std::size_t>(n) * words_, 0);
    for (std::uint32_t t = 0; t < n; ++t) {
      for (std::uint32_t s = 0; s < n; ++s) {
        if (std::gcd((s + t) % n, n) == 1) rotated_[t * words_ + s / 64] |= 1ULL << (s % 64);
      }
    }
    full_.assign(words_, ~0ULL);
    if (n % 64 != 0) full_.back() = (1ULL << (n % 64)) - 1;
  }

  bool enabled() const { return !rotated_.empty(); }
  std::size_t words() const { return words_; }
  const std::uint64_t* rotated(std::uint32_t t) const { return &rotated_[t * words_]; }
  const std::vector<std::uint64_t>& full() const { return full_; }

 private:
  std::uint32_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rotated_;
  std::vector<std::uint64_t> full_;
};

// Scalar exponents s for which c = g^s makes c F1/f2 fail at every alpha.
void failing_scalars(const std::uint32_t* l1, const std::uint32_t* l2, std::size_t prims,
                     std::uint32_t n, const ScalarMasks& masks,
                     std::vector<std::uint64_t>& good, std::vector<std::uint32_t>& out) {
  out.clear();
  if (masks.enabled()) {
    std::fill(good.begin(), good.end(), 0);
    const auto& full = masks.full();
    for (std::size_t j = 0; j < prims; ++j) {
      if (l1[j] == kZeroLog || l2[j] == kZeroLog) continue;
      const std::uint32_t t = (l1[j] + n - l2[j]) % n;
      const std::uint64_t* r = masks.rotated(t);
      bool complete = true;
      for (std::size_t w = 0; w < good.size(); ++w) {
        good[w] |= r[w];
        complete = complete && good[w] == full[w];
      }
      if (complete) return;
    }
    for (std::uint32_t s = 0; s < n; ++s) {
      if (!((good[s / 64] >> (s % 64)) & 1)) out.push_back(s);
    }
    return;
  }
  for (std::uint32_t s = 0; s < n; ++s) {
    bool served = false;
    for (std::size_t j = 0; j < prims && !served; ++j) {
      if (l1[j] == kZeroLog || l2[j] == kZeroLog) continue;
      served = std::gcd((s + l1[j] + n - l2[j]) % n, n) == 1;
    }
    if (!served) out.push_back(s);
  }
}

void enumerate_impl(const FieldContext& ctx, unsigned m1, unsigned m2,
                    const std::function<bool(const RationalFunction&, bool)>& sink) {
  const std::uint64_t q = ctx.q();
  const std::uint64_t f1_end = to_u64(ipow(BigInt(q), m1 + 1));
  const PolyQ one = PolyQ::constant(ctx.one());
  for (std::uint64_t i1 = 1; i1 < f1_end; ++i1) {
    const PolyQ f1 = polyff::poly_from_index(ctx, i1);
    for (unsigned d = 0; d <= m2; ++d) {
      const std::uint64_t qd = to_u64(ipow(BigInt(q), d));
      for (std::uint64_t lower = 0; lower < qd; ++lower) {
        const PolyQ f2 = polyff::poly_from_index(ctx, qd + lower);
        if (polyff::poly_gcd(ctx, f1, f2) != one) continue;
        const RationalFunction f = RationalFunction::from_canonical(f1, f2);
        if (!sink(f, polyff::in_upsilon(ctx, f, m1, m2))) return;
      }
    }
  }
}

std::vector<SpotCheck> spot_checks(const FieldContext& ctx, unsigned m1, unsigned m2,
                                   unsigned samples) {
  std::vector<SpotCheck> out;
  if (samples == 0) return out;
  enumerate_impl(ctx, m1, m2, [&](const RationalFunction& f, bool in_upsilon) {
    if (!in_upsilon) return true;
    if (auto alpha = primitive_pair_alpha(ctx, f)) out.push_back({f, *alpha});
    return out.size() < samples;
  });
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

BigInt pair_count(std::uint64_t q, unsigned m1, unsigned m2) {
  return ipow(BigInt(from_u64(q)), m1 + 1) * monic_count(q, m2);
}

void enumerate_upsilon(const FieldContext& ctx, unsigned m1, unsigned m2,
                       const std::function<bool(const RationalFunction&)>& sink,
                       std::uint64_t pair_cap) {
  check_cap(ctx.q(), m1, m2, pair_cap);
  enumerate_impl(ctx, m1, m2, [&](const RationalFunction& f, bool in_upsilon) {
    return !in_upsilon || sink(f);
  });
}

std::optional<FieldElement> primitive_pair_alpha(const FieldContext& ctx,
                                                 const RationalFunction& f) {
  for (FieldElement a : primitive_elements(ctx)) {
    const auto v = f.evaluate(ctx, a);
    if (v && ctx.is_primitive(*v)) return a;
  }
  return std::nullopt;
}

bool is_counterexample(const FieldContext& ctx, const RationalFunction& f, unsigned m1,
                       unsigned m2) {
  return polyff::in_upsilon(ctx, f, m1, m2) && !primitive_pair_alpha(ctx, f).has_value();
}

CertifyResult certify_k(const FieldContext& ctx, unsigned m1, unsigned m2,
                        const CertifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_cap(ctx.q(), m1, m2, options.pair_cap);
  const std::uint32_t n = ctx.group_order();
  const std::vector<FieldElement> prims = primitive_elements(ctx);
  const MonicTable table(ctx, std::max(m1, m2), prims);
  const ScalarMasks masks(n);
  const std::uint32_t x_id = 0;  // x is the smallest monic irreducible
  const std::uint64_t f2_end = table.end(m2);
  const unsigned jobs = std::max(1U, options.jobs);

  CertifyResult result;
  Key first;
  for (unsigned d = 0; d <= m1 && !first.found; ++d) {
    const std::uint64_t lo = table.begin(d);
    const std::uint64_t hi = table.end(d);
    std::vector<WorkerResult> partial(jobs);
    auto work = [&](unsigned w) {
      WorkerResult& out = partial[w];
      std::vector<std::uint64_t> good(masks.words());
      std::vector<std::uint32_t> failing;
      for (std::uint64_t a = lo + w; a < hi; a += jobs) {
        const FactorIds& fa = table.factors(a);
        for (std::uint64_t b = 0; b < f2_end; ++b) {
          const FactorIds& fb = table.factors(b);
          if (!disjoint(fa, fb)) continue;
          out.examined += n;
          if (!admissible(fa, x_id, n) && !admissible(fb, x_id, n)) continue;
          out.in_upsilon += n;
          failing_scalars(table.logs(a), table.logs(b), prims.size(), n, masks, good, failing);
          for (std::uint32_t s : failing) {
            const PolyQ f1 = polyff::scale(ctx, table.poly(a), ctx.exp(s));
            Key k{polyff::poly_index(ctx, f1), polyff::poly_index(ctx, table.poly(b)), s, a, b,
                  true};
            if (k.less_than(out.first_failure)) out.first_failure = k;
          }
        }
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    for (const auto& pr : partial) {
      result.stats.examined += pr.examined;
      result.stats.in_upsilon += pr.in_upsilon;
      if (pr.first_failure.less_than(first)) first = pr.first_failure;
    }
  }

  if (first.found) {
    result.status = CertifyStatus::NonMember;
    result.counterexample = RationalFunction::from_canonical(
        polyff::scale(ctx, table.poly(first.monic_f1), ctx.exp(first.scalar_log)),
        table.poly(first.monic_f2));
  } else {
    result.status = CertifyStatus::Member;
    result.spot_checks = spot_checks(ctx, m1, m2, options.spot_check_samples);
  }
  result.stats.wall_seconds = seconds_since(start);
  return result;
}

CertifyResult certify_k_reference(const FieldContext& ctx, unsigned m1, unsigned m2,
                                  const CertifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_cap(ctx.q(), m1, m2, options.pair_cap);
  CertifyResult result;
  enumerate_impl(ctx, m1, m2, [&](const RationalFunction& f, bool in_upsilon) {
    ++result.stats.examined;
    if (!in_upsilon) return true;
    ++result.stats.in_upsilon;
    if (primitive_pair_alpha(ctx, f)) return true;
    result.status = CertifyStatus::NonMember;
    result.counterexample = f;
    return false;
  });
  if (result.status == CertifyStatus::Member) {
    result.spot_checks = spot_checks(ctx, m1, m2, options.spot_check_samples);
  }
  result.stats.wall_seconds = seconds_since(start);
  return result;
}

std::optional<RationalFunction> build_nogamma_witness(const FieldContext& ctx, unsigned m1,
                                                      unsigned m2) {
  const std::vector<FieldElement> prims = primitive_elements(ctx);
  const std::size_t phi = prims.size();
  if (phi > static_cast<std::size_t>(m1) + m2 + 1) {
    throw DomainError("phi(q-1)=" + std::to_string(phi) + " exceeds m1+m2+1");
  }
  // Over F_2 the single primitive element is 1 and every nonzero value is
  // primitive, so all of them must be zeros.
  const std::size_t zeros = ctx.q() == 2 ? phi : phi - 1;
  const std::size_t a = std::min<std::size_t>(m1, zeros);
  const std::size_t b = std::min<std::size_t>(m2, zeros - a);
  if (a + b < zeros) return std::nullopt;

  PolyQ f1 = PolyQ::constant(ctx.one());
  PolyQ f2 = PolyQ::constant(ctx.one());
  for (std::size_t i = 0; i < a; ++i) f1 = polyff::mul(ctx, f1, PolyQ::linear(ctx, prims[i]));
  for (std::size_t i = a; i < a + b; ++i) {
    f2 = polyff::mul(ctx, f2, PolyQ::linear(ctx, prims[i]));
  }
  if (a + b == 0) {
    // No zeros to place: x - 1 keeps Lambda nonempty and 1 is not primitive.
    if (m1 == 0) return std::nullopt;
    f1 = PolyQ::linear(ctx, ctx.one());
  }
  if (zeros < phi) {
    const FieldElement last = prims[phi - 1];
    const FieldElement value =
        ctx.div(polyff::eval(ctx, f1, last), polyff::eval(ctx, f2, last));
    if (value.is_zero()) return std::nullopt;
    f1 = polyff::scale(ctx, f1, ctx.inv(value));
  }
  const RationalFunction f = RationalFunction::canonical(ctx, f1, f2);
  if (!is_counterexample(ctx, f, m1, m2)) return std::nullopt;
  return f;
}

}  // namespace primpair::certify
