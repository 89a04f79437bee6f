#include "primpair/polyff.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "primpair/errors.hpp"

namespace primpair::polyff {
namespace {

void trim(std::vector<FieldElement>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// x^(q^i) mod f for i = 0..n.
std::vector<PolyQ> frobenius_powers(const FieldContext& ctx, const PolyQ& f, unsigned n) {
  std::vector<PolyQ> out;
  out.reserve(n + 1);
  out.push_back(mod(ctx, PolyQ::x(), f));
  for (unsigned i = 1; i <= n; ++i) {
    PolyQ base = out.back();
    PolyQ r = PolyQ::constant(ctx.one());
    std::uint64_t e = ctx.q();
    while (e > 0) {
      if (e & 1) r = mod(ctx, mul(ctx, r, base), f);
      base = mod(ctx, mul(ctx, base, base), f);
      e >>= 1;
    }
    out.push_back(std::move(r));
  }
  return out;
}

void add_factor(std::vector<PolyFactor>& acc, const PolyQ& g, unsigned n) {
  for (auto& pf : acc) {
    if (pf.poly == g) {
      pf.multiplicity += n;
      return;
    }
  }
  acc.push_back({g, n});
}

void sort_factors(std::vector<PolyFactor>& fs) {
  std::sort(fs.begin(), fs.end(),
            [](const PolyFactor& a, const PolyFactor& b) { return poly_less(a.poly, b.poly); });
}

// Divides g by d as often as possible; returns the count.
unsigned strip(const FieldContext& ctx, PolyQ& g, const PolyQ& d) {
  unsigned n = 0;
  while (g.degree() >= d.degree()) {
    DivMod qr = divmod(ctx, g, d);
    if (!qr.remainder.is_zero()) break;
    g = std::move(qr.quotient);
    ++n;
  }
  return n;
}

PolyFactorization factor_impl(const FieldContext& ctx, const PolyQ& f,
                              const IrreducibleTable* table, unsigned degree_cap) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  const unsigned d = f.degree().value();
  if (d > degree_cap) {
    throw CapacityError("polynomial degree " + std::to_string(d) + " exceeds factor cap " +
                        std::to_string(degree_cap));
  }
  PolyFactorization out;
  out.unit = f.lead();
  PolyQ g = monic(ctx, f);
  for (FieldElement a : ctx.elements()) {
    if (g.degree() == Degree(0)) break;
    if (!eval(ctx, g, a).is_zero()) continue;
    const PolyQ lin = PolyQ::linear(ctx, a);
    out.factors.push_back({lin, strip(ctx, g, lin)});
  }
  const unsigned rest = g.degree().value();
  if (rest >= 4 && table != nullptr && table->max_degree() >= rest / 2) {
    for (const PolyQ& h : table->polys()) {
      const unsigned dh = h.degree().value();
      if (dh < 2) continue;
      if (2 * dh > g.degree().value()) break;
      const unsigned n = strip(ctx, g, h);
      if (n > 0) out.factors.push_back({h, n});
    }
  } else {
    // Monic candidates by ascending degree; a divisor found after all lower
    // degrees are stripped is irreducible.
    const std::uint32_t q = ctx.q();
    for (unsigned d = 2; 2 * d <= g.degree().value(); ++d) {
      std::vector<FieldElement> c(d + 1);
      c[d] = ctx.one();
      const std::uint64_t count = to_u64(ipow(BigInt(q), d));
      for (std::uint64_t t = 0; t < count && 2 * d <= g.degree().value(); ++t) {
        std::uint64_t r = t;
        for (unsigned i = 0; i < d; ++i) {
          c[d - 1 - i] = FieldElement(static_cast<std::uint32_t>(r % q));
          r /= q;
        }
        if (c[0].is_zero()) continue;
        const PolyQ h(c);
        const unsigned n = strip(ctx, g, h);
        if (n > 0) out.factors.push_back({h, n});
      }
    }
  }
  if (g.degree() > Degree(0)) out.factors.push_back({g, 1});
  sort_factors(out.factors);
  return out;
}

}  // namespace

unsigned Degree::value() const {
  if (!finite_) throw DomainError("degree of the zero polynomial is minus infinity");
  return value_;
}

PolyQ::PolyQ(std::vector<FieldElement> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

PolyQ PolyQ::constant(FieldElement c) { return PolyQ({c}); }

PolyQ PolyQ::x() { return PolyQ({FieldElement(0), FieldElement(1)}); }

PolyQ PolyQ::linear(const FieldContext& ctx, FieldElement a) {
  return PolyQ({ctx.neg(a), ctx.one()});
}

Degree PolyQ::degree() const {
  if (coeffs_.empty()) return Degree::minus_infinity();
  return Degree(static_cast<unsigned>(coeffs_.size() - 1));
}

FieldElement PolyQ::lead() const {
  return coeffs_.empty() ? FieldElement(0) : coeffs_.back();
}

FieldElement PolyQ::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : FieldElement(0);
}

bool PolyQ::is_monic() const { return !coeffs_.empty() && coeffs_.back().code() == 1; }

bool PolyQ::is_x() const { return *this == x(); }

bool poly_less(const PolyQ& a, const PolyQ& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(),
                                      b.coeffs().begin(), b.coeffs().end());
}

PolyQ add(const FieldContext& ctx, const PolyQ& a, const PolyQ& b) {
  std::vector<FieldElement> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(a.coeff(i), b.coeff(i));
  return PolyQ(std::move(c));
}

PolyQ neg(const FieldContext& ctx, const PolyQ& a) {
  std::vector<FieldElement> c(a.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.neg(a.coeffs()[i]);
  return PolyQ(std::move(c));
}

PolyQ sub(const FieldContext& ctx, const PolyQ& a, const PolyQ& b) {
  return add(ctx, a, neg(ctx, b));
}

PolyQ mul(const FieldContext& ctx, const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<FieldElement> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      c[i + j] = ctx.add(c[i + j], ctx.mul(a.coeffs()[i], b.coeffs()[j]));
    }
  }
  return PolyQ(std::move(c));
}

PolyQ scale(const FieldContext& ctx, const PolyQ& a, FieldElement c) {
  std::vector<FieldElement> out(a.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.mul(a.coeffs()[i], c);
  return PolyQ(std::move(out));
}

PolyQ pow(const FieldContext& ctx, const PolyQ& a, unsigned e) {
  PolyQ r = PolyQ::constant(ctx.one());
  PolyQ base = a;
  while (e > 0) {
    if (e & 1) r = mul(ctx, r, base);
    e >>= 1;
    if (e > 0) base = mul(ctx, base, base);
  }
  return r;
}

DivMod divmod(const FieldContext& ctx, const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<FieldElement> r = a.coeffs();
  const std::size_t db = b.coeffs().size() - 1;
  if (r.size() <= db) return {PolyQ(), a};
  const FieldElement inv_lead = ctx.inv(b.lead());
  std::vector<FieldElement> quot(r.size() - db);
  for (std::size_t i = r.size(); i-- > db;) {
    const FieldElement c = ctx.mul(r[i], inv_lead);
    if (c.is_zero()) continue;
    quot[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) {
      r[i - db + j] = ctx.sub(r[i - db + j], ctx.mul(c, b.coeffs()[j]));
    }
  }
  return {PolyQ(std::move(quot)), PolyQ(std::move(r))};
}

PolyQ mod(const FieldContext& ctx, const PolyQ& a, const PolyQ& b) {
  return divmod(ctx, a, b).remainder;
}

PolyQ monic(const FieldContext& ctx, const PolyQ& a) {
  if (a.is_zero()) return a;
  return scale(ctx, a, ctx.inv(a.lead()));
}

PolyQ poly_gcd(const FieldContext& ctx, const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  PolyQ x = a;
  PolyQ y = b;
  while (!y.is_zero()) {
    PolyQ r = mod(ctx, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(ctx, x);
}

FieldElement eval(const FieldContext& ctx, const PolyQ& f, FieldElement a) {
  FieldElement acc = ctx.zero();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = ctx.add(ctx.mul(acc, a), f.coeffs()[i]);
  }
  return acc;
}

std::uint64_t poly_index(const FieldContext& ctx, const PolyQ& f) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const std::uint32_t c = f.coeffs()[i].code();
    if (acc > (kMax - c) / ctx.q()) {
      throw CapacityError("polynomial index does not fit in 64 bits");
    }
    acc = acc * ctx.q() + c;
  }
  return acc;
}

PolyQ poly_from_index(const FieldContext& ctx, std::uint64_t index) {
  std::vector<FieldElement> c;
  while (index > 0) {
    c.emplace_back(static_cast<std::uint32_t>(index % ctx.q()));
    index /= ctx.q();
  }
  return PolyQ(std::move(c));
}

bool is_irreducible(const FieldContext& ctx, const PolyQ& f) {
  if (f.is_zero() || f.degree() == Degree(0)) return false;
  const unsigned d = f.degree().value();
  if (d == 1) return true;
  const PolyQ g = monic(ctx, f);
  const std::vector<PolyQ> frob = frobenius_powers(ctx, g, d);
  if (frob[d] != frob[0]) return false;
  for (std::uint64_t r : arith::primes_below(d + 1)) {
    if (d % r != 0) continue;
    const PolyQ h = sub(ctx, frob[d / r], frob[0]);
    if (h.is_zero() || poly_gcd(ctx, g, h).degree() > Degree(0)) return false;
  }
  return true;
}

IrreducibleTable::IrreducibleTable(const FieldContext& ctx, unsigned max_degree,
                                   std::uint64_t cap)
    : max_degree_(max_degree) {
  BigInt total = 0;
  for (unsigned d = 1; d <= max_degree; ++d) total += ipow(BigInt(ctx.q()), d);
  if (total > from_u64(cap)) {
    throw CapacityError("enumerating " + total.get_str() +
                        " monic polynomials exceeds cap " + std::to_string(cap));
  }
  const std::uint32_t q = ctx.q();
  for (unsigned d = 1; d <= max_degree; ++d) {
    const std::uint64_t count = to_u64(ipow(BigInt(q), d));
    std::vector<FieldElement> c(d + 1);
    c[d] = ctx.one();
    // c_0 is the most significant digit, so t ascends in poly_less order.
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t rest = t;
      for (unsigned i = 0; i < d; ++i) {
        c[d - 1 - i] = FieldElement(static_cast<std::uint32_t>(rest % q));
        rest /= q;
      }
      PolyQ f(c);
      if (d == 1 || is_irreducible(ctx, f)) polys_.push_back(std::move(f));
    }
  }
}

std::vector<PolyQ> IrreducibleTable::of_degree(unsigned d) const {
  std::vector<PolyQ> out;
  for (const auto& f : polys_) {
    if (f.degree() == Degree(d)) out.push_back(f);
  }
  return out;
}

std::vector<PolyQ> monic_irreducibles(const FieldContext& ctx, unsigned max_degree,
                                      std::uint64_t cap) {
  return IrreducibleTable(ctx, max_degree, cap).polys();
}

PolyFactorization factor_poly(const FieldContext& ctx, const PolyQ& f,
                              unsigned degree_cap) {
  return factor_impl(ctx, f, nullptr, degree_cap);
}

PolyFactorization factor_poly(const FieldContext& ctx, const PolyQ& f,
                              const IrreducibleTable& table, unsigned degree_cap) {
  return factor_impl(ctx, f, &table, degree_cap);
}

PolyQ expand(const FieldContext& ctx, const PolyFactorization& f) {
  PolyQ out = PolyQ::constant(f.unit);
  for (const auto& pf : f.factors) out = mul(ctx, out, pow(ctx, pf.poly, pf.multiplicity));
  return out;
}

std::optional<LambdaWitness> lambda_witness(const FieldContext& ctx, const PolyQ& f1,
                                            const PolyQ& f2) {
  if (f1.is_zero() || f2.is_zero()) {
    throw DomainError("Lambda requires f1 * f2 != 0");
  }
  std::vector<PolyFactor> merged;
  for (const PolyQ* f : {&f1, &f2}) {
    for (const auto& pf : factor_poly(ctx, *f).factors) add_factor(merged, pf.poly, pf.multiplicity);
  }
  sort_factors(merged);
  for (const auto& pf : merged) {
    if (pf.poly.is_x()) continue;
    if (std::gcd(pf.multiplicity, ctx.group_order()) == 1) {
      return LambdaWitness{pf.multiplicity, pf.poly};
    }
  }
  return std::nullopt;
}

bool lambda_nonempty(const FieldContext& ctx, const PolyQ& f1, const PolyQ& f2) {
  return lambda_witness(ctx, f1, f2).has_value();
}

RationalFunction RationalFunction::canonical(const FieldContext& ctx, const PolyQ& f1,
                                             const PolyQ& f2) {
  if (f2.is_zero()) throw DomainError("rational function with zero denominator");
  const PolyQ g = poly_gcd(ctx, f1, f2);
  PolyQ a = divmod(ctx, f1, g).quotient;
  PolyQ b = divmod(ctx, f2, g).quotient;
  const FieldElement s = ctx.inv(b.lead());
  return RationalFunction(scale(ctx, a, s), scale(ctx, b, s));
}

RationalFunction RationalFunction::from_canonical(PolyQ f1, PolyQ f2) {
  return RationalFunction(std::move(f1), std::move(f2));
}

std::optional<FieldElement> RationalFunction::evaluate(const FieldContext& ctx,
                                                       FieldElement a) const {
  const FieldElement den = eval(ctx, f2_, a);
  if (den.is_zero()) return std::nullopt;
  return ctx.div(eval(ctx, f1_, a), den);
}

bool is_canonical(const FieldContext& ctx, const PolyQ& f1, const PolyQ& f2) {
  return f2.is_monic() && poly_gcd(ctx, f1, f2) == PolyQ::constant(ctx.one());
}

bool in_upsilon(const FieldContext& ctx, const RationalFunction& f, unsigned m1,
                unsigned m2) {
  if (f.f1().is_zero()) return false;
  if (!f.f1().degree().at_most(m1) || !f.f2().degree().at_most(m2)) return false;
  return lambda_nonempty(ctx, f.f1(), f.f2());
}

}  // namespace primpair::polyff
