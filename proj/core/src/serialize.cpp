#include "primpair/serialize.hpp"

#include "primpair/errors.hpp"

namespace primpair::serialize {
namespace {

using criteria::FieldSpec;

std::string dec(const BigInt& v) { return to_decimal(v); }
std::string dec(std::uint64_t v) { return std::to_string(v); }

BigInt big(const json& j) {
  if (!j.is_string()) throw DomainError("expected a decimal string, got " + j.dump());
  return parse_decimal(j.get<std::string>());
}

std::uint64_t u64(const json& j) { return to_u64(big(j)); }

json stats_json(const certify::CertifyStats& s, bool include_timing) {
  json out = {{"examined", dec(s.examined)}, {"in_upsilon", dec(s.in_upsilon)}};
  if (include_timing) out["wall_seconds"] = s.wall_seconds;
  return out;
}

json certificate_json(const criteria::Reason& reason) {
  using namespace criteria;
  struct Visit {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(const ByCorollary& r) const { return {{"W", dec(r.w)}}; }
    json operator()(const BySieve& r) const { return to_json(r.certificate); }
    json operator()(const ByCotaT& r) const {
      return {{"t", r.t}, {"threshold", r.threshold}, {"exact", r.exact}};
    }
    json operator()(const ByMersenne&) const { return json::object(); }
    json operator()(const ByPhiDensity& r) const { return {{"phi", dec(r.phi)}}; }
    json operator()(const ByBruteForceMember& r) const {
      return {{"stats", stats_json(r.stats, false)}};
    }
    json operator()(const ByPhiTooSmall& r) const { return {{"phi", dec(r.phi)}}; }
    json operator()(const ByWitness& r) const {
      const auto ctx = r.field.rebuild();
      return {{"field", to_json(r.field)}, {"f", to_json(ctx, r.f)}};
    }
    json operator()(const ByBruteForceNonMember& r) const {
      const auto ctx = r.field.rebuild();
      return {{"field", to_json(r.field)},
              {"f", to_json(ctx, r.f)},
              {"stats", stats_json(r.stats, false)}};
    }
  };
  return std::visit(Visit{}, reason);
}

}  // namespace

json to_json(const arith::Factorization& f) {
  json factors = json::array();
  for (const auto& pp : f.factors()) factors.push_back({dec(pp.prime), dec(pp.exponent)});
  return {{"value", dec(f.value())}, {"factors", factors}, {"proven", f.proven()}};
}

arith::Factorization factorization_from_json(const json& j) {
  try {
    std::vector<arith::PrimePower> factors;
    for (const auto& pe : j.at("factors")) {
      factors.push_back({big(pe.at(0)), static_cast<unsigned>(u64(pe.at(1)))});
    }
    auto f = arith::Factorization::from_factors(std::move(factors));
    if (f.value() != big(j.at("value"))) {
      throw DomainError("factors do not multiply to value");
    }
    return f;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed factorization JSON: ") + e.what());
  }
}

json to_json(const FieldSpec& spec) {
  return {{"p", dec(spec.p)},
          {"k", dec(spec.k)},
          {"modulus", spec.modulus},
          {"generator", spec.generator}};
}

json to_json(const ff::FieldContext& ctx) { return to_json(FieldSpec::of(ctx)); }

FieldSpec field_spec_from_json(const json& j) {
  try {
    FieldSpec spec;
    spec.p = static_cast<std::uint32_t>(u64(j.at("p")));
    spec.k = static_cast<unsigned>(u64(j.at("k")));
    spec.modulus = j.at("modulus").get<ff::Coords>();
    spec.generator = j.at("generator").get<ff::Coords>();
    return spec;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed field JSON: ") + e.what());
  }
}

json to_json(const ff::FieldContext& ctx, const polyff::PolyQ& f) {
  json out = json::array();
  for (auto c : f.coeffs()) out.push_back(ctx.coords(c));
  return out;
}

polyff::PolyQ poly_from_json(const ff::FieldContext& ctx, const json& j) {
  if (!j.is_array()) throw DomainError("polynomial JSON must be an array");
  std::vector<ff::FieldElement> coeffs;
  for (const auto& c : j) {
    if (!c.is_array()) throw DomainError("coefficient JSON must be a coordinate array");
    coeffs.push_back(ctx.from_coords(c.get<ff::Coords>()));
  }
  return polyff::PolyQ(std::move(coeffs));
}

json to_json(const ff::FieldContext& ctx, const polyff::RationalFunction& f) {
  return {{"f1", to_json(ctx, f.f1())}, {"f2", to_json(ctx, f.f2())}};
}

polyff::RationalFunction rational_function_from_json(const ff::FieldContext& ctx,
                                                     const json& j) {
  if (!j.is_object() || !j.contains("f1") || !j.contains("f2")) {
    throw DomainError("rational function JSON needs f1 and f2");
  }
  return polyff::RationalFunction::canonical(ctx, poly_from_json(ctx, j["f1"]),
                                             poly_from_json(ctx, j["f2"]));
}

json to_json(const criteria::SieveCertificate& cert) {
  json primes = json::array();
  for (const auto& p : cert.sieve_primes) primes.push_back(dec(p));
  return {{"ell_radical", dec(cert.ell_radical)},
          {"sieve_primes", primes},
          {"delta", to_decimal(cert.delta)},
          {"Delta", to_decimal(cert.Delta)},
          {"bound_ok", cert.bound_ok}};
}

json to_json(const criteria::Verdict& v) {
  return {{"p", dec(v.p)},
          {"k", dec(v.k)},
          {"m1", dec(v.m1)},
          {"m2", dec(v.m2)},
          {"status", criteria::status_name(v.status)},
          {"reason", criteria::reason_name(v.reason)},
          {"certificate", certificate_json(v.reason)},
          {"attempted", v.attempted}};
}

json to_json(const ff::FieldContext& ctx, const certify::CertifyResult& r,
             bool include_timing) {
  json out;
  out["field"] = to_json(ctx);
  out["status"] = r.status == certify::CertifyStatus::Member ? "member" : "non_member";
  out["counterexample"] = r.counterexample ? to_json(ctx, *r.counterexample) : json(nullptr);
  out["stats"] = stats_json(r.stats, include_timing);
  json checks = json::array();
  for (const auto& sc : r.spot_checks) {
    checks.push_back({{"f", to_json(ctx, sc.f)}, {"alpha", ctx.coords(sc.alpha)}});
  }
  out["spot_checks"] = checks;
  return out;
}

}  // namespace primpair::serialize
