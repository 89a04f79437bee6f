#pragma once

// JSON forms of the library's values. Integers are decimal strings; field
// element coordinates are plain numbers.

#include <nlohmann/json.hpp>

#include "primpair/certify.hpp"
#include "primpair/criteria.hpp"

namespace primpair::serialize {

using json = nlohmann::json;

// {"value": "n", "factors": [["p", "e"], ...], "proven": bool}
json to_json(const arith::Factorization& f);
// Revalidates primality. Throws DomainError on malformed input or when the
// factors do not multiply to value.
arith::Factorization factorization_from_json(const json& j);

// {"p": "p", "k": "k", "modulus": [c0, ..., ck], "generator": [a0, ..., a_{k-1}]}
json to_json(const criteria::FieldSpec& spec);
json to_json(const ff::FieldContext& ctx);
criteria::FieldSpec field_spec_from_json(const json& j);

// [[coords of c0], [coords of c1], ...]
json to_json(const ff::FieldContext& ctx, const polyff::PolyQ& f);
polyff::PolyQ poly_from_json(const ff::FieldContext& ctx, const json& j);

// {"f1": poly, "f2": poly}
json to_json(const ff::FieldContext& ctx, const polyff::RationalFunction& f);
// Canonicalizes. Throws DomainError for a zero denominator.
polyff::RationalFunction rational_function_from_json(const ff::FieldContext& ctx,
                                                     const json& j);

json to_json(const criteria::SieveCertificate& cert);
json to_json(const criteria::Verdict& v);

// wall_seconds is included only when include_timing is set, so that runs
// with identical inputs serialize identically.
json to_json(const ff::FieldContext& ctx, const certify::CertifyResult& r,
             bool include_timing = false);

}  // namespace primpair::serialize
