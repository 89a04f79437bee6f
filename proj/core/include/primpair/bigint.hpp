#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace primpair {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt from_u64(std::uint64_t v);
bool fits_u64(const BigInt& v);
// Throws CapacityError when v is negative or wider than 64 bits.
std::uint64_t to_u64(const BigInt& v);

BigInt ipow(const BigInt& base, unsigned long exponent);
BigInt ipow(std::uint64_t base, unsigned long exponent);

// Decimal digits only, optional leading '+'. Throws DomainError otherwise.
BigInt parse_decimal(std::string_view text);

std::string to_decimal(const BigInt& v);
// "n" for integers, "n/d" otherwise (lowest terms).
std::string to_decimal(const Rational& v);

// Number of bits needed to write v (0 for v == 0).
std::size_t bit_length(const BigInt& v);

// Largest r with r*r <= v, v >= 0.
BigInt isqrt(const BigInt& v);
bool is_perfect_square(const BigInt& v);

}  // namespace primpair
