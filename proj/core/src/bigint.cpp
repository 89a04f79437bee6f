#include "primpair/bigint.hpp"

#include <cctype>

#include "primpair/errors.hpp"

namespace primpair {

BigInt from_u64(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& v) {
  if (!fits_u64(v)) {
    throw CapacityError("integer " + v.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt ipow(std::uint64_t base, unsigned long exponent) {
  return ipow(from_u64(base), exponent);
}

BigInt parse_decimal(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) throw DomainError("empty integer literal");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw DomainError("not a decimal integer: '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text), 10);
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

std::string to_decimal(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str(10);
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

std::size_t bit_length(const BigInt& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

BigInt isqrt(const BigInt& v) {
  BigInt out;
  mpz_sqrt(out.get_mpz_t(), v.get_mpz_t());
  return out;
}

bool is_perfect_square(const BigInt& v) {
  return mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

}  // namespace primpair
