#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace privagg {

using BigInt = mpz_class;
using Bytes = std::vector<std::uint8_t>;

// Reduces into [0, modulus).
inline BigInt mod_reduce(const BigInt& value, const BigInt& modulus) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

inline std::size_t byte_width(const BigInt& modulus) {
  return (mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8;
}

// Fixed-width big-endian encoding. Throws if the value does not fit.
Bytes to_bytes_be(const BigInt& value, std::size_t width);
BigInt from_bytes_be(std::span<const std::uint8_t> bytes);

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

// Requires 0 <= value < 2^64.
std::uint64_t to_u64(const BigInt& value);

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);

inline bool is_probable_prime(const BigInt& v) {
  return mpz_probab_prime_p(v.get_mpz_t(), 40) > 0;
}

}  // namespace privagg
