#include "privagg/bigint.hpp"

#include <stdexcept>

namespace privagg {

Bytes to_bytes_be(const BigInt& value, std::size_t width) {
  if (sgn(value) < 0) throw std::invalid_argument("to_bytes_be: negative value");
  std::size_t count = 0;
  Bytes out(width, 0);
  if (sgn(value) == 0) return out;
  const std::size_t need = (mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8;
  if (need > width) throw std::invalid_argument("to_bytes_be: value wider than field");
  mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, value.get_mpz_t());
  return out;
}

BigInt from_bytes_be(std::span<const std::uint8_t> bytes) {
  BigInt r;
  if (!bytes.empty()) mpz_import(r.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return r;
}

std::uint64_t to_u64(const BigInt& value) {
  if (sgn(value) < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64) {
    throw std::out_of_range("to_u64: value does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: bad digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace privagg
