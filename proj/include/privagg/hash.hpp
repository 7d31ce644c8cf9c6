#pragma once

#include "privagg/bigint.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace privagg {

// Incremental transcript builder for domain-separated hashing.
class HashInput {
 public:
  explicit HashInput(std::string_view domain);

  HashInput& bytes(std::span<const std::uint8_t> data);
  HashInput& u32(std::uint32_t v);
  HashInput& u64(std::uint64_t v);
  // Length-prefixed fixed-width encoding of a non-negative integer.
  HashInput& integer(const BigInt& v, std::size_t width);

  const Bytes& data() const { return buf_; }

 private:
  Bytes buf_;
};

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

// SHAKE256 extendable-output function.
Bytes shake256(std::span<const std::uint8_t> data, std::size_t out_len);

// Uniform-ish element of [0, modulus): 64 extra bits of output keep the bias
// below 2^-64.
BigInt hash_to_zp(std::span<const std::uint8_t> data, const BigInt& modulus);

// Counter-mode PRF stream over SHAKE256, used for deterministic sampling.
class HashStream {
 public:
  explicit HashStream(Bytes seed) : seed_(std::move(seed)) {}
  std::uint64_t next_u64();
  // Uniform in [0, bound) by rejection.
  std::uint64_t uniform(std::uint64_t bound);
  BigInt uniform(const BigInt& bound);

 private:
  void refill();
  Bytes seed_;
  std::uint64_t block_ = 0;
  Bytes pool_;
  std::size_t pos_ = 0;
};

}  // namespace privagg
