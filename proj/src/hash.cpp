#include "privagg/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace privagg {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

void digest(const EVP_MD* md, std::span<const std::uint8_t> data, std::uint8_t* out,
            std::size_t out_len, bool xof) {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1) {
    throw std::runtime_error("hash: digest init failed");
  }
  int ok = xof ? EVP_DigestFinalXOF(ctx.get(), out, out_len)
               : EVP_DigestFinal_ex(ctx.get(), out, nullptr);
  if (ok != 1) throw std::runtime_error("hash: digest final failed");
}

}  // namespace

HashInput::HashInput(std::string_view domain) {
  u32(static_cast<std::uint32_t>(domain.size()));
  buf_.insert(buf_.end(), domain.begin(), domain.end());
}

HashInput& HashInput::bytes(std::span<const std::uint8_t> data) {
  buf_.insert(buf_.end(), data.begin(), data.end());
  return *this;
}

HashInput& HashInput::u32(std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

HashInput& HashInput::u64(std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

HashInput& HashInput::integer(const BigInt& v, std::size_t width) {
  u32(static_cast<std::uint32_t>(width));
  auto enc = to_bytes_be(v, width);
  return bytes(enc);
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  digest(EVP_sha256(), data, out.data(), out.size(), false);
  return out;
}

Bytes shake256(std::span<const std::uint8_t> data, std::size_t out_len) {
  Bytes out(out_len);
  digest(EVP_shake256(), data, out.data(), out_len, true);
  return out;
}

BigInt hash_to_zp(std::span<const std::uint8_t> data, const BigInt& modulus) {
  const std::size_t width = byte_width(modulus) + 8;
  auto wide = shake256(data, width);
  return mod_reduce(from_bytes_be(wide), modulus);
}

void HashStream::refill() {
  HashInput in("privagg/stream");
  in.bytes(seed_).u64(block_++);
  pool_ = shake256(in.data(), 136);
  pos_ = 0;
}

std::uint64_t HashStream::next_u64() {
  if (pos_ + 8 > pool_.size()) refill();
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v = (v << 8) | pool_[pos_++];
  return v;
}

std::uint64_t HashStream::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("HashStream::uniform: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

BigInt HashStream::uniform(const BigInt& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("HashStream::uniform: empty range");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  for (;;) {
    BigInt v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      v <<= 64;
      v += from_u64(next_u64());
    }
    if (bits % 64 != 0) {
      BigInt mask = (BigInt(1) << bits) - 1;
      v &= mask;
    }
    if (v < bound) return v;
  }
}

}  // namespace privagg
