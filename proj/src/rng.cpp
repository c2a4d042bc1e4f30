#include "cess/rng.hpp"

#include <sodium.h>

#include "cess/error.hpp"

namespace cess {

namespace {

void ensure_sodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw Error(ErrorCode::IoError, "libsodium initialization failed");
}

}  // namespace

std::vector<FieldElement> FieldRng::uniform_vector(const PrimeField& field, std::size_t count) {
  std::vector<FieldElement> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(uniform(field));
  return out;
}

SystemRng::SystemRng() { ensure_sodium(); }

std::uint64_t SystemRng::below(std::uint64_t bound) {
  if (bound <= UINT32_MAX) return randombytes_uniform(static_cast<std::uint32_t>(bound));
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = 0;
    randombytes_buf(&v, sizeof v);
    if (v < limit) return v % bound;
  }
}

SeededRng::SeededRng(const Seed& seed) : key_(seed) { ensure_sodium(); }

SeededRng SeededRng::from_u64(std::uint64_t seed) { return SeededRng(seed_from_u64(seed)); }

std::uint32_t SeededRng::next_u32() {
  if (pos_ + 4 > buffer_.size()) {
    static constexpr std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
    buffer_.fill(0);
    crypto_stream_chacha20_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(), nonce.data(),
                                  block_++, key_.data());
    pos_ = 0;
  }
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | buffer_[pos_ + static_cast<std::size_t>(i)];
  pos_ += 4;
  return v;
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  // 32-bit words while they suffice, so field draws stay one word each.
  if (bound <= UINT32_MAX) {
    const std::uint64_t range = std::uint64_t{1} << 32;
    const std::uint64_t limit = range - range % bound;
    for (;;) {
      const std::uint64_t v = next_u32();
      if (v < limit) return v % bound;
    }
  }
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t v = (std::uint64_t{next_u32()} << 32) | next_u32();
    if (v < limit) return v % bound;
  }
}

Seed seed_from_u64(std::uint64_t seed) {
  Seed out{};
  for (std::size_t i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  return out;
}

Seed random_seed() {
  ensure_sodium();
  Seed out{};
  randombytes_buf(out.data(), out.size());
  return out;
}

}  // namespace cess
