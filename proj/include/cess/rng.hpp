#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cess/gf.hpp"

namespace cess {

using Seed = std::array<std::uint8_t, 32>;

/// Source of uniform field elements. Schemes draw keys only through this
/// interface so tests can inject a reproducible stream.
class FieldRng {
 public:
  virtual ~FieldRng() = default;

  /// Uniform integer in [0, bound), bound > 0.
  virtual std::uint64_t below(std::uint64_t bound) = 0;

  FieldElement uniform(const PrimeField& field) { return field(below(field.modulus())); }
  std::vector<FieldElement> uniform_vector(const PrimeField& field, std::size_t count);
};

/// Operating-system CSPRNG (libsodium randombytes).
class SystemRng final : public FieldRng {
 public:
  SystemRng();
  std::uint64_t below(std::uint64_t bound) override;
};

/// ChaCha20 keystream keyed by a 32-byte seed, with rejection sampling.
/// The stream is a pure function of the seed on every platform.
class SeededRng final : public FieldRng {
 public:
  explicit SeededRng(const Seed& seed);
  /// Seed whose first 8 bytes are `seed` little-endian, rest zero.
  static SeededRng from_u64(std::uint64_t seed);

  std::uint64_t below(std::uint64_t bound) override;

 private:
  std::uint32_t next_u32();

  Seed key_;
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t pos_ = 64;
};

Seed seed_from_u64(std::uint64_t seed);
Seed random_seed();

}  // namespace cess
