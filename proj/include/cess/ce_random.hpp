#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cess/matrix.hpp"
#include "cess/rng.hpp"
#include "cess/scheme.hpp"

namespace cess {

/// lcm{k, k+1, ..., n-z}
std::uint64_t block_multiplier(const SchemeParams& params);

/// The per-row encoding matrices G_1..G_{N(k+r)}, each N(kn+rz) x n.
/// Input rows are (message: Nk(k+r), k: Nkz, k': Nrz). Row i < Nk of the
/// share array uses [random; Vandermonde(Nkz); 0]; row Nk+i uses
/// [random(Nkn + i z); Vandermonde(z); 0].
struct RandomGeneratorSet {
  std::uint32_t N = 0;
  std::vector<FieldMatrix> Gs;
  Seed matrix_seed{};
  /// alpha_{v,i} at index i*n + v (0-based), all distinct and nonzero.
  std::vector<FieldElement> alphas;
  std::size_t message_rows = 0;
  std::size_t key_rows = 0;     // Nkz
  std::size_t key2_rows = 0;    // Nrz

  /// Leading random rows of each G_i; the Vandermonde block follows.
  std::vector<std::size_t> random_rows;
  std::vector<std::size_t> vandermonde_rows;

  std::size_t input_rows() const { return message_rows + key_rows + key2_rows; }
};

/// Expands every random block from the seed; alphas are 1..nN(k+r).
RandomGeneratorSet sample_scheme(const SchemeParams& params, const Seed& seed);

struct VerifyVerdict {
  bool pass = true;
  std::size_t subsets_checked = 0;
  std::vector<std::vector<std::uint32_t>> failing_subsets;
};

/// Checks that the trimmed decoding matrix has full row rank for every
/// authorized subset size n-r..n. All subsets are checked when a size has at
/// most `exhaustive_limit` of them, otherwise `samples_per_size` random ones.
VerifyVerdict verify_scheme(const RandomGeneratorSet& gens, const SchemeParams& params,
                            std::size_t exhaustive_limit = 4096,
                            std::size_t samples_per_size = 256);

class CeRandomScheme final : public Scheme {
 public:
  CeRandomScheme(const SchemeParams& params, const Seed& seed);
  CeRandomScheme(const SchemeParams& params, RandomGeneratorSet gens);

  /// Draws seeds starting at `seed` (incrementing on failure) until
  /// verify_scheme passes.
  static CeRandomScheme sample_verified(const SchemeParams& params, const Seed& seed,
                                        std::size_t max_attempts = 64);

  SchemeId id() const override { return SchemeId::CeRandom; }
  SchemeMeta meta() const override { return RandomMeta{gens_.matrix_seed}; }
  const RandomGeneratorSet& generators() const { return gens_; }

  std::size_t message_length() const override { return gens_.message_rows; }
  std::size_t key_count() const override { return gens_.key_rows + gens_.key2_rows; }
  std::size_t share_width() const override { return gens_.Gs.size(); }

  /// Every d in n-r..n.
  std::vector<std::uint32_t> supported_d() const override;
  std::uint32_t effective_d(std::uint32_t available) const override;
  /// Nk + extra_rows(d).
  std::size_t prefix_length(std::uint32_t d) const override;
  /// Nk(n - d) / (d - z): share-array rows read beyond the first Nk.
  std::size_t extra_rows(std::uint32_t d) const;

  /// (G*_{1,I}, ..., G*_{Nk+extra,I}) with the all-zero trailing rows dropped.
  FieldMatrix decoding_matrix(std::span<const std::uint32_t> nodes) const;

  std::vector<ShareBundle> encode_with_keys(std::span<const FieldElement> message,
                                            std::span<const FieldElement> keys) const override;
  std::vector<FieldElement> decode(std::span<const PreprocessedShare> shares,
                                   BandwidthLedger* ledger = nullptr) const override;

 private:
  RandomGeneratorSet gens_;
};

}  // namespace cess
