#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cess/matrix.hpp"
#include "cess/scheme.hpp"

namespace cess {

/// G = T * V. Rows of T are the coefficient vectors of x^(i-1) for
/// i <= kn and x^(i-1) * prod_{j<=kn} (x - alpha_j) for the rz key' rows;
/// with beta > 1 the dimensions use k/beta and r/beta in place of k and r.
struct RsGenerator {
  FieldMatrix G;
  FieldMatrix T;
  FieldMatrix V;
  std::vector<FieldElement> alphas;  // 1, 2, ..., n(k+r)/beta
  std::uint32_t beta = 1;
  std::size_t top_rows = 0;     // kn/beta: message and k keys
  std::size_t lower_rows = 0;   // rz/beta: k' keys
};

RsGenerator build_generator(const SchemeParams& params, std::uint32_t beta = 1);

/// Generator-matrix scheme. Node j's share is (c_{1,j}, ..., c_{w,j}) where
/// the flat codeword (c_{1,1..n}, ..., c_{w,1..n}) = (m, k, k') * G.
class CeRsScheme final : public Scheme {
 public:
  CeRsScheme(const SchemeParams& params, std::uint32_t beta = 1);

  SchemeId id() const override { return SchemeId::CeRs; }
  SchemeMeta meta() const override { return RsMeta{gen_.beta}; }
  const RsGenerator& generator() const { return gen_; }

  std::size_t message_length() const override;
  std::size_t key_count() const override;
  std::size_t share_width() const override;

  /// {n - r, n}
  std::vector<std::uint32_t> supported_d() const override;
  /// n when every node is up, n - r otherwise.
  std::uint32_t effective_d(std::uint32_t available) const override;
  std::size_t prefix_length(std::uint32_t d) const override;

  std::vector<ShareBundle> encode_with_keys(std::span<const FieldElement> message,
                                            std::span<const FieldElement> keys) const override;
  std::vector<FieldElement> decode(std::span<const PreprocessedShare> shares,
                                   BandwidthLedger* ledger = nullptr) const override;

  /// First k/beta symbols of all n shares, solved through G11^-1.
  std::vector<FieldElement> decode_all(std::span<const PreprocessedShare> shares,
                                       BandwidthLedger* ledger = nullptr) const;
  /// Full shares of exactly n - r nodes, solved through the inverse of the
  /// selected (n-r)(k+r) columns.
  std::vector<FieldElement> decode_subset(std::span<const PreprocessedShare> shares,
                                          BandwidthLedger* ledger = nullptr) const;
  /// Any surviving flat codeword positions (0-based, position = (i-1)n + (j-1)).
  std::vector<FieldElement> decode_erasures(
      std::span<const std::pair<std::size_t, FieldElement>> available) const;

  std::vector<FieldElement> codeword(std::span<const FieldElement> message,
                                     std::span<const FieldElement> keys) const;

 private:
  RsGenerator gen_;
};

}  // namespace cess
