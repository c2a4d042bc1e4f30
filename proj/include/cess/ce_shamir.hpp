#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cess/scheme.hpp"

namespace cess {

/// Where a polynomial coefficient's value comes from.
struct CoefficientSource {
  enum class Kind { Key, Message };
  Kind kind;
  std::size_t index;

  bool operator==(const CoefficientSource&) const = default;
};

/// A coefficient of a higher-degree polynomial, identified by
/// (polynomial index in construction order, degree).
struct CoefficientRef {
  std::size_t poly;
  std::size_t degree;

  bool operator==(const CoefficientRef&) const = default;
};

/// The polynomial ladder. Tier i holds p[i] polynomials of degree D[i]-1;
/// polynomials are numbered in construction order, tier 0 first, and a node
/// stores one evaluation of each in that order.
struct LayoutPlan {
  std::uint32_t z = 0;
  std::vector<std::uint32_t> D;        // strictly decreasing, last = n - r
  std::size_t m_len = 0;               // lcm{d - z}
  std::size_t b = 0;                   // polynomials per node = m_len / k
  std::vector<std::size_t> p;          // polynomials per tier
  std::vector<std::size_t> poly_tier;  // tier of each polynomial
  std::vector<std::size_t> poly_degrees;
  /// coeff_map[P][e]: for a non-key slot of a lower-tier polynomial, the
  /// higher-tier coefficient it carries. Empty for tier 0 and key slots.
  std::vector<std::vector<std::optional<CoefficientRef>>> coeff_map;
  /// Every coefficient resolved to a key or message index.
  std::vector<std::vector<CoefficientSource>> sources;

  std::size_t tier_of(std::uint32_t d) const;  // throws UnsupportedD
  /// Polynomials in tiers 0..tier, i.e. those of degree >= D[tier] - 1.
  std::size_t polys_through(std::size_t tier) const;
  /// Degrees 0..z-1 of every polynomial are keys.
  std::vector<std::size_t> key_positions() const;
};

/// Builds the layout with the order-preserving coefficient mapping: higher
/// polynomials in construction order, their degrees D[i]..D[i-1]-1 ascending,
/// poured into tier-i non-key slots (degrees z..D[i]-1) polynomial by
/// polynomial.
LayoutPlan plan(std::uint32_t n, std::uint32_t r, std::uint32_t z,
                std::span<const std::uint32_t> D);

/// Per-interpolation instrumentation of a decode.
struct DecodeTrace {
  std::vector<std::size_t> interpolated;         // polynomial indices, in order
  std::vector<std::size_t> message_symbols_known;  // after each interpolation
};

class CeShamirScheme final : public Scheme {
 public:
  CeShamirScheme(const SchemeParams& params, std::span<const std::uint32_t> D);

  SchemeId id() const override { return SchemeId::CeShamir; }
  SchemeMeta meta() const override { return ShamirMeta{plan_.D}; }
  const LayoutPlan& layout() const { return plan_; }

  std::size_t message_length() const override { return plan_.m_len; }
  std::size_t key_count() const override { return std::size_t{params().z} * plan_.b; }
  std::size_t share_width() const override { return plan_.b; }

  std::vector<std::uint32_t> supported_d() const override { return plan_.D; }
  /// Largest d in D not above `available`.
  std::uint32_t effective_d(std::uint32_t available) const override;
  std::size_t prefix_length(std::uint32_t d) const override;

  /// Coefficient vectors of all b polynomials.
  std::vector<std::vector<FieldElement>> polynomials(std::span<const FieldElement> message,
                                                     std::span<const FieldElement> keys) const;

  std::vector<ShareBundle> encode_with_keys(std::span<const FieldElement> message,
                                            std::span<const FieldElement> keys) const override;
  std::vector<FieldElement> decode(std::span<const PreprocessedShare> shares,
                                   BandwidthLedger* ledger = nullptr) const override;
  std::vector<FieldElement> decode_traced(std::span<const PreprocessedShare> shares,
                                          BandwidthLedger* ledger, DecodeTrace* trace) const;

 private:
  LayoutPlan plan_;
};

}  // namespace cess
