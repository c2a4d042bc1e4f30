#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "cess/gf.hpp"
#include "cess/rng.hpp"

namespace cess {

using Rational = boost::rational<std::int64_t>;

enum class SchemeId : std::uint8_t { CeShamir = 1, CeRs = 2, CeRandom = 3 };

std::string_view to_string(SchemeId id);
SchemeId scheme_id_from_string(std::string_view name);

/// Threshold parameters. Only rate-optimal parameter sets exist:
/// k = n - r - z always.
struct SchemeParams {
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  std::uint32_t z = 0;
  std::uint32_t k = 0;
  std::uint64_t q = 0;

  /// Checks n > r + z and that q is a prime larger than n.
  static SchemeParams make(std::uint32_t n, std::uint32_t r, std::uint32_t z, std::uint64_t q);
  /// As above but rejects any k other than n - r - z.
  static SchemeParams make(std::uint32_t n, std::uint32_t r, std::uint32_t z, std::uint32_t k,
                           std::uint64_t q);

  PrimeField field() const { return PrimeField(q); }
  bool operator==(const SchemeParams&) const = default;
};

struct ShamirMeta {
  std::vector<std::uint32_t> D;  // decreasing
  bool operator==(const ShamirMeta&) const = default;
};
struct RsMeta {
  std::uint32_t beta = 1;
  bool operator==(const RsMeta&) const = default;
};
struct RandomMeta {
  Seed matrix_seed{};
  bool operator==(const RandomMeta&) const = default;
};
using SchemeMeta = std::variant<ShamirMeta, RsMeta, RandomMeta>;

/// One node's stored share.
struct ShareBundle {
  std::uint32_t node_index = 0;  // 1..n
  std::vector<FieldElement> symbols;
  SchemeId scheme_id = SchemeId::CeShamir;
  SchemeParams params;
  SchemeMeta meta;
};

/// What a node transmits when d nodes take part in decoding: a prefix of its
/// share whose length depends on d alone.
struct PreprocessedShare {
  std::uint32_t node_index = 0;
  std::uint32_t d_context = 0;
  std::vector<FieldElement> symbols;
};

/// F_q symbol counts for one decode.
struct BandwidthLedger {
  std::uint64_t symbols_downloaded = 0;
  std::uint64_t symbols_read_from_disk = 0;
  std::vector<std::uint32_t> subset;
};

/// Lower bound on communication overhead kz/(d-z), in share-alphabet units.
Rational co_lower_bound(std::uint32_t k, std::uint32_t z, std::uint32_t d);
/// The same bound in F_q symbols for share width b: k*b*z/(d-z).
Rational co_lower_bound_symbols(std::uint32_t k, std::uint32_t z, std::uint32_t d,
                                std::uint32_t b);
/// Largest message size k for the given thresholds.
std::uint32_t rate_capacity(std::uint32_t n, std::uint32_t r, std::uint32_t z);

/// Visits every size-s subset of {1..n} in lexicographic order.
void for_each_subset(std::uint32_t n, std::uint32_t s,
                     const std::function<void(const std::vector<std::uint32_t>&)>& fn);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

enum class Access { Authorized, Blocked, Intermediate };
Access validate_access(std::span<const std::uint32_t> nodes, const SchemeParams& params);

/// The encode / preprocess / decode contract shared by every construction.
/// Encoding and decoding are F_q-linear in (message, keys).
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual SchemeId id() const = 0;
  virtual SchemeMeta meta() const = 0;
  const SchemeParams& params() const { return params_; }
  const PrimeField& field() const { return field_; }

  /// F_q symbols per message block.
  virtual std::size_t message_length() const = 0;
  virtual std::size_t key_count() const = 0;
  virtual std::size_t share_width() const = 0;

  /// Values of d at which decoding meets the bandwidth lower bound.
  virtual std::vector<std::uint32_t> supported_d() const = 0;
  /// Number of nodes actually contacted when `available` nodes are reachable.
  virtual std::uint32_t effective_d(std::uint32_t available) const = 0;
  /// Symbols each contacted node sends at effective d.
  virtual std::size_t prefix_length(std::uint32_t d) const = 0;

  virtual std::vector<ShareBundle> encode_with_keys(std::span<const FieldElement> message,
                                                    std::span<const FieldElement> keys) const = 0;
  std::vector<ShareBundle> encode(std::span<const FieldElement> message, FieldRng& rng) const;

  /// Reads the d-dependent prefix of a stored share; counts disk reads.
  PreprocessedShare preprocess(const ShareBundle& share, std::uint32_t d,
                               BandwidthLedger* ledger = nullptr) const;

  /// Decodes from exactly effective_d shares preprocessed at that d;
  /// counts downloaded symbols.
  virtual std::vector<FieldElement> decode(std::span<const PreprocessedShare> shares,
                                           BandwidthLedger* ledger = nullptr) const = 0;

  /// Contacts the first effective_d(|available|) shares and decodes.
  std::vector<FieldElement> reconstruct(std::span<const ShareBundle> available,
                                        BandwidthLedger* ledger = nullptr) const;

  /// Bandwidth lower bound in F_q symbols when d nodes are contacted.
  Rational bandwidth_bound_symbols(std::uint32_t d) const;
  /// Measured overhead in share-alphabet units for a given download.
  Rational measured_overhead(std::uint64_t symbols_downloaded) const;

 protected:
  explicit Scheme(const SchemeParams& params);

  ShareBundle make_bundle(std::uint32_t node, std::vector<FieldElement> symbols) const;
  void check_lengths(std::span<const FieldElement> message,
                     std::span<const FieldElement> keys) const;
  /// Common checks on preprocessed input: count, d_context, distinct nodes,
  /// prefix length. Records downloads.
  void check_preprocessed(std::span<const PreprocessedShare> shares, std::uint32_t d,
                          BandwidthLedger* ledger) const;

 private:
  SchemeParams params_;
  PrimeField field_;
};

std::unique_ptr<Scheme> make_scheme(const SchemeParams& params, const SchemeMeta& meta);

}  // namespace cess
