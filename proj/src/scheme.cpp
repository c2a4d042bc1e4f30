#include "cess/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "cess/ce_random.hpp"
#include "cess/ce_rs.hpp"
#include "cess/ce_shamir.hpp"
#include "cess/error.hpp"

namespace cess {

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::CeShamir: return "ce-shamir";
    case SchemeId::CeRs: return "ce-rs";
    case SchemeId::CeRandom: return "ce-random";
  }
  return "unknown";
}

SchemeId scheme_id_from_string(std::string_view name) {
  if (name == "ce-shamir") return SchemeId::CeShamir;
  if (name == "ce-rs") return SchemeId::CeRs;
  if (name == "ce-random") return SchemeId::CeRandom;
  throw Error(ErrorCode::InvalidParams, "unknown scheme '" + std::string(name) + "'");
}

SchemeParams SchemeParams::make(std::uint32_t n, std::uint32_t r, std::uint32_t z,
                                std::uint64_t q) {
  if (n == 0 || n <= std::uint64_t{r} + z) {
    throw Error(ErrorCode::InvalidParams,
                "need n > r + z (n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                    ", z=" + std::to_string(z) + ")");
  }
  PrimeField field(q);
  if (q <= n) {
    throw Error(ErrorCode::FieldTooSmall,
                "q=" + std::to_string(q) + " must exceed n=" + std::to_string(n));
  }
  return SchemeParams{n, r, z, rate_capacity(n, r, z), q};
}

SchemeParams SchemeParams::make(std::uint32_t n, std::uint32_t r, std::uint32_t z,
                                std::uint32_t k, std::uint64_t q) {
  auto params = make(n, r, z, q);
  if (k != params.k) {
    throw Error(ErrorCode::InvalidParams,
                "only rate-optimal k = n - r - z = " + std::to_string(params.k) +
                    " is supported, got " + std::to_string(k));
  }
  return params;
}

Rational co_lower_bound(std::uint32_t k, std::uint32_t z, std::uint32_t d) {
  if (d <= z) {
    throw Error(ErrorCode::InvalidD,
                "d=" + std::to_string(d) + " must exceed z=" + std::to_string(z));
  }
  return Rational(std::int64_t{k} * z, std::int64_t{d} - z);
}

Rational co_lower_bound_symbols(std::uint32_t k, std::uint32_t z, std::uint32_t d,
                                std::uint32_t b) {
  return co_lower_bound(k, z, d) * Rational(b);
}

std::uint32_t rate_capacity(std::uint32_t n, std::uint32_t r, std::uint32_t z) {
  if (n <= std::uint64_t{r} + z) {
    throw Error(ErrorCode::InvalidParams, "need n > r + z");
  }
  return n - r - z;
}

void for_each_subset(std::uint32_t n, std::uint32_t s,
                     const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  if (s > n) return;
  std::vector<std::uint32_t> subset(s);
  std::iota(subset.begin(), subset.end(), 1u);
  for (;;) {
    fn(subset);
    std::size_t i = s;
    while (i > 0 && subset[i - 1] == n - s + i) --i;
    if (i == 0) return;
    ++subset[i - 1];
    for (std::size_t j = i; j < s; ++j) subset[j] = subset[j - 1] + 1;
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

Access validate_access(std::span<const std::uint32_t> nodes, const SchemeParams& params) {
  const auto size = std::set<std::uint32_t>(nodes.begin(), nodes.end()).size();
  if (size >= params.n - params.r) return Access::Authorized;
  if (size <= params.z) return Access::Blocked;
  return Access::Intermediate;
}

Scheme::Scheme(const SchemeParams& params) : params_(params), field_(params.q) {}

ShareBundle Scheme::make_bundle(std::uint32_t node, std::vector<FieldElement> symbols) const {
  return ShareBundle{node, std::move(symbols), id(), params_, meta()};
}

void Scheme::check_lengths(std::span<const FieldElement> message,
                           std::span<const FieldElement> keys) const {
  if (message.size() != message_length()) {
    throw Error(ErrorCode::LengthMismatch,
                "message has " + std::to_string(message.size()) + " symbols, expected " +
                    std::to_string(message_length()));
  }
  if (keys.size() != key_count()) {
    throw Error(ErrorCode::LengthMismatch,
                "got " + std::to_string(keys.size()) + " keys, expected " +
                    std::to_string(key_count()));
  }
  for (const auto& x : message) {
    if (x.modulus != params_.q) throw Error(ErrorCode::ModulusMismatch, "message symbol");
  }
  for (const auto& x : keys) {
    if (x.modulus != params_.q) throw Error(ErrorCode::ModulusMismatch, "key symbol");
  }
}

std::vector<ShareBundle> Scheme::encode(std::span<const FieldElement> message,
                                        FieldRng& rng) const {
  if (message.size() != message_length()) {
    throw Error(ErrorCode::LengthMismatch,
                "message has " + std::to_string(message.size()) + " symbols, expected " +
                    std::to_string(message_length()));
  }
  const auto keys = rng.uniform_vector(field_, key_count());
  return encode_with_keys(message, keys);
}

PreprocessedShare Scheme::preprocess(const ShareBundle& share, std::uint32_t d,
                                     BandwidthLedger* ledger) const {
  if (share.scheme_id != id() || share.params != params_) {
    throw Error(ErrorCode::InconsistentShares,
                "share of node " + std::to_string(share.node_index) + " belongs to another scheme");
  }
  if (share.symbols.size() != share_width()) {
    throw Error(ErrorCode::LengthMismatch,
                "share of node " + std::to_string(share.node_index) + " has " +
                    std::to_string(share.symbols.size()) + " symbols, expected " +
                    std::to_string(share_width()));
  }
  const auto len = prefix_length(d);
  PreprocessedShare out{share.node_index, d,
                        {share.symbols.begin(), share.symbols.begin() + static_cast<long>(len)}};
  if (ledger != nullptr) ledger->symbols_read_from_disk += len;
  return out;
}

void Scheme::check_preprocessed(std::span<const PreprocessedShare> shares, std::uint32_t d,
                                BandwidthLedger* ledger) const {
  if (shares.size() != d) {
    throw Error(ErrorCode::InconsistentShares,
                "got " + std::to_string(shares.size()) + " shares for d=" + std::to_string(d));
  }
  const auto len = prefix_length(d);
  std::set<std::uint32_t> seen;
  for (const auto& s : shares) {
    if (s.node_index < 1 || s.node_index > params_.n) {
      throw Error(ErrorCode::IndexOutOfBounds, "node index " + std::to_string(s.node_index));
    }
    if (!seen.insert(s.node_index).second) {
      throw Error(ErrorCode::DuplicateNode, "node " + std::to_string(s.node_index));
    }
    if (s.d_context != d) {
      throw Error(ErrorCode::InconsistentShares,
                  "node " + std::to_string(s.node_index) + " preprocessed for d=" +
                      std::to_string(s.d_context) + ", decoding at d=" + std::to_string(d));
    }
    if (s.symbols.size() != len) {
      throw Error(ErrorCode::LengthMismatch,
                  "node " + std::to_string(s.node_index) + " sent " +
                      std::to_string(s.symbols.size()) + " symbols, expected " +
                      std::to_string(len));
    }
    for (const auto& x : s.symbols) {
      if (x.modulus != params_.q) throw Error(ErrorCode::ModulusMismatch, "share symbol");
    }
  }
  if (ledger != nullptr) {
    ledger->symbols_downloaded += len * shares.size();
    ledger->subset.clear();
    for (const auto& s : shares) ledger->subset.push_back(s.node_index);
  }
}

std::vector<FieldElement> Scheme::reconstruct(std::span<const ShareBundle> available,
                                              BandwidthLedger* ledger) const {
  std::set<std::uint32_t> nodes;
  for (const auto& s : available) {
    if (!nodes.insert(s.node_index).second) {
      throw Error(ErrorCode::DuplicateNode, "node " + std::to_string(s.node_index));
    }
  }
  const auto d = effective_d(static_cast<std::uint32_t>(available.size()));
  std::vector<PreprocessedShare> pre;
  pre.reserve(d);
  for (std::size_t i = 0; i < d; ++i) pre.push_back(preprocess(available[i], d, ledger));
  return decode(pre, ledger);
}

Rational Scheme::bandwidth_bound_symbols(std::uint32_t d) const {
  const auto width = static_cast<std::uint32_t>(share_width());
  return Rational(static_cast<std::int64_t>(message_length())) +
         co_lower_bound_symbols(params_.k, params_.z, d, width);
}

Rational Scheme::measured_overhead(std::uint64_t symbols_downloaded) const {
  return Rational(static_cast<std::int64_t>(symbols_downloaded) -
                      static_cast<std::int64_t>(message_length()),
                  static_cast<std::int64_t>(share_width()));
}

std::unique_ptr<Scheme> make_scheme(const SchemeParams& params, const SchemeMeta& meta) {
  if (const auto* m = std::get_if<ShamirMeta>(&meta)) {
    return std::make_unique<CeShamirScheme>(params, m->D);
  }
  if (const auto* m = std::get_if<RsMeta>(&meta)) {
    return std::make_unique<CeRsScheme>(params, m->beta);
  }
  const auto& m = std::get<RandomMeta>(meta);
  return std::make_unique<CeRandomScheme>(params, m.matrix_seed);
}

}  // namespace cess
