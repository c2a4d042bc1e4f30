#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cess/audit.hpp"
#include "cess/scheme.hpp"

namespace cess::cli {

/// Parameters common to split, audit and bench.
struct SchemeOptions {
  SchemeId scheme = SchemeId::CeShamir;
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  std::uint32_t z = 0;
  std::optional<std::uint64_t> q;
  std::vector<std::uint32_t> D;  // ce-shamir; defaults to {n-r, ..., n}
  std::uint32_t beta = 1;        // ce-rs
  std::optional<std::uint64_t> seed;
};

/// Smallest prime field accepted by the scheme; at least 257 when
/// `byte_mode` so that one byte maps to one symbol.
std::uint64_t default_modulus(const SchemeOptions& options, bool byte_mode);

/// Seed from CESS_SEED if set, else `fallback`.
std::optional<std::uint64_t> effective_seed(std::optional<std::uint64_t> fallback);

/// Builds the scheme; ce-random draws (and verifies) its matrices from
/// the seed, or from system randomness without one.
std::unique_ptr<Scheme> build_scheme(const SchemeOptions& options, bool byte_mode);

/// Symbol-list text: integers separated by whitespace or commas.
std::vector<std::uint64_t> parse_symbol_list(std::string_view text);
std::string format_symbol_list(std::span<const std::uint64_t> symbols);

struct Secret {
  std::vector<std::uint64_t> symbols;
  bool byte_mode = true;
};

struct SplitResult {
  std::vector<std::filesystem::path> files;
  std::size_t blocks = 0;
  std::string bandwidth_table;
};

/// Pads the secret with zeros to whole message blocks, encodes each block
/// and writes one file per node named <prefix>-<node>.cess.
SplitResult split(const Secret& secret, const SchemeOptions& options,
                  const std::filesystem::path& out_dir, std::string_view prefix = "share");

struct ReconstructResult {
  Secret secret;
  std::uint32_t nodes_contacted = 0;
  BandwidthLedger ledger;  // summed over blocks
  Rational bound;          // F_q symbols, summed over blocks
  bool tight = false;
  std::string summary;
};

/// Decodes from the given files; `d_hint` caps the number of files used.
ReconstructResult reconstruct(std::span<const std::filesystem::path> files,
                              std::optional<std::uint32_t> d_hint = std::nullopt);

/// k and, per d, kz/(d-z) and total bandwidth k + kz/(d-z) in share units.
std::string bound_table(std::uint32_t n, std::uint32_t r, std::uint32_t z,
                        std::span<const std::uint32_t> ds);

/// Per-d download and bound for a concrete scheme, in F_q symbols.
std::string scheme_bandwidth_table(const Scheme& scheme);

struct BenchRow {
  std::uint32_t d = 0;
  std::uint64_t symbols = 0;
  Rational bound;
  bool tight = false;
  std::chrono::duration<double, std::micro> encode_mean{};
  std::chrono::duration<double, std::micro> decode_mean{};
};

std::vector<BenchRow> bench(const Scheme& scheme, std::size_t repetitions, FieldRng& rng);
std::string render_bench(std::span<const BenchRow> rows);

}  // namespace cess::cli
