#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <vector>

#include "cess/scheme.hpp"

namespace cess {

/// Share file layout, all integers little-endian:
///   "CESS" | version u8 = 1 | scheme_id u8 | n, r, z, node_index u16 |
///   q u64 | original length u64 | meta length u16 | meta | payload
/// meta: ce-shamir |D| u16 then D u16 each; ce-rs beta u16; ce-random
/// 32-byte matrix seed. Payload: field elements of element_byte_width(q)
/// bytes, one share of width w per message block, blocks in order.
struct ShareHeader {
  std::uint8_t version = 1;
  SchemeId scheme_id = SchemeId::CeShamir;
  SchemeParams params;
  std::uint32_t node_index = 0;
  std::uint64_t original_length = 0;
  SchemeMeta meta;

  /// Everything except node_index.
  bool same_identity(const ShareHeader& other) const;
  bool operator==(const ShareHeader&) const = default;
};

inline constexpr std::uint8_t kShareFormatVersion = 1;

std::vector<std::uint8_t> serialize_header(const ShareHeader& header);
/// Parses a header from the start of `bytes`; `consumed` receives its size.
ShareHeader parse_header(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

struct ShareFile {
  ShareHeader header;
  std::vector<FieldElement> payload;
};

std::vector<std::uint8_t> serialize(const ShareFile& file);
ShareFile parse(std::span<const std::uint8_t> bytes);

/// Writes to a temporary sibling and renames over the target.
void write_share_file(const std::filesystem::path& path, const ShareFile& file);
ShareFile read_share_file(const std::filesystem::path& path);

/// Random access to a share file's payload that counts the field symbols
/// it actually reads.
class ShareReader {
 public:
  explicit ShareReader(const std::filesystem::path& path);

  const ShareHeader& header() const { return header_; }
  std::uint64_t payload_symbols() const { return payload_symbols_; }
  std::uint64_t symbols_read() const { return symbols_read_; }

  /// Symbols [offset, offset + count) of the payload.
  std::vector<FieldElement> read(std::uint64_t offset, std::size_t count);

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  ShareHeader header_;
  PrimeField field_;
  std::size_t header_size_ = 0;
  std::size_t element_bytes_ = 0;
  std::uint64_t payload_symbols_ = 0;
  std::uint64_t symbols_read_ = 0;
};

}  // namespace cess
