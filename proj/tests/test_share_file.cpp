#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cess/error.hpp"
#include "cess/rng.hpp"
#include "cess/share_file.hpp"

namespace cess {
namespace {

ShareHeader sample_header(SchemeId id) {
  ShareHeader h;
  h.scheme_id = id;
  h.params = SchemeParams::make(7, 4, 1, 257);
  h.node_index = 3;
  h.original_length = 12345;
  switch (id) {
    case SchemeId::CeShamir: h.meta = ShamirMeta{{7, 4, 3}}; break;
    case SchemeId::CeRs: h.meta = RsMeta{1}; break;
    case SchemeId::CeRandom: h.meta = RandomMeta{seed_from_u64(77)}; break;
  }
  return h;
}

TEST(ShareFile, HeaderByteLayout) {
  const auto bytes = serialize_header(sample_header(SchemeId::CeRs));
  ASSERT_EQ(bytes.size(), 4u + 1 + 1 + 8 + 8 + 8 + 2 + 2);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "CESS");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 2);
  EXPECT_EQ(bytes[6], 7);  // n low byte
  EXPECT_EQ(bytes[7], 0);
  EXPECT_EQ(bytes[12], 3);  // node index
  EXPECT_EQ(bytes[14], 1);  // q = 257 = 0x0101
  EXPECT_EQ(bytes[15], 1);
  EXPECT_EQ(bytes[30], 2);  // meta length
  EXPECT_EQ(bytes[32], 1);  // beta
}

TEST(ShareFile, HeaderRoundTripAllSchemes) {
  for (auto id : {SchemeId::CeShamir, SchemeId::CeRs, SchemeId::CeRandom}) {
    const auto h = sample_header(id);
    const auto bytes = serialize_header(h);
    std::size_t consumed = 0;
    EXPECT_EQ(parse_header(bytes, &consumed), h);
    EXPECT_EQ(consumed, bytes.size());
  }
}

TEST(ShareFile, HeaderRoundTripRandomized) {
  auto rng = SeededRng::from_u64(5);
  for (int trial = 0; trial < 200; ++trial) {
    ShareHeader h;
    const auto n = static_cast<std::uint32_t>(3 + rng.below(60));
    const auto r = static_cast<std::uint32_t>(rng.below(n - 1));
    const auto z = static_cast<std::uint32_t>(rng.below(n - r));
    h.params = SchemeParams::make(n, r, z, 65537);
    h.node_index = static_cast<std::uint32_t>(1 + rng.below(n));
    h.original_length = rng.below(1ull << 32) * rng.below(1ull << 20);
    switch (rng.below(3)) {
      case 0: {
        h.scheme_id = SchemeId::CeShamir;
        ShamirMeta m;
        for (auto d = n; d > n - r; --d) {
          if (rng.below(2) != 0) m.D.push_back(d);
        }
        m.D.push_back(n - r);
        h.meta = m;
        break;
      }
      case 1:
        h.scheme_id = SchemeId::CeRs;
        h.meta = RsMeta{static_cast<std::uint32_t>(1 + rng.below(5))};
        break;
      default:
        h.scheme_id = SchemeId::CeRandom;
        h.meta = RandomMeta{seed_from_u64(rng.below(1ull << 40))};
    }
    EXPECT_EQ(parse_header(serialize_header(h)), h);
  }
}

TEST(ShareFile, MalformedHeaders) {
  auto bytes = serialize_header(sample_header(SchemeId::CeShamir));
  auto expect_malformed = [](std::vector<std::uint8_t> b) {
    try {
      parse_header(b);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedShare);
    }
  };
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  expect_malformed(bad_magic);
  auto bad_version = bytes;
  bad_version[4] = 9;
  expect_malformed(bad_version);
  auto bad_scheme = bytes;
  bad_scheme[5] = 7;
  expect_malformed(bad_scheme);
  expect_malformed({bytes.begin(), bytes.end() - 1});
  expect_malformed({});
}

TEST(ShareFile, PayloadRoundTripAndWidth) {
  PrimeField f(257);
  ShareFile file{sample_header(SchemeId::CeShamir), {}};
  for (std::uint64_t v = 0; v < 6; ++v) file.payload.push_back(f(v * 50));
  const auto bytes = serialize(file);
  EXPECT_EQ(bytes.size(), serialize_header(file.header).size() + 6 * 2);
  const auto back = parse(bytes);
  EXPECT_EQ(back.header, file.header);
  EXPECT_EQ(back.payload, file.payload);

  auto odd = bytes;
  odd.push_back(0);
  EXPECT_THROW(parse(odd), Error);
}

TEST(ShareFile, DiskRoundTripAndCountedReads) {
  const auto dir = std::filesystem::temp_directory_path() / "cess_share_file_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "share-3.cess";
  PrimeField f(257);
  ShareFile file{sample_header(SchemeId::CeRs), {}};
  // two shares of width 6
  for (std::uint64_t v = 0; v < 12; ++v) file.payload.push_back(f(v + 200));
  write_share_file(path, file);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  const auto back = read_share_file(path);
  EXPECT_EQ(back.header, file.header);
  EXPECT_EQ(back.payload, file.payload);

  ShareReader reader(path);
  EXPECT_EQ(reader.header(), file.header);
  EXPECT_EQ(reader.payload_symbols(), 12u);
  const auto part = reader.read(3, 2);
  EXPECT_EQ(part, (std::vector<FieldElement>{f(203), f(204)}));
  EXPECT_EQ(reader.symbols_read(), 2u);
  EXPECT_THROW(reader.read(11, 2), Error);
  std::filesystem::remove_all(dir);
}

TEST(ShareFile, MissingFile) {
  EXPECT_THROW(read_share_file("/nonexistent/share.cess"), Error);
}

TEST(ShareFile, SameIdentityIgnoresNode) {
  auto a = sample_header(SchemeId::CeRs);
  auto b = a;
  b.node_index = 5;
  EXPECT_TRUE(a.same_identity(b));
  b.original_length = 1;
  EXPECT_FALSE(a.same_identity(b));
}

}  // namespace
}  // namespace cess
