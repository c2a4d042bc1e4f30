#include "cess/share_file.hpp"

#include <array>
#include <string>

#include "cess/error.hpp"

namespace cess {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'C', 'E', 'S', 'S'};
constexpr std::size_t kFixedHeader = 4 + 1 + 1 + 4 * 2 + 8 + 8 + 2;

void put(std::vector<std::uint8_t>& out, std::uint64_t v, std::size_t bytes) {
  for (std::size_t i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put16(std::vector<std::uint8_t>& out, std::uint64_t v, const char* what) {
  if (v > 0xffff) throw Error(ErrorCode::InvalidParams, std::string(what) + " exceeds 16 bits");
  put(out, v, 2);
}

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t take(std::size_t n) {
    if (pos_ + n > bytes_.size()) throw Error(ErrorCode::MalformedShare, "truncated header");
    std::uint64_t v = 0;
    for (std::size_t i = n; i-- > 0;) v = (v << 8) | bytes_[pos_ + i];
    pos_ += n;
    return v;
  }
  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> serialize_meta(const SchemeMeta& meta) {
  std::vector<std::uint8_t> out;
  if (const auto* m = std::get_if<ShamirMeta>(&meta)) {
    put16(out, m->D.size(), "|D|");
    for (auto d : m->D) put16(out, d, "d");
  } else if (const auto* m = std::get_if<RsMeta>(&meta)) {
    put16(out, m->beta, "beta");
  } else {
    const auto& seed = std::get<RandomMeta>(meta).matrix_seed;
    out.insert(out.end(), seed.begin(), seed.end());
  }
  return out;
}

std::size_t payload_width(const ShareHeader& h) {
  return make_scheme(h.params, h.meta)->share_width();
}

}  // namespace

bool ShareHeader::same_identity(const ShareHeader& other) const {
  return version == other.version && scheme_id == other.scheme_id && params == other.params &&
         original_length == other.original_length && meta == other.meta;
}

std::vector<std::uint8_t> serialize_header(const ShareHeader& h) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  put(out, h.version, 1);
  put(out, static_cast<std::uint8_t>(h.scheme_id), 1);
  put16(out, h.params.n, "n");
  put16(out, h.params.r, "r");
  put16(out, h.params.z, "z");
  put16(out, h.node_index, "node index");
  put(out, h.params.q, 8);
  put(out, h.original_length, 8);
  const auto meta = serialize_meta(h.meta);
  put16(out, meta.size(), "meta length");
  out.insert(out.end(), meta.begin(), meta.end());
  return out;
}

ShareHeader parse_header(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  if (bytes.size() < kFixedHeader ||
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::MalformedShare, "missing CESS magic");
  }
  Cursor c(bytes);
  c.take(4);
  ShareHeader h;
  h.version = static_cast<std::uint8_t>(c.take(1));
  if (h.version != kShareFormatVersion) {
    throw Error(ErrorCode::MalformedShare, "unsupported version " + std::to_string(h.version));
  }
  const auto id = c.take(1);
  if (id < 1 || id > 3) throw Error(ErrorCode::MalformedShare, "scheme id " + std::to_string(id));
  h.scheme_id = static_cast<SchemeId>(id);
  const auto n = static_cast<std::uint32_t>(c.take(2));
  const auto r = static_cast<std::uint32_t>(c.take(2));
  const auto z = static_cast<std::uint32_t>(c.take(2));
  h.node_index = static_cast<std::uint32_t>(c.take(2));
  const auto q = c.take(8);
  h.original_length = c.take(8);
  const auto meta_len = static_cast<std::size_t>(c.take(2));
  try {
    h.params = SchemeParams::make(n, r, z, q);
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedShare, std::string("bad parameters: ") + e.what());
  }
  if (h.node_index < 1 || h.node_index > n) {
    throw Error(ErrorCode::MalformedShare, "node index " + std::to_string(h.node_index));
  }

  const auto meta_start = c.pos();
  switch (h.scheme_id) {
    case SchemeId::CeShamir: {
      ShamirMeta m;
      const auto count = c.take(2);
      for (std::uint64_t i = 0; i < count; ++i) m.D.push_back(static_cast<std::uint32_t>(c.take(2)));
      h.meta = m;
      break;
    }
    case SchemeId::CeRs:
      h.meta = RsMeta{static_cast<std::uint32_t>(c.take(2))};
      break;
    case SchemeId::CeRandom: {
      RandomMeta m;
      for (auto& byte : m.matrix_seed) byte = static_cast<std::uint8_t>(c.take(1));
      h.meta = m;
      break;
    }
  }
  if (c.pos() - meta_start != meta_len) {
    throw Error(ErrorCode::MalformedShare, "scheme meta length mismatch");
  }
  if (consumed != nullptr) *consumed = c.pos();
  return h;
}

std::vector<std::uint8_t> serialize(const ShareFile& file) {
  auto out = serialize_header(file.header);
  const auto bytes = element_byte_width(file.header.params.q);
  const auto offset = out.size();
  out.resize(offset + bytes * file.payload.size());
  for (std::size_t i = 0; i < file.payload.size(); ++i) {
    write_element(file.payload[i], std::span(out).subspan(offset + i * bytes, bytes));
  }
  return out;
}

ShareFile parse(std::span<const std::uint8_t> bytes) {
  std::size_t consumed = 0;
  ShareFile file{parse_header(bytes, &consumed), {}};
  const PrimeField field(file.header.params.q);
  const auto width = element_byte_width(field.modulus());
  const auto payload = bytes.subspan(consumed);
  const auto share_bytes = width * payload_width(file.header);
  if (payload.size() % share_bytes != 0) {
    throw Error(ErrorCode::MalformedShare,
                "payload of " + std::to_string(payload.size()) +
                    " bytes is not a whole number of shares");
  }
  for (std::size_t i = 0; i < payload.size(); i += width) {
    file.payload.push_back(read_element(payload.subspan(i, width), field));
  }
  return file;
}

void write_share_file(const std::filesystem::path& path, const ShareFile& file) {
  const auto bytes = serialize(file);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "rename " + tmp.string() + ": " + ec.message());
}

ShareFile read_share_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return parse(bytes);
}

ShareReader::ShareReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary), field_(2) {
  if (!in_) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  // Header is at most the fixed part plus a 2-byte-length meta block.
  std::vector<std::uint8_t> head(kFixedHeader + 0xffff);
  in_.read(reinterpret_cast<char*>(head.data()), static_cast<std::streamsize>(head.size()));
  head.resize(static_cast<std::size_t>(in_.gcount()));
  in_.clear();
  header_ = parse_header(head, &header_size_);
  field_ = PrimeField(header_.params.q);
  element_bytes_ = element_byte_width(field_.modulus());

  const auto size = std::filesystem::file_size(path);
  const auto payload = size - header_size_;
  const auto share_bytes = element_bytes_ * payload_width(header_);
  if (payload % share_bytes != 0) {
    throw Error(ErrorCode::MalformedShare, path.string() + ": truncated payload");
  }
  payload_symbols_ = payload / element_bytes_;
}

std::vector<FieldElement> ShareReader::read(std::uint64_t offset, std::size_t count) {
  if (offset + count > payload_symbols_) {
    throw Error(ErrorCode::MalformedShare, path_.string() + ": read past payload");
  }
  std::vector<std::uint8_t> buf(count * element_bytes_);
  in_.seekg(static_cast<std::streamoff>(header_size_ + offset * element_bytes_));
  in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in_.gcount()) != buf.size()) {
    throw Error(ErrorCode::IoError, path_.string() + ": short read");
  }
  std::vector<FieldElement> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(read_element(std::span(buf).subspan(i * element_bytes_, element_bytes_), field_));
  }
  symbols_read_ += count;
  return out;
}

}  // namespace cess
