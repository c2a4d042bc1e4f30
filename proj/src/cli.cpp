#include "cess/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "cess/ce_random.hpp"
#include "cess/ce_rs.hpp"
#include "cess/ce_shamir.hpp"
#include "cess/error.hpp"
#include "cess/share_file.hpp"

namespace cess::cli {

namespace {

std::string rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::vector<std::uint32_t> shamir_d(const SchemeOptions& o) {
  if (!o.D.empty()) return o.D;
  std::vector<std::uint32_t> all;
  for (auto d = o.n; d >= o.n - o.r && d > 0; --d) all.push_back(d);
  return all;
}

std::unique_ptr<FieldRng> make_rng(std::optional<std::uint64_t> seed) {
  if (seed) return std::make_unique<SeededRng>(SeededRng::from_u64(*seed));
  return std::make_unique<SystemRng>();
}

Seed matrix_seed(std::optional<std::uint64_t> seed) {
  if (!seed) return random_seed();
  auto out = seed_from_u64(*seed);
  out[8] = 'G';  // distinct from the key stream seed
  return out;
}

}  // namespace

std::uint64_t default_modulus(const SchemeOptions& o, bool byte_mode) {
  const auto k = rate_capacity(o.n, o.r, o.z);
  std::uint64_t floor = o.n;  // q must exceed this
  switch (o.scheme) {
    case SchemeId::CeShamir: break;
    case SchemeId::CeRs:
      if (o.beta == 0) throw Error(ErrorCode::InvalidBeta, "beta=0");
      floor = std::uint64_t{o.n} * (k + o.r) / o.beta;
      break;
    case SchemeId::CeRandom: {
      std::uint64_t N = 1;
      for (std::uint64_t v = k; v <= o.n - o.z; ++v) N = std::lcm(N, v);
      floor = std::uint64_t{o.n} * N * (k + o.r);
      break;
    }
  }
  if (byte_mode) floor = std::max<std::uint64_t>(floor, 256);
  auto q = floor + 1;
  while (!is_prime(q)) ++q;
  return q;
}

std::optional<std::uint64_t> effective_seed(std::optional<std::uint64_t> fallback) {
  if (const char* env = std::getenv("CESS_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const auto* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || ptr != end) {
      throw Error(ErrorCode::InvalidParams, std::string("CESS_SEED is not an integer: ") + env);
    }
    return v;
  }
  return fallback;
}

std::unique_ptr<Scheme> build_scheme(const SchemeOptions& o, bool byte_mode) {
  const auto q = o.q ? *o.q : default_modulus(o, byte_mode);
  if (byte_mode && q < 257) {
    throw Error(ErrorCode::InvalidParams,
                "byte secrets need q >= 257; pass the secret as a symbol list for q=" +
                    std::to_string(q));
  }
  const auto params = SchemeParams::make(o.n, o.r, o.z, q);
  switch (o.scheme) {
    case SchemeId::CeShamir: return std::make_unique<CeShamirScheme>(params, shamir_d(o));
    case SchemeId::CeRs: return std::make_unique<CeRsScheme>(params, o.beta);
    case SchemeId::CeRandom:
      return std::make_unique<CeRandomScheme>(
          CeRandomScheme::sample_verified(params, matrix_seed(o.seed)));
  }
  throw Error(ErrorCode::InvalidParams, "unknown scheme");
}

std::vector<std::uint64_t> parse_symbol_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c) || c == ',') {
      ++i;
      continue;
    }
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc()) {
      throw Error(ErrorCode::InvalidParams,
                  "bad symbol at offset " + std::to_string(i) + " in symbol list");
    }
    out.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return out;
}

std::string format_symbol_list(std::span<const std::uint64_t> symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(symbols[i]);
  }
  return out;
}

std::string scheme_bandwidth_table(const Scheme& scheme) {
  const auto& p = scheme.params();
  std::ostringstream out;
  out << to_string(scheme.id()) << " n=" << p.n << " r=" << p.r << " z=" << p.z << " k=" << p.k
      << " q=" << p.q << " width=" << scheme.share_width()
      << " message=" << scheme.message_length() << " symbols/block\n";
  out << "   d  download  bound  overhead(share units)\n";
  for (auto d : scheme.supported_d()) {
    const auto download = scheme.prefix_length(d) * d;
    out << std::setw(4) << d << std::setw(10) << download << std::setw(7)
        << rational(scheme.bandwidth_bound_symbols(d)) << "  "
        << rational(co_lower_bound(p.k, p.z, d)) << "\n";
  }
  return out.str();
}

SplitResult split(const Secret& secret, const SchemeOptions& options,
                  const std::filesystem::path& out_dir, std::string_view prefix) {
  if (secret.symbols.empty()) throw Error(ErrorCode::InvalidParams, "empty secret");
  auto opts = options;
  opts.seed = effective_seed(options.seed);
  const auto scheme = build_scheme(opts, secret.byte_mode);
  const auto& field = scheme->field();
  for (auto s : secret.symbols) {
    if (s >= field.modulus()) {
      throw Error(ErrorCode::InvalidParams,
                  "symbol " + std::to_string(s) + " not in F_" + std::to_string(field.modulus()));
    }
  }

  const auto block_len = scheme->message_length();
  SplitResult result;
  result.blocks = (secret.symbols.size() + block_len - 1) / block_len;
  auto rng = make_rng(opts.seed);

  const auto n = scheme->params().n;
  std::vector<ShareFile> files(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    files[j].header = ShareHeader{kShareFormatVersion, scheme->id(),      scheme->params(),
                                  j + 1,               secret.symbols.size(), scheme->meta()};
  }
  for (std::size_t b = 0; b < result.blocks; ++b) {
    std::vector<FieldElement> message(block_len, field.zero());
    for (std::size_t i = 0; i < block_len; ++i) {
      const auto idx = b * block_len + i;
      if (idx < secret.symbols.size()) message[i] = field(secret.symbols[idx]);
    }
    const auto shares = scheme->encode(message, *rng);
    for (std::uint32_t j = 0; j < n; ++j) {
      auto& payload = files[j].payload;
      payload.insert(payload.end(), shares[j].symbols.begin(), shares[j].symbols.end());
    }
  }

  std::filesystem::create_directories(out_dir);
  for (std::uint32_t j = 0; j < n; ++j) {
    auto path = out_dir / (std::string(prefix) + "-" + std::to_string(j + 1) + ".cess");
    write_share_file(path, files[j]);
    result.files.push_back(std::move(path));
  }
  result.bandwidth_table = scheme_bandwidth_table(*scheme);
  return result;
}

ReconstructResult reconstruct(std::span<const std::filesystem::path> files,
                              std::optional<std::uint32_t> d_hint) {
  if (files.empty()) throw Error(ErrorCode::NotAuthorized, "no share files");
  std::vector<ShareReader> readers;
  readers.reserve(files.size());
  for (const auto& f : files) readers.emplace_back(f);

  const auto& first = readers.front().header();
  std::vector<std::uint32_t> nodes;
  for (const auto& r : readers) {
    if (!r.header().same_identity(first)) {
      throw Error(ErrorCode::HeaderMismatch, "share files come from different splits");
    }
    if (std::find(nodes.begin(), nodes.end(), r.header().node_index) != nodes.end()) {
      throw Error(ErrorCode::DuplicateNode, "node " + std::to_string(r.header().node_index));
    }
    nodes.push_back(r.header().node_index);
  }

  const auto scheme = make_scheme(first.params, first.meta);
  auto available = static_cast<std::uint32_t>(readers.size());
  if (d_hint) available = std::min(available, *d_hint);
  const auto d = scheme->effective_d(available);

  const auto width = scheme->share_width();
  const auto block_len = scheme->message_length();
  const auto blocks = (first.original_length + block_len - 1) / block_len;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (readers[i].payload_symbols() != blocks * width) {
      throw Error(ErrorCode::InconsistentShares,
                  files[i].string() + ": payload does not match recorded secret length");
    }
  }

  ReconstructResult result;
  result.nodes_contacted = d;
  result.secret.byte_mode = first.params.q >= 257;
  const auto prefix = scheme->prefix_length(d);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    std::vector<PreprocessedShare> pre;
    for (std::uint32_t i = 0; i < d; ++i) {
      pre.push_back({readers[i].header().node_index, d, readers[i].read(b * width, prefix)});
    }
    const auto message = scheme->decode(pre, &result.ledger);
    for (const auto& m : message) result.secret.symbols.push_back(m.value);
    result.bound += scheme->bandwidth_bound_symbols(d);
  }
  result.secret.symbols.resize(first.original_length);
  for (std::uint32_t i = 0; i < d; ++i) result.ledger.symbols_read_from_disk += readers[i].symbols_read();
  result.ledger.subset.assign(nodes.begin(), nodes.begin() + d);
  result.tight = Rational(static_cast<std::int64_t>(result.ledger.symbols_downloaded)) == result.bound;

  std::ostringstream s;
  s << "decoded from " << d << " node(s): " << result.ledger.symbols_downloaded
    << " symbols downloaded, " << result.ledger.symbols_read_from_disk << " read, bound "
    << rational(result.bound) << ", " << (result.tight ? "tight" : "not tight");
  result.summary = s.str();
  return result;
}

std::string bound_table(std::uint32_t n, std::uint32_t r, std::uint32_t z,
                        std::span<const std::uint32_t> ds) {
  const auto k = rate_capacity(n, r, z);
  std::ostringstream out;
  out << "n=" << n << " r=" << r << " z=" << z << " k=" << k << "\n";
  out << "   d  overhead  bandwidth   (share units)\n";
  for (auto d : ds) {
    if (d <= z || d > n) {
      throw Error(ErrorCode::InvalidParams,
                  "d=" + std::to_string(d) + " outside (z, n] = (" + std::to_string(z) + ", " +
                      std::to_string(n) + "]");
    }
    const auto co = co_lower_bound(k, z, d);
    out << std::setw(4) << d << std::setw(10) << rational(co) << std::setw(11)
        << rational(co + Rational(k)) << "\n";
  }
  return out.str();
}

std::vector<BenchRow> bench(const Scheme& scheme, std::size_t repetitions, FieldRng& rng) {
  if (repetitions == 0) throw Error(ErrorCode::InvalidParams, "repetitions must be positive");
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (auto d : scheme.supported_d()) {
    BenchRow row;
    row.d = d;
    row.bound = scheme.bandwidth_bound_symbols(d);
    clock::duration encode_total{}, decode_total{};
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      const auto message = rng.uniform_vector(scheme.field(), scheme.message_length());
      auto t0 = clock::now();
      const auto shares = scheme.encode(message, rng);
      auto t1 = clock::now();
      BandwidthLedger ledger;
      const auto decoded =
          scheme.reconstruct(std::span<const ShareBundle>(shares.data(), d), &ledger);
      auto t2 = clock::now();
      if (decoded != message) {
        throw Error(ErrorCode::InconsistentShares, "bench decode mismatch at d=" + std::to_string(d));
      }
      encode_total += t1 - t0;
      decode_total += t2 - t1;
      row.symbols = ledger.symbols_downloaded;
    }
    row.tight = Rational(static_cast<std::int64_t>(row.symbols)) == row.bound;
    row.encode_mean = encode_total / static_cast<double>(repetitions);
    row.decode_mean = decode_total / static_cast<double>(repetitions);
    rows.push_back(row);
  }
  return rows;
}

std::string render_bench(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << "   d  symbols  bound  tight  encode_us  decode_us\n";
  for (const auto& row : rows) {
    out << std::setw(4) << row.d << std::setw(9) << row.symbols << std::setw(7)
        << rational(row.bound) << std::setw(7) << (row.tight ? "yes" : "no") << std::fixed
        << std::setprecision(1) << std::setw(11) << row.encode_mean.count() << std::setw(11)
        << row.decode_mean.count() << "\n";
  }
  return out.str();
}

}  // namespace cess::cli
