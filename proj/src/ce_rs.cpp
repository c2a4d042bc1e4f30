#include "cess/ce_rs.hpp"

#include <numeric>
#include <set>
#include <string>

#include "cess/error.hpp"
#include "cess/poly.hpp"

namespace cess {

RsGenerator build_generator(const SchemeParams& params, std::uint32_t beta) {
  const auto [n, r, z, k, q] = params;
  if (beta == 0 || std::gcd(k, r) % beta != 0) {
    throw Error(ErrorCode::InvalidBeta,
                "beta=" + std::to_string(beta) + " does not divide gcd(k, r)=" +
                    std::to_string(std::gcd(k, r)));
  }
  const std::size_t kb = k / beta;
  const std::size_t rb = r / beta;
  const std::size_t length = std::size_t{n} * (kb + rb);
  if (q <= length) {
    throw Error(ErrorCode::FieldTooSmall,
                "q=" + std::to_string(q) + " must exceed n(k+r)/beta=" + std::to_string(length));
  }
  const PrimeField field(q);

  RsGenerator gen{FieldMatrix(0, 0, q), FieldMatrix(0, 0, q), FieldMatrix(0, 0, q), {}, beta,
                  kb * n, rb * z};
  for (std::size_t j = 1; j <= length; ++j) gen.alphas.push_back(field(j));

  const auto rows = gen.top_rows + gen.lower_rows;
  gen.V = vandermonde(gen.alphas, rows);

  gen.T = FieldMatrix(rows, rows, q);
  for (std::size_t i = 0; i < gen.top_rows; ++i) gen.T.at(i, i) = field.one();
  const auto vanishing =
      from_roots(q, std::span(gen.alphas).first(gen.top_rows)).padded(gen.top_rows + 1);
  for (std::size_t i = 0; i < gen.lower_rows; ++i) {
    // x^i * prod (x - alpha_j)
    for (std::size_t c = 0; c < vanishing.size(); ++c) {
      gen.T.at(gen.top_rows + i, c + i) = vanishing[c];
    }
  }
  gen.G = matmul(gen.T, gen.V);
  return gen;
}

CeRsScheme::CeRsScheme(const SchemeParams& params, std::uint32_t beta)
    : Scheme(params), gen_(build_generator(params, beta)) {}

std::size_t CeRsScheme::share_width() const {
  return (params().k + params().r) / gen_.beta;
}

std::size_t CeRsScheme::message_length() const {
  return std::size_t{params().k} / gen_.beta * (params().k + params().r);
}

std::size_t CeRsScheme::key_count() const {
  return (std::size_t{params().k} + params().r) * params().z / gen_.beta;
}

std::vector<std::uint32_t> CeRsScheme::supported_d() const {
  const auto n = params().n;
  const auto r = params().r;
  if (r == 0) return {n};
  return {n, n - r};
}

std::uint32_t CeRsScheme::effective_d(std::uint32_t available) const {
  const auto n = params().n;
  const auto floor = n - params().r;
  if (available >= n) return n;
  if (available >= floor) return floor;
  throw Error(ErrorCode::NotAuthorized,
              std::to_string(available) + " nodes available, need " + std::to_string(floor));
}

std::size_t CeRsScheme::prefix_length(std::uint32_t d) const {
  if (d == params().n) return params().k / gen_.beta;
  if (d == params().n - params().r) return share_width();
  throw Error(ErrorCode::UnsupportedD, "d=" + std::to_string(d));
}

std::vector<FieldElement> CeRsScheme::codeword(std::span<const FieldElement> message,
                                               std::span<const FieldElement> keys) const {
  check_lengths(message, keys);
  std::vector<FieldElement> input(message.begin(), message.end());
  input.insert(input.end(), keys.begin(), keys.end());
  return vecmul(input, gen_.G);
}

std::vector<ShareBundle> CeRsScheme::encode_with_keys(std::span<const FieldElement> message,
                                                      std::span<const FieldElement> keys) const {
  const auto flat = codeword(message, keys);
  const auto n = params().n;
  const auto width = share_width();
  std::vector<ShareBundle> shares;
  shares.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    std::vector<FieldElement> symbols;
    symbols.reserve(width);
    for (std::size_t i = 0; i < width; ++i) symbols.push_back(flat[i * n + j]);
    shares.push_back(make_bundle(j + 1, std::move(symbols)));
  }
  return shares;
}

std::vector<FieldElement> CeRsScheme::decode(std::span<const PreprocessedShare> shares,
                                             BandwidthLedger* ledger) const {
  const auto d = static_cast<std::uint32_t>(shares.size());
  if (d == params().n) return decode_all(shares, ledger);
  if (d == params().n - params().r) return decode_subset(shares, ledger);
  if (d < params().n - params().r) {
    throw Error(ErrorCode::NotAuthorized, std::to_string(d) + " shares");
  }
  throw Error(ErrorCode::UnsupportedD, "d=" + std::to_string(d));
}

std::vector<FieldElement> CeRsScheme::decode_all(std::span<const PreprocessedShare> shares,
                                                 BandwidthLedger* ledger) const {
  const auto n = params().n;
  check_preprocessed(shares, n, ledger);
  const auto per_node = prefix_length(n);

  std::vector<FieldElement> e(per_node * n, field().zero());
  for (const auto& s : shares) {
    for (std::size_t i = 0; i < per_node; ++i) e[i * n + (s.node_index - 1)] = s.symbols[i];
  }
  const auto idx = iota_indices(0, gen_.top_rows);
  const auto g11 = submatrix(gen_.G, idx, idx);
  auto x = vecmul(e, invert(g11));
  x.resize(message_length());
  return x;
}

std::vector<FieldElement> CeRsScheme::decode_subset(std::span<const PreprocessedShare> shares,
                                                    BandwidthLedger* ledger) const {
  const auto n = params().n;
  const auto d = static_cast<std::uint32_t>(shares.size());
  if (d < n - params().r) throw Error(ErrorCode::NotAuthorized, std::to_string(d) + " shares");
  check_preprocessed(shares, n - params().r, ledger);
  const auto width = share_width();

  std::vector<std::size_t> cols;
  std::vector<FieldElement> e;
  for (std::size_t i = 0; i < width; ++i) {
    for (const auto& s : shares) {
      cols.push_back(i * n + (s.node_index - 1));
      e.push_back(s.symbols[i]);
    }
  }
  FieldMatrix inverse(0, 0, params().q);
  try {
    inverse = invert(select_columns(gen_.G, cols));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::SingularMatrix) throw;
    throw Error(ErrorCode::SingularMatrix, "generator corrupted: selected columns dependent");
  }
  auto x = vecmul(e, inverse);
  x.resize(message_length());
  return x;
}

std::vector<FieldElement> CeRsScheme::decode_erasures(
    std::span<const std::pair<std::size_t, FieldElement>> available) const {
  const auto length = gen_.G.cols();
  const auto needed = gen_.G.rows();
  std::set<std::size_t> seen;
  std::vector<std::size_t> cols;
  std::vector<FieldElement> y;
  for (const auto& [pos, value] : available) {
    if (pos >= length) throw Error(ErrorCode::IndexOutOfBounds, "position " + std::to_string(pos));
    if (!seen.insert(pos).second) {
      throw Error(ErrorCode::DuplicateNode, "position " + std::to_string(pos) + " repeated");
    }
    cols.push_back(pos);
    y.push_back(value);
  }
  if (cols.size() < needed) {
    throw Error(ErrorCode::TooManyErasures,
                std::to_string(length - cols.size()) + " erasures, at most " +
                    std::to_string(length - needed) + " correctable");
  }
  auto x = solve_right(select_columns(gen_.G, cols), y);
  x.resize(message_length());
  return x;
}

}  // namespace cess
