#include "cess/ce_random.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cess/error.hpp"

namespace cess {

namespace {

void increment(Seed& seed) {
  for (auto& byte : seed) {
    if (++byte != 0) break;
  }
}

}  // namespace

std::uint64_t block_multiplier(const SchemeParams& params) {
  std::uint64_t N = 1;
  for (std::uint64_t v = params.k; v <= params.n - params.z; ++v) N = std::lcm(N, v);
  return N;
}

RandomGeneratorSet sample_scheme(const SchemeParams& params, const Seed& seed) {
  const auto [n, r, z, k, q] = params;
  const auto N = block_multiplier(params);
  const std::uint64_t width = N * (k + r);
  const std::uint64_t alpha_count = width * n;
  if (q <= alpha_count) {
    throw Error(ErrorCode::FieldTooSmall,
                "q=" + std::to_string(q) + " must exceed nN(k+r)=" + std::to_string(alpha_count));
  }
  const PrimeField field(q);

  RandomGeneratorSet gens;
  gens.N = static_cast<std::uint32_t>(N);
  gens.matrix_seed = seed;
  gens.message_rows = N * k * (k + r);
  gens.key_rows = N * k * z;
  gens.key2_rows = N * r * z;
  for (std::uint64_t a = 1; a <= alpha_count; ++a) gens.alphas.push_back(field(a));

  const std::size_t Nk = N * k;
  const std::size_t Nkn = Nk * n;
  const auto rows = gens.input_rows();
  SeededRng rng(seed);
  for (std::size_t i = 0; i < width; ++i) {
    const bool first_block = i < Nk;
    const std::size_t random = first_block ? gens.message_rows : Nkn + (i - Nk) * z;
    const std::size_t vrows = first_block ? gens.key_rows : z;

    FieldMatrix g(rows, n, q);
    for (std::size_t row = 0; row < random; ++row) {
      for (std::size_t col = 0; col < n; ++col) g.at(row, col) = rng.uniform(field);
    }
    if (vrows > 0) {
      const auto alphas = std::span(gens.alphas).subspan(i * n, n);
      const auto v = vandermonde(alphas, vrows);
      for (std::size_t row = 0; row < vrows; ++row) {
        for (std::size_t col = 0; col < n; ++col) g.at(random + row, col) = v.at(row, col);
      }
    }
    gens.Gs.push_back(std::move(g));
    gens.random_rows.push_back(random);
    gens.vandermonde_rows.push_back(vrows);
  }
  return gens;
}

CeRandomScheme::CeRandomScheme(const SchemeParams& params, const Seed& seed)
    : CeRandomScheme(params, sample_scheme(params, seed)) {}

CeRandomScheme::CeRandomScheme(const SchemeParams& params, RandomGeneratorSet gens)
    : Scheme(params), gens_(std::move(gens)) {}

CeRandomScheme CeRandomScheme::sample_verified(const SchemeParams& params, const Seed& seed,
                                               std::size_t max_attempts) {
  auto current = seed;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    auto gens = sample_scheme(params, current);
    if (verify_scheme(gens, params).pass) return CeRandomScheme(params, std::move(gens));
    increment(current);
  }
  throw Error(ErrorCode::SingularSystem,
              "no full-rank generator set in " + std::to_string(max_attempts) + " draws");
}

std::vector<std::uint32_t> CeRandomScheme::supported_d() const {
  std::vector<std::uint32_t> out;
  for (auto d = params().n;; --d) {
    out.push_back(d);
    if (d == params().n - params().r) return out;
  }
}

std::uint32_t CeRandomScheme::effective_d(std::uint32_t available) const {
  const auto floor = params().n - params().r;
  if (available < floor) {
    throw Error(ErrorCode::NotAuthorized,
                std::to_string(available) + " nodes available, need " + std::to_string(floor));
  }
  return std::min(available, params().n);
}

std::size_t CeRandomScheme::extra_rows(std::uint32_t d) const {
  const auto [n, r, z, k, q] = params();
  if (d < n - r || d > n) throw Error(ErrorCode::UnsupportedD, "d=" + std::to_string(d));
  const std::uint64_t numerator = std::uint64_t{gens_.N} * k * (n - d);
  return numerator / (d - z);
}

std::size_t CeRandomScheme::prefix_length(std::uint32_t d) const {
  return std::size_t{gens_.N} * params().k + extra_rows(d);
}

FieldMatrix CeRandomScheme::decoding_matrix(std::span<const std::uint32_t> nodes) const {
  const auto d = static_cast<std::uint32_t>(nodes.size());
  const auto used = prefix_length(d);
  const std::size_t rows = std::size_t{gens_.N} * params().k * params().n +
                           extra_rows(d) * params().z;
  const auto row_idx = iota_indices(0, rows);
  std::vector<std::size_t> cols;
  for (auto v : nodes) cols.push_back(v - 1);
  std::vector<FieldMatrix> blocks;
  blocks.reserve(used);
  for (std::size_t i = 0; i < used; ++i) blocks.push_back(submatrix(gens_.Gs[i], row_idx, cols));
  return hconcat(blocks);
}

std::vector<ShareBundle> CeRandomScheme::encode_with_keys(
    std::span<const FieldElement> message, std::span<const FieldElement> keys) const {
  check_lengths(message, keys);
  std::vector<FieldElement> input(message.begin(), message.end());
  input.insert(input.end(), keys.begin(), keys.end());

  const auto n = params().n;
  std::vector<std::vector<FieldElement>> columns(n);
  for (const auto& g : gens_.Gs) {
    const auto row = vecmul(input, g);
    for (std::uint32_t j = 0; j < n; ++j) columns[j].push_back(row[j]);
  }
  std::vector<ShareBundle> shares;
  shares.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j) shares.push_back(make_bundle(j + 1, std::move(columns[j])));
  return shares;
}

std::vector<FieldElement> CeRandomScheme::decode(std::span<const PreprocessedShare> shares,
                                                 BandwidthLedger* ledger) const {
  const auto d = static_cast<std::uint32_t>(shares.size());
  if (d < params().n - params().r) {
    throw Error(ErrorCode::NotAuthorized, std::to_string(d) + " shares");
  }
  check_preprocessed(shares, d, ledger);
  std::vector<std::uint32_t> nodes;
  for (const auto& s : shares) nodes.push_back(s.node_index);

  std::vector<FieldElement> e;
  const auto used = prefix_length(d);
  for (std::size_t i = 0; i < used; ++i) {
    for (const auto& s : shares) e.push_back(s.symbols[i]);
  }
  auto x = solve_right(decoding_matrix(nodes), e);
  x.resize(message_length());
  return x;
}

VerifyVerdict verify_scheme(const RandomGeneratorSet& gens, const SchemeParams& params,
                            std::size_t exhaustive_limit, std::size_t samples_per_size) {
  const CeRandomScheme scheme(params, gens);
  VerifyVerdict verdict;
  auto check = [&](const std::vector<std::uint32_t>& subset) {
    ++verdict.subsets_checked;
    const auto m = scheme.decoding_matrix(subset);
    if (rank(m) < m.rows()) {
      verdict.pass = false;
      verdict.failing_subsets.push_back(subset);
    }
  };

  const auto n = params.n;
  auto sampler_seed = gens.matrix_seed;
  sampler_seed.back() ^= 0xa5;
  SeededRng sampler(sampler_seed);
  for (auto s = n - params.r; s <= n; ++s) {
    if (binomial(n, s) <= exhaustive_limit) {
      for_each_subset(n, s, check);
      continue;
    }
    for (std::size_t t = 0; t < samples_per_size; ++t) {
      std::vector<std::uint32_t> all(n);
      std::iota(all.begin(), all.end(), 1u);
      // partial Fisher-Yates
      for (std::uint32_t i = 0; i < s; ++i) {
        const auto j = i + static_cast<std::uint32_t>(sampler.below(n - i));
        std::swap(all[i], all[j]);
      }
      all.resize(s);
      std::sort(all.begin(), all.end());
      check(all);
    }
  }
  return verdict;
}

}  // namespace cess
