#include "cess/ce_shamir.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cess/error.hpp"
#include "cess/poly.hpp"

namespace cess {

std::size_t LayoutPlan::tier_of(std::uint32_t d) const {
  const auto it = std::find(D.begin(), D.end(), d);
  if (it == D.end()) throw Error(ErrorCode::UnsupportedD, "d=" + std::to_string(d) + " not in D");
  return static_cast<std::size_t>(it - D.begin());
}

std::size_t LayoutPlan::polys_through(std::size_t tier) const {
  return std::accumulate(p.begin(), p.begin() + static_cast<long>(tier) + 1, std::size_t{0});
}

std::vector<std::size_t> LayoutPlan::key_positions() const {
  std::vector<std::size_t> out(z);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

LayoutPlan plan(std::uint32_t n, std::uint32_t r, std::uint32_t z,
                std::span<const std::uint32_t> D) {
  const auto k = rate_capacity(n, r, z);
  const std::uint32_t min_d = n - r;

  LayoutPlan out;
  out.z = z;
  out.D.assign(D.begin(), D.end());
  std::sort(out.D.begin(), out.D.end(), std::greater<>());
  if (std::adjacent_find(out.D.begin(), out.D.end()) != out.D.end()) {
    throw Error(ErrorCode::InvalidD, "D has repeated values");
  }
  for (auto d : out.D) {
    if (d < min_d || d > n) {
      throw Error(ErrorCode::InvalidD,
                  "d=" + std::to_string(d) + " outside [" + std::to_string(min_d) + ", " +
                      std::to_string(n) + "]");
    }
  }
  if (out.D.empty() || out.D.back() != min_d) {
    throw Error(ErrorCode::MissingMinimalD, "D must contain n - r = " + std::to_string(min_d));
  }

  out.m_len = 1;
  for (auto d : out.D) out.m_len = std::lcm(out.m_len, std::size_t{d - z});
  out.b = out.m_len / k;

  for (std::size_t i = 0; i < out.D.size(); ++i) {
    const auto upto = out.m_len / (out.D[i] - z);
    const auto before = i == 0 ? 0 : out.m_len / (out.D[i - 1] - z);
    out.p.push_back(upto - before);
    for (std::size_t j = 0; j < out.p.back(); ++j) {
      out.poly_tier.push_back(i);
      out.poly_degrees.push_back(out.D[i] - 1);
    }
  }

  const auto polys = out.poly_degrees.size();
  out.coeff_map.resize(polys);
  out.sources.resize(polys);
  for (std::size_t P = 0; P < polys; ++P) {
    const auto len = out.poly_degrees[P] + 1;
    out.coeff_map[P].assign(len, std::nullopt);
    for (std::size_t e = 0; e < z; ++e) {
      out.sources[P].push_back({CoefficientSource::Kind::Key, P * z + e});
    }
  }

  // Tier 0 carries the message in its non-key slots.
  std::size_t next_message = 0;
  for (std::size_t P = 0; P < out.p[0]; ++P) {
    for (std::size_t e = z; e <= out.poly_degrees[P]; ++e) {
      out.sources[P].push_back({CoefficientSource::Kind::Message, next_message++});
    }
  }

  std::size_t first = out.p[0];
  for (std::size_t tier = 1; tier < out.D.size(); ++tier) {
    std::vector<CoefficientRef> carried;
    for (std::size_t P = 0; P < first; ++P) {
      for (std::size_t e = out.D[tier]; e < out.D[tier - 1]; ++e) carried.push_back({P, e});
    }
    const std::size_t slots = out.p[tier] * (out.D[tier] - z);
    if (carried.size() != slots) {
      throw std::logic_error("layout slot count mismatch at tier " + std::to_string(tier));
    }
    std::size_t next = 0;
    for (std::size_t P = first; P < first + out.p[tier]; ++P) {
      for (std::size_t e = z; e <= out.poly_degrees[P]; ++e) {
        const auto ref = carried[next++];
        out.coeff_map[P][e] = ref;
        out.sources[P].push_back(out.sources[ref.poly][ref.degree]);
      }
    }
    first += out.p[tier];
  }
  return out;
}

CeShamirScheme::CeShamirScheme(const SchemeParams& params, std::span<const std::uint32_t> D)
    : Scheme(params), plan_(plan(params.n, params.r, params.z, D)) {}

std::uint32_t CeShamirScheme::effective_d(std::uint32_t available) const {
  for (auto d : plan_.D) {
    if (d <= available) return d;
  }
  throw Error(ErrorCode::NotAuthorized,
              std::to_string(available) + " nodes available, need " +
                  std::to_string(params().n - params().r));
}

std::size_t CeShamirScheme::prefix_length(std::uint32_t d) const {
  return plan_.polys_through(plan_.tier_of(d));
}

std::vector<std::vector<FieldElement>> CeShamirScheme::polynomials(
    std::span<const FieldElement> message, std::span<const FieldElement> keys) const {
  check_lengths(message, keys);
  std::vector<std::vector<FieldElement>> out;
  out.reserve(plan_.b);
  for (const auto& sources : plan_.sources) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(sources.size());
    for (const auto& s : sources) {
      coeffs.push_back(s.kind == CoefficientSource::Kind::Key ? keys[s.index] : message[s.index]);
    }
    out.push_back(std::move(coeffs));
  }
  return out;
}

std::vector<ShareBundle> CeShamirScheme::encode_with_keys(
    std::span<const FieldElement> message, std::span<const FieldElement> keys) const {
  const auto polys = polynomials(message, keys);
  std::vector<DensePolynomial> dense;
  dense.reserve(polys.size());
  for (const auto& c : polys) dense.emplace_back(params().q, c);

  std::vector<ShareBundle> shares;
  shares.reserve(params().n);
  for (std::uint32_t j = 1; j <= params().n; ++j) {
    const auto x = field()(j);
    std::vector<FieldElement> symbols;
    symbols.reserve(dense.size());
    for (const auto& p : dense) symbols.push_back(eval(p, x));
    shares.push_back(make_bundle(j, std::move(symbols)));
  }
  return shares;
}

std::vector<FieldElement> CeShamirScheme::decode(std::span<const PreprocessedShare> shares,
                                                 BandwidthLedger* ledger) const {
  return decode_traced(shares, ledger, nullptr);
}

std::vector<FieldElement> CeShamirScheme::decode_traced(std::span<const PreprocessedShare> shares,
                                                        BandwidthLedger* ledger,
                                                        DecodeTrace* trace) const {
  const auto d = static_cast<std::uint32_t>(shares.size());
  const auto tier = plan_.tier_of(d);
  check_preprocessed(shares, d, ledger);
  const auto z = params().z;

  std::vector<FieldElement> xs;
  for (const auto& s : shares) xs.push_back(field()(s.node_index));
  const LagrangeBasis basis(std::move(xs));

  const auto count = plan_.polys_through(tier);
  std::vector<CoefficientTail> known(count);
  std::vector<std::optional<FieldElement>> message(plan_.m_len);
  std::size_t decoded = 0;
  std::size_t steps = 0;

  // Lowest tier first; each tier supplies the tails of all tiers above it.
  std::size_t end = count;
  for (std::size_t t = tier + 1; t-- > 0;) {
    const auto begin = end - plan_.p[t];
    for (std::size_t P = begin; P < end; ++P) {
      std::vector<FieldElement> ys;
      ys.reserve(d);
      for (const auto& s : shares) ys.push_back(s.symbols[P]);
      const auto coeffs =
          interpolate_with_known_tail(basis, ys, known[P]).padded(plan_.poly_degrees[P] + 1);

      for (std::size_t e = z; e < coeffs.size(); ++e) {
        const auto& src = plan_.sources[P][e];
        auto& slot = message[src.index];
        if (!slot) {
          slot = coeffs[e];
          ++decoded;
        } else if (*slot != coeffs[e]) {
          throw Error(ErrorCode::InconsistentShares,
                      "message symbol " + std::to_string(src.index) + " decoded twice differently");
        }
        if (const auto& ref = plan_.coeff_map[P][e]) known[ref->poly][ref->degree] = coeffs[e];
      }
      ++steps;
      if (decoded != (d - z) * steps) {
        throw std::logic_error("decode order: " + std::to_string(decoded) +
                               " message symbols after " + std::to_string(steps) +
                               " interpolations at d=" + std::to_string(d));
      }
      if (trace != nullptr) {
        trace->interpolated.push_back(P);
        trace->message_symbols_known.push_back(decoded);
      }
    }
    end = begin;
  }

  std::vector<FieldElement> out;
  out.reserve(message.size());
  for (const auto& m : message) {
    if (!m) throw std::logic_error("message symbol left undecoded");
    out.push_back(*m);
  }
  return out;
}

}  // namespace cess
