#include "cess/audit.hpp"

#include <algorithm>
#include <limits>
#include <iomanip>
#include <sstream>
#include <string>

#include "cess/error.hpp"

namespace cess {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

// Odometer over F_q^len; returns false after the last vector.
bool advance(std::vector<FieldElement>& v) {
  for (auto& x : v) {
    if (x.value + 1 < x.modulus) {
      ++x.value;
      return true;
    }
    x.value = 0;
  }
  return false;
}

std::vector<std::vector<std::uint32_t>> all_subsets(std::uint32_t n, std::uint32_t s) {
  std::vector<std::vector<std::uint32_t>> out;
  for_each_subset(n, s, [&](const std::vector<std::uint32_t>& subset) { out.push_back(subset); });
  return out;
}

std::vector<std::uint64_t> observe(const std::vector<ShareBundle>& shares,
                                   const std::vector<std::uint32_t>& subset) {
  std::vector<std::uint64_t> out;
  for (auto node : subset) {
    for (const auto& x : shares[node - 1].symbols) out.push_back(x.value);
  }
  return out;
}

// Observation tables of every subset for one message, over all key draws.
std::vector<ObservationTable> tabulate(const Scheme& scheme,
                                       const std::vector<FieldElement>& message,
                                       const std::vector<std::vector<std::uint32_t>>& subsets) {
  std::vector<ObservationTable> tables(subsets.size());
  std::vector<FieldElement> keys(scheme.key_count(), scheme.field().zero());
  do {
    const auto shares = scheme.encode_with_keys(message, keys);
    for (std::size_t s = 0; s < subsets.size(); ++s) ++tables[s][observe(shares, subsets[s])];
  } while (advance(keys));
  return tables;
}

std::string join(const std::vector<std::uint32_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(xs[i]);
  }
  return out.empty() ? "-" : out;
}

std::string join64(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

SecrecyResult secrecy_exhaustive(const Scheme& scheme, std::uint64_t budget) {
  const auto q = scheme.params().q;
  const auto msg_len = scheme.message_length();
  const auto key_states = saturating_pow(q, scheme.key_count());
  const auto all_states = saturating_mul(saturating_pow(q, msg_len), key_states);
  const auto generator_states = saturating_mul(msg_len + 1, key_states);

  SecrecyResult result;
  if (all_states <= budget) {
    result.method = SecrecyMethod::AllMessages;
    result.states = all_states;
  } else if (generator_states <= budget) {
    result.method = SecrecyMethod::GeneratingMessages;
    result.states = generator_states;
  } else {
    throw Error(ErrorCode::BudgetExceeded,
                "secrecy enumeration needs " + std::to_string(generator_states) +
                    " encodings, budget " + std::to_string(budget));
  }

  const auto subsets = all_subsets(scheme.params().n, scheme.params().z);
  std::vector<FieldElement> zero(msg_len, scheme.field().zero());
  const auto reference = tabulate(scheme, zero, subsets);
  for (const auto& s : subsets) result.verdicts.push_back({s, true, std::nullopt});

  auto compare = [&](const std::vector<FieldElement>& message) {
    const auto tables = tabulate(scheme, message, subsets);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      auto& verdict = result.verdicts[s];
      if (tables[s] == reference[s] || !verdict.independent) continue;
      verdict.independent = false;
      verdict.witness = LeakWitness{values_of(zero), values_of(message), reference[s], tables[s]};
    }
  };

  if (result.method == SecrecyMethod::AllMessages) {
    auto message = zero;
    while (advance(message)) compare(message);
  } else {
    for (std::size_t i = 0; i < msg_len; ++i) {
      auto message = zero;
      message[i] = scheme.field().one();
      compare(message);
    }
  }
  return result;
}

std::vector<ReliabilityVerdict> reliability_exhaustive(const Scheme& scheme,
                                                       std::span<const FieldElement> message,
                                                       FieldRng& rng,
                                                       std::uint64_t subset_limit) {
  const auto& params = scheme.params();
  auto sizes = scheme.supported_d();
  sizes.push_back(params.n - params.r);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  std::uint64_t total = 0;
  for (auto d : sizes) total += binomial(params.n, d);
  if (total > subset_limit) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(total) + " subsets exceed limit " + std::to_string(subset_limit));
  }

  const auto shares = scheme.encode(message, rng);
  std::vector<ReliabilityVerdict> out;
  for (auto d : sizes) {
    for_each_subset(params.n, d, [&](const std::vector<std::uint32_t>& subset) {
      ReliabilityVerdict v;
      v.d = d;
      v.subset = subset;
      std::vector<ShareBundle> available;
      for (auto node : subset) available.push_back(shares[node - 1]);
      try {
        const auto decoded = scheme.reconstruct(available, &v.ledger);
        v.ok = std::equal(decoded.begin(), decoded.end(), message.begin(), message.end());
        if (!v.ok) v.error = "decoded message differs";
      } catch (const Error& e) {
        v.error = e.what();
      }
      out.push_back(std::move(v));
    });
  }
  return out;
}

std::vector<BandwidthRow> bandwidth_audit(const Scheme& scheme,
                                          std::span<const FieldElement> message, FieldRng& rng) {
  const auto& params = scheme.params();
  const auto shares = scheme.encode(message, rng);
  std::vector<BandwidthRow> rows;
  for (auto d : scheme.supported_d()) {
    BandwidthLedger ledger;
    const std::span<const ShareBundle> available(shares.data(), d);
    const auto decoded = scheme.reconstruct(available, &ledger);
    if (!std::equal(decoded.begin(), decoded.end(), message.begin(), message.end())) {
      throw Error(ErrorCode::InconsistentShares, "bandwidth audit decode mismatch at d=" +
                                                     std::to_string(d));
    }
    BandwidthRow row;
    row.d = d;
    row.measured = ledger.symbols_downloaded;
    row.disk_reads = ledger.symbols_read_from_disk;
    row.bound = scheme.bandwidth_bound_symbols(d);
    row.overhead = scheme.measured_overhead(ledger.symbols_downloaded);
    row.overhead_bound = co_lower_bound(params.k, params.z, d);
    row.tight = Rational(static_cast<std::int64_t>(row.measured)) == row.bound &&
                row.overhead == row.overhead_bound;
    rows.push_back(row);
  }
  return rows;
}

bool AuditReport::passed() const {
  if (secrecy) {
    for (const auto& v : secrecy->verdicts) {
      if (!v.independent) return false;
    }
  }
  for (const auto& v : reliability) {
    if (!v.ok || v.ledger.symbols_downloaded != v.ledger.symbols_read_from_disk) return false;
  }
  for (const auto& row : bandwidth) {
    if (!row.tight || row.measured != row.disk_reads) return false;
  }
  return true;
}

std::string AuditReport::render_table() const {
  std::ostringstream out;
  out << "audit " << to_string(scheme_id) << " n=" << params.n << " r=" << params.r
      << " z=" << params.z << " k=" << params.k << " q=" << params.q << "\n\n";

  out << "secrecy (" << params.z << "-subsets)\n";
  if (!secrecy) {
    out << "  skipped: " << secrecy_skipped_reason << "\n";
  } else {
    out << "  method: "
        << (secrecy->method == SecrecyMethod::AllMessages ? "all messages" : "generating messages")
        << ", " << secrecy->states << " encodings\n";
    for (const auto& v : secrecy->verdicts) {
      out << "  {" << join(v.subset) << "}  " << (v.independent ? "independent" : "LEAK") << "\n";
    }
  }

  std::size_t ok = 0;
  for (const auto& v : reliability) ok += v.ok ? 1 : 0;
  out << "\nreliability: " << ok << "/" << reliability.size() << " subsets decoded\n";
  for (const auto& v : reliability) {
    if (!v.ok) out << "  FAIL d=" << v.d << " {" << join(v.subset) << "}: " << v.error << "\n";
  }

  out << "\nbandwidth\n";
  out << "     d  measured  disk  bound  overhead  overhead_bound  tight\n";
  for (const auto& row : bandwidth) {
    out << std::setw(6) << row.d << std::setw(10) << row.measured << std::setw(6)
        << row.disk_reads << std::setw(7) << rational(row.bound) << std::setw(10)
        << rational(row.overhead) << std::setw(16) << rational(row.overhead_bound) << std::setw(7)
        << (row.tight ? "yes" : "no") << "\n";
  }
  out << "\n" << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string AuditReport::render_structured() const {
  std::ostringstream out;
  out << "scheme=" << to_string(scheme_id) << " n=" << params.n << " r=" << params.r
      << " z=" << params.z << " k=" << params.k << " q=" << params.q << "\n";
  if (!secrecy) {
    out << "secrecy verdict=skipped reason=\"" << secrecy_skipped_reason << "\"\n";
  } else {
    for (const auto& v : secrecy->verdicts) {
      out << "secrecy subset=" << join(v.subset)
          << " verdict=" << (v.independent ? "independent" : "LEAK");
      if (v.witness) {
        out << " message_a=" << join64(v.witness->message_a)
            << " message_b=" << join64(v.witness->message_b);
        out << " table_a_support=" << v.witness->table_a.size()
            << " table_b_support=" << v.witness->table_b.size();
      }
      out << "\n";
    }
  }
  for (const auto& v : reliability) {
    out << "reliability d=" << v.d << " subset=" << join(v.subset)
        << " verdict=" << (v.ok ? "ok" : "fail") << " downloaded=" << v.ledger.symbols_downloaded
        << " read=" << v.ledger.symbols_read_from_disk << "\n";
  }
  for (const auto& row : bandwidth) {
    out << "bandwidth d=" << row.d << " measured=" << row.measured << " read=" << row.disk_reads
        << " bound=" << rational(row.bound) << " overhead=" << rational(row.overhead)
        << " overhead_bound=" << rational(row.overhead_bound)
        << " tight=" << (row.tight ? "true" : "false") << "\n";
  }
  out << "result=" << (passed() ? "pass" : "fail") << "\n";
  return out.str();
}

AuditReport run_audit(const Scheme& scheme, FieldRng& rng, const AuditOptions& options) {
  AuditReport report;
  report.scheme_id = scheme.id();
  report.params = scheme.params();
  try {
    report.secrecy = secrecy_exhaustive(scheme, options.budget);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded || !options.skip_secrecy_over_budget) throw;
    report.secrecy_skipped_reason = e.what();
  }
  const auto message = rng.uniform_vector(scheme.field(), scheme.message_length());
  report.reliability = reliability_exhaustive(scheme, message, rng);
  report.bandwidth = bandwidth_audit(scheme, message, rng);
  return report;
}

KeylessScheme::KeylessScheme(const Scheme& inner) : Scheme(inner.params()), inner_(inner) {}

std::vector<ShareBundle> KeylessScheme::encode_with_keys(
    std::span<const FieldElement> message, std::span<const FieldElement> keys) const {
  check_lengths(message, keys);
  const std::vector<FieldElement> zeros(inner_.key_count(), field().zero());
  return inner_.encode_with_keys(message, zeros);
}

}  // namespace cess
