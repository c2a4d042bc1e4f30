#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cess/rng.hpp"
#include "cess/scheme.hpp"

namespace cess {

/// Exact distribution of an adversary's observation: observed symbol
/// values -> number of key draws producing them.
using ObservationTable = std::map<std::vector<std::uint64_t>, std::uint64_t>;

struct LeakWitness {
  std::vector<std::uint64_t> message_a;
  std::vector<std::uint64_t> message_b;
  ObservationTable table_a;
  ObservationTable table_b;
};

struct SecrecyVerdict {
  std::vector<std::uint32_t> subset;
  bool independent = true;
  std::optional<LeakWitness> witness;
};

enum class SecrecyMethod {
  /// Every (message, key) pair.
  AllMessages,
  /// Every key draw for the zero message and each unit message. For an
  /// F_q-linear encoder each message's table is the zero-message table
  /// translated by the message's keyless observation; translations fixing a
  /// table form a group, and unit messages generate F_q^len, so equality on
  /// the generators is equality for all messages.
  GeneratingMessages,
};

struct SecrecyResult {
  SecrecyMethod method = SecrecyMethod::AllMessages;
  std::uint64_t states = 0;
  std::vector<SecrecyVerdict> verdicts;
};

struct ReliabilityVerdict {
  std::uint32_t d = 0;
  std::vector<std::uint32_t> subset;
  bool ok = false;
  std::string error;
  BandwidthLedger ledger;
};

struct BandwidthRow {
  std::uint32_t d = 0;
  std::uint64_t measured = 0;     // F_q symbols downloaded
  std::uint64_t disk_reads = 0;   // F_q symbols read from stored shares
  Rational bound;                 // F_q symbols
  Rational overhead;              // measured, share-alphabet units
  Rational overhead_bound;        // kz/(d-z)
  bool tight = false;
};

inline constexpr std::uint64_t kDefaultSecrecyBudget = 10'000'000;

/// For every z-subset, tabulates the observation distribution over all key
/// draws per message and requires identical tables. Throws BudgetExceeded
/// when neither method fits in `budget` encodings.
SecrecyResult secrecy_exhaustive(const Scheme& scheme,
                                 std::uint64_t budget = kDefaultSecrecyBudget);

/// Decodes `message` from every subset of size d for each supported d and
/// for n - r.
std::vector<ReliabilityVerdict> reliability_exhaustive(const Scheme& scheme,
                                                       std::span<const FieldElement> message,
                                                       FieldRng& rng,
                                                       std::uint64_t subset_limit = 100'000);

std::vector<BandwidthRow> bandwidth_audit(const Scheme& scheme,
                                          std::span<const FieldElement> message, FieldRng& rng);

struct AuditReport {
  SchemeId scheme_id = SchemeId::CeShamir;
  SchemeParams params;
  std::optional<SecrecyResult> secrecy;  // empty when skipped for budget
  std::string secrecy_skipped_reason;
  std::vector<ReliabilityVerdict> reliability;
  std::vector<BandwidthRow> bandwidth;

  bool passed() const;
  std::string render_table() const;
  /// One `key=value` line per verdict.
  std::string render_structured() const;
};

struct AuditOptions {
  std::uint64_t budget = kDefaultSecrecyBudget;
  /// Skip secrecy (recording why) instead of failing when over budget.
  bool skip_secrecy_over_budget = true;
};

AuditReport run_audit(const Scheme& scheme, FieldRng& rng, const AuditOptions& options = {});

/// Test fixture: wraps a scheme and forces every key to zero.
class KeylessScheme final : public Scheme {
 public:
  explicit KeylessScheme(const Scheme& inner);

  SchemeId id() const override { return inner_.id(); }
  SchemeMeta meta() const override { return inner_.meta(); }
  std::size_t message_length() const override { return inner_.message_length(); }
  std::size_t key_count() const override { return 0; }
  std::size_t share_width() const override { return inner_.share_width(); }
  std::vector<std::uint32_t> supported_d() const override { return inner_.supported_d(); }
  std::uint32_t effective_d(std::uint32_t available) const override {
    return inner_.effective_d(available);
  }
  std::size_t prefix_length(std::uint32_t d) const override { return inner_.prefix_length(d); }
  std::vector<ShareBundle> encode_with_keys(std::span<const FieldElement> message,
                                            std::span<const FieldElement> keys) const override;
  std::vector<FieldElement> decode(std::span<const PreprocessedShare> shares,
                                   BandwidthLedger* ledger = nullptr) const override {
    return inner_.decode(shares, ledger);
  }

 private:
  const Scheme& inner_;
};

}  // namespace cess
