// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "cess/audit.hpp"
#include "cess/ce_random.hpp"
#include "cess/ce_rs.hpp"
#include "cess/ce_shamir.hpp"
#include "cess/cli.hpp"
#include "cess/error.hpp"
#include "cess/share_file.hpp"

namespace {

using namespace cess;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string str(const Rational& r) {
  std::ostringstream s;
  s << r.numerator();
  if (r.denominator() != 1) s << "/" << r.denominator();
  return s.str();
}

std::string join(const std::vector<std::uint32_t>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "}";
}

std::vector<PreprocessedShare> prep(const Scheme& s, const std::vector<ShareBundle>& shares,
                                    const std::vector<std::uint32_t>& nodes,
                                    BandwidthLedger* ledger) {
  const auto d = static_cast<std::uint32_t>(nodes.size());
  std::vector<PreprocessedShare> out;
  for (auto j : nodes) out.push_back(s.preprocess(shares.at(j - 1), d, ledger));
  return out;
}

const std::vector<std::uint32_t> kLadderD{3, 4, 7};

CeShamirScheme ladder_741() { return {SchemeParams::make(7, 4, 1, 11), kLadderD}; }

// The small instances used by criteria 3 to 5.
std::vector<std::unique_ptr<Scheme>> test_instances() {
  std::vector<std::unique_ptr<Scheme>> out;
  const std::vector<std::uint32_t> d23{2, 3};
  out.push_back(std::make_unique<CeShamirScheme>(SchemeParams::make(3, 1, 1, 5), d23));
  out.push_back(std::make_unique<CeShamirScheme>(ladder_741()));
  const std::vector<std::uint32_t> d35{3, 5};
  out.push_back(std::make_unique<CeShamirScheme>(SchemeParams::make(5, 2, 2, 7), d35));
  out.push_back(std::make_unique<CeRsScheme>(SchemeParams::make(3, 1, 1, 7)));
  out.push_back(std::make_unique<CeRsScheme>(SchemeParams::make(5, 2, 1, 31), 2));
  out.push_back(std::make_unique<CeRandomScheme>(
      CeRandomScheme::sample_verified(SchemeParams::make(3, 1, 1, 13), seed_from_u64(1))));
  out.push_back(std::make_unique<CeRandomScheme>(
      CeRandomScheme::sample_verified(SchemeParams::make(4, 1, 1, 73), seed_from_u64(1))));
  return out;
}

std::string label(const Scheme& s) {
  const auto& p = s.params();
  return std::string(to_string(s.id())) + "(" + std::to_string(p.n) + "," + std::to_string(p.r) +
         "," + std::to_string(p.z) + ",q=" + std::to_string(p.q) + ")";
}

Outcome ladder_bandwidth() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto scheme = ladder_741();
  auto rng = SeededRng::from_u64(1);
  const auto message = rng.uniform_vector(scheme.field(), 6);
  const auto shares = scheme.encode(message, rng);
  const std::map<std::uint32_t, std::uint64_t> expected{{7, 7}, {4, 8}, {3, 9}};
  std::ostringstream got;
  for (const auto& [d, symbols] : expected) {
    std::vector<std::uint32_t> nodes;
    for (std::uint32_t j = 1; j <= d; ++j) nodes.push_back(j);
    BandwidthLedger ledger;
    const auto decoded = scheme.decode(prep(scheme, shares, nodes, &ledger), &ledger);
    o.require(decoded == message, "decode mismatch at d=" + std::to_string(d));
    o.require(ledger.symbols_downloaded == symbols,
              "d=" + std::to_string(d) + " downloaded " + std::to_string(ledger.symbols_downloaded));
    o.require(Rational(static_cast<std::int64_t>(d) * 6, d - 1) == Rational(symbols),
              "d*6/(d-z) mismatch at d=" + std::to_string(d));
    got << " d=" << d << ":" << ledger.symbols_downloaded;
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  o.require(elapsed.count() < 1.0, "took " + std::to_string(elapsed.count()) + " s");
  if (o.pass) o.detail = got.str().substr(1);
  return o;
}

Outcome rs311_generator() {
  Outcome o;
  const auto g = build_generator(SchemeParams::make(3, 1, 1, 7));
  const auto t4 = values_of(std::vector<FieldElement>(g.T.row(3).begin(), g.T.row(3).end()));
  const auto g4 = values_of(std::vector<FieldElement>(g.G.row(3).begin(), g.G.row(3).end()));
  o.require(t4 == std::vector<std::uint64_t>{1, 4, 1, 1}, "T row 4 differs");
  o.require(g4 == std::vector<std::uint64_t>{0, 0, 0, 6, 3, 4}, "G row 4 differs");
  if (o.pass) o.detail = "T4=(1,4,1,1) G4=(0,0,0,6,3,4)";
  return o;
}

Outcome lower_bound_tightness() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& scheme : test_instances()) {
    const auto& p = scheme->params();
    auto rng = SeededRng::from_u64(3);
    const auto message = rng.uniform_vector(scheme->field(), scheme->message_length());
    const auto shares = scheme->encode(message, rng);
    for (auto d : scheme->supported_d()) {
      for_each_subset(p.n, d, [&](const std::vector<std::uint32_t>& nodes) {
        BandwidthLedger ledger;
        const auto decoded = scheme->decode(prep(*scheme, shares, nodes, &ledger), &ledger);
        const auto co = scheme->measured_overhead(ledger.symbols_downloaded);
        const auto bound = co_lower_bound(p.k, p.z, d);
        o.require(decoded == message, label(*scheme) + " decode mismatch " + join(nodes));
        o.require(co == bound, label(*scheme) + " d=" + std::to_string(d) + " CO " + str(co) +
                                   " vs bound " + str(bound));
        ++checks;
      });
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " subset decodes at the bound";
  return o;
}

Outcome exhaustive_secrecy() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::unique_ptr<Scheme>> schemes;
  schemes.push_back(std::make_unique<CeRsScheme>(SchemeParams::make(3, 1, 1, 7)));
  const std::vector<std::uint32_t> d23{2, 3};
  schemes.push_back(std::make_unique<CeShamirScheme>(SchemeParams::make(3, 1, 1, 5), d23));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    schemes.push_back(std::make_unique<CeRandomScheme>(
        CeRandomScheme::sample_verified(SchemeParams::make(3, 1, 1, 13), seed_from_u64(seed))));
  }
  std::uint64_t states = 0;
  for (const auto& s : schemes) {
    const auto result = secrecy_exhaustive(*s);
    states += result.states * result.verdicts.size();
    for (const auto& v : result.verdicts) {
      o.require(v.independent, label(*s) + " LEAK at " + join(v.subset));
    }
  }
  // the check must be able to fail
  const CeRsScheme rs(SchemeParams::make(3, 1, 1, 7));
  const KeylessScheme broken(rs);
  for (const auto& v : secrecy_exhaustive(broken).verdicts) {
    o.require(!v.independent, "keyless fixture not flagged");
  }
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  o.require(elapsed.count() < 60.0, "took " + std::to_string(elapsed.count()) + " s");
  if (o.pass) {
    o.detail = std::to_string(schemes.size()) + " instances, " + std::to_string(states) +
               " tabulated observations, " + std::to_string(elapsed.count()).substr(0, 4) + " s";
  }
  return o;
}

Outcome exhaustive_reliability() {
  Outcome o;
  std::vector<std::unique_ptr<Scheme>> schemes;
  schemes.push_back(std::make_unique<CeRsScheme>(SchemeParams::make(3, 1, 1, 7)));
  const std::vector<std::uint32_t> d23{2, 3};
  schemes.push_back(std::make_unique<CeShamirScheme>(SchemeParams::make(3, 1, 1, 5), d23));
  schemes.push_back(std::make_unique<CeRandomScheme>(
      CeRandomScheme::sample_verified(SchemeParams::make(3, 1, 1, 13), seed_from_u64(1))));
  schemes.push_back(std::make_unique<CeShamirScheme>(ladder_741()));
  std::size_t total = 0;
  std::map<std::uint32_t, std::size_t> ladder_counts;
  for (const auto& s : schemes) {
    auto rng = SeededRng::from_u64(5);
    const auto message = rng.uniform_vector(s->field(), s->message_length());
    for (const auto& v : reliability_exhaustive(*s, message, rng)) {
      o.require(v.ok, label(*s) + " " + join(v.subset) + ": " + v.error);
      ++total;
      if (s.get() == schemes.back().get()) ++ladder_counts[v.d];
    }
  }
  o.require(ladder_counts == std::map<std::uint32_t, std::size_t>{{3, 35}, {4, 35}, {7, 1}},
            "(7,4,1) subset counts differ");
  if (o.pass) o.detail = std::to_string(total) + " subsets, (7,4,1): 35+35+1";
  return o;
}

Outcome erasure_strength() {
  Outcome o;
  const CeRsScheme scheme(SchemeParams::make(3, 1, 1, 7));
  auto rng = SeededRng::from_u64(6);
  const auto message = rng.uniform_vector(scheme.field(), 2);
  const auto keys = rng.uniform_vector(scheme.field(), 2);
  const auto c = scheme.codeword(message, keys);
  std::size_t patterns = 0, spanning = 0;
  for (std::size_t a = 0; a < c.size(); ++a) {
    for (std::size_t b = a + 1; b < c.size(); ++b) {
      std::vector<std::pair<std::size_t, FieldElement>> kept;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i != a && i != b) kept.emplace_back(i, c[i]);
      }
      // flat position i*n + (j-1) belongs to node j
      if (a % 3 != b % 3) ++spanning;
      try {
        o.require(scheme.decode_erasures(kept) == message, "wrong decode for erasures");
      } catch (const Error& e) {
        o.require(false, "erasures at " + std::to_string(a) + "," + std::to_string(b) + ": " +
                             e.what());
      }
      ++patterns;
    }
  }
  o.require(patterns == 15, "pattern count " + std::to_string(patterns));
  if (o.pass) {
    o.detail = "15/15 patterns, " + std::to_string(spanning) + " spanning two nodes";
  }
  return o;
}

Outcome singularity_rate() {
  Outcome o;
  const auto params = SchemeParams::make(3, 1, 1, 13);
  constexpr std::size_t kSeeds = 1000;
  std::map<std::vector<std::uint32_t>, std::size_t> failures;
  for (std::uint32_t d = 2; d <= 3; ++d) {
    for_each_subset(3, d, [&](const std::vector<std::uint32_t>& s) { failures[s] = 0; });
  }
  for (std::size_t s = 0; s < kSeeds; ++s) {
    const auto gens = sample_scheme(params, seed_from_u64(1'000'000 + s));
    for (const auto& bad : verify_scheme(gens, params).failing_subsets) ++failures[bad];
  }
  const double p = 1.0 / 12.0;
  const double limit = p + 3.0 * std::sqrt(p * (1 - p) / kSeeds);
  std::ostringstream detail;
  double worst = 0;
  for (const auto& [subset, count] : failures) {
    const double rate = static_cast<double>(count) / kSeeds;
    worst = std::max(worst, rate);
    o.require(rate <= limit, join(subset) + " fails at rate " + std::to_string(rate));
  }
  detail << kSeeds << " seeds, worst subset rate " << worst << " <= " << limit;
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome decode_order() {
  Outcome o;
  std::vector<CeShamirScheme> schemes{ladder_741()};
  const std::vector<std::uint32_t> d35{3, 5};
  schemes.emplace_back(SchemeParams::make(5, 2, 2, 7), d35);
  const std::vector<std::uint32_t> ladder{4, 5, 7, 9};
  schemes.emplace_back(SchemeParams::make(9, 5, 1, 101), ladder);
  std::size_t traces = 0;
  for (const auto& scheme : schemes) {
    const auto& p = scheme.params();
    auto rng = SeededRng::from_u64(8);
    const auto message = rng.uniform_vector(scheme.field(), scheme.message_length());
    const auto shares = scheme.encode(message, rng);
    for (auto d : scheme.supported_d()) {
      for_each_subset(p.n, d, [&](const std::vector<std::uint32_t>& nodes) {
        DecodeTrace trace;
        const auto decoded = scheme.decode_traced(prep(scheme, shares, nodes, nullptr), nullptr,
                                                  &trace);
        o.require(decoded == message, label(scheme) + " decode mismatch");
        for (std::size_t i = 0; i < trace.message_symbols_known.size(); ++i) {
          o.require(trace.message_symbols_known[i] == (d - p.z) * (i + 1),
                    label(scheme) + " d=" + std::to_string(d) + " after step " +
                        std::to_string(i + 1) + ": " +
                        std::to_string(trace.message_symbols_known[i]));
        }
        ++traces;
      });
    }
  }
  if (o.pass) o.detail = std::to_string(traces) + " traced decodes, (d-z)*i after step i";
  return o;
}

Outcome cli_round_trip(std::uint64_t& audited_decodes, bool& disk_identity) {
  Outcome o;
  const auto root = fs::temp_directory_path() / ("cess_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  auto rng = SeededRng::from_u64(9);
  std::size_t reconstructions = 0;
  struct Case {
    SchemeId id;
    std::uint32_t n, r, z;
    std::optional<std::uint64_t> q;
    std::vector<std::uint32_t> D;
    bool bytes;
  };
  const std::vector<Case> cases{
      {SchemeId::CeShamir, 7, 4, 1, 11, {3, 4, 7}, false},
      {SchemeId::CeShamir, 5, 2, 1, std::nullopt, {}, true},
      {SchemeId::CeRs, 3, 1, 1, 7, {}, false},
      {SchemeId::CeRs, 5, 2, 1, std::nullopt, {}, true},
      {SchemeId::CeRandom, 3, 1, 1, 13, {}, false},
      {SchemeId::CeRandom, 4, 1, 1, std::nullopt, {}, true},
  };
  std::size_t index = 0;
  for (const auto& c : cases) {
    cli::SchemeOptions opts;
    opts.scheme = c.id;
    opts.n = c.n;
    opts.r = c.r;
    opts.z = c.z;
    opts.q = c.q;
    opts.D = c.D;
    opts.seed = 100 + index;
    const auto dir = root / std::to_string(index++);
    cli::Secret secret;
    secret.byte_mode = c.bytes;
    const auto len = 1 + rng.below(200);
    const auto bound = c.bytes ? 256 : *c.q;
    for (std::uint64_t i = 0; i < len; ++i) secret.symbols.push_back(rng.below(bound));
    const auto files = cli::split(secret, opts, dir).files;
    for (const auto& f : files) {
      const auto parsed = read_share_file(f);
      o.require(parse_header(serialize_header(parsed.header)) == parsed.header,
                "header does not re-parse: " + f.string());
    }
    for (std::uint32_t d = c.n - c.r; d <= c.n; ++d) {
      for_each_subset(c.n, d, [&](const std::vector<std::uint32_t>& nodes) {
        std::vector<fs::path> chosen;
        for (auto j : nodes) chosen.push_back(files[j - 1]);
        const auto result = cli::reconstruct(chosen);
        o.require(result.secret.symbols == secret.symbols,
                  "round trip differs for " + dir.string() + " " + join(nodes));
        ++audited_decodes;
        disk_identity = disk_identity &&
                        result.ledger.symbols_downloaded == result.ledger.symbols_read_from_disk;
        ++reconstructions;
      });
    }
  }
  fs::remove_all(root);
  if (o.pass) {
    o.detail = std::to_string(cases.size()) + " splits, " + std::to_string(reconstructions) +
               " reconstructions byte-identical";
  }
  return o;
}

Outcome disk_access_identity(std::uint64_t cli_decodes, bool cli_identity) {
  Outcome o;
  std::uint64_t decodes = cli_decodes;
  o.require(cli_identity, "CLI reconstruction read more or less than it downloaded");
  for (const auto& scheme : test_instances()) {
    auto rng = SeededRng::from_u64(10);
    const auto report = run_audit(*scheme, rng);
    for (const auto& v : report.reliability) {
      o.require(v.ledger.symbols_downloaded == v.ledger.symbols_read_from_disk,
                label(*scheme) + " " + join(v.subset) + " read " +
                    std::to_string(v.ledger.symbols_read_from_disk) + ", downloaded " +
                    std::to_string(v.ledger.symbols_downloaded));
      ++decodes;
    }
    for (const auto& row : report.bandwidth) {
      o.require(row.measured == row.disk_reads, label(*scheme) + " bandwidth row");
      ++decodes;
    }
  }
  if (o.pass) o.detail = std::to_string(decodes) + " audited decodes, reads == downloads";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << n << ". " << name << ": " << o.detail
              << std::endl;
  };

  std::uint64_t cli_decodes = 0;
  bool cli_identity = true;
  report(1, "(7,4,1) ladder bandwidth", ladder_bandwidth);
  report(2, "(3,1,1) RS generator", rs311_generator);
  report(3, "lower-bound tightness", lower_bound_tightness);
  report(4, "exhaustive secrecy", exhaustive_secrecy);
  report(5, "exhaustive reliability", exhaustive_reliability);
  report(6, "RS erasure strength", erasure_strength);
  report(7, "ce-random singularity rate", singularity_rate);
  report(8, "on-the-fly decode order", decode_order);
  report(9, "CLI round-trip", [&] { return cli_round_trip(cli_decodes, cli_identity); });
  report(10, "disk-access identity",
         [&] { return disk_access_identity(cli_decodes, cli_identity); });
  return failures;
}
