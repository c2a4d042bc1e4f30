// cess: split a secret into share files and reconstruct it with minimal
// download, plus bound tables, audits and benchmarks.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "cess/audit.hpp"
#include "cess/cli.hpp"
#include "cess/error.hpp"

namespace {

using cess::cli::SchemeOptions;

std::vector<std::uint32_t> parse_range(const std::string& text) {
  // "3..7" or "3,4,7"
  std::vector<std::uint32_t> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = std::stoul(text.substr(0, dots));
    const auto hi = std::stoul(text.substr(dots + 2));
    for (auto d = lo; d <= hi; ++d) out.push_back(static_cast<std::uint32_t>(d));
    return out;
  }
  for (auto v : cess::cli::parse_symbol_list(text)) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct SchemeFlags {
  std::string scheme = "ce-shamir";
  std::uint32_t n = 0, r = 0, z = 0;
  std::uint64_t q = 0;
  std::string D;
  std::uint32_t beta = 1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--scheme", scheme, "ce-shamir | ce-rs | ce-random")
        ->check(CLI::IsMember({"ce-shamir", "ce-rs", "ce-random"}));
    app->add_option("-n", n, "number of nodes")->required();
    app->add_option("-r", r, "tolerated unavailable nodes")->required();
    app->add_option("-z", z, "tolerated colluding nodes")->required();
    app->add_option("-q", q, "field modulus (prime); default: smallest that works");
    app->add_option("-D", D, "ce-shamir decoding sizes, e.g. 3,4,7");
    app->add_option("--beta", beta, "ce-rs block divisor of gcd(k, r)");
    seed_opt = app->add_option("--seed", seed, "reproducible randomness");
  }

  SchemeOptions options() const {
    SchemeOptions o;
    o.scheme = cess::scheme_id_from_string(scheme);
    o.n = n;
    o.r = r;
    o.z = z;
    if (q != 0) o.q = q;
    if (!D.empty()) o.D = parse_range(D);
    o.beta = beta;
    if (*seed_opt) o.seed = seed;
    o.seed = cess::cli::effective_seed(o.seed);
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Communication-efficient threshold secret sharing"};
  app.require_subcommand(1);

  // split
  auto* split = app.add_subcommand("split", "split a secret into n share files");
  SchemeFlags split_flags;
  split_flags.attach(split);
  std::string in_path = "-";
  std::string symbols;
  std::string out_dir = ".";
  std::string prefix = "share";
  split->add_option("--in", in_path, "secret file, - for stdin");
  split->add_option("--symbols", symbols, "secret as field symbols, e.g. \"1 2 3\"");
  split->add_option("--out", out_dir, "output directory");
  split->add_option("--prefix", prefix, "share file name prefix");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "recover the secret from share files");
  std::vector<std::string> files;
  std::uint32_t d_hint = 0;
  std::string rec_out = "-";
  rec->add_option("files", files, "share files")->required();
  rec->add_option("--d", d_hint, "use at most this many files");
  rec->add_option("--out", rec_out, "output file, - for stdout");

  // bound
  auto* bound = app.add_subcommand("bound", "print the bandwidth lower bound");
  std::uint32_t bn = 0, br = 0, bz = 0;
  std::string brange;
  bound->add_option("-n", bn)->required();
  bound->add_option("-r", br)->required();
  bound->add_option("-z", bz)->required();
  bound->add_option("--d", brange, "d values: 3..7 or 3,4,7; default n-r..n");

  // audit
  auto* audit = app.add_subcommand("audit", "exhaustive secrecy, reliability and bandwidth checks");
  SchemeFlags audit_flags;
  audit_flags.attach(audit);
  std::uint64_t budget = cess::kDefaultSecrecyBudget;
  bool structured = false;
  bool broken = false;
  audit->add_option("--budget", budget, "max encodings for the secrecy enumeration");
  audit->add_flag("--structured", structured, "key=value output");
  audit->add_flag("--broken", broken, "audit a copy with all keys forced to zero");

  // bench
  auto* bench = app.add_subcommand("bench", "per-d bandwidth and timing");
  SchemeFlags bench_flags;
  bench_flags.attach(bench);
  std::size_t reps = 100;
  bench->add_option("--reps", reps, "repetitions per d");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*split) {
      const auto options = split_flags.options();
      cess::cli::Secret secret;
      if (!symbols.empty()) {
        secret.byte_mode = false;
        secret.symbols = cess::cli::parse_symbol_list(symbols);
      } else {
        std::string bytes;
        if (in_path == "-") {
          bytes = read_all(std::cin);
        } else {
          std::ifstream in(in_path, std::ios::binary);
          if (!in) throw cess::Error(cess::ErrorCode::IoError, "cannot open " + in_path);
          bytes = read_all(in);
        }
        for (unsigned char c : bytes) secret.symbols.push_back(c);
      }
      const auto result = cess::cli::split(secret, options, out_dir, prefix);
      std::cout << result.bandwidth_table;
      std::cout << "wrote " << result.files.size() << " share files (" << result.blocks
                << " block" << (result.blocks == 1 ? "" : "s") << ")\n";
      for (const auto& f : result.files) std::cout << "  " << f.string() << "\n";
    } else if (*rec) {
      std::vector<std::filesystem::path> paths(files.begin(), files.end());
      std::optional<std::uint32_t> hint;
      if (d_hint != 0) hint = d_hint;
      const auto result = cess::cli::reconstruct(paths, hint);
      std::string out;
      if (result.secret.byte_mode) {
        out.assign(result.secret.symbols.begin(), result.secret.symbols.end());
      } else {
        out = cess::cli::format_symbol_list(result.secret.symbols) + "\n";
      }
      if (rec_out == "-") {
        std::cout << out;
      } else {
        std::ofstream f(rec_out, std::ios::binary);
        f << out;
        if (!f) throw cess::Error(cess::ErrorCode::IoError, "cannot write " + rec_out);
      }
      std::cerr << result.summary << "\n";
    } else if (*bound) {
      std::vector<std::uint32_t> ds;
      if (brange.empty()) {
        for (auto d = bn - br; d <= bn; ++d) ds.push_back(d);
      } else {
        ds = parse_range(brange);
      }
      std::cout << cess::cli::bound_table(bn, br, bz, ds);
    } else if (*audit) {
      const auto opts = audit_flags.options();
      const auto scheme = cess::cli::build_scheme(opts, false);
      std::unique_ptr<cess::FieldRng> rng;
      if (opts.seed) {
        rng = std::make_unique<cess::SeededRng>(cess::SeededRng::from_u64(*opts.seed));
      } else {
        rng = std::make_unique<cess::SystemRng>();
      }
      std::optional<cess::KeylessScheme> keyless;
      const cess::Scheme* target = scheme.get();
      if (broken) target = &keyless.emplace(*scheme);
      cess::AuditOptions aopts;
      aopts.budget = budget;
      const auto report = cess::run_audit(*target, *rng, aopts);
      std::cout << (structured ? report.render_structured() : report.render_table());
      return report.passed() ? 0 : 1;
    } else if (*bench) {
      const auto opts = bench_flags.options();
      const auto scheme = cess::cli::build_scheme(opts, false);
      std::unique_ptr<cess::FieldRng> rng;
      if (opts.seed) {
        rng = std::make_unique<cess::SeededRng>(cess::SeededRng::from_u64(*opts.seed));
      } else {
        rng = std::make_unique<cess::SystemRng>();
      }
      const auto rows = cess::cli::bench(*scheme, reps, *rng);
      std::cout << cess::cli::scheme_bandwidth_table(*scheme) << "\n"
                << cess::cli::render_bench(rows);
    }
  } catch (const cess::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
