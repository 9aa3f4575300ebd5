#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sigma_hunt/analysis.hpp"
#include "sigma_hunt/families.hpp"
#include "sigma_hunt/fixtures.hpp"
#include "sigma_hunt/pell.hpp"
#include "sigma_hunt/persist.hpp"
#include "sigma_hunt/search.hpp"
#include "sigma_hunt/wide_int.hpp"
#include "verify.hpp"

namespace sigma_hunt::cli {
namespace {

namespace fs = std::filesystem;
using u64 = std::uint64_t;

constexpr const char* kCheckpointDirVar = "SIGMA_HUNT_CHECKPOINT_DIR";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

u64 parse_u64_flag(const std::string& text, const std::string& flag) {
  WideInt v;
  try {
    v = parse_exact_integer(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
  auto small = to_u64(v);
  if (!small) throw UsageError(flag + ": value " + text + " does not fit 64 bits");
  return *small;
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Writes to the named file, or to env.out when no path was given.
class OutputTarget {
 public:
  OutputTarget(const std::optional<std::string>& path, std::ostream& fallback) {
    if (path) {
      file_.open(*path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open " + *path + " for writing");
    }
    stream_ = path ? static_cast<std::ostream*>(&file_) : &fallback;
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

class StreamSink final : public SolutionSink {
 public:
  StreamSink(std::ostream& out, SolutionFormat format) : out_(out), format_(format) {
    if (format_ == SolutionFormat::Csv) out_ << kCsvHeader << '\n';
  }
  void on_solution(const Solution& s) override { out_ << format_row(format_, s); }
  void on_progress(u64, u64) override {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed");
  }

 private:
  std::ostream& out_;
  SolutionFormat format_;
};

SolutionFormat solution_format(OutputFormat f) {
  if (f == OutputFormat::Json) throw UsageError("--format json is not a solution stream format (use csv or jsonl)");
  return f == OutputFormat::Csv ? SolutionFormat::Csv : SolutionFormat::Jsonl;
}

fs::path checkpoint_for(const RunConfig& c, const Environment& env) {
  if (c.checkpoint_path) return *c.checkpoint_path;
  if (!c.output_path) throw UsageError("need --checkpoint or --out to locate the checkpoint");
  const fs::path out(*c.output_path);
  fs::path dir = out.parent_path();
  if (auto over = env.getenv(kCheckpointDirVar); over && !over->empty()) dir = *over;
  return dir / (out.filename().string() + ".ckpt");
}

SearchOptions search_options(const RunConfig& c) {
  SearchOptions o;
  o.segment_width = c.segment_width;
  o.workers = c.workers;
  return o;
}

std::vector<Solution> load_solutions(const RunConfig& c) {
  if (c.input_path) return read_solution_file(*c.input_path);
  if (c.input_fixture) {
    auto kind = fixture_by_name(*c.input_fixture);
    if (kind != FixtureKind::Solutions) {
      throw UsageError("--fixture must name the solution table (published_solutions or appendix_d)");
    }
    return published_solutions();
  }
  // --hi: search n <= hi in memory.
  return find_solutions(1, *c.hi + 1, search_options(c));
}

int cmd_search(const RunConfig& c, const Environment& env) {
  const SolutionFormat format = solution_format(c.format);
  const SearchOptions options = search_options(c);
  SearchSummary summary;
  if (c.output_path) {
    FileSolutionSink::Options sink;
    sink.output = *c.output_path;
    sink.format = format;
    if (c.jsonl_mirror) sink.jsonl_mirror = *c.jsonl_mirror;
    if (!c.no_checkpoint) sink.checkpoint = checkpoint_for(c, env);
    summary = search_to_file(c.lo, *c.hi, sink, options);
  } else {
    if (c.jsonl_mirror) throw UsageError("--jsonl needs --out");
    StreamSink sink(env.out, format);
    summary = search_range(c.lo, *c.hi, sink, options);
  }
  env.err << "found " << summary.found << " solutions with " << c.lo << " <= n < " << *c.hi;
  if (summary.last_n) env.err << "; last n = " << *summary.last_n;
  env.err << '\n';
  return kExitOk;
}

int cmd_resume(const RunConfig& c, const Environment& env) {
  const fs::path ckpt_path = checkpoint_for(c, env);
  const Checkpoint ckpt = read_checkpoint(ckpt_path);
  const SearchSummary summary = resume(ckpt, ckpt_path, *c.hi, search_options(c));
  env.err << "resumed from n = " << ckpt.last_completed_n + 1 << ": " << summary.found
          << " new solutions, total " << summary.total << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& c, const Environment& env) {
  const auto kind = fixture_by_name(*c.fixture);
  if (!kind) throw UsageError("unknown fixture '" + *c.fixture + "'");
  if (c.self_check) {
    const auto problems = self_check_fixture(*kind);
    for (const auto& p : problems) env.err << "flagged: " << p << '\n';
    const std::size_t rows =
        *kind == FixtureKind::Solutions ? published_solutions().size() : published_repeats().size();
    env.out << (rows - problems.size()) << "/" << rows << " fixture rows re-derived\n";
    return problems.empty() ? kExitOk : kExitMismatch;
  }
  if (!c.input_path && !c.hi) throw UsageError("verify needs --input or --hi");
  std::vector<Solution> actual;
  u64 bound = 0;
  if (c.input_path) {
    actual = read_solution_file(*c.input_path);
    bound = c.hi ? *c.hi : (actual.empty() ? 0 : actual.back().n);
  } else {
    actual = find_solutions(1, *c.hi + 1, search_options(c));
    bound = *c.hi;
  }
  const MatchReport report = verify_against_fixture(actual, *kind, bound);
  env.out << report.summary() << '\n';
  return report.ok() ? kExitOk : kExitMismatch;
}

int cmd_analyze(const RunConfig& c, const Environment& env) {
  const auto solutions = load_solutions(c);
  AnalysisReportOptions options;
  options.threshold_n = c.threshold_n;
  options.lower = c.lower;
  options.upper = c.upper;
  OutputTarget target(c.output_path, env.out);
  target.stream() << analysis_report_json(solutions, options) << '\n';
  target.finish();
  if (c.series_path) {
    std::ofstream series(*c.series_path, std::ios::binary | std::ios::trunc);
    series << format_series_csv(growth_series(solutions, kPublishedGrowthLaw, c.lower, c.upper));
    if (!series) throw std::runtime_error("cannot write " + *c.series_path);
  }
  return kExitOk;
}

int cmd_repeats(const RunConfig& c, const Environment& env) {
  const auto solutions = load_solutions(c);
  OutputTarget target(c.output_path, env.out);
  if (c.format == OutputFormat::Json) {
    target.stream() << repeats_json(find_repeats(solutions)) << '\n';
  } else {
    target.stream() << "sigma,n,index_n,n_plus_k,index_n_plus_k,k\n";
    for (const RepeatRow& r : repeat_rows(solutions)) {
      target.stream() << r.sigma << ',' << r.n << ',' << r.index_n << ',' << r.n_plus_k << ',' << r.index_n_plus_k
                      << ',' << r.k << '\n';
    }
  }
  target.finish();
  return kExitOk;
}

int cmd_fit(const RunConfig& c, const Environment& env) {
  const auto solutions = load_solutions(c);
  const FitResult fit = fit_growth(solutions, c.threshold_n);
  nlohmann::json doc = nlohmann::json::parse(fit_json(solutions, fit));
  nlohmann::json estimates = nlohmann::json::array();
  for (const std::string& text : c.estimates) {
    WideInt n;
    try {
      n = parse_exact_integer(text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--estimate: ") + e.what());
    }
    const double x = n.get_d();
    estimates.push_back({{"n", to_decimal(n)},
                         {"fitted", estimate_count(x, fit.law)},
                         {"published", estimate_count(x, kPublishedGrowthLaw)}});
  }
  doc["estimates"] = estimates;
  OutputTarget target(c.output_path, env.out);
  target.stream() << doc.dump(2) << '\n';
  target.finish();
  return kExitOk;
}

int cmd_report(const RunConfig& c, const Environment& env) {
  const auto solutions = load_solutions(c);
  const PropertyReport report = property_report(solutions);
  if (!report.not_div_by_6.empty()) {
    env.err << "NOTICE: " << report.not_div_by_6.size() << " solution(s) with sigma not divisible by 6\n";
  }
  OutputTarget target(c.output_path, env.out);
  target.stream() << property_report_json(report) << '\n';
  target.finish();
  return kExitOk;
}

int cmd_guyshanks(const RunConfig& c, const Environment& env) {
  std::vector<FamilyHit> hits;
  for (int form : {1, 2}) {
    if (c.form != 0 && c.form != form) continue;
    auto found = scan_family(static_cast<FamilyForm>(form), c.m_lo, c.m_hi, c.workers);
    std::move(found.begin(), found.end(), std::back_inserter(hits));
  }
  OutputTarget target(c.output_path, env.out);
  target.stream() << format_hits_csv(hits);
  target.finish();
  env.err << hits.size() << " family hits for m in [" << c.m_lo << ", " << c.m_hi << "]\n";
  return kExitOk;
}

int cmd_pell(const RunConfig& c, const Environment& env) {
  WideInt bound;
  try {
    bound = parse_exact_integer(c.bound);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--bound: ") + e.what());
  }
  if (bound < 1) throw UsageError("--bound must be >= 1");
  RhoLimits limits;
  if (c.rho_iterations != 0) limits.iterations_per_cycle = c.rho_iterations;
  if (c.rho_restarts != 0) limits.restarts = c.rho_restarts;

  const OddSigmaReport report = check_odd_sigma(bound, limits, c.workers);
  OutputTarget target(c.output_path, env.out);
  auto& out = target.stream();
  out << "x,y,sign,n,sigma_n,sigma_n_plus_1,verdict\n";
  std::size_t nontrivial = 0;
  for (const PellCheck& check : report.checks) {
    if (check.n > 1) ++nontrivial;
    out << to_decimal(check.pair.x) << ',' << to_decimal(check.pair.y) << ',' << (check.pair.sign < 0 ? "-1" : "+1")
        << ',' << to_decimal(check.n) << ',' << (check.sigma_n ? to_decimal(*check.sigma_n) : "") << ','
        << (check.sigma_n_plus_1 ? to_decimal(*check.sigma_n_plus_1) : "") << ','
        << (check.failure ? "gave-up" : check.violation ? "violation" : "distinct") << '\n';
  }
  target.finish();
  env.err << "checked " << nontrivial << " n values > 1 (" << report.checks.size() << " pairs including n = 1), "
          << report.violations.size() << " violations, " << report.gave_up.size() << " undecided\n";
  for (const PellCheck& check : report.checks) {
    if (check.failure) env.err << "n = " << to_decimal(check.n) << ": " << *check.failure << '\n';
  }
  if (!report.violations.empty()) return kExitMismatch;
  return report.gave_up.empty() ? kExitOk : kExitRuntime;
}

void add_search_flags(CLI::App* sub, std::string& segment_width, std::string& workers) {
  sub->add_option("--segment-width", segment_width, "Integers per sieve segment")->capture_default_str();
  sub->add_option("--workers", workers, "Sieve worker threads")->capture_default_str();
}

void add_input_flags(CLI::App* sub, RunConfig& c, std::string& hi) {
  auto* input = sub->add_option("--input", c.input_path, "Solution file (CSV or JSONL) to analyse");
  auto* fixture = sub->add_option("--fixture", c.input_fixture, "Use the bundled solution table (published_solutions)");
  auto* search = sub->add_option("--hi", hi, "Search n <= HI in memory instead of reading a file");
  input->excludes(fixture)->excludes(search);
  fixture->excludes(search);
}

}  // namespace

Environment process_environment() {
  return {std::cout, std::cerr, [](const std::string& name) -> std::optional<std::string> {
            if (const char* v = std::getenv(name.c_str())) return std::string(v);
            return std::nullopt;
          }};
}

int main_entry(int argc, const char* const* argv, const Environment& env) {
  CLI::App app{"Search and analysis toolkit for sigma(n) = sigma(n + 1)"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  RunConfig c;
  std::string lo = "1";
  std::string hi;
  std::string segment_width = std::to_string(kDefaultSegmentWidth);
  std::string workers = std::to_string(default_workers());
  std::string format = "csv";
  std::string threshold = std::to_string(kRelativeErrorThreshold);
  std::string rho_iterations = "0";
  std::string rho_restarts = "0";
  std::string form = "both";
  std::string m_lo = "1";
  std::string m_hi = "300";

  auto* search = app.add_subcommand("search", "Find every n in [lo, hi) with sigma(n) = sigma(n + 1)");
  search->add_option("--lo", lo, "First n to test")->capture_default_str();
  search->add_option("--hi", hi, "Stop before this n (accepts 1.5e10 shorthand)")->required();
  search->add_option("--out", c.output_path, "Solution file; standard output when omitted");
  search->add_option("--format", format, "Solution format: csv or jsonl")->capture_default_str();
  search->add_option("--jsonl", c.jsonl_mirror, "Also write a JSONL mirror to this file (needs --out)");
  search->add_option("--checkpoint", c.checkpoint_path,
                     "Checkpoint file (default: <out>.ckpt, directory overridable via SIGMA_HUNT_CHECKPOINT_DIR)");
  search->add_flag("--no-checkpoint", c.no_checkpoint, "Do not write a checkpoint");
  add_search_flags(search, segment_width, workers);

  auto* resume_cmd = app.add_subcommand("resume", "Continue a checkpointed search up to a new or the same hi");
  resume_cmd->add_option("--checkpoint", c.checkpoint_path, "Checkpoint file");
  resume_cmd->add_option("--out", c.output_path, "Solution file of the run; locates <out>.ckpt");
  resume_cmd->add_option("--hi", hi, "Stop before this n")->required();
  add_search_flags(resume_cmd, segment_width, workers);

  auto* verify = app.add_subcommand("verify", "Compare solutions against a bundled published table");
  verify->add_option("--fixtures", c.fixture,
                     "published_solutions (alias appendix_d) or published_repeats (alias appendix_c)")
      ->required();
  verify->add_option("--input", c.input_path, "Solution file to check");
  verify->add_option("--hi", hi, "Compare rows with n <= HI; searches in memory when --input is absent");
  verify->add_flag("--self-check", c.self_check, "Re-derive sigma for every fixture row instead");
  add_search_flags(verify, segment_width, workers);

  auto* analyze = app.add_subcommand("analyze", "Full JSON report: properties, repeats, fit, band");
  add_input_flags(analyze, c, hi);
  analyze->add_option("--out", c.output_path, "JSON report file; standard output when omitted");
  analyze->add_option("--series", c.series_path, "Write n,count,y1,y2,y_adj,epsilon (published law) here");
  analyze->add_option("--threshold", threshold, "n from which max |epsilon| is reported")->capture_default_str();
  analyze->add_option("--lower", c.lower, "Lower band coefficient")->capture_default_str();
  analyze->add_option("--upper", c.upper, "Upper band coefficient")->capture_default_str();
  add_search_flags(analyze, segment_width, workers);

  auto* repeats_cmd = app.add_subcommand("repeats", "Solutions sharing a sigma value, one row per pair");
  add_input_flags(repeats_cmd, c, hi);
  repeats_cmd->add_option("--out", c.output_path, "Output file; standard output when omitted");
  repeats_cmd->add_option("--format", format, "csv or json")->capture_default_str();
  add_search_flags(repeats_cmd, segment_width, workers);

  auto* fit = app.add_subcommand("fit", "Least-squares fit of the solution count against n^(1/3)");
  add_input_flags(fit, c, hi);
  fit->add_option("--out", c.output_path, "Output file; standard output when omitted");
  fit->add_option("--threshold", threshold, "n from which max |epsilon| is reported")->capture_default_str();
  fit->add_option("--estimate", c.estimates, "Predict the count up to this n (repeatable)");
  add_search_flags(fit, segment_width, workers);

  auto* report = app.add_subcommand("report", "Divisibility of sigma(n) over the solutions");
  add_input_flags(report, c, hi);
  report->add_option("--out", c.output_path, "Output file; standard output when omitted");
  add_search_flags(report, segment_width, workers);

  auto* guyshanks = app.add_subcommand("guyshanks", "Scan the two parametric families n = 2p, n + 1 = 3^m q");
  guyshanks->add_option("--form", form, "1, 2 or both")->capture_default_str();
  guyshanks->add_option("--m-lo", m_lo, "First m")->capture_default_str();
  guyshanks->add_option("--m-hi", m_hi, "Last m")->capture_default_str();
  guyshanks->add_option("--out", c.output_path, "CSV file; standard output when omitted");
  guyshanks->add_option("--workers", workers, "Threads testing candidates")->capture_default_str();

  auto* pell = app.add_subcommand("pell", "Check that no odd sigma(n) = sigma(n + 1) exists below a bound");
  pell->add_option("--bound", c.bound, "Largest n to check (decimal, 1e50 shorthand accepted)")->capture_default_str();
  pell->add_option("--out", c.output_path, "CSV file; standard output when omitted");
  pell->add_option("--workers", workers, "Threads factoring pairs")->capture_default_str();
  pell->add_option("--rho-iterations", rho_iterations, "Pollard-Brent iterations per cycle (0 = 2^20)")
      ->capture_default_str();
  pell->add_option("--rho-restarts", rho_restarts, "Pollard-Brent restarts (0 = 64)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, env.out, env.err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, env.out, env.err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, env.out, env.err);
    return kExitUsage;
  }

  try {
    if (search->parsed()) c.command = Command::Search;
    if (resume_cmd->parsed()) c.command = Command::Resume;
    if (verify->parsed()) c.command = Command::Verify;
    if (analyze->parsed()) c.command = Command::Analyze;
    if (repeats_cmd->parsed()) c.command = Command::Repeats;
    if (fit->parsed()) c.command = Command::Fit;
    if (report->parsed()) c.command = Command::Report;
    if (guyshanks->parsed()) c.command = Command::GuyShanks;
    if (pell->parsed()) c.command = Command::Pell;

    c.lo = parse_u64_flag(lo, "--lo");
    if (!hi.empty()) c.hi = parse_u64_flag(hi, "--hi");
    c.segment_width = parse_u64_flag(segment_width, "--segment-width");
    const u64 w = parse_u64_flag(workers, "--workers");
    if (w < 1 || w > 1024) throw UsageError("--workers must be in [1, 1024]");
    c.workers = static_cast<unsigned>(w);
    c.threshold_n = parse_u64_flag(threshold, "--threshold");
    c.rho_iterations = parse_u64_flag(rho_iterations, "--rho-iterations");
    const u64 restarts = parse_u64_flag(rho_restarts, "--rho-restarts");
    if (restarts > 1'000'000) throw UsageError("--rho-restarts is unreasonably large");
    c.rho_restarts = static_cast<unsigned>(restarts);

    if (format == "csv") {
      c.format = OutputFormat::Csv;
    } else if (format == "jsonl") {
      c.format = OutputFormat::Jsonl;
    } else if (format == "json") {
      c.format = OutputFormat::Json;
    } else {
      throw UsageError("--format must be csv, jsonl or json");
    }
    if (form == "both") {
      c.form = 0;
    } else if (form == "1" || form == "2") {
      c.form = form[0] - '0';
    } else {
      throw UsageError("--form must be 1, 2 or both");
    }
    const u64 mlo = parse_u64_flag(m_lo, "--m-lo");
    const u64 mhi = parse_u64_flag(m_hi, "--m-hi");
    if (mlo < 1 || mhi < mlo || mhi > 1'000'000) throw UsageError("need 1 <= --m-lo <= --m-hi <= 1000000");
    c.m_lo = static_cast<unsigned>(mlo);
    c.m_hi = static_cast<unsigned>(mhi);

    if (c.segment_width < 1) throw UsageError("--segment-width must be positive");
    if (c.lo < 1) throw UsageError("--lo must be >= 1");
    if (c.command == Command::Search && c.hi && *c.hi <= c.lo) throw UsageError("--hi must exceed --lo");
    if (c.command == Command::Search && c.no_checkpoint && c.checkpoint_path) {
      throw UsageError("--checkpoint and --no-checkpoint conflict");
    }
    if (c.command == Command::Repeats && c.format == OutputFormat::Jsonl) {
      throw UsageError("repeats supports --format csv or json");
    }
    const bool analysis = c.command == Command::Analyze || c.command == Command::Repeats ||
                          c.command == Command::Fit || c.command == Command::Report;
    if (analysis && !c.input_path && !c.input_fixture && !c.hi) {
      throw UsageError("need one of --input, --fixture or --hi");
    }
    if (c.command == Command::Verify && c.self_check && (c.input_path || c.hi)) {
      throw UsageError("--self-check takes no --input or --hi");
    }
  } catch (const UsageError& e) {
    env.err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(c, env);
}

int run(const RunConfig& c, const Environment& env) {
  try {
    switch (c.command) {
      case Command::Search:
        return cmd_search(c, env);
      case Command::Resume:
        return cmd_resume(c, env);
      case Command::Verify:
        return cmd_verify(c, env);
      case Command::Analyze:
        return cmd_analyze(c, env);
      case Command::Repeats:
        return cmd_repeats(c, env);
      case Command::Fit:
        return cmd_fit(c, env);
      case Command::Report:
        return cmd_report(c, env);
      case Command::GuyShanks:
        return cmd_guyshanks(c, env);
      case Command::Pell:
        return cmd_pell(c, env);
    }
  } catch (const UsageError& e) {
    env.err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    env.err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace sigma_hunt::cli
