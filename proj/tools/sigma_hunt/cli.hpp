#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sigma_hunt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

enum class Command { Search, Resume, Verify, Analyze, Repeats, GuyShanks, Pell, Fit, Report };
enum class OutputFormat { Csv, Jsonl, Json };

// Fully parsed invocation. Numeric fields are already exact integers; the
// bounds that may exceed 64 bits stay as decimal strings.
struct RunConfig {
  Command command = Command::Search;

  std::uint64_t lo = 1;
  std::optional<std::uint64_t> hi;
  std::uint64_t segment_width = 0;
  unsigned workers = 1;
  std::optional<std::string> output_path;
  std::optional<std::string> jsonl_mirror;
  std::optional<std::string> checkpoint_path;
  bool no_checkpoint = false;
  OutputFormat format = OutputFormat::Csv;

  // analysis inputs: exactly one of these
  std::optional<std::string> input_path;
  std::optional<std::string> input_fixture;

  std::optional<std::string> fixture;  // verify
  bool self_check = false;

  std::uint64_t threshold_n = 0;
  double lower = 0.50;
  double upper = 0.55;
  std::optional<std::string> series_path;
  std::vector<std::string> estimates;

  int form = 0;  // 0 means both
  unsigned m_lo = 1;
  unsigned m_hi = 300;

  std::string bound = "1e26";
  std::uint64_t rho_iterations = 0;
  unsigned rho_restarts = 0;
};

struct Environment {
  std::ostream& out;
  std::ostream& err;
  std::function<std::optional<std::string>(const std::string&)> getenv;
};

Environment process_environment();

// Parses argv (argv[0] is the program name) and runs the command.
// Exit status: 0 success, 1 verification mismatch, 2 usage error,
// 3 runtime failure.
int main_entry(int argc, const char* const* argv, const Environment& env);

int run(const RunConfig& config, const Environment& env);

}  // namespace sigma_hunt::cli
