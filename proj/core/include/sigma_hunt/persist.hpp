#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sigma_hunt/search.hpp"

namespace sigma_hunt {

// CSV: header "n,n_plus_1,sigma", one row per solution.
// JSONL: one {"n":..,"sigma":..,"index":..} object per line.
enum class SolutionFormat { Csv, Jsonl };

inline constexpr std::string_view kCsvHeader = "n,n_plus_1,sigma";

std::string format_row(SolutionFormat format, const Solution& s);

// Parses a solution file of either format (detected from the first line).
// CSV rows get index = row position. Throws std::runtime_error with the
// offending line number on malformed input, including a truncated last line.
std::vector<Solution> parse_solutions(std::string_view text);
std::vector<Solution> read_solution_file(const std::filesystem::path& path);

struct Checkpoint {
  std::uint64_t range_lo = 1;
  std::uint64_t last_completed_n = 0;
  std::uint64_t solutions_so_far = 0;
  std::string output_path;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_checkpoint(const Checkpoint& c);
Checkpoint parse_checkpoint(std::string_view text);
Checkpoint read_checkpoint(const std::filesystem::path& path);
// Writes to a temporary sibling and renames over `path`.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c);

// Checks that the output file holds exactly the solutions the checkpoint
// claims: row count, n within [range_lo, last_completed_n], strictly
// increasing, and every row re-verified by point sigma. Throws
// CheckpointError on any disagreement.
void validate_checkpoint(const Checkpoint& c);

// Streams solutions to a file (plus an optional JSONL mirror). Rows are
// buffered per segment; on_progress flushes them and then, if a checkpoint
// path was given, records the checkpoint.
class FileSolutionSink final : public SolutionSink {
 public:
  struct Options {
    std::filesystem::path output;
    SolutionFormat format = SolutionFormat::Csv;
    std::optional<std::filesystem::path> jsonl_mirror;
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t range_lo = 1;
    bool append = false;
  };

  explicit FileSolutionSink(Options options);

  void on_solution(const Solution& s) override;
  void on_progress(std::uint64_t last_completed_n, std::uint64_t solutions_so_far) override;

 private:
  Options options_;
  std::ofstream out_;
  std::ofstream mirror_;
  std::string pending_;
  std::string pending_mirror_;
};

// Writes rows for [lo, hi) to `output`, checkpointing after each segment.
SearchSummary search_to_file(std::uint64_t lo, std::uint64_t hi, const FileSolutionSink::Options& sink,
                             const SearchOptions& options = {});

// Continues an interrupted search_to_file run. The resulting file is
// byte-identical to an uninterrupted run over the same range. A no-op when
// hi <= last_completed_n + 1.
SearchSummary resume(const Checkpoint& checkpoint, const std::filesystem::path& checkpoint_path,
                     std::uint64_t hi, const SearchOptions& options = {});

SolutionFormat detect_format(const std::filesystem::path& path);

}  // namespace sigma_hunt
