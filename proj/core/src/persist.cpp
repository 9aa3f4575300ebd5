#include "sigma_hunt/persist.hpp"

#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sigma_hunt/arith.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;
namespace fs = std::filesystem;

u64 parse_u64(std::string_view field, std::string_view what) {
  u64 v = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw std::runtime_error("bad " + std::string(what) + " value '" + std::string(field) + "'");
  }
  return v;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits on '\n'. The text must be empty or end with a newline.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  if (text.empty()) return lines;
  if (text.back() != '\n') throw std::runtime_error("last line is truncated (no trailing newline)");
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

Solution parse_csv_row(std::string_view line) {
  const auto c1 = line.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
  if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
    throw std::runtime_error("expected 3 comma-separated fields");
  }
  const u64 n = parse_u64(line.substr(0, c1), "n");
  const u64 n1 = parse_u64(line.substr(c1 + 1, c2 - c1 - 1), "n_plus_1");
  const u64 s = parse_u64(line.substr(c2 + 1), "sigma");
  if (n1 != n + 1) throw std::runtime_error("n_plus_1 is not n + 1");
  return {n, s, 0};
}

Solution parse_jsonl_row(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  if (!j.is_object()) throw std::runtime_error("expected a JSON object");
  auto field = [&](const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number_unsigned()) {
      throw std::runtime_error(std::string("missing or non-integer key '") + key + "'");
    }
    return it->get<u64>();
  };
  return {field("n"), field("sigma"), field("index")};
}

void check_stream(const std::ostream& out, const fs::path& path) {
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string format_row(SolutionFormat format, const Solution& s) {
  if (format == SolutionFormat::Csv) {
    return std::to_string(s.n) + ',' + std::to_string(s.n + 1) + ',' + std::to_string(s.sigma) + '\n';
  }
  return "{\"n\":" + std::to_string(s.n) + ",\"sigma\":" + std::to_string(s.sigma) +
         ",\"index\":" + std::to_string(s.index) + "}\n";
}

std::vector<Solution> parse_solutions(std::string_view text) {
  std::vector<std::string_view> lines;
  try {
    lines = split_lines(text);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string("solution file: ") + e.what());
  }
  std::vector<Solution> out;
  if (lines.empty()) return out;
  const bool csv = lines.front() == kCsvHeader;
  for (std::size_t i = csv ? 1 : 0; i < lines.size(); ++i) {
    try {
      Solution s = csv ? parse_csv_row(lines[i]) : parse_jsonl_row(lines[i]);
      if (csv) s.index = out.size() + 1;
      out.push_back(s);
    } catch (const std::exception& e) {
      throw std::runtime_error("solution file line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Solution> read_solution_file(const fs::path& path) {
  try {
    return parse_solutions(read_all(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

SolutionFormat detect_format(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string first;
  if (!std::getline(in, first) || first.empty() || first.front() == '{') return SolutionFormat::Jsonl;
  if (first == kCsvHeader) return SolutionFormat::Csv;
  throw std::runtime_error(path.string() + ": unrecognised solution file format");
}

std::string format_checkpoint(const Checkpoint& c) {
  return "version=1\nrange_lo=" + std::to_string(c.range_lo) +
         "\nlast_completed_n=" + std::to_string(c.last_completed_n) +
         "\nsolutions_so_far=" + std::to_string(c.solutions_so_far) + "\noutput=" + c.output_path + "\n";
}

Checkpoint parse_checkpoint(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  static constexpr std::string_view kKeys[] = {"version", "range_lo", "last_completed_n", "solutions_so_far",
                                               "output"};
  if (lines.size() != std::size(kKeys)) {
    throw CheckpointError("checkpoint: expected 5 lines, found " + std::to_string(lines.size()));
  }
  std::string_view values[std::size(kKeys)];
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto eq = lines[i].find('=');
    if (eq == std::string_view::npos || lines[i].substr(0, eq) != kKeys[i]) {
      throw CheckpointError("checkpoint line " + std::to_string(i + 1) + ": expected '" +
                            std::string(kKeys[i]) + "=...'");
    }
    values[i] = lines[i].substr(eq + 1);
  }
  if (values[0] != "1") throw CheckpointError("checkpoint: unsupported version " + std::string(values[0]));
  Checkpoint c;
  try {
    c.range_lo = parse_u64(values[1], "range_lo");
    c.last_completed_n = parse_u64(values[2], "last_completed_n");
    c.solutions_so_far = parse_u64(values[3], "solutions_so_far");
  } catch (const std::runtime_error& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
  c.output_path = std::string(values[4]);
  if (c.range_lo < 1) throw CheckpointError("checkpoint: range_lo must be positive");
  if (c.last_completed_n + 1 < c.range_lo) throw CheckpointError("checkpoint: last_completed_n < range_lo - 1");
  if (c.output_path.empty()) throw CheckpointError("checkpoint: empty output path");
  return c;
}

Checkpoint read_checkpoint(const fs::path& path) {
  std::string text;
  try {
    text = read_all(path);
  } catch (const std::runtime_error& e) {
    throw CheckpointError(e.what());
  }
  return parse_checkpoint(text);
}

void write_checkpoint(const fs::path& path, const Checkpoint& c) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << format_checkpoint(c);
    out.flush();
    check_stream(out, tmp);
  }
  fs::rename(tmp, path);
}

void validate_checkpoint(const Checkpoint& c) {
  std::vector<Solution> rows;
  try {
    rows = read_solution_file(c.output_path);
  } catch (const std::runtime_error& e) {
    throw CheckpointError(std::string("checkpoint output mismatch: ") + e.what());
  }
  auto mismatch = [&](const std::string& what) {
    throw CheckpointError("checkpoint output mismatch (" + c.output_path + "): " + what);
  };
  if (rows.size() != c.solutions_so_far) {
    mismatch("file has " + std::to_string(rows.size()) + " rows, checkpoint records " +
             std::to_string(c.solutions_so_far));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Solution& s = rows[i];
    const std::string where = "row " + std::to_string(i + 1) + " (n=" + std::to_string(s.n) + ")";
    if (s.n < c.range_lo || s.n > c.last_completed_n) mismatch(where + " lies outside the completed range");
    if (i > 0 && s.n <= rows[i - 1].n) mismatch(where + " is out of order");
    if (i > 0 && s.index != rows[i - 1].index + 1) mismatch(where + " has a non-consecutive index");
    if (sigma(s.n) != s.sigma || sigma(s.n + 1) != s.sigma) mismatch(where + " fails sigma re-verification");
  }
}

FileSolutionSink::FileSolutionSink(Options options) : options_(std::move(options)) {
  const auto mode = std::ios::binary | (options_.append ? std::ios::app : std::ios::trunc);
  out_.open(options_.output, mode);
  if (!out_) throw std::runtime_error("cannot open " + options_.output.string() + " for writing");
  if (options_.jsonl_mirror) {
    mirror_.open(*options_.jsonl_mirror, mode);
    if (!mirror_) throw std::runtime_error("cannot open " + options_.jsonl_mirror->string() + " for writing");
  }
  if (!options_.append) {
    if (options_.format == SolutionFormat::Csv) out_ << kCsvHeader << '\n';
    out_.flush();
    check_stream(out_, options_.output);
    if (options_.checkpoint) {
      write_checkpoint(*options_.checkpoint,
                       {options_.range_lo, options_.range_lo - 1, 0, fs::absolute(options_.output).string()});
    }
  }
}

void FileSolutionSink::on_solution(const Solution& s) {
  pending_ += format_row(options_.format, s);
  if (mirror_.is_open()) pending_mirror_ += format_row(SolutionFormat::Jsonl, s);
}

void FileSolutionSink::on_progress(std::uint64_t last_completed_n, std::uint64_t solutions_so_far) {
  out_ << pending_;
  out_.flush();
  check_stream(out_, options_.output);
  pending_.clear();
  if (mirror_.is_open()) {
    mirror_ << pending_mirror_;
    mirror_.flush();
    check_stream(mirror_, *options_.jsonl_mirror);
    pending_mirror_.clear();
  }
  if (options_.checkpoint) {
    write_checkpoint(*options_.checkpoint, {options_.range_lo, last_completed_n, solutions_so_far,
                                            fs::absolute(options_.output).string()});
  }
}

SearchSummary search_to_file(std::uint64_t lo, std::uint64_t hi, const FileSolutionSink::Options& sink_options,
                             const SearchOptions& options) {
  FileSolutionSink::Options opts = sink_options;
  opts.range_lo = lo;
  opts.append = false;
  FileSolutionSink sink(std::move(opts));
  return search_range(lo, hi, sink, options);
}

SearchSummary resume(const Checkpoint& checkpoint, const fs::path& checkpoint_path, std::uint64_t hi,
                     const SearchOptions& options) {
  validate_checkpoint(checkpoint);
  const u64 next = checkpoint.last_completed_n + 1;
  if (hi <= next) {
    SearchSummary summary;
    summary.total = checkpoint.solutions_so_far;
    summary.last_completed_n = checkpoint.last_completed_n;
    return summary;
  }
  FileSolutionSink::Options opts;
  opts.output = checkpoint.output_path;
  opts.format = detect_format(checkpoint.output_path);
  opts.checkpoint = checkpoint_path;
  opts.range_lo = checkpoint.range_lo;
  opts.append = true;
  FileSolutionSink sink(std::move(opts));
  SearchOptions resumed = options;
  resumed.start_index = checkpoint.solutions_so_far;
  return search_range(next, hi, sink, resumed);
}

}  // namespace sigma_hunt
