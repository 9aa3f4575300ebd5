#include "sigma_hunt/fixtures.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

#include "sigma_hunt/persist.hpp"

namespace sigma_hunt {

namespace detail {
extern const std::string_view kPublishedSolutionsCsv;
extern const std::string_view kPublishedRepeatsCsv;
}  // namespace detail

std::string_view published_solutions_csv() { return detail::kPublishedSolutionsCsv; }
std::string_view published_repeats_csv() { return detail::kPublishedRepeatsCsv; }

const std::vector<Solution>& published_solutions() {
  static const std::vector<Solution> rows = parse_solutions(published_solutions_csv());
  return rows;
}

const std::vector<RepeatRow>& published_repeats() {
  static const std::vector<RepeatRow> rows = parse_repeat_rows(published_repeats_csv());
  return rows;
}

std::vector<RepeatRow> parse_repeat_rows(std::string_view csv) {
  std::vector<RepeatRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view line = csv.substr(start, end - start);
    start = end + 1;
    if (++line_no == 1 || line.empty()) continue;

    std::uint64_t fields[6];
    const char* p = line.data();
    const char* const stop = line.data() + line.size();
    for (int i = 0; i < 6; ++i) {
      auto [ptr, ec] = std::from_chars(p, stop, fields[i]);
      const bool sep_ok = i < 5 ? (ptr != stop && *ptr == ',') : ptr == stop;
      if (ec != std::errc{} || !sep_ok) {
        throw std::runtime_error("repeat table line " + std::to_string(line_no) + ": malformed");
      }
      p = ptr + 1;
    }
    rows.push_back({fields[0], fields[1], fields[2], fields[3], fields[4], fields[5]});
  }
  return rows;
}

}  // namespace sigma_hunt
