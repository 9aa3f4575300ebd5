#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sigma_hunt/search.hpp"

namespace sigma_hunt {

// Published tables bundled into the library.
//   published_solutions: every solution n <= 1.5e10 (1268 rows), CSV in the
//                        solution-file format "n,n_plus_1,sigma".
//   published_repeats:   pairs of solutions sharing sigma (22 rows), CSV
//                        "sigma,n,index_n,n_plus_k,index_n_plus_k,k".
inline constexpr std::uint64_t kPublishedSearchLimit = 15'000'000'000ULL;

struct RepeatRow {
  std::uint64_t sigma = 0;
  std::uint64_t n = 0;
  std::uint64_t index_n = 0;
  std::uint64_t n_plus_k = 0;
  std::uint64_t index_n_plus_k = 0;
  std::uint64_t k = 0;

  friend bool operator==(const RepeatRow&, const RepeatRow&) = default;
};

std::string_view published_solutions_csv();
std::string_view published_repeats_csv();

// Parsed forms; indices are row positions.
const std::vector<Solution>& published_solutions();
const std::vector<RepeatRow>& published_repeats();

std::vector<RepeatRow> parse_repeat_rows(std::string_view csv);

}  // namespace sigma_hunt
