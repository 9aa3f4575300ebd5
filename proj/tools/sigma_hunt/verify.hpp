#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigma_hunt/fixtures.hpp"
#include "sigma_hunt/search.hpp"

namespace sigma_hunt::cli {

enum class FixtureKind { Solutions, Repeats };

// Accepts "published_solutions" / "appendix_d" and
// "published_repeats" / "appendix_c". Empty for an unknown name.
std::optional<FixtureKind> fixture_by_name(std::string_view name);

struct MatchReport {
  std::size_t compared = 0;  // rows on the fixture side within the bound
  std::size_t matched = 0;   // leading rows that agree
  std::uint64_t bound = 0;   // rows with n (or n + k) <= bound were compared
  std::optional<std::string> divergence;

  bool ok() const { return !divergence; }
  std::string summary() const;
};

// Row-by-row comparison of solutions against the published solution table,
// restricted to n <= bound (clamped to the table's coverage).
MatchReport verify_solutions(std::span<const Solution> actual, std::uint64_t bound);

// Pair rows derived from `actual` by find_repeats against the published
// repeat table, restricted to rows with n + k <= bound.
MatchReport verify_repeats(std::span<const Solution> actual, std::uint64_t bound);

MatchReport verify_against_fixture(std::span<const Solution> actual, FixtureKind kind, std::uint64_t bound);

// Re-derives sigma for every fixture row with point arithmetic. Returns one
// message per row that fails; empty when the transcription is consistent.
std::vector<std::string> self_check_fixture(FixtureKind kind);

std::vector<RepeatRow> repeat_rows(std::span<const Solution> solutions);

}  // namespace sigma_hunt::cli
