#include "verify.hpp"

#include <algorithm>

#include "sigma_hunt/analysis.hpp"
#include "sigma_hunt/arith.hpp"

namespace sigma_hunt::cli {
namespace {

using u64 = std::uint64_t;

std::string describe(const Solution& s) {
  return "n=" + std::to_string(s.n) + " sigma=" + std::to_string(s.sigma);
}

std::string describe(const RepeatRow& r) {
  return "sigma=" + std::to_string(r.sigma) + " n=" + std::to_string(r.n) + " (#" + std::to_string(r.index_n) +
         ") n+k=" + std::to_string(r.n_plus_k) + " (#" + std::to_string(r.index_n_plus_k) +
         ") k=" + std::to_string(r.k);
}

template <typename Row, typename Same>
MatchReport compare(const std::vector<Row>& expected, const std::vector<Row>& actual, u64 bound, Same same) {
  MatchReport report;
  report.bound = bound;
  report.compared = expected.size();
  const std::size_t common = std::min(expected.size(), actual.size());
  std::size_t i = 0;
  while (i < common && same(expected[i], actual[i])) ++i;
  report.matched = i;
  if (i < common) {
    report.divergence = "ordinal " + std::to_string(i + 1) + ": expected " + describe(expected[i]) + ", got " +
                        describe(actual[i]);
  } else if (expected.size() > actual.size()) {
    report.divergence =
        "ordinal " + std::to_string(i + 1) + ": expected " + describe(expected[i]) + ", got nothing";
  } else if (actual.size() > expected.size()) {
    report.divergence = "ordinal " + std::to_string(i + 1) + ": unexpected extra row " + describe(actual[i]);
  }
  return report;
}

}  // namespace

std::optional<FixtureKind> fixture_by_name(std::string_view name) {
  if (name == "published_solutions" || name == "appendix_d") return FixtureKind::Solutions;
  if (name == "published_repeats" || name == "appendix_c") return FixtureKind::Repeats;
  return std::nullopt;
}

std::string MatchReport::summary() const {
  std::string s = std::to_string(matched) + "/" + std::to_string(compared) + " rows match (bound " +
                  std::to_string(bound) + ")";
  if (divergence) s += "; first divergence at " + *divergence;
  return s;
}

MatchReport verify_solutions(std::span<const Solution> actual, std::uint64_t bound) {
  bound = std::min(bound, kPublishedSearchLimit);
  std::vector<Solution> expected;
  for (const Solution& s : published_solutions()) {
    if (s.n <= bound) expected.push_back(s);
  }
  std::vector<Solution> got;
  for (const Solution& s : actual) {
    if (s.n <= bound) got.push_back(s);
  }
  return compare(expected, got, bound,
                 [](const Solution& a, const Solution& b) { return a.n == b.n && a.sigma == b.sigma; });
}

std::vector<RepeatRow> repeat_rows(std::span<const Solution> solutions) {
  std::vector<RepeatRow> rows;
  for (const RepeatGroup& g : find_repeats(solutions)) {
    for (const auto& p : g.pair_rows) {
      rows.push_back({g.sigma, p.first.n, p.first.index, p.second.n, p.second.index, p.k()});
    }
  }
  return rows;
}

MatchReport verify_repeats(std::span<const Solution> actual, std::uint64_t bound) {
  bound = std::min(bound, kPublishedSearchLimit);
  std::vector<Solution> within;
  for (const Solution& s : actual) {
    if (s.n <= bound) within.push_back(s);
  }
  std::vector<RepeatRow> expected;
  for (const RepeatRow& r : published_repeats()) {
    if (r.n_plus_k <= bound) expected.push_back(r);
  }
  return compare(expected, repeat_rows(within), bound, std::equal_to<>{});
}

MatchReport verify_against_fixture(std::span<const Solution> actual, FixtureKind kind, std::uint64_t bound) {
  return kind == FixtureKind::Solutions ? verify_solutions(actual, bound) : verify_repeats(actual, bound);
}

std::vector<std::string> self_check_fixture(FixtureKind kind) {
  std::vector<std::string> problems;
  const auto& solutions = published_solutions();
  if (kind == FixtureKind::Solutions) {
    for (const Solution& s : solutions) {
      const u64 a = sigma(s.n);
      const u64 b = sigma(s.n + 1);
      if (a != s.sigma || b != s.sigma) {
        problems.push_back("row " + std::to_string(s.index) + " " + describe(s) + ": sigma(n)=" +
                           std::to_string(a) + ", sigma(n+1)=" + std::to_string(b));
      }
    }
    return problems;
  }
  for (const RepeatRow& r : published_repeats()) {
    const bool index_ok = r.index_n >= 1 && r.index_n_plus_k >= 1 && r.index_n <= solutions.size() &&
                          r.index_n_plus_k <= solutions.size() && solutions[r.index_n - 1].n == r.n &&
                          solutions[r.index_n_plus_k - 1].n == r.n_plus_k;
    const bool sigma_ok = sigma(r.n) == r.sigma && sigma(r.n + 1) == r.sigma && sigma(r.n_plus_k) == r.sigma &&
                          sigma(r.n_plus_k + 1) == r.sigma;
    if (!index_ok || !sigma_ok || r.n_plus_k - r.n != r.k) {
      problems.push_back(describe(r) + ": " + (sigma_ok ? "" : "sigma mismatch ") + (index_ok ? "" : "index mismatch ") +
                         (r.n_plus_k - r.n == r.k ? "" : "k mismatch"));
    }
  }
  return problems;
}

}  // namespace sigma_hunt::cli
