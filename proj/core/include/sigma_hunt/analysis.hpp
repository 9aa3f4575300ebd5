#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigma_hunt/search.hpp"

namespace sigma_hunt {

// Divisibility of sigma(n) over a solution set.
struct PropertyReport {
  struct Pow23Hit {
    std::uint64_t n;
    std::uint64_t sigma;
    unsigned a;  // exponent of 2
    unsigned b;  // exponent of 3

    friend bool operator==(const Pow23Hit&, const Pow23Hit&) = default;
  };

  std::uint64_t total_solutions = 0;
  std::vector<std::uint64_t> not_div_by_6;
  std::vector<std::uint64_t> not_div_by_4;
  std::vector<std::uint64_t> not_div_by_8;
  std::vector<Pow23Hit> pow23_hits;  // sigma == 2^a * 3^b
};

PropertyReport property_report(std::span<const Solution> solutions);

// Solutions sharing one sigma value. pair_rows lists every unordered pair of
// members (first.n < second.n), in lexicographic member order.
struct RepeatGroup {
  struct PairRow {
    Solution first;
    Solution second;
    std::uint64_t k() const { return second.n - first.n; }

    friend bool operator==(const PairRow&, const PairRow&) = default;
  };

  std::uint64_t sigma = 0;
  std::vector<Solution> members;  // ascending n
  std::vector<PairRow> pair_rows;
};

// One group per sigma with multiplicity >= 2, sorted by sigma.
std::vector<RepeatGroup> find_repeats(std::span<const Solution> solutions);

// count(n) ~ slope * n^(1/3) + intercept
struct GrowthLaw {
  double slope = 0;
  double intercept = 0;
};

// Coefficients published alongside the 1.5e10 solution set.
inline constexpr GrowthLaw kPublishedGrowthLaw{0.5088, 6.9183};

// Reference point beyond which the published law stays within 10%.
inline constexpr std::uint64_t kRelativeErrorThreshold = 792855;

struct FitResult {
  GrowthLaw law;
  std::size_t sample_count = 0;
  std::uint64_t threshold_n = 0;
  double max_relative_error_beyond = 0;  // max |epsilon| over n >= threshold_n
};

// epsilon = (y - y_adj) / y with y the solution's index.
double relative_error(const Solution& s, const GrowthLaw& law);

// Largest |epsilon| over solutions with n >= threshold_n (0 when none).
double max_relative_error(std::span<const Solution> solutions, const GrowthLaw& law,
                          std::uint64_t threshold_n);

// Ordinary least squares over the points (n_i^(1/3), index_i). Throws
// std::invalid_argument for fewer than two solutions or a degenerate
// abscissa.
FitResult fit_growth(std::span<const Solution> solutions,
                     std::uint64_t threshold_n = kRelativeErrorThreshold);

double estimate_count(double n, const GrowthLaw& law);

struct BandCrossings {
  // max n_i with index_i < lower * n_i^(1/3)
  std::optional<std::uint64_t> last_below_lower;
  // max n_i with index_i > upper * n_i^(1/3)
  std::optional<std::uint64_t> last_above_upper;
};

BandCrossings band_check(std::span<const Solution> solutions, double lower = 0.50, double upper = 0.55);

struct SeriesRow {
  std::uint64_t n;
  std::uint64_t count;
  double y1;
  double y2;
  double y_adj;
  double epsilon;
};

std::vector<SeriesRow> growth_series(std::span<const Solution> solutions, const GrowthLaw& law,
                                     double lower = 0.50, double upper = 0.55);

// CSV with header "n,count,y1,y2,y_adj,epsilon".
std::string format_series_csv(std::span<const SeriesRow> rows);

struct AnalysisReportOptions {
  std::uint64_t threshold_n = kRelativeErrorThreshold;
  double lower = 0.50;
  double upper = 0.55;
};

// JSON document with sections "properties", "repeats", "fit", "band".
std::string analysis_report_json(std::span<const Solution> solutions, const AnalysisReportOptions& options = {});

// Individual sections, for the narrower subcommands.
std::string property_report_json(const PropertyReport& report);
std::string repeats_json(std::span<const RepeatGroup> groups);
std::string fit_json(std::span<const Solution> solutions, const FitResult& fit);

}  // namespace sigma_hunt
