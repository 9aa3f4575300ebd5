#include "sigma_hunt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;
using nlohmann::json;

json properties_to_json(const PropertyReport& r) {
  json hits = json::array();
  for (const auto& h : r.pow23_hits) hits.push_back({{"n", h.n}, {"sigma", h.sigma}, {"a", h.a}, {"b", h.b}});
  return {{"total_solutions", r.total_solutions},
          {"not_div_by_6", r.not_div_by_6},
          {"not_div_by_4", r.not_div_by_4},
          {"not_div_by_8", r.not_div_by_8},
          {"pow23_hits", hits}};
}

json repeats_to_json(std::span<const RepeatGroup> groups) {
  json out = json::array();
  std::size_t rows = 0;
  for (const auto& g : groups) {
    json members = json::array();
    for (const auto& m : g.members) members.push_back({{"n", m.n}, {"index", m.index}});
    json pairs = json::array();
    for (const auto& p : g.pair_rows) {
      pairs.push_back({{"n", p.first.n},
                       {"index_n", p.first.index},
                       {"n_plus_k", p.second.n},
                       {"index_n_plus_k", p.second.index},
                       {"k", p.k()}});
    }
    rows += g.pair_rows.size();
    out.push_back({{"sigma", g.sigma}, {"members", members}, {"pair_rows", pairs}});
  }
  return {{"groups", out}, {"pair_row_count", rows}};
}

json fit_to_json(std::span<const Solution> solutions, const FitResult& fit) {
  return {{"slope", fit.law.slope},
          {"intercept", fit.law.intercept},
          {"sample_count", fit.sample_count},
          {"threshold_n", fit.threshold_n},
          {"max_relative_error_beyond", fit.max_relative_error_beyond},
          {"published",
           {{"slope", kPublishedGrowthLaw.slope},
            {"intercept", kPublishedGrowthLaw.intercept},
            {"max_relative_error_beyond",
             max_relative_error(solutions, kPublishedGrowthLaw, fit.threshold_n)}}}};
}

json optional_to_json(const std::optional<u64>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

PropertyReport property_report(std::span<const Solution> solutions) {
  PropertyReport r;
  r.total_solutions = solutions.size();
  for (const Solution& s : solutions) {
    if (s.sigma % 6 != 0) r.not_div_by_6.push_back(s.n);
    if (s.sigma % 4 != 0) r.not_div_by_4.push_back(s.n);
    if (s.sigma % 8 != 0) r.not_div_by_8.push_back(s.n);
    u64 rest = s.sigma;
    unsigned a = 0;
    unsigned b = 0;
    while (rest % 2 == 0) {
      rest /= 2;
      ++a;
    }
    while (rest % 3 == 0) {
      rest /= 3;
      ++b;
    }
    if (rest == 1) r.pow23_hits.push_back({s.n, s.sigma, a, b});
  }
  return r;
}

std::vector<RepeatGroup> find_repeats(std::span<const Solution> solutions) {
  std::map<u64, std::vector<Solution>> by_sigma;
  for (const Solution& s : solutions) by_sigma[s.sigma].push_back(s);
  std::vector<RepeatGroup> groups;
  for (auto& [value, members] : by_sigma) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(), [](const Solution& a, const Solution& b) { return a.n < b.n; });
    RepeatGroup g;
    g.sigma = value;
    g.members = std::move(members);
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      for (std::size_t j = i + 1; j < g.members.size(); ++j) g.pair_rows.push_back({g.members[i], g.members[j]});
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

double relative_error(const Solution& s, const GrowthLaw& law) {
  const double y = static_cast<double>(s.index);
  return (y - estimate_count(static_cast<double>(s.n), law)) / y;
}

double max_relative_error(std::span<const Solution> solutions, const GrowthLaw& law, std::uint64_t threshold_n) {
  double worst = 0;
  for (const Solution& s : solutions) {
    if (s.n >= threshold_n) worst = std::max(worst, std::abs(relative_error(s, law)));
  }
  return worst;
}

FitResult fit_growth(std::span<const Solution> solutions, std::uint64_t threshold_n) {
  if (solutions.size() < 2) throw std::invalid_argument("fit_growth: need at least two solutions");
  const u64 first_n = solutions.front().n;
  if (std::all_of(solutions.begin(), solutions.end(), [&](const Solution& s) { return s.n == first_n; })) {
    throw std::invalid_argument("fit_growth: all abscissae are equal");
  }
  const double count = static_cast<double>(solutions.size());
  double mean_x = 0;
  double mean_y = 0;
  for (const Solution& s : solutions) {
    mean_x += std::cbrt(static_cast<double>(s.n));
    mean_y += static_cast<double>(s.index);
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0;
  double sxy = 0;
  for (const Solution& s : solutions) {
    const double dx = std::cbrt(static_cast<double>(s.n)) - mean_x;
    sxx += dx * dx;
    sxy += dx * (static_cast<double>(s.index) - mean_y);
  }
  if (!(sxx > 0)) throw std::invalid_argument("fit_growth: all abscissae are equal");

  FitResult fit;
  fit.law.slope = sxy / sxx;
  fit.law.intercept = mean_y - fit.law.slope * mean_x;
  fit.sample_count = solutions.size();
  fit.threshold_n = threshold_n;
  fit.max_relative_error_beyond = max_relative_error(solutions, fit.law, threshold_n);
  return fit;
}

double estimate_count(double n, const GrowthLaw& law) { return law.slope * std::cbrt(n) + law.intercept; }

BandCrossings band_check(std::span<const Solution> solutions, double lower, double upper) {
  BandCrossings out;
  for (const Solution& s : solutions) {
    const double root = std::cbrt(static_cast<double>(s.n));
    const double y = static_cast<double>(s.index);
    if (y < lower * root) out.last_below_lower = std::max(out.last_below_lower.value_or(0), s.n);
    if (y > upper * root) out.last_above_upper = std::max(out.last_above_upper.value_or(0), s.n);
  }
  return out;
}

std::vector<SeriesRow> growth_series(std::span<const Solution> solutions, const GrowthLaw& law, double lower,
                                     double upper) {
  std::vector<SeriesRow> rows;
  rows.reserve(solutions.size());
  for (const Solution& s : solutions) {
    const double root = std::cbrt(static_cast<double>(s.n));
    rows.push_back({s.n, s.index, lower * root, upper * root, law.slope * root + law.intercept,
                    relative_error(s, law)});
  }
  return rows;
}

std::string format_series_csv(std::span<const SeriesRow> rows) {
  std::ostringstream out;
  out.precision(10);
  out << "n,count,y1,y2,y_adj,epsilon\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.count << ',' << r.y1 << ',' << r.y2 << ',' << r.y_adj << ',' << r.epsilon << '\n';
  }
  return out.str();
}

std::string property_report_json(const PropertyReport& report) { return properties_to_json(report).dump(2); }

std::string repeats_json(std::span<const RepeatGroup> groups) { return repeats_to_json(groups).dump(2); }

std::string fit_json(std::span<const Solution> solutions, const FitResult& fit) {
  return fit_to_json(solutions, fit).dump(2);
}

std::string analysis_report_json(std::span<const Solution> solutions, const AnalysisReportOptions& options) {
  json doc;
  doc["properties"] = properties_to_json(property_report(solutions));
  doc["repeats"] = repeats_to_json(find_repeats(solutions));
  if (solutions.size() >= 2) {
    doc["fit"] = fit_to_json(solutions, fit_growth(solutions, options.threshold_n));
  } else {
    doc["fit"] = nullptr;
  }
  const BandCrossings band = band_check(solutions, options.lower, options.upper);
  doc["band"] = {{"lower", options.lower},
                 {"upper", options.upper},
                 {"last_below_lower", optional_to_json(band.last_below_lower)},
                 {"last_above_upper", optional_to_json(band.last_above_upper)}};
  return doc.dump(2);
}

}  // namespace sigma_hunt
