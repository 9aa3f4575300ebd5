#include <atomic>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sigma_hunt/arith.hpp"
#include "sigma_hunt/search.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;

std::vector<u64> ns(const std::vector<Solution>& sols) {
  std::vector<u64> out;
  for (const Solution& s : sols) out.push_back(s.n);
  return out;
}

TEST(Search, FirstSolutions) {
  const auto sols = find_solutions(1, 3000);
  EXPECT_EQ(ns(sols), (std::vector<u64>{14, 206, 957, 1334, 1364, 1634, 2685, 2974}));
  for (std::size_t i = 0; i < sols.size(); ++i) EXPECT_EQ(sols[i].index, i + 1);
  EXPECT_EQ(sols[0].sigma, 24u);
}

TEST(Search, EmptyAndTinyRanges) {
  EXPECT_TRUE(find_solutions(1, 2).empty());
  EXPECT_TRUE(find_solutions(1, 14).empty());
  EXPECT_EQ(ns(find_solutions(14, 15)), (std::vector<u64>{14}));
  EXPECT_EQ(ns(find_solutions(200, 210, {.segment_width = 7})), (std::vector<u64>{206}));
}

TEST(Search, CountUpToIsInclusive) {
  EXPECT_EQ(count_up_to(13), 0u);
  EXPECT_EQ(count_up_to(14), 1u);
  EXPECT_EQ(count_up_to(2685), 7u);
  EXPECT_EQ(count_up_to(79833), 22u);
}

TEST(Search, MatchesBruteForceToOneHundredThousand) {
  constexpr u64 kHi = 100'000;
  // the double loop: sigma(n) = sum over d | n of d, for every n up to kHi + 1
  std::vector<u64> table(kHi + 2, 0);
  for (u64 d = 1; d <= kHi + 1; ++d) {
    for (u64 m = d; m <= kHi + 1; m += d) table[m] += d;
  }
  std::vector<u64> expected;
  for (u64 n = 1; n < kHi; ++n) {
    if (table[n] == table[n + 1]) expected.push_back(n);
  }
  EXPECT_EQ(ns(find_solutions(1, kHi)), expected);
}

TEST(Search, EverySolutionReverifiesWithPointSigma) {
  const auto sols = find_solutions(1, 50'000'000);
  ASSERT_EQ(sols.size(), 194u);
  for (const Solution& s : sols) {
    ASSERT_EQ(sigma(s.n), s.sigma);
    ASSERT_EQ(sigma(s.n + 1), s.sigma);
  }
}

TEST(Search, DeterministicAcrossWorkersAndWidths) {
  const u64 lo = 1'000'000;
  const u64 hi = 30'000'000;
  const auto reference = find_solutions(lo, hi);
  ASSERT_FALSE(reference.empty());
  for (unsigned workers : {1u, 2u, 3u, 8u}) {
    for (u64 width : {u64{1} << 12, u64{99'991}, u64{1} << 20, kDefaultSegmentWidth}) {
      EXPECT_EQ(find_solutions(lo, hi, {.segment_width = width, .workers = workers}), reference)
          << workers << " workers, width " << width;
    }
  }
}

TEST(Search, PairsStraddlingSegmentBoundaries) {
  // put a boundary right between n and n + 1 for each of the first solutions
  for (u64 n : {14ULL, 206ULL, 957ULL, 1334ULL, 1364ULL}) {
    const auto sols = find_solutions(n - 5, n + 5, {.segment_width = 6});
    EXPECT_EQ(ns(sols), (std::vector<u64>{n})) << n;
  }
}

TEST(Search, StartIndexOffsetsIndices) {
  const auto sols = find_solutions(200, 3000, {.start_index = 10});
  ASSERT_EQ(sols.size(), 7u);
  EXPECT_EQ(sols.front().index, 11u);
  EXPECT_EQ(sols.back().index, 17u);
}

class ProgressSink : public SolutionSink {
 public:
  void on_solution(const Solution& s) override { solutions.push_back(s); }
  void on_progress(u64 last_completed_n, u64 so_far) override {
    progress.emplace_back(last_completed_n, so_far);
  }
  std::vector<Solution> solutions;
  std::vector<std::pair<u64, u64>> progress;
};

TEST(Search, ProgressIsMonotoneAndConsistent) {
  ProgressSink sink;
  const SearchSummary summary = search_range(1, 100'000, sink, {.segment_width = 4096, .workers = 2});
  ASSERT_FALSE(sink.progress.empty());
  u64 previous = 0;
  for (const auto& [last, so_far] : sink.progress) {
    EXPECT_GT(last, previous);
    previous = last;
    u64 expected = 0;
    for (const Solution& s : sink.solutions) expected += s.n <= last;
    EXPECT_EQ(so_far, expected) << last;
  }
  EXPECT_EQ(summary.last_completed_n, 99'999u);
  EXPECT_EQ(sink.progress.back().first, 99'999u);
  EXPECT_EQ(summary.found, sink.solutions.size());
  EXPECT_FALSE(summary.interrupted);
  ASSERT_TRUE(summary.last_n.has_value());
  EXPECT_EQ(*summary.last_n, sink.solutions.back().n);
}

class StoppingSink : public SolutionSink {
 public:
  explicit StoppingSink(std::atomic<bool>& stop) : stop_(stop) {}
  void on_solution(const Solution& s) override { solutions.push_back(s); }
  void on_progress(u64 last, u64) override {
    last_seen = last;
    if (last >= 1'000'000) stop_ = true;
  }
  std::vector<Solution> solutions;
  u64 last_seen = 0;

 private:
  std::atomic<bool>& stop_;
};

TEST(Search, StopFlagInterruptsAtASegmentBoundary) {
  std::atomic<bool> stop{false};
  StoppingSink sink(stop);
  const SearchSummary summary =
      search_range(1, 100'000'000, sink, {.segment_width = 1 << 16, .workers = 2, .stop = &stop});
  EXPECT_TRUE(summary.interrupted);
  EXPECT_LT(summary.last_completed_n, 100'000'000u - 1);
  EXPECT_EQ(summary.last_completed_n, sink.last_seen);
  // everything reported is exactly the solutions up to the last completed n
  std::vector<Solution> expected = find_solutions(1, summary.last_completed_n + 1);
  EXPECT_EQ(sink.solutions, expected);
}

class ThrowingSink : public SolutionSink {
 public:
  void on_solution(const Solution&) override { throw std::runtime_error("disk full"); }
};

TEST(Search, SinkExceptionsPropagate) {
  ThrowingSink sink;
  EXPECT_THROW(search_range(1, 10'000'000, sink, {.segment_width = 1 << 14, .workers = 3}), std::runtime_error);
}

TEST(Search, RejectsInvalidRanges) {
  CollectingSink sink;
  EXPECT_THROW(search_range(0, 10, sink), std::invalid_argument);
  EXPECT_THROW(search_range(10, 5, sink), std::invalid_argument);
  EXPECT_THROW(search_range(1, 10, sink, {.segment_width = 0}), std::invalid_argument);
}

}  // namespace
}  // namespace sigma_hunt
