#include <gtest/gtest.h>

#include "sigma_hunt/fixtures.hpp"
#include "verify.hpp"

namespace sigma_hunt {
namespace {

TEST(Fixtures, RowCounts) {
  const auto& sols = published_solutions();
  ASSERT_EQ(sols.size(), 1268u);
  EXPECT_EQ(published_repeats().size(), 22u);
  std::size_t up_to_4_25e9 = 0;
  for (const Solution& s : sols) up_to_4_25e9 += s.n <= 4'250'000'000ULL;
  EXPECT_EQ(up_to_4_25e9, 832u);
  EXPECT_LE(sols.back().n, kPublishedSearchLimit);
}

TEST(Fixtures, OrderedWithConsecutiveIndices) {
  const auto& sols = published_solutions();
  for (std::size_t i = 0; i < sols.size(); ++i) {
    ASSERT_EQ(sols[i].index, i + 1);
    if (i > 0) ASSERT_LT(sols[i - 1].n, sols[i].n);
  }
  EXPECT_EQ(sols.front(), (Solution{14, 24, 1}));
}

TEST(Fixtures, TranscriptionSelfCheck) {
  EXPECT_TRUE(cli::self_check_fixture(cli::FixtureKind::Solutions).empty());
  EXPECT_TRUE(cli::self_check_fixture(cli::FixtureKind::Repeats).empty());
}

TEST(Fixtures, RepeatRowParsing) {
  const auto rows = parse_repeat_rows("sigma,n,index_n,n_plus_k,index_n_plus_k,k\n120960,79826,21,79833,22,7\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (RepeatRow{120960, 79826, 21, 79833, 22, 7}));
  EXPECT_EQ(published_repeats().front(), rows[0]);
  EXPECT_THROW(parse_repeat_rows("sigma,n\n1,2\n"), std::runtime_error);
}

TEST(Verify, ReportsFirstDivergence) {
  std::vector<Solution> sols(published_solutions().begin(), published_solutions().begin() + 8);
  EXPECT_TRUE(cli::verify_solutions(sols, 3000).ok());
  sols.erase(sols.begin() + 2);  // drop 957
  const auto r = cli::verify_solutions(sols, 3000);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.matched, 2u);
  EXPECT_EQ(r.compared, 8u);
  EXPECT_NE(r.summary().find("ordinal 3: expected n=957"), std::string::npos) << r.summary();
}

TEST(Verify, FixtureNames) {
  EXPECT_EQ(cli::fixture_by_name("appendix_d"), cli::FixtureKind::Solutions);
  EXPECT_EQ(cli::fixture_by_name("published_solutions"), cli::FixtureKind::Solutions);
  EXPECT_EQ(cli::fixture_by_name("appendix_c"), cli::FixtureKind::Repeats);
  EXPECT_EQ(cli::fixture_by_name("published_repeats"), cli::FixtureKind::Repeats);
  EXPECT_FALSE(cli::fixture_by_name("appendix_x"));
}

}  // namespace
}  // namespace sigma_hunt
