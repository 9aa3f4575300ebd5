#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "sigma_hunt/persist.hpp"
#include "temp_dir.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;
using testing::slurp;
using testing::spit;
using testing::TempDir;
namespace fs = std::filesystem;

TEST(Rows, CsvAndJsonlFormatting) {
  const Solution s{14, 24, 1};
  EXPECT_EQ(format_row(SolutionFormat::Csv, s), "14,15,24\n");
  EXPECT_EQ(format_row(SolutionFormat::Jsonl, s), "{\"n\":14,\"sigma\":24,\"index\":1}\n");
}

TEST(Rows, ParseBothFormats) {
  const std::vector<Solution> expected{{14, 24, 1}, {206, 312, 2}};
  EXPECT_EQ(parse_solutions("n,n_plus_1,sigma\n14,15,24\n206,207,312\n"), expected);
  EXPECT_EQ(parse_solutions("{\"n\":14,\"sigma\":24,\"index\":1}\n{\"n\":206,\"sigma\":312,\"index\":2}\n"),
            expected);
  EXPECT_TRUE(parse_solutions("").empty());
  EXPECT_TRUE(parse_solutions("n,n_plus_1,sigma\n").empty());
}

TEST(Rows, RejectsMalformedInput) {
  EXPECT_THROW(parse_solutions("n,n_plus_1,sigma\n14,15,24"), std::runtime_error);
  EXPECT_THROW(parse_solutions("n,n_plus_1,sigma\n14,16,24\n"), std::runtime_error);
  EXPECT_THROW(parse_solutions("n,n_plus_1,sigma\n14,15\n"), std::runtime_error);
  EXPECT_THROW(parse_solutions("n,n_plus_1,sigma\n14,15,x\n"), std::runtime_error);
  EXPECT_THROW(parse_solutions("{\"n\":14}\n"), std::runtime_error);
  EXPECT_THROW(parse_solutions("{\"n\":14,\"sigma\":24,\"index\":\"1\"}\n"), std::runtime_error);
}

TEST(CheckpointText, ExactRoundTrip) {
  const Checkpoint c{1, 999'999, 41, "/tmp/out.csv"};
  const std::string text = format_checkpoint(c);
  EXPECT_EQ(text, "version=1\nrange_lo=1\nlast_completed_n=999999\nsolutions_so_far=41\noutput=/tmp/out.csv\n");
  EXPECT_EQ(parse_checkpoint(text), c);
  EXPECT_EQ(format_checkpoint(parse_checkpoint(text)), text);
}

TEST(CheckpointText, RejectsMalformedText) {
  EXPECT_THROW(parse_checkpoint(""), CheckpointError);
  EXPECT_THROW(parse_checkpoint("version=2\nrange_lo=1\nlast_completed_n=0\nsolutions_so_far=0\noutput=x\n"),
               CheckpointError);
  EXPECT_THROW(parse_checkpoint("version=1\nrange_lo=1\nlast_completed_n=0\nsolutions_so_far=0\n"), CheckpointError);
  EXPECT_THROW(parse_checkpoint("version=1\nrange_lo=1\nlast=0\nsolutions_so_far=0\noutput=x\n"), CheckpointError);
  EXPECT_THROW(parse_checkpoint("version=1\nrange_lo=1\nlast_completed_n=-4\nsolutions_so_far=0\noutput=x\n"),
               CheckpointError);
  EXPECT_THROW(parse_checkpoint("version=1\nrange_lo=0\nlast_completed_n=0\nsolutions_so_far=0\noutput=x\n"),
               CheckpointError);
  EXPECT_THROW(parse_checkpoint("version=1\nrange_lo=1\nlast_completed_n=0\nsolutions_so_far=0\noutput=\n"),
               CheckpointError);
  EXPECT_THROW(read_checkpoint("/nonexistent/sigma_hunt.ckpt"), CheckpointError);
}

TEST(CheckpointFile, WriteIsAtomicAndReadable) {
  TempDir dir;
  const Checkpoint c{5, 100, 3, (dir / "x.csv").string()};
  write_checkpoint(dir / "x.ckpt", c);
  EXPECT_EQ(read_checkpoint(dir / "x.ckpt"), c);
  EXPECT_FALSE(fs::exists(dir / "x.ckpt.tmp"));
}

struct ResumeCase {
  SolutionFormat format;
  const char* file;
};

class ResumeTest : public ::testing::TestWithParam<ResumeCase> {};

TEST_P(ResumeTest, ResumedOutputIsByteIdenticalToOneShot) {
  TempDir dir;
  const auto [format, file] = GetParam();
  const SearchOptions opts{.segment_width = 1 << 15, .workers = 2};

  FileSolutionSink::Options one_shot{.output = dir / ("full_" + std::string(file)), .format = format};
  search_to_file(1, 1'000'000, one_shot, opts);

  const fs::path out = dir / file;
  const fs::path ckpt = dir / "run.ckpt";
  search_to_file(1, 500'000, {.output = out, .format = format, .checkpoint = ckpt}, opts);
  const Checkpoint mid = read_checkpoint(ckpt);
  EXPECT_EQ(mid.last_completed_n, 499'999u);
  EXPECT_EQ(mid.output_path, fs::absolute(out).string());
  const SearchSummary summary = resume(mid, ckpt, 1'000'000, opts);
  EXPECT_EQ(summary.last_completed_n, 999'999u);

  EXPECT_EQ(slurp(out), slurp(one_shot.output));
  const Checkpoint done = read_checkpoint(ckpt);
  EXPECT_EQ(done.last_completed_n, 999'999u);
  EXPECT_EQ(done.solutions_so_far, read_solution_file(out).size());
  EXPECT_NO_THROW(validate_checkpoint(done));
}

INSTANTIATE_TEST_SUITE_P(Formats, ResumeTest,
                         ::testing::Values(ResumeCase{SolutionFormat::Csv, "sols.csv"},
                                           ResumeCase{SolutionFormat::Jsonl, "sols.jsonl"}),
                         [](const auto& info) { return info.param.format == SolutionFormat::Csv ? "Csv" : "Jsonl"; });

TEST(Resume, ChainOfShortRunsMatchesOneShot) {
  TempDir dir;
  search_to_file(1, 2'000'000, {.output = dir / "full.csv"});
  const fs::path out = dir / "chain.csv";
  const fs::path ckpt = dir / "chain.ckpt";
  search_to_file(1, 14, {.output = out, .checkpoint = ckpt});
  for (u64 hi : {15ULL, 16ULL, 207ULL, 1000ULL, 65'537ULL, 999'999ULL, 2'000'000ULL}) {
    resume(read_checkpoint(ckpt), ckpt, hi, {.segment_width = 4099});
  }
  EXPECT_EQ(slurp(out), slurp(dir / "full.csv"));
}

TEST(Resume, NoOpWhenAlreadyComplete) {
  TempDir dir;
  const fs::path out = dir / "a.csv";
  const fs::path ckpt = dir / "a.ckpt";
  search_to_file(1, 100'000, {.output = out, .checkpoint = ckpt});
  const std::string before = slurp(out);
  const std::string ckpt_before = slurp(ckpt);
  const SearchSummary s = resume(read_checkpoint(ckpt), ckpt, 50'000);
  EXPECT_EQ(s.found, 0u);
  EXPECT_EQ(s.total, 24u);
  resume(read_checkpoint(ckpt), ckpt, 100'000);
  EXPECT_EQ(slurp(out), before);
  EXPECT_EQ(slurp(ckpt), ckpt_before);
}

class TamperTest : public ::testing::Test {
 protected:
  void SetUp() override {
    search_to_file(1, 100'000, {.output = out, .checkpoint = ckpt});
    text = slurp(out);
  }
  void expect_rejected() {
    const Checkpoint c = read_checkpoint(ckpt);
    EXPECT_THROW(resume(c, ckpt, 200'000), CheckpointError);
  }
  TempDir dir;
  fs::path out = dir / "t.csv";
  fs::path ckpt = dir / "t.ckpt";
  std::string text;
};

TEST_F(TamperTest, ModifiedSigma) {
  const auto pos = text.find("14,15,24");
  ASSERT_NE(pos, std::string::npos);
  spit(out, text.replace(pos, 8, "14,15,25"));
  expect_rejected();
}

TEST_F(TamperTest, DeletedRow) {
  const auto pos = text.find("957,958,");
  spit(out, text.erase(pos, text.find('\n', pos) - pos + 1));
  expect_rejected();
}

TEST_F(TamperTest, TruncatedLastLine) {
  text.pop_back();
  spit(out, text);
  expect_rejected();
}

TEST_F(TamperTest, ForgedRowPassingShapeChecks) {
  // 15 is not a solution; the row is well formed and in order
  const auto pos = text.find("206,207,");
  spit(out, text.insert(pos, "15,16,24\n").substr(0, text.rfind('\n', text.size() - 2) + 1));
  expect_rejected();
}

TEST_F(TamperTest, MissingOutputFile) {
  fs::remove(out);
  expect_rejected();
}

TEST_F(TamperTest, CheckpointAheadOfOutput) {
  Checkpoint c = read_checkpoint(ckpt);
  c.solutions_so_far += 1;
  write_checkpoint(ckpt, c);
  expect_rejected();
}

TEST(FileSink, WriteFailureIsReportedAndCheckpointUntouched) {
  if (!fs::exists("/dev/full")) GTEST_SKIP() << "/dev/full not available";
  TempDir dir;
  const fs::path ckpt = dir / "f.ckpt";
  const Checkpoint before{1, 0, 0, "/dev/full"};
  write_checkpoint(ckpt, before);
  FileSolutionSink sink({.output = "/dev/full", .checkpoint = ckpt, .append = true});
  sink.on_solution({14, 24, 1});
  EXPECT_THROW(sink.on_progress(100, 1), std::runtime_error);
  EXPECT_EQ(read_checkpoint(ckpt), before);
}

TEST(Format, DetectsFromFirstLine) {
  TempDir dir;
  spit(dir / "a", "n,n_plus_1,sigma\n");
  spit(dir / "b", "{\"n\":14,\"sigma\":24,\"index\":1}\n");
  spit(dir / "c", "");
  spit(dir / "d", "hello\n");
  EXPECT_EQ(detect_format(dir / "a"), SolutionFormat::Csv);
  EXPECT_EQ(detect_format(dir / "b"), SolutionFormat::Jsonl);
  EXPECT_EQ(detect_format(dir / "c"), SolutionFormat::Jsonl);
  EXPECT_THROW(detect_format(dir / "d"), std::runtime_error);
}

}  // namespace
}  // namespace sigma_hunt
