#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

namespace sigma_hunt {

inline constexpr std::uint64_t kDefaultSegmentWidth = std::uint64_t{1} << 22;

// sigma(n) == sigma(n + 1) == sigma; index is the 1-based ordinal of n among
// all solutions.
struct Solution {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  std::uint64_t index = 0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Receives solutions in strictly increasing n from a single thread.
class SolutionSink {
 public:
  virtual ~SolutionSink() = default;
  virtual void on_solution(const Solution& s) = 0;
  // Every pair (m, m + 1) with m <= last_completed_n has been examined and
  // all solutions among them delivered. Called once per segment.
  virtual void on_progress(std::uint64_t last_completed_n, std::uint64_t solutions_so_far) {
    (void)last_completed_n;
    (void)solutions_so_far;
  }
};

class CollectingSink final : public SolutionSink {
 public:
  void on_solution(const Solution& s) override { solutions.push_back(s); }
  std::vector<Solution> solutions;
};

struct SearchOptions {
  std::uint64_t segment_width = kDefaultSegmentWidth;
  unsigned workers = 1;
  // Number of solutions with n < lo; the first emitted index is this + 1.
  std::uint64_t start_index = 0;
  // Polled between segments; a set flag ends the search after the current
  // segment has been fully delivered.
  const std::atomic<bool>* stop = nullptr;
};

struct SearchSummary {
  std::uint64_t found = 0;  // solutions emitted by this call
  std::uint64_t total = 0;  // start_index + found
  std::optional<std::uint64_t> last_n;
  std::uint64_t last_completed_n = 0;
  bool interrupted = false;
};

// Emits every solution with lo <= n < hi. Requires 1 <= lo < hi and
// hi <= kSigmaSafeLimit; throws std::invalid_argument otherwise. Sink
// exceptions propagate after the workers have been joined.
SearchSummary search_range(std::uint64_t lo, std::uint64_t hi, SolutionSink& sink,
                           const SearchOptions& options = {});

std::vector<Solution> find_solutions(std::uint64_t lo, std::uint64_t hi,
                                     const SearchOptions& options = {});

// |{ m <= n : sigma(m) == sigma(m + 1) }|
std::uint64_t count_up_to(std::uint64_t n, const SearchOptions& options = {});

}  // namespace sigma_hunt
