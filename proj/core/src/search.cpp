#include "sigma_hunt/search.hpp"

#include <algorithm>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "sigma_hunt/arith.hpp"
#include "sigma_hunt/sieve.hpp"

namespace sigma_hunt {
namespace {

using u64 = std::uint64_t;

// Compares consecutive sigma values segment by segment, carrying the last
// value across the boundary. Runs on the consumer thread only.
class PairDetector {
 public:
  PairDetector(SolutionSink& sink, u64 start_index) : sink_(sink), total_(start_index) {}

  // values[i] == sigma(lo + i)
  void consume(u64 lo, std::span<const u64> values) {
    if (values.empty()) return;
    if (has_prev_ && prev_ == values.front()) emit(lo - 1, values.front());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      if (values[i] == values[i + 1]) emit(lo + i, values[i]);
    }
    prev_ = values.back();
    has_prev_ = true;
    last_completed_ = lo + values.size() - 2;
    sink_.on_progress(last_completed_, total_);
  }

  u64 total() const { return total_; }
  u64 found() const { return found_; }
  std::optional<u64> last_n() const { return last_n_; }
  u64 last_completed() const { return last_completed_; }
  void set_last_completed(u64 v) { last_completed_ = v; }

 private:
  void emit(u64 n, u64 sigma) {
    ++total_;
    ++found_;
    last_n_ = n;
    sink_.on_solution({n, sigma, total_});
  }

  SolutionSink& sink_;
  u64 total_;
  u64 found_ = 0;
  bool has_prev_ = false;
  u64 prev_ = 0;
  std::optional<u64> last_n_;
  u64 last_completed_ = 0;
};

bool stop_requested(const SearchOptions& options) {
  return options.stop != nullptr && options.stop->load(std::memory_order_relaxed);
}

// Segment k covers [start + k * width, min(start + (k + 1) * width, end)).
struct Plan {
  u64 start;
  u64 end;
  u64 width;
  u64 count;

  u64 lo(u64 k) const { return start + k * width; }
  u64 hi(u64 k) const { return std::min(end, lo(k) + width); }
};

void run_sequential(const Plan& plan, const SmallPrimeTable& primes, PairDetector& detector,
                    const SearchOptions& options, bool& interrupted) {
  SegmentSiever siever(primes);
  std::vector<u64> buffer(std::min(plan.width, plan.end - plan.start));
  for (u64 k = 0; k < plan.count; ++k) {
    const u64 a = plan.lo(k);
    const u64 b = plan.hi(k);
    siever.sieve(a, b, buffer);
    detector.consume(a, std::span<const u64>(buffer.data(), b - a));
    if (k + 1 < plan.count && stop_requested(options)) {
      interrupted = true;
      return;
    }
  }
}

// Workers sieve segments out of order; the calling thread reassembles them
// in order and runs detection. At most `window` segments are in flight.
void run_parallel(const Plan& plan, const SmallPrimeTable& primes, PairDetector& detector,
                  const SearchOptions& options, bool& interrupted) {
  const u64 window = 2 * u64{options.workers};
  std::mutex mu;
  std::condition_variable cv;
  std::map<u64, std::vector<u64>> ready;
  std::vector<std::vector<u64>> spare;
  u64 next_task = 0;
  u64 consumed = 0;
  bool abort = false;
  std::exception_ptr worker_error;

  auto worker = [&] {
    SegmentSiever siever(primes);
    for (;;) {
      u64 k = 0;
      std::vector<u64> buffer;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return abort || next_task >= plan.count || next_task < consumed + window; });
        if (abort || next_task >= plan.count) return;
        k = next_task++;
        if (!spare.empty()) {
          buffer = std::move(spare.back());
          spare.pop_back();
        }
      }
      try {
        buffer.resize(plan.hi(k) - plan.lo(k));
        siever.sieve(plan.lo(k), plan.hi(k), buffer);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!worker_error) worker_error = std::current_exception();
        abort = true;
        cv.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      ready.emplace(k, std::move(buffer));
      cv.notify_all();
    }
  };

  std::vector<std::jthread> threads;
  threads.reserve(options.workers);
  for (unsigned i = 0; i < options.workers; ++i) threads.emplace_back(worker);

  auto shutdown = [&] {
    {
      std::lock_guard lock(mu);
      abort = true;
    }
    cv.notify_all();
    threads.clear();
  };

  try {
    for (u64 k = 0; k < plan.count; ++k) {
      std::vector<u64> values;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return worker_error || ready.contains(k); });
        if (worker_error) break;
        auto node = ready.extract(k);
        values = std::move(node.mapped());
      }
      detector.consume(plan.lo(k), values);
      {
        std::lock_guard lock(mu);
        ++consumed;
        spare.push_back(std::move(values));
      }
      cv.notify_all();
      if (k + 1 < plan.count && stop_requested(options)) {
        interrupted = true;
        break;
      }
    }
  } catch (...) {
    shutdown();
    throw;
  }
  shutdown();
  if (worker_error) std::rethrow_exception(worker_error);
}

}  // namespace

SearchSummary search_range(std::uint64_t lo, std::uint64_t hi, SolutionSink& sink,
                           const SearchOptions& options) {
  if (lo < 1 || hi <= lo) {
    throw std::invalid_argument("search_range: need 1 <= lo < hi, got [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + ")");
  }
  if (hi > kSigmaSafeLimit) {
    throw std::invalid_argument("search_range: hi = " + std::to_string(hi) +
                                " is beyond the 64-bit sigma range");
  }
  if (options.segment_width == 0) throw std::invalid_argument("search_range: segment width must be positive");
  if (options.workers == 0) throw std::invalid_argument("search_range: need at least one worker");

  // sigma(hi) is needed to test n = hi - 1.
  const Plan plan{lo, hi + 1, options.segment_width,
                  (hi + 1 - lo + options.segment_width - 1) / options.segment_width};
  const SmallPrimeTable primes = primes_for_range(hi + 1);

  PairDetector detector(sink, options.start_index);
  detector.set_last_completed(lo - 1);
  bool interrupted = false;
  if (options.workers == 1 || plan.count == 1) {
    run_sequential(plan, primes, detector, options, interrupted);
  } else {
    run_parallel(plan, primes, detector, options, interrupted);
  }

  SearchSummary summary;
  summary.found = detector.found();
  summary.total = detector.total();
  summary.last_n = detector.last_n();
  summary.last_completed_n = detector.last_completed();
  summary.interrupted = interrupted;
  return summary;
}

std::vector<Solution> find_solutions(std::uint64_t lo, std::uint64_t hi, const SearchOptions& options) {
  CollectingSink sink;
  search_range(lo, hi, sink, options);
  return std::move(sink.solutions);
}

std::uint64_t count_up_to(std::uint64_t n, const SearchOptions& options) {
  if (n < 1) throw std::invalid_argument("count_up_to: n must be positive");
  class Counter final : public SolutionSink {
   public:
    void on_solution(const Solution&) override { ++count; }
    u64 count = 0;
  } counter;
  search_range(1, n + 1, counter, options);
  return counter.count;
}

}  // namespace sigma_hunt
