#include "sigma_hunt/pell.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace sigma_hunt {

WideInt PellPair::n() const { return sign < 0 ? WideInt(x * x) : WideInt(2 * y * y); }

PellPair next_pell(const PellPair& pair) {
  PellPair next{pair.x + 2 * pair.y, pair.x + pair.y, -pair.sign};
  const WideInt norm = next.x * next.x - 2 * next.y * next.y;
  if (norm != next.sign) throw std::logic_error("Pell recurrence left x^2 - 2y^2 = +-1");
  return next;
}

std::vector<PellPair> enumerate_pell(const WideInt& bound_n) {
  if (bound_n < 1) throw std::invalid_argument("enumerate_pell: bound must be >= 1");
  std::vector<PellPair> pairs;
  for (PellPair p{1, 1, -1}; p.n() <= bound_n; p = next_pell(p)) pairs.push_back(p);
  return pairs;
}

WideInt sigma_of_square(const WideInt& x, const RhoLimits& limits) {
  WideFactorization f = factorize(x, limits);
  for (auto& pp : f.factors) pp.exponent *= 2;
  return sigma_of(f);
}

WideInt sigma_of_twice_square(const WideInt& y, const RhoLimits& limits) {
  const mp_bitcnt_t t = mpz_scan1(y.get_mpz_t(), 0);
  WideInt odd;
  mpz_fdiv_q_2exp(odd.get_mpz_t(), y.get_mpz_t(), t);
  // sigma(2^(2t+1)) = 2^(2t+2) - 1
  WideInt two_part;
  mpz_ui_pow_ui(two_part.get_mpz_t(), 2, 2 * t + 2);
  two_part -= 1;
  return two_part * sigma_of_square(odd, limits);
}

OddSigmaReport check_odd_sigma(const WideInt& bound_n, const RhoLimits& limits, unsigned workers) {
  if (workers == 0) throw std::invalid_argument("check_odd_sigma: need at least one worker");
  OddSigmaReport report;
  for (auto& pair : enumerate_pell(bound_n)) {
    PellCheck c;
    c.n = pair.n();
    c.pair = std::move(pair);
    report.checks.push_back(std::move(c));
  }

  auto evaluate = [&](PellCheck& c) {
    try {
      const WideInt sx = sigma_of_square(c.pair.x, limits);
      const WideInt sy = sigma_of_twice_square(c.pair.y, limits);
      if (c.pair.sign < 0) {
        c.sigma_n = sx;
        c.sigma_n_plus_1 = sy;
      } else {
        c.sigma_n = sy;
        c.sigma_n_plus_1 = sx;
      }
      c.violation = sx == sy;
    } catch (const FactoringGaveUp& e) {
      c.failure = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < report.checks.size(); i = next++) evaluate(report.checks[i]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(work);
  }

  for (const auto& c : report.checks) {
    if (c.failure) report.gave_up.push_back(c.n);
    if (!c.violation) continue;
    if (mpz_even_p(c.sigma_n->get_mpz_t())) {
      throw std::logic_error("sigma(n) == sigma(n + 1) is even at a square/twice-square n = " + to_decimal(c.n));
    }
    report.violations.push_back(c.n);
  }
  return report;
}

}  // namespace sigma_hunt
