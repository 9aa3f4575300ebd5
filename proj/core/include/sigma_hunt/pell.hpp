#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigma_hunt/arith.hpp"
#include "sigma_hunt/wide_int.hpp"

namespace sigma_hunt {

// x^2 - 2 y^2 == sign. Each pair fixes one candidate n with sigma(n) odd
// on both sides of (n, n + 1):
//   sign -1: n = x^2,     n + 1 = 2 y^2
//   sign +1: n = 2 y^2,   n + 1 = x^2
struct PellPair {
  WideInt x;
  WideInt y;
  int sign = -1;

  WideInt n() const;
};

// All pairs with n() <= bound_n, in generation order: (1, 1) then
// (x, y) -> (x + 2y, x + y). bound_n >= 1.
std::vector<PellPair> enumerate_pell(const WideInt& bound_n);

PellPair next_pell(const PellPair& pair);

// sigma(x^2) from the factorization of x.
WideInt sigma_of_square(const WideInt& x, const RhoLimits& limits = {});
// sigma(2 y^2) = sigma(2^(2t+1)) * sigma(u^2) where y = 2^t u, u odd.
WideInt sigma_of_twice_square(const WideInt& y, const RhoLimits& limits = {});

struct PellCheck {
  PellPair pair;
  WideInt n;
  std::optional<WideInt> sigma_n;
  std::optional<WideInt> sigma_n_plus_1;
  bool violation = false;             // sigma(n) == sigma(n + 1)
  std::optional<std::string> failure;  // factoring gave up on x or y
};

struct OddSigmaReport {
  std::vector<PellCheck> checks;  // one per pair, in pair order
  std::vector<WideInt> violations;
  std::vector<WideInt> gave_up;  // n values left undecided

  bool clean() const { return violations.empty() && gave_up.empty(); }
};

// Checks sigma(n) != sigma(n + 1) for every pair with n <= bound_n. A
// factoring failure is recorded on its pair and in gave_up, never skipped.
// Throws std::logic_error if a coincidence has even sigma, which would
// contradict the odd-sigma characterisation.
OddSigmaReport check_odd_sigma(const WideInt& bound_n, const RhoLimits& limits = {}, unsigned workers = 1);

}  // namespace sigma_hunt
