#pragma once

#include <cstdint>
#include <span>

namespace sigma_hunt::detail {

// Primes below 2^16, computed once.
std::span<const std::uint32_t> primes_below_65536();

// Primes below 1000: the cheap pre-filter ahead of the strong tests.
std::span<const std::uint32_t> trial_primes();

}  // namespace sigma_hunt::detail
