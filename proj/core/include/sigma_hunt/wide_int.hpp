#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sigma_hunt {

// Arbitrary-precision non-negative integer. GMP's C++ wrapper is used as-is;
// the helpers below cover the conversions the rest of the library needs.
using WideInt = mpz_class;

WideInt to_wide(std::uint64_t v);

// Some(v) when the value fits an unsigned 64-bit integer.
std::optional<std::uint64_t> to_u64(const WideInt& v);

std::string to_decimal(const WideInt& v);

// Strict decimal parse: digits only, no sign, no whitespace.
// Throws std::invalid_argument otherwise.
WideInt parse_decimal(std::string_view text);

// Parses "123", "1e6", "1.5e10", "2.5E3". The mantissa/exponent form is
// accepted only when it denotes an exact integer. Throws
// std::invalid_argument for anything else (negative, fractional, junk).
WideInt parse_exact_integer(std::string_view text);

WideInt pow_ui(unsigned long base, unsigned long exponent);

}  // namespace sigma_hunt
