#include "sigma_hunt/wide_int.hpp"

#include <cctype>
#include <stdexcept>

namespace sigma_hunt {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Scientific shorthand beyond this would allocate absurd integers.
constexpr unsigned long kMaxDecimalExponent = 100000;

}  // namespace

WideInt to_wide(std::uint64_t v) {
  WideInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

std::optional<std::uint64_t> to_u64(const WideInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return std::nullopt;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

std::string to_decimal(const WideInt& v) { return v.get_str(10); }

WideInt parse_decimal(std::string_view text) {
  if (!all_digits(text)) {
    throw std::invalid_argument("not a non-negative decimal integer: '" + std::string(text) + "'");
  }
  return WideInt(std::string(text), 10);
}

WideInt parse_exact_integer(std::string_view text) {
  const std::string original(text);
  auto fail = [&](const char* why) -> WideInt {
    throw std::invalid_argument("cannot parse '" + original + "' as an exact integer: " + why);
  };

  std::string_view mantissa = text;
  std::string_view exponent;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = text.substr(e + 1);
    if (!exponent.empty() && exponent.front() == '+') exponent.remove_prefix(1);
    if (!all_digits(exponent)) return fail("bad exponent");
  }

  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
    if (!frac_part.empty() && !all_digits(frac_part)) return fail("bad fraction");
  }
  if (int_part.empty() && frac_part.empty()) return fail("no digits");
  if (!int_part.empty() && !all_digits(int_part)) return fail("bad digits");

  unsigned long exp10 = 0;
  if (!exponent.empty()) {
    if (exponent.size() > 6) return fail("exponent too large");
    exp10 = std::stoul(std::string(exponent));
    if (exp10 > kMaxDecimalExponent) return fail("exponent too large");
  }

  WideInt digits(std::string(int_part) + std::string(frac_part), 10);
  const unsigned long frac_len = frac_part.size();
  if (exp10 >= frac_len) {
    return digits * pow_ui(10, exp10 - frac_len);
  }
  const WideInt scale = pow_ui(10, frac_len - exp10);
  if (digits % scale != 0) return fail("value is not an integer");
  return digits / scale;
}

WideInt pow_ui(unsigned long base, unsigned long exponent) {
  WideInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

}  // namespace sigma_hunt
