#include "sigma_hunt/families.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "sigma_hunt/arith.hpp"

namespace sigma_hunt {
namespace {

long q_offset(FamilyForm form) { return form == FamilyForm::One ? 4 : 10; }

// 64 bits covers the deterministic range of is_probable_prime.
bool below_2_64(const WideInt& v) { return to_u64(v).has_value(); }

std::optional<FamilyHit> test_candidate(FamilyForm form, unsigned m) {
  FamilyHit hit = family_candidate(form, m);
  if (!is_probable_prime(hit.q)) return std::nullopt;
  if (!is_probable_prime(hit.p)) return std::nullopt;
  hit.status = below_2_64(hit.q) && below_2_64(hit.p) ? PrimalityStatus::Proved : PrimalityStatus::Probable;
  if (!verify_hit(hit)) {
    throw std::logic_error("family hit at m=" + std::to_string(m) + " failed closed-form verification");
  }
  return hit;
}

}  // namespace

FamilyHit family_candidate(FamilyForm form, unsigned m) {
  if (m < 1) throw std::invalid_argument("family_candidate: m must be >= 1");
  FamilyHit hit;
  hit.form = form;
  hit.m = m;
  const WideInt three_m = pow_ui(3, m);
  hit.q = 3 * three_m - q_offset(form);
  const WideInt power_q = three_m * hit.q;
  if (form == FamilyForm::One) {
    hit.p = (power_q - 1) / 2;
    hit.n = 2 * hit.p;
    hit.n_plus_1 = power_q;
  } else {
    hit.p = (power_q + 1) / 2;
    hit.n = power_q;
    hit.n_plus_1 = 2 * hit.p;
  }
  return hit;
}

bool verify_hit(const FamilyHit& hit) {
  if (hit.m < 1) return false;
  const WideInt three_m = pow_ui(3, hit.m);
  const WideInt three_m1 = 3 * three_m;
  if (hit.q != three_m1 - q_offset(hit.form)) return false;
  const WideInt power_q = three_m * hit.q;
  const WideInt two_p = 2 * hit.p;
  if (hit.n_plus_1 != hit.n + 1) return false;
  if (hit.form == FamilyForm::One) {
    if (two_p != power_q - 1 || hit.n != two_p || hit.n_plus_1 != power_q) return false;
  } else {
    if (two_p != power_q + 1 || hit.n != power_q || hit.n_plus_1 != two_p) return false;
  }
  // sigma(2p) = 3(p + 1) and sigma(3^m q) = ((3^(m+1) - 1) / 2)(q + 1).
  const WideInt sigma_two_p = 3 * (hit.p + 1);
  const WideInt sigma_power_q = (three_m1 - 1) / 2 * (hit.q + 1);
  return sigma_two_p == sigma_power_q;
}

std::vector<FamilyHit> scan_family(FamilyForm form, unsigned m_lo, unsigned m_hi, unsigned workers) {
  if (m_lo < 1 || m_hi < m_lo) throw std::invalid_argument("scan_family: need 1 <= m_lo <= m_hi");
  if (workers == 0) throw std::invalid_argument("scan_family: need at least one worker");
  const std::size_t count = std::size_t{m_hi} - m_lo + 1;
  std::vector<std::optional<FamilyHit>> slots(count);

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = test_candidate(form, static_cast<unsigned>(m_lo + i));
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  std::vector<FamilyHit> hits;
  for (auto& slot : slots) {
    if (slot) hits.push_back(std::move(*slot));
  }
  return hits;
}

const char* to_string(PrimalityStatus status) {
  return status == PrimalityStatus::Proved ? "proved" : "probable";
}

std::string format_hits_csv(const std::vector<FamilyHit>& hits) {
  std::string out = "form,m,q,p,n,status\n";
  for (const auto& h : hits) {
    out += std::to_string(static_cast<int>(h.form)) + ',' + std::to_string(h.m) + ',' + to_decimal(h.q) + ',' +
           to_decimal(h.p) + ',' + to_decimal(h.n) + ',' + to_string(h.status) + '\n';
  }
  return out;
}

}  // namespace sigma_hunt
