#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigma_hunt/wide_int.hpp"

namespace sigma_hunt {

// Two parametric families of solutions built from primes p and q:
//   form 1: q = 3^(m+1) - 4,  p = (3^m q - 1) / 2,  n = 2p,      n + 1 = 3^m q
//   form 2: q = 3^(m+1) - 10, p = (3^m q + 1) / 2,  n = 3^m q,   n + 1 = 2p
enum class FamilyForm { One = 1, Two = 2 };

// Proved when both p and q are below 2^64 (deterministic primality there).
enum class PrimalityStatus { Proved, Probable };

struct FamilyHit {
  FamilyForm form = FamilyForm::One;
  unsigned m = 0;
  WideInt q;
  WideInt p;
  WideInt n;
  WideInt n_plus_1;
  PrimalityStatus status = PrimalityStatus::Proved;
};

// Builds the candidate for (form, m) without any primality test.
FamilyHit family_candidate(FamilyForm form, unsigned m);

// Every m in [m_lo, m_hi] for which q and p are both (probable) primes,
// sorted by m. q is tested first; p only when q passes. Candidates are
// independent and evaluated on `workers` threads. Every returned hit has
// passed verify_hit.
std::vector<FamilyHit> scan_family(FamilyForm form, unsigned m_lo, unsigned m_hi, unsigned workers = 1);

// Checks the structural relations of the form and the closed-form sigma
// identity 3(p + 1) == ((3^(m+1) - 1) / 2)(q + 1) in exact arithmetic.
// Primality of p and q is assumed, not re-tested.
bool verify_hit(const FamilyHit& hit);

// "form,m,q,p,n,status" header plus one row per hit.
std::string format_hits_csv(const std::vector<FamilyHit>& hits);

const char* to_string(PrimalityStatus status);

}  // namespace sigma_hunt
