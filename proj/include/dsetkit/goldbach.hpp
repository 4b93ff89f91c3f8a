#pragma once

#include <vector>

#include "dsetkit/rational.hpp"
#include "dsetkit/unipoly.hpp"

namespace dsetkit {

inline constexpr long long kSieveCap = 100'000'000;
inline constexpr long long kGoldbachCandidateCap = 1 << 22;

struct PPScanResult {
  long long N;
  std::vector<long long> exceptions;  // even n in [4, N] with no prime pair
  long long evens_counted;            // floor(N/2): evens in [2, N]
  Rat density;                        // |exceptions| / evens_counted
};

// Sieve the primes up to N, then look for p + (n-p) prime splits of every even
// n in [4, N].  Chunked across threads with a deterministic merge.
PPScanResult pp_exception_scan(long long N, int threads = 1);

// The least prime p with n - p prime, or 0 when none exists.  Deliberately
// sieve-free (trial division only) so it can double as an independent check.
long long pp_first_pair(long long n);

struct DecompositionResult {
  bool found = false;
  UniPoly f1, f2;  // f1 + f2 = m exactly; alpha*f1, alpha*f2 are monic irreducible
  int alpha = 1;   // inverse of m's leading coefficient (1 when m is monic)
  long long candidates_tried = 0;
};

// Exhaustive and deterministic: normalize m monic by the unit alpha, run f2
// over monic irreducibles of degree 1 .. deg m - 1 in enumeration order, and
// accept the first with m' - f2 irreducible.  When nothing matches, found is
// false and candidates_tried says how large the exhausted space was.
DecompositionResult fq_goldbach_decompose(const Fq& F, const UniPoly& m,
                                          long long budget = kGoldbachCandidateCap);

struct PxPxResult {
  bool member = false;
  UniPoly f1, f2;  // irreducible with any leading coefficients, f1 + f2 = g
  long long candidates_tried = 0;
};

// Membership of g in {irreducible + irreducible} without monicity or degree
// ordering constraints; candidate degrees run up to deg g + 1 (leading terms
// may cancel).  Candidate order: degree ascending, monic index ascending,
// scalar multiplier ascending; the first irreducible complement wins.
PxPxResult pxpx_membership(const Fq& F, const UniPoly& g,
                           long long budget = kGoldbachCandidateCap);

}  // namespace dsetkit
