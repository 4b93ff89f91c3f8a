#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dsetkit/fq.hpp"
#include "dsetkit/rational.hpp"

namespace dsetkit {

// Dense univariate polynomial over F_q.  c[i] is the coefficient (an element
// index) of X^i; no trailing zeros are stored, so equal polynomials have
// identical encodings.  The zero polynomial is the empty vector.
struct UniPoly {
  std::vector<int> c;

  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  int lc() const { return c.empty() ? 0 : c.back(); }
  int coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0;
  }

  bool operator==(const UniPoly&) const = default;
  // Degree first, then coefficients from the top down.  For monic polynomials
  // of equal degree this coincides with comparing enumeration indices.
  bool operator<(const UniPoly& o) const;

  static UniPoly zero() { return {}; }
  static UniPoly one() { return {{1}}; }
  static UniPoly X() { return {{0, 1}}; }
};

UniPoly uni_trim(std::vector<int> c);
UniPoly uni_add(const Fq& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const Fq& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_neg(const Fq& F, const UniPoly& a);
UniPoly uni_mul(const Fq& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_scale(const Fq& F, const UniPoly& a, int s);

// a = b*quotient + remainder with deg remainder < deg b; throws divide_by_zero
// if b is zero.
std::pair<UniPoly, UniPoly> uni_divmod(const Fq& F, const UniPoly& a, const UniPoly& b);
UniPoly uni_mod(const Fq& F, const UniPoly& a, const UniPoly& b);

// Monic gcd (zero if both inputs are zero).
UniPoly uni_gcd(const Fq& F, UniPoly a, UniPoly b);

// base^exp mod m, exact for arbitrarily large exponents.
UniPoly uni_powmod(const Fq& F, const UniPoly& base, Int exp, const UniPoly& m);

bool is_monic(const UniPoly& f);
UniPoly make_monic(const Fq& F, const UniPoly& f);  // throws divide_by_zero on 0

// Deterministic irreducibility test: f (scaled monic) of degree n is
// irreducible iff X^(q^n) = X mod f and, for every prime l dividing n,
// gcd(X^(q^(n/l)) - X, f) = 1.  Degree < 1 reports false.
bool irreducible_test(const Fq& F, const UniPoly& f);

// All monic irreducibles of degree exactly d, ordered by enumeration index
// (the non-leading coefficients read as a base-q number).  BudgetExceeded when
// q^d is over the candidate cap.
std::vector<UniPoly> enumerate_monic_irreducibles(const Fq& F, int d,
                                                  long long budget = 1 << 22);

// Number of monic irreducibles of degree d over F_q:
// (1/d) * sum over l | d of mu(l) * q^(d/l).
Int necklace_count(int q, int d);

// The n-th monic polynomial of degree d (n in [0, q^d)): digits of n are the
// non-leading coefficients.
UniPoly monic_from_index(const Fq& F, int d, long long n);
long long monic_index(const Fq& F, const UniPoly& f);

std::string uni_to_string(const Fq& F, const UniPoly& f, const std::string& var = "X");
UniPoly uni_parse(const Fq& F, const std::string& text);

}  // namespace dsetkit
