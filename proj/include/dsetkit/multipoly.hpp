#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dsetkit/unipoly.hpp"

namespace dsetkit {

// Exponent vector of length k; entry i-1 is the power of X_i.
using Expo = std::vector<int>;

// Sparse multivariate polynomial over F_q in X1..Xk.  Only nonzero
// coefficients are stored, so the encoding is canonical.
struct MultiPoly {
  int k = 1;
  std::map<Expo, int> terms;

  bool is_zero() const { return terms.empty(); }
  // Largest exponent of X_var (1-based); 0 when the variable is absent.
  int deg_in(int var) const;
  int total_deg() const;

  bool operator==(const MultiPoly&) const = default;
  bool operator<(const MultiPoly& o) const { return terms < o.terms; }
};

MultiPoly mp_zero(int k);
MultiPoly mp_const(int k, int c);
MultiPoly mp_add(const Fq& F, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_sub(const Fq& F, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_neg(const Fq& F, const MultiPoly& a);
MultiPoly mp_mul(const Fq& F, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_scale(const Fq& F, const MultiPoly& a, int s);

// Embeds a univariate polynomial as a polynomial in X_var inside k variables.
MultiPoly mp_from_uni(const UniPoly& u, int var, int k);
// Inverse direction; requires the polynomial to involve at most the given
// variable (throws kind_mismatch otherwise).
UniPoly mp_to_uni(const MultiPoly& g, int var);
// The unique variable occurring in g, or 0 if g is constant; -1 if mixed.
int mp_single_variable(const MultiPoly& g);

// Text form: terms in descending (total degree, lexicographic) order, e.g.
// "2*X1^3+X2", "X^2+X+1" for k = 1.  Coefficients are element indices.
std::string mp_to_string(const Fq& F, const MultiPoly& g);
MultiPoly mp_parse(const Fq& F, int k, const std::string& text);

// Generators f_i(X_i): univariate, nonconstant, in pairwise distinct
// variables.  This shape admits a confluent direct reduction, so remainders
// are canonical without Groebner machinery.
struct IdealBasis {
  int k;
  std::vector<std::pair<int, UniPoly>> gens;  // (variable index, polynomial)

  IdealBasis(const Fq& F, int k, std::vector<std::pair<int, UniPoly>> gens);
};

struct ReduceResult {
  std::vector<MultiPoly> cofactors;  // aligned with basis.gens
  MultiPoly remainder;               // deg_{X_i} < deg f_i for every basis i
};

// g = sum(cofactors[i] * f_i) + remainder, exactly.  Basis entries are
// processed in their given order, within one variable highest power first;
// the remainder is independent of the order (tested), the cofactors are not.
ReduceResult multi_reduce(const Fq& F, const MultiPoly& g, const IdealBasis& basis);

bool ideal_member(const Fq& F, const MultiPoly& g, const IdealBasis& basis);

// Thrown when no remainder class reaches p members; carries the sequence
// length that would guarantee one by pigeonhole.
struct insufficient_sequence : error {
  Int required_length;
  explicit insufficient_sequence(const Int& req)
      : error("InsufficientSequence",
              "no remainder class reaches char(F) members; length >= " + req.str() +
                  " guarantees one"),
        required_length(req) {}
};

struct PigeonholeWitness {
  std::vector<long long> indices;  // 1-based positions in the input, exactly p
  MultiPoly remainder;             // the shared remainder
  MultiPoly sum;                   // sum of the selected inputs
  bool member;                     // sum passes ideal_member (always true)
  int p;                           // field characteristic
  Int class_count;                 // q^(number of monomials in the remainder box)
  Int required_length;             // (p-1)*class_count + 1
};

// Scans the inputs in order, reducing each one; returns the first remainder
// class to collect p = char(F_q) members.  Adding those p inputs makes the
// shared remainders cancel (p * r = 0 in characteristic p), so their sum lands
// in the ideal.  Remainders of free variables (no basis entry) live in the box
// spanned by the inputs' own degrees; the class count reflects that box.
PigeonholeWitness pigeonhole_witness(const Fq& F, const std::vector<MultiPoly>& gs,
                                     const IdealBasis& basis);

}  // namespace dsetkit
