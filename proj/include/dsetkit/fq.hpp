#pragma once

#include <string>
#include <vector>

#include "dsetkit/errors.hpp"

namespace dsetkit {

bool is_prime_int(long long n);

// The finite field F_q with q = p^e, p prime, 1 <= e <= 4.
//
// Elements are integer indices in [0, q). The base-p digits of the index,
// least significant first, are the coefficients of the residue polynomial in
// Z_p[t] / (modulus).  For e = 1 this is plain arithmetic mod p.
//
// The modulus for e > 1 is picked deterministically: the monic irreducible
// t^e + c_{e-1} t^{e-1} + ... + c_0 over Z_p whose digit index
// c_0 + c_1 p + ... + c_{e-1} p^{e-1} is least.  F_4 gets t^2 + t + 1,
// F_8 gets t^3 + t + 1, F_9 gets t^2 + 1, and so on.  The choice is fixed so
// that every element index means the same thing across runs.
class Fq {
 public:
  Fq(int p, int e);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return mod_; }  // length e+1, monic

  bool same(const Fq& other) const { return p_ == other.p_ && e_ == other.e_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;  // throws divide_by_zero on 0
  int pow(int a, long long n) const;

  // Reduces an arbitrary integer to an element index: v mod q, then the
  // digits of the result are read as coefficients.  For prime fields this is
  // ordinary reduction mod p.
  int from_int(long long v) const;

  void check_element(int a) const;

 private:
  int p_ = 0, e_ = 0, q_ = 0;
  std::vector<int> mod_;

  std::vector<int> digits(int a) const;
  int index(const std::vector<int>& c) const;
};

}  // namespace dsetkit
