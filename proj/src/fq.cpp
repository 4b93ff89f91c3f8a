#include "dsetkit/fq.hpp"

#include <algorithm>

namespace dsetkit {

bool is_prime_int(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Small polynomial helpers over Z_p on raw coefficient vectors (little-endian,
// trailing zeros trimmed).  Only used for modulus selection and extension
// field arithmetic; degrees never exceed 8 here.

void trim(std::vector<int>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::vector<int> zp_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

int zp_inv(int a, int p) {
  // p is tiny; a scan beats carrying extended gcd around.
  a %= p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw divide_by_zero("no inverse mod " + std::to_string(p));
}

// Remainder of a mod b over Z_p; b must be nonzero.
std::vector<int> zp_mod(std::vector<int> a, const std::vector<int>& b, int p) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  int lead_inv = zp_inv(b[db], p);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    int t = a[da] * lead_inv % p;
    for (int j = 0; j <= db; ++j) {
      int idx = da - db + j;
      a[idx] = ((a[idx] - t * b[j]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

bool zp_irreducible(const std::vector<int>& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (int t = 1; 2 * t <= d; ++t) {
    long long count = 1;
    for (int i = 0; i < t; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      std::vector<int> cand(t + 1, 0);
      long long v = idx;
      for (int i = 0; i < t; ++i) {
        cand[i] = static_cast<int>(v % p);
        v /= p;
      }
      cand[t] = 1;
      if (zp_mod(f, cand, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Fq::Fq(int p, int e) : p_(p), e_(e) {
  if (!is_prime_int(p)) throw error("BadField", "p = " + std::to_string(p) + " is not prime");
  if (e < 1 || e > 4) throw error("BadField", "extension degree e must be in [1,4]");
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > (1 << 16)) throw budget_exceeded("field size p^e exceeds 65536");
  }
  q_ = static_cast<int>(q);
  if (e_ == 1) {
    mod_ = {0, 1};  // unused for e = 1; kept so modulus() is always well formed
    return;
  }
  // Least-index monic irreducible of degree e over Z_p.
  long long span = q_;  // p^e candidate lower-coefficient vectors
  for (long long idx = 0; idx < span; ++idx) {
    std::vector<int> cand(e_ + 1, 0);
    long long v = idx;
    for (int i = 0; i < e_; ++i) {
      cand[i] = static_cast<int>(v % p_);
      v /= p_;
    }
    cand[e_] = 1;
    if (zp_irreducible(cand, p_)) {
      mod_ = cand;
      return;
    }
  }
  throw error("Internal", "no irreducible modulus found");  // unreachable
}

std::vector<int> Fq::digits(int a) const {
  std::vector<int> d(e_, 0);
  for (int i = 0; i < e_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

int Fq::index(const std::vector<int>& c) const {
  int v = 0;
  for (int i = e_ - 1; i >= 0; --i) v = v * p_ + (i < static_cast<int>(c.size()) ? c[i] : 0);
  return v;
}

void Fq::check_element(int a) const {
  if (a < 0 || a >= q_)
    throw field_mismatch("element index " + std::to_string(a) + " outside F_" + std::to_string(q_));
}

int Fq::add(int a, int b) const {
  check_element(a);
  check_element(b);
  if (e_ == 1) return (a + b) % p_;
  std::vector<int> da = digits(a), db = digits(b);
  for (int i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
  return index(da);
}

int Fq::neg(int a) const {
  check_element(a);
  if (e_ == 1) return (p_ - a) % p_;
  std::vector<int> d = digits(a);
  for (int i = 0; i < e_; ++i) d[i] = (p_ - d[i]) % p_;
  return index(d);
}

int Fq::sub(int a, int b) const { return add(a, neg(b)); }

int Fq::mul(int a, int b) const {
  check_element(a);
  check_element(b);
  if (e_ == 1) return a * b % p_;
  std::vector<int> prod = zp_mul(digits(a), digits(b), p_);
  std::vector<int> red = zp_mod(prod, mod_, p_);
  return index(red);
}

int Fq::pow(int a, long long n) const {
  check_element(a);
  if (n < 0) throw error("Internal", "Fq::pow: negative exponent");
  int acc = 1, base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

int Fq::inv(int a) const {
  check_element(a);
  if (a == 0) throw divide_by_zero("inverse of 0 in F_" + std::to_string(q_));
  // a^(q-2) = a^{-1}: the multiplicative group has order q-1.
  return pow(a, q_ - 2);
}

int Fq::from_int(long long v) const {
  long long r = v % q_;
  if (r < 0) r += q_;
  return static_cast<int>(r);
}

}  // namespace dsetkit
