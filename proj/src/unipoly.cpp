#include "dsetkit/unipoly.hpp"

#include <algorithm>

namespace dsetkit {

bool UniPoly::operator<(const UniPoly& o) const {
  if (c.size() != o.c.size()) return c.size() < o.c.size();
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  return false;
}

UniPoly uni_trim(std::vector<int> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return UniPoly{std::move(c)};
}

UniPoly uni_add(const Fq& F, const UniPoly& a, const UniPoly& b) {
  std::vector<int> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  return uni_trim(std::move(r));
}

UniPoly uni_neg(const Fq& F, const UniPoly& a) {
  std::vector<int> r = a.c;
  for (int& x : r) x = F.neg(x);
  return UniPoly{std::move(r)};  // negation cannot introduce trailing zeros
}

UniPoly uni_sub(const Fq& F, const UniPoly& a, const UniPoly& b) {
  return uni_add(F, a, uni_neg(F, b));
}

UniPoly uni_mul(const Fq& F, const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly::zero();
  std::vector<int> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
  }
  return uni_trim(std::move(r));
}

UniPoly uni_scale(const Fq& F, const UniPoly& a, int s) {
  if (s == 0) return UniPoly::zero();
  std::vector<int> r = a.c;
  for (int& x : r) x = F.mul(x, s);
  return UniPoly{std::move(r)};
}

std::pair<UniPoly, UniPoly> uni_divmod(const Fq& F, const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw divide_by_zero("polynomial division by zero");
  if (a.deg() < b.deg()) return {UniPoly::zero(), a};
  std::vector<int> q(a.deg() - b.deg() + 1, 0);
  UniPoly r = a;
  int binv = F.inv(b.lc());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int shift = r.deg() - b.deg();
    int t = F.mul(r.lc(), binv);
    q[shift] = t;
    std::vector<int> rc = r.c;
    for (int j = 0; j <= b.deg(); ++j)
      rc[shift + j] = F.sub(rc[shift + j], F.mul(t, b.c[j]));
    r = uni_trim(std::move(rc));
  }
  return {uni_trim(std::move(q)), r};
}

UniPoly uni_mod(const Fq& F, const UniPoly& a, const UniPoly& b) {
  return uni_divmod(F, a, b).second;
}

UniPoly uni_gcd(const Fq& F, UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = uni_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return make_monic(F, a);
}

UniPoly uni_powmod(const Fq& F, const UniPoly& base, Int exp, const UniPoly& m) {
  if (m.is_zero()) throw divide_by_zero("powmod modulus is zero");
  if (exp < 0) throw error("Internal", "uni_powmod: negative exponent");
  UniPoly acc = uni_mod(F, UniPoly::one(), m);
  UniPoly b = uni_mod(F, base, m);
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) acc = uni_mod(F, uni_mul(F, acc, b), m);
    b = uni_mod(F, uni_mul(F, b, b), m);
    exp >>= 1;
  }
  return acc;
}

bool is_monic(const UniPoly& f) { return !f.is_zero() && f.lc() == 1; }

UniPoly make_monic(const Fq& F, const UniPoly& f) {
  if (f.is_zero()) throw divide_by_zero("cannot scale zero polynomial monic");
  if (f.lc() == 1) return f;
  return uni_scale(F, f, F.inv(f.lc()));
}

bool irreducible_test(const Fq& F, const UniPoly& f_in) {
  int n = f_in.deg();
  if (n < 1) return false;
  if (n == 1) return true;
  UniPoly f = make_monic(F, f_in);
  const UniPoly x = UniPoly::X();

  // frob[t] = X^(q^t) mod f, built by repeated q-th powers.
  std::vector<UniPoly> frob(n + 1);
  frob[0] = uni_mod(F, x, f);
  for (int t = 1; t <= n; ++t) frob[t] = uni_powmod(F, frob[t - 1], Int(F.q()), f);

  if (!(frob[n] == uni_mod(F, x, f))) return false;

  std::vector<int> primes;
  int m = n;
  for (int l = 2; l * l <= m; ++l) {
    if (m % l == 0) {
      primes.push_back(l);
      while (m % l == 0) m /= l;
    }
  }
  if (m > 1) primes.push_back(m);

  for (int l : primes) {
    UniPoly diff = uni_sub(F, frob[n / l], uni_mod(F, x, f));
    UniPoly g = uni_gcd(F, diff, f);
    if (g.deg() != 0) return false;
  }
  return true;
}

UniPoly monic_from_index(const Fq& F, int d, long long n) {
  std::vector<int> c(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    c[i] = static_cast<int>(n % F.q());
    n /= F.q();
  }
  c[d] = 1;
  return UniPoly{std::move(c)};
}

long long monic_index(const Fq& F, const UniPoly& f) {
  long long v = 0;
  for (int i = f.deg() - 1; i >= 0; --i) v = v * F.q() + f.coeff(i);
  return v;
}

std::vector<UniPoly> enumerate_monic_irreducibles(const Fq& F, int d, long long budget) {
  if (d < 1) throw error("BadDegree", "degree must be >= 1");
  long long total = 1;
  for (int i = 0; i < d; ++i) {
    total *= F.q();
    if (total > budget)
      throw budget_exceeded("q^d = " + std::to_string(F.q()) + "^" + std::to_string(d) +
                            " exceeds enumeration budget");
  }
  std::vector<UniPoly> out;
  for (long long idx = 0; idx < total; ++idx) {
    UniPoly cand = monic_from_index(F, d, idx);
    if (irreducible_test(F, cand)) out.push_back(std::move(cand));
  }
  return out;
}

namespace {

std::vector<long long> divisors_of(int d) {
  std::vector<long long> out;
  for (int l = 1; l <= d; ++l)
    if (d % l == 0) out.push_back(l);
  return out;
}

int moebius(long long n) {
  int mu = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

Int necklace_count(int q, int d) {
  Int sum = 0;
  for (long long l : divisors_of(d)) {
    int mu = moebius(l);
    if (mu == 0) continue;
    sum += Int(mu) * int_pow(Int(q), d / l);
  }
  return sum / d;  // exact: the sum counts d-element orbits d times
}

std::string uni_to_string(const Fq& F, const UniPoly& f, const std::string& var) {
  (void)F;
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = f.deg(); i >= 0; --i) {
    int c = f.coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace dsetkit
