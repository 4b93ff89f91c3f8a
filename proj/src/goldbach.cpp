#include "dsetkit/goldbach.hpp"

#include <algorithm>
#include <thread>

namespace dsetkit {

namespace {

std::vector<bool> sieve_upto(long long N) {
  std::vector<bool> prime(N + 1, true);
  prime[0] = false;
  if (N >= 1) prime[1] = false;
  for (long long i = 2; i * i <= N; ++i)
    if (prime[i])
      for (long long j = i * i; j <= N; j += i) prime[j] = false;
  return prime;
}

// exceptions among even n in [lo, hi], ascending
std::vector<long long> scan_evens(const std::vector<bool>& prime,
                                  const std::vector<long long>& primes, long long lo,
                                  long long hi) {
  std::vector<long long> out;
  for (long long n = lo; n <= hi; n += 2) {
    bool split = false;
    for (long long p : primes) {
      if (2 * p > n) break;
      if (prime[n - p]) {
        split = true;
        break;
      }
    }
    if (!split) out.push_back(n);
  }
  return out;
}

}  // namespace

PPScanResult pp_exception_scan(long long N, int threads) {
  if (N < 4) throw error("BadArgument", "scan bound must be >= 4");
  if (N > kSieveCap) throw budget_exceeded("scan bound is capped at 10^8");
  if (threads < 1) threads = 1;

  std::vector<bool> prime = sieve_upto(N);
  std::vector<long long> primes;
  for (long long i = 2; i <= N / 2; ++i)
    if (prime[i]) primes.push_back(i);

  PPScanResult res;
  res.N = N;
  res.evens_counted = N / 2;

  long long first = 4, last = N - (N % 2);
  long long evens = (last - first) / 2 + 1;
  if (threads == 1 || evens < 1000) {
    res.exceptions = scan_evens(prime, primes, first, last);
  } else {
    std::vector<std::vector<long long>> parts(threads);
    std::vector<std::thread> pool;
    long long per = (evens + threads - 1) / threads;
    for (int c = 0; c < threads; ++c) {
      pool.emplace_back([&, c]() {
        long long a = first + 2 * (c * per);
        long long b = std::min(last, first + 2 * ((c + 1) * per - 1));
        if (a <= b) parts[c] = scan_evens(prime, primes, a, b);
      });
    }
    for (auto& t : pool) t.join();
    for (auto& part : parts)
      res.exceptions.insert(res.exceptions.end(), part.begin(), part.end());
  }

  res.density = Rat(Int(static_cast<long long>(res.exceptions.size())),
                    Int(res.evens_counted));
  return res;
}

long long pp_first_pair(long long n) {
  if (n < 4 || n % 2 != 0) return 0;
  for (long long p = 2; 2 * p <= n; ++p)
    if (is_prime_int(p) && is_prime_int(n - p)) return p;
  return 0;
}

namespace {

void check_candidate_budget(const Fq& F, int max_deg, long long budget) {
  long long total = 0, power = 1;
  for (int d = 1; d <= max_deg; ++d) {
    power *= F.q();
    total += power;
    if (total > budget) throw budget_exceeded("candidate space exceeds the search budget");
  }
}

}  // namespace

DecompositionResult fq_goldbach_decompose(const Fq& F, const UniPoly& m, long long budget) {
  if (m.deg() < 2) throw error("BadArgument", "target degree must be >= 2");
  check_candidate_budget(F, m.deg() - 1, budget);

  DecompositionResult res;
  res.alpha = F.inv(m.lc());
  UniPoly target = uni_scale(F, m, res.alpha);  // monic
  int unscale = m.lc();                         // alpha^{-1}

  for (int d2 = 1; d2 < m.deg(); ++d2) {
    for (const UniPoly& f2 : enumerate_monic_irreducibles(F, d2, budget)) {
      ++res.candidates_tried;
      UniPoly f1 = uni_sub(F, target, f2);
      if (irreducible_test(F, f1)) {
        res.found = true;
        res.f1 = uni_scale(F, f1, unscale);
        res.f2 = uni_scale(F, f2, unscale);
        return res;
      }
    }
  }
  return res;
}

PxPxResult pxpx_membership(const Fq& F, const UniPoly& g, long long budget) {
  int max_deg = std::max(g.deg(), 0) + 1;  // leading terms may cancel
  check_candidate_budget(F, max_deg, budget);

  PxPxResult res;
  for (int d1 = 1; d1 <= max_deg; ++d1) {
    for (const UniPoly& u : enumerate_monic_irreducibles(F, d1, budget)) {
      for (int c = 1; c < F.q(); ++c) {
        ++res.candidates_tried;
        UniPoly part = uni_scale(F, u, c);
        UniPoly rest = uni_sub(F, g, part);
        if (rest.deg() < 1 || !irreducible_test(F, rest)) continue;
        res.member = true;
        // report larger degree first; on ties the enumerated candidate leads
        if (rest.deg() > part.deg()) {
          res.f1 = rest;
          res.f2 = part;
        } else {
          res.f1 = part;
          res.f2 = rest;
        }
        return res;
      }
    }
  }
  return res;
}

}  // namespace dsetkit
