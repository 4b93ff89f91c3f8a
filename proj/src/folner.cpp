#include "dsetkit/folner.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace dsetkit {

namespace {

long long checked_pow4(long long n) {
  // 4^n for the scattered sequence; n is capped so the offsets stay in range.
  if (n > 30) throw budget_exceeded("scattered sequence index capped at 30");
  long long v = 1;
  for (long long i = 0; i < n; ++i) v *= 4;
  return v;
}

void check_n(long long n) {
  if (n < 1) throw error("BadArgument", "sequence index must be >= 1");
}

}  // namespace

FolnerSequence folner_intervals() {
  FolnerSequence s;
  s.G = GroupDescriptor::integer_line();
  s.name = "intervals";
  s.gen = [](long long n) {
    check_n(n);
    if (n > kSetBudget) throw window_too_large("interval length exceeds set budget");
    std::vector<Element> out;
    out.reserve(n);
    for (long long i = 1; i <= n; ++i) out.push_back(elem_z(i));
    return out;
  };
  s.delta = [](long long n) {
    check_n(n);
    return std::vector<Element>{elem_z(n)};
  };
  s.nested = true;
  return s;
}

FolnerSequence folner_boxes(int d) {
  FolnerSequence s;
  s.G = GroupDescriptor::lattice(d);
  s.name = "boxes";
  s.gen = [d](long long n) {
    check_n(n);
    long long size = 1;
    for (int i = 0; i < d; ++i) {
      size *= n;
      if (size > kSetBudget) throw window_too_large("box exceeds set budget");
    }
    std::vector<Element> out;
    out.reserve(size);
    std::vector<long long> t(d, 1);
    while (true) {
      out.push_back(elem_vec(t));
      int i = d - 1;
      while (i >= 0 && t[i] == n) {
        t[i] = 1;
        --i;
      }
      if (i < 0) break;
      ++t[i];
    }
    return out;
  };
  s.delta = [d](long long n) {
    check_n(n);
    // tuples in [1,n]^d with at least one coordinate equal to n
    std::vector<Element> out;
    std::vector<long long> t(d, 1);
    while (true) {
      if (std::find(t.begin(), t.end(), n) != t.end()) out.push_back(elem_vec(t));
      int i = d - 1;
      while (i >= 0 && t[i] == n) {
        t[i] = 1;
        --i;
      }
      if (i < 0) break;
      ++t[i];
    }
    return out;
  };
  s.nested = true;
  return s;
}

FolnerSequence folner_polydeg(int p, int e, int k) {
  GroupDescriptor G = GroupDescriptor::poly_add(p, e, k);
  FolnerSequence s;
  s.G = G;
  s.name = "polydeg";
  const int q = G.fq().q();
  auto fill = [G, q, k](long long n, bool only_new) {
    check_n(n);
    // all polynomials with deg_{X_i} < n for every i: q^(n^k) of them
    long long monos = 1;
    for (int i = 0; i < k; ++i) {
      monos *= n;
      if (monos > 62) throw window_too_large("degree box exceeds set budget");
    }
    long long size = 1;
    for (long long i = 0; i < monos; ++i) {
      size *= q;
      if (size > kSetBudget) throw window_too_large("degree box exceeds set budget");
    }
    // exponent vectors below (n, ..., n)
    std::vector<Expo> monomials;
    Expo ex(k, 0);
    while (true) {
      monomials.push_back(ex);
      int i = 0;
      while (i < k && ex[i] == n - 1) {
        ex[i] = 0;
        ++i;
      }
      if (i == k) break;
      ++ex[i];
    }
    std::vector<Element> out;
    for (long long idx = 0; idx < size; ++idx) {
      MultiPoly poly = mp_zero(k);
      long long v = idx;
      bool fresh = false;  // uses a monomial outside the (n-1)-box
      for (const Expo& m : monomials) {
        int digit = static_cast<int>(v % q);
        v /= q;
        if (digit != 0) {
          poly.terms[m] = digit;
          for (int x : m)
            if (x >= n - 1) fresh = true;
        }
        if (v == 0) break;
      }
      if (only_new && n > 1 && !fresh) continue;
      out.push_back(elem_poly(std::move(poly)));
    }
    return out;
  };
  s.gen = [fill](long long n) { return fill(n, false); };
  s.delta = [fill](long long n) { return fill(n, true); };
  s.nested = true;
  return s;
}

FolnerSequence folner_heis_boxes() {
  FolnerSequence s;
  s.G = GroupDescriptor::heisenberg();
  s.name = "heisboxes";
  // The central coordinate needs quadratic reach: products of box elements
  // pick up commutator terms of size about n^2, so a linear c-range would
  // keep the defect bounded away from zero.
  auto in_box = [](long long n, long long a, long long b, long long c) {
    return std::llabs(a) <= n && std::llabs(b) <= n && std::llabs(c) <= n * n;
  };
  s.gen = [in_box](long long n) {
    check_n(n);
    long long size = (2 * n + 1) * (2 * n + 1) * (2 * n * n + 1);
    if (size > kSetBudget) throw window_too_large("Heisenberg box exceeds set budget");
    std::vector<Element> out;
    out.reserve(size);
    for (long long a = -n; a <= n; ++a)
      for (long long b = -n; b <= n; ++b)
        for (long long c = -n * n; c <= n * n; ++c) out.push_back(elem_heis(a, b, c));
    return out;
  };
  s.delta = [in_box](long long n) {
    check_n(n);
    std::vector<Element> out;
    for (long long a = -n; a <= n; ++a)
      for (long long b = -n; b <= n; ++b)
        for (long long c = -n * n; c <= n * n; ++c)
          if (n == 1 || !in_box(n - 1, a, b, c)) out.push_back(elem_heis(a, b, c));
    return out;
  };
  s.nested = true;
  return s;
}

FolnerSequence folner_nontempered() {
  FolnerSequence s;
  s.G = GroupDescriptor::integer_line();
  s.name = "nontempered";
  s.gen = [](long long n) {
    check_n(n);
    long long base = checked_pow4(n);
    if (n % 2 == 1) base = -base;
    std::vector<Element> out;
    out.reserve(n + 1);
    for (long long i = 0; i <= n; ++i) out.push_back(elem_z(base + i));
    return out;
  };
  s.nested = false;
  return s;
}

Rat folner_defect(const FolnerSequence& seq, const Element& g, long long n, long long budget) {
  check_n(n);
  std::vector<Element> fn = seq.gen(n);
  if (static_cast<long long>(fn.size()) > budget)
    throw window_too_large("F_n exceeds the set budget");
  std::set<Element> base(fn.begin(), fn.end());
  long long overlap = 0;
  for (const Element& x : fn)
    if (base.count(op_apply(seq.G, g, x))) ++overlap;
  return Rat(Int(overlap), Int(static_cast<long long>(fn.size())));
}

TemperedResult temperedness_constant(const FolnerSequence& seq, long long n_max,
                                     long long budget) {
  if (n_max < 2) throw error("BadArgument", "n_max must be >= 2");
  TemperedResult res;
  res.C = 0;
  res.attained_at = 0;

  // Inverses of F_1..F_m accumulate across m, so keep them around.
  std::vector<std::vector<Element>> inverses;
  for (long long m = 1; m + 1 <= n_max; ++m) {
    {
      std::vector<Element> fm = seq.gen(m);
      std::vector<Element> inv;
      inv.reserve(fm.size());
      for (const Element& x : fm) inv.push_back(invert(seq.G, x));
      inverses.push_back(std::move(inv));
    }
    std::vector<Element> fnext = seq.gen(m + 1);
    std::set<Element> uni;
    for (const auto& inv : inverses) {
      for (const Element& x : inv) {
        for (const Element& y : fnext) {
          uni.insert(op_apply(seq.G, x, y));
          if (static_cast<long long>(uni.size()) > budget)
            throw window_too_large("translate union exceeds the set budget");
        }
      }
    }
    Rat ratio(Int(static_cast<long long>(uni.size())),
              Int(static_cast<long long>(fnext.size())));
    res.per_m.emplace_back(m, ratio);
    if (ratio > res.C) {
      res.C = ratio;
      res.attained_at = m;
    }
  }
  return res;
}

Rat density_ratio(const DensityRow& row) { return Rat(Int(row.count), Int(row.size)); }

DensityReport upper_density_along(const std::function<bool(const Element&)>& member,
                                  const FolnerSequence& seq, long long n_max, int threads,
                                  long long budget) {
  if (n_max < 1) throw error("BadArgument", "n_max must be >= 1");
  if (threads < 1) threads = 1;

  DensityReport rep;
  rep.rows.reserve(n_max);
  long long touched = 0;

  auto count_members = [&](const std::vector<Element>& xs) {
    long long local = 0;
    if (threads == 1 || xs.size() < 4096) {
      for (const Element& x : xs) local += member(x) ? 1 : 0;
      return local;
    }
    // Deterministic: per-chunk counts summed in chunk order.
    std::size_t nchunk = threads;
    std::vector<long long> chunk_counts(nchunk, 0);
    std::vector<std::thread> pool;
    std::size_t per = (xs.size() + nchunk - 1) / nchunk;
    for (std::size_t c = 0; c < nchunk; ++c) {
      pool.emplace_back([&, c]() {
        std::size_t lo = c * per, hi = std::min(xs.size(), (c + 1) * per);
        long long acc = 0;
        for (std::size_t i = lo; i < hi; ++i) acc += member(xs[i]) ? 1 : 0;
        chunk_counts[c] = acc;
      });
    }
    for (auto& t : pool) t.join();
    for (long long c : chunk_counts) local += c;
    return local;
  };

  if (seq.nested && seq.delta) {
    long long size = 0, count = 0;
    for (long long n = 1; n <= n_max; ++n) {
      std::vector<Element> fresh = seq.delta(n);
      touched += static_cast<long long>(fresh.size());
      if (touched > budget) throw budget_exceeded("density scan exceeds element budget");
      size += static_cast<long long>(fresh.size());
      count += count_members(fresh);
      rep.rows.push_back({n, size, count});
    }
  } else {
    for (long long n = 1; n <= n_max; ++n) {
      std::vector<Element> fn = seq.gen(n);
      touched += static_cast<long long>(fn.size());
      if (touched > budget) throw budget_exceeded("density scan exceeds element budget");
      rep.rows.push_back({n, static_cast<long long>(fn.size()), count_members(fn)});
    }
  }

  rep.running_max = 0;
  rep.estimate = 0;
  for (const DensityRow& row : rep.rows) {
    Rat r = density_ratio(row);
    if (r > rep.running_max) rep.running_max = r;
    if (2 * row.n > n_max && r > rep.estimate) rep.estimate = r;
  }
  return rep;
}

BanachResult banach_density_windows(const std::function<bool(long long)>& member, long long L,
                                    long long lo, long long hi, int threads, long long budget) {
  if (L < 1) throw error("BadArgument", "window length must be >= 1");
  if (hi < lo) throw error("BadArgument", "empty scan range");
  if (hi - lo + 1 < L) throw error("BadArgument", "scan range shorter than the window");
  long long span = hi - lo + 1;
  if (span > budget) throw budget_exceeded("scan range exceeds element budget");
  if (threads < 1) threads = 1;

  std::vector<unsigned char> flags(span);
  if (threads == 1 || span < 4096) {
    for (long long i = 0; i < span; ++i) flags[i] = member(lo + i) ? 1 : 0;
  } else {
    std::vector<std::thread> pool;
    long long per = (span + threads - 1) / threads;
    for (int c = 0; c < threads; ++c) {
      pool.emplace_back([&, c]() {
        long long a = c * per, b = std::min(span, (c + 1) * per);
        for (long long i = a; i < b; ++i) flags[i] = member(lo + i) ? 1 : 0;
      });
    }
    for (auto& t : pool) t.join();
  }

  long long best = -1, best_start = lo, current = 0;
  for (long long i = 0; i < span; ++i) {
    current += flags[i];
    if (i >= L) current -= flags[i - L];
    if (i >= L - 1 && current > best) {
      best = current;
      best_start = lo + i - (L - 1);
    }
  }
  BanachResult r;
  r.density = Rat(Int(best), Int(L));
  r.window_start = best_start;
  r.L = L;
  return r;
}

}  // namespace dsetkit
