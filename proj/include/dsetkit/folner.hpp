#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dsetkit/group.hpp"
#include "dsetkit/rational.hpp"

namespace dsetkit {

inline constexpr long long kSetBudget = 1'000'000;    // elements per materialized set
inline constexpr long long kScanBudget = 20'000'000;  // elements touched per scan

// A Følner candidate: n -> finite set F_n.  "delta" yields F_n \ F_{n-1} when
// the sets are nested (F_0 = empty), which lets density scans run
// incrementally; it is absent for the deliberately non-nested sequence.
struct FolnerSequence {
  GroupDescriptor G;
  std::string name;
  std::function<std::vector<Element>(long long)> gen;    // F_n, n >= 1
  std::function<std::vector<Element>(long long)> delta;  // empty when !nested
  bool nested = false;
};

FolnerSequence folner_intervals();                    // Z: [1, n]
FolnerSequence folner_boxes(int d);                   // Z^d: [1, n]^d
FolnerSequence folner_polydeg(int p, int e, int k);   // all deg_{X_i} < n
FolnerSequence folner_heis_boxes();                   // |a|,|b| <= n, |c| <= n^2
// Intervals of length n+1 thrown to (+-4)^n: the inverse-translate unions
// scatter instead of telescoping, so the temperedness ratio grows without
// bound.  Negative test material.
FolnerSequence folner_nontempered();

// |F_n intersect g F_n| / |F_n|, exact.
Rat folner_defect(const FolnerSequence& seq, const Element& g, long long n,
                  long long budget = kSetBudget);

struct TemperedResult {
  Rat C;                   // max over scanned m of |union_{k<=m} F_k^{-1} F_{m+1}| / |F_{m+1}|
  long long attained_at;   // the m achieving it
  std::vector<std::pair<long long, Rat>> per_m;
};
TemperedResult temperedness_constant(const FolnerSequence& seq, long long n_max,
                                     long long budget = kSetBudget);

struct DensityRow {
  long long n;
  long long size;   // |F_n|
  long long count;  // |E intersect F_n|
};

struct DensityReport {
  std::vector<DensityRow> rows;
  Rat running_max;  // max ratio over all rows
  Rat estimate;     // max ratio over the tail half (n > n_max/2): the lim-sup proxy
};

Rat density_ratio(const DensityRow& row);

// Exact |E intersect F_n|/|F_n| for n = 1..n_max.  The reported estimate is
// the maximum over the second half of the scanned indices; that convention is
// used everywhere a lim sup gets truncated.
DensityReport upper_density_along(const std::function<bool(const Element&)>& member,
                                  const FolnerSequence& seq, long long n_max,
                                  int threads = 1, long long budget = kScanBudget);

struct BanachResult {
  Rat density;              // max over windows of |A intersect window| / L
  long long window_start;   // leftmost window attaining it
  long long L;
};

// Finite window approximant of upper Banach density on Z: scans every length-L
// window [s, s+L-1] inside [lo, hi].
BanachResult banach_density_windows(const std::function<bool(long long)>& member,
                                    long long L, long long lo, long long hi,
                                    int threads = 1, long long budget = kScanBudget);

}  // namespace dsetkit
