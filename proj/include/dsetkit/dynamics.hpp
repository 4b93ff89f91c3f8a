#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsetkit/folner.hpp"
#include "dsetkit/rational.hpp"

namespace dsetkit {

// Group element of the acting Z^d, one exponent per generator.
using GVec = std::vector<long long>;

inline constexpr long long kPatternCap = 65536;    // cylinder expansion rows
inline constexpr long long kCrosscheckBox = 20000; // exhaustive N(A,B) sweep size

// Finitely many atoms with exact weights; the acting Z^d is given by d
// commuting permutations, each mapping every atom to one of equal weight.
// Both facts are checked at construction, so measure preservation is a
// structural invariant rather than a runtime hope.
class FiniteMPS {
 public:
  FiniteMPS(std::vector<Rat> weights, std::vector<std::vector<int>> gens);

  int atoms() const { return atoms_; }
  int dims() const { return static_cast<int>(gens_.size()); }
  const std::vector<Rat>& weights() const { return weights_; }
  const std::vector<std::vector<int>>& gens() const { return gens_; }
  long long order_of(int j) const { return cyc_[j].order; }

  // image of an atom under generator j applied e times (e may be negative)
  int apply_one(int j, long long e, int atom) const;
  // image under T_g = gen_1^{g_1} ... gen_d^{g_d} (generators commute)
  int apply(const GVec& g, int atom) const;

 private:
  struct CycleInfo {
    std::vector<int> cycle_id, pos;
    std::vector<std::vector<int>> cycles;
    long long order;  // lcm of cycle lengths
  };
  int atoms_;
  std::vector<Rat> weights_;
  std::vector<std::vector<int>> gens_;
  std::vector<CycleInfo> cyc_;
};

// Sorted distinct atom indices.
using FiniteEvent = std::vector<int>;
FiniteEvent make_finite_event(const FiniteMPS& sys, std::vector<int> atoms);
Rat event_measure(const FiniteMPS& sys, const FiniteEvent& A);

// Bernoulli shift on (alphabet)^Z with i.i.d. exact marginals; Z acts by
// coordinate shift (T_g x)(i) = x(i + g).
struct CylinderSystem {
  int alphabet;
  std::vector<Rat> marginal;
  explicit CylinderSystem(std::vector<Rat> marginal);
};

// One cylinder: finitely many coordinate -> letter constraints.
using CylinderConstraint = std::map<long long, int>;

// A finite union of cylinders, canonicalized to full patterns over the joint
// support: distinct rows are disjoint events, so measures add up plainly.
struct CylEvent {
  std::vector<long long> support;         // sorted coordinates
  std::vector<std::vector<int>> patterns; // distinct rows aligned with support
};
CylEvent make_cyl_event(const CylinderSystem& sys,
                        const std::vector<CylinderConstraint>& cylinders,
                        long long cap = kPatternCap);
Rat event_measure(const CylinderSystem& sys, const CylEvent& A);

// mu(A intersect T_g B), exact.
Rat correlation(const FiniteMPS& sys, const FiniteEvent& A, const FiniteEvent& B,
                const GVec& g);
Rat correlation(const CylinderSystem& sys, const CylEvent& A, const CylEvent& B,
                long long g);

Rat cesaro_average(const FiniteMPS& sys, const FiniteEvent& A, const FiniteEvent& B,
                   const std::vector<GVec>& window);
Rat cesaro_average(const CylinderSystem& sys, const CylEvent& A, const CylEvent& B,
                   long long lo, long long hi);

struct CorrelationReport {
  Rat eps;
  Rat mu_a, mu_b, product;  // product = mu(A) * mu(B)
  std::vector<GVec> g;      // window order
  std::vector<Rat> value;   // mu(A intersect T_g B)
  std::vector<char> in_r;   // value > product - eps (strict)
  std::vector<char> in_l;   // value < product + eps (strict)
  Rat r_density, l_density, rl_density;
  Rat second_moment;        // average of (value - product)^2 over the window
  // Z-action over a contiguous window only: window density of the translated
  // set R - t for each t in the 1-ball {-1, 0, 1} (boundary values computed).
  std::vector<std::pair<long long, Rat>> translate_r_density;
};

CorrelationReport correlation_sets(const FiniteMPS& sys, const FiniteEvent& A,
                                   const FiniteEvent& B, const Rat& eps,
                                   const std::vector<GVec>& window);
CorrelationReport correlation_sets(const CylinderSystem& sys, const CylEvent& A,
                                   const CylEvent& B, const Rat& eps, long long lo,
                                   long long hi);

struct ErgodicityReport {
  bool ergodic;
  std::string method;  // "orbit-partition" | "bernoulli-by-construction"
  std::vector<int> certificate;  // non-ergodic: an invariant positive component
  Rat certificate_measure;       // its measure, strictly between 0 and 1
  bool crosscheck_ran;   // exhaustive size-<=2 N(A,B) sweep (small systems)
};

// Orbit partition of the generated permutation group; ergodic iff the
// positive-weight atoms sit in a single orbit.  On small systems the verdict
// is re-derived from scratch: over every pair of positive-measure atom sets
// of size <= 2, some T_g must produce a positive-measure overlap.
ErgodicityReport ergodicity_test(const FiniteMPS& sys);
// Bernoulli shifts are ergodic by construction; reported as such, not computed.
ErgodicityReport ergodicity_test(const CylinderSystem& sys);

struct WMPairResult {
  Rat r_density, l_density, rl_density;
  Rat second_moment;
};
struct WMReport {
  std::vector<WMPairResult> pairs;
  Rat threshold;    // 99/100 of the window
  bool consistent;  // every rl_density >= threshold
};

WMReport weak_mixing_report(const FiniteMPS& sys,
                            const std::vector<std::pair<FiniteEvent, FiniteEvent>>& pairs,
                            const Rat& eps, const std::vector<GVec>& window);
WMReport weak_mixing_report(const CylinderSystem& sys,
                            const std::vector<std::pair<CylEvent, CylEvent>>& pairs,
                            const Rat& eps, long long lo, long long hi);

// Rotation numbers j/l for every cycle of length l of the single generator,
// sorted ascending; one entry per atom.  Z-actions only.
std::vector<Rat> koopman_point_spectrum(const FiniteMPS& sys);

// Density of {g : the shifted point matches the pattern} along the interval
// sets [1, n]; point(i) is the letter of a fixed two-sided sequence.
DensityReport visit_density(const std::function<int(long long)>& point,
                            const std::map<long long, int>& pattern, long long n_max,
                            int threads = 1);

}  // namespace dsetkit
