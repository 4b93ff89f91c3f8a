#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsetkit/group.hpp"
#include "dsetkit/rational.hpp"

namespace dsetkit {

// Membership oracle over one group's elements.  Totality on enumerated
// elements is the caller's contract; the searches below only ever evaluate it.
struct SetPredicate {
  GroupDescriptor G;
  std::function<bool(const Element&)> member;
  std::string description;
};

inline constexpr int kMaxFsGenerators = 20;   // 2^20 subset-sum cap
inline constexpr int kMaxWitnessLength = 10;  // search depth cap

// All sums over nonempty index subsets, duplicates collapsed.  Sums are taken
// in increasing index order, which matters in the Heisenberg group.
std::set<Element> finite_sums(const GroupDescriptor& G, const std::vector<Element>& xs);

// A witness-scale certificate: generators whose finite-sums set was checked
// element by element against a membership oracle.  Never a proof of the
// infinite property; `scale` records the requested generator count.
struct FSWitness {
  std::string kind;  // "ip-witness" | "ipstar-falsifier" | "coset-falsifier"
  long long scale;
  std::vector<Element> generators;
  std::vector<Element> fs;  // sorted, duplicates collapsed
  bool verified;            // independent re-check of every sum
};

// Depth-first over pool order with strictly increasing pool indices; a
// candidate is kept only when every new sum lies in A and the finite-sums set
// stays collision-free (all 2^j - 1 sums distinct).  The distinctness rule
// keeps certificates honest: witnesses exhibit the full sum structure rather
// than collapsing onto few elements.  First witness in DFS order wins.
std::optional<FSWitness> ip_witness_search(const SetPredicate& A,
                                           const std::vector<Element>& pool, int k);

// Same search run against the complement of A; a hit falsifies "A meets every
// finite-sums structure" at this pool/length scale.
std::optional<FSWitness> ip_star_falsifier(const SetPredicate& A,
                                           const std::vector<Element>& pool, int k);

struct SyndeticResult {
  bool covered;                      // every w has t in gaps with t*w in A
  std::optional<Element> uncovered;  // first window element missed (window order)
};
SyndeticResult syndetic_window_check(const SetPredicate& A,
                                     const std::vector<Element>& window,
                                     const std::vector<Element>& gaps);

// A = union of cosets f_i + <X^m> in F_q[X], all deg f_i < m.  When some f_i
// is zero the union contains the whole ideal and m is the answer.  Otherwise
// the union cannot swallow a finite-sums structure of length k(p-1)+1: among
// that many elements some coset holds p = char(F_q) of them, and p elements
// of one coset sum into <X^m>, which the union misses.  The falsifier makes
// this concrete with p explicit elements of the first coset.
struct CosetIdealResult {
  bool contains_ideal;
  long long m;
  int coset_count;               // distinct representatives
  std::vector<UniPoly> falsifier;  // present when require_ip and no zero coset
  UniPoly escape_sum;              // sum of the falsifier, lies in <X^m>, not in A
  Int scale_bound;                 // k(p-1)+1
  bool verified;                   // falsifier membership / escape re-checked
};
CosetIdealResult coset_union_contains_ideal(const Fq& F, const std::vector<UniPoly>& reps,
                                            long long m, bool require_ip);

}  // namespace dsetkit
