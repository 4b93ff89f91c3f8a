#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dsetkit/dynamics.hpp"
#include "dsetkit/folner.hpp"
#include "dsetkit/largeness.hpp"

// Text grammars shared by the CLI and the python bindings, so both front ends
// accept exactly the same input language.

namespace dsetkit {

// "Z" | "Z^<d>" | "poly" (needs q, k) | "heis"
GroupDescriptor make_group(const std::string& spec, int q = 2, int k = 1);

// "default" | "intervals" | "boxes" | "polydeg" | "heisboxes" | "nontempered";
// the sequence must fit the group's kind and parameters.
FolnerSequence make_folner(const GroupDescriptor& G, const std::string& name);

// q = p^e with e <= 4; rejects non prime powers.
Fq make_field(int q);

long long parse_ll_strict(const std::string& s);

// "lo..hi", both ends signed, lo <= hi.
std::pair<long long, long long> parse_range(const std::string& s);

// Membership oracles by name:
//   any group:  "all" | "none"
//   Z:          "evens" | "odds" | "squares" | "mod:<r>,<m>"
//   PolyAdd:    "ideal:<f1;f2;...>"            membership in <f_i(X_i)>
//               "coset:<f>@<f1;f2;...>"        x - f in the ideal
//               "unioncosets:<m>@<f1;f2;...>"  residue mod X^m is listed (k = 1)
SetPredicate make_set(const GroupDescriptor& G, const std::string& spec);

// "lo..hi" (Z only) | "ball:<N>" | ";"-separated element literals
std::vector<Element> parse_elements(const GroupDescriptor& G, const std::string& spec);

// Univariate generators in distinct variables, ";"-separated; the variable of
// each entry is inferred from the polynomial itself.
IdealBasis parse_basis(const Fq& F, int k, const std::string& spec);

// Measure-preserving system grammar:
//   "rot:<N>"                     N atoms, uniform weights, one N-cycle
//   "bernoulli:<r1>,<r2>,..."     i.i.d. shift with these exact marginals
//   "finite:<w1>,...&<perm>&..."  weights then cycle-notation generators
// anything else is read as a path to a JSON description file:
//   {"type":"finite","weights":["1/4",...],"generators":["(0 1 2 3)"]}
//   {"type":"bernoulli","marginal":["1/2","1/2"]}
struct SystemSpec {
  std::variant<FiniteMPS, CylinderSystem> sys;
  std::string text;  // canonical one-line description for reports

  const FiniteMPS* finite() const { return std::get_if<FiniteMPS>(&sys); }
  const CylinderSystem* cylinder() const { return std::get_if<CylinderSystem>(&sys); }
};
SystemSpec parse_system(const std::string& spec);

// "(0 1 2)(4 5)" -> image table; unmentioned points stay fixed.
std::vector<int> parse_perm_cycles(int n, const std::string& spec);

// "full" | "empty" | "atoms:<i,j,...>" | "<i,j,...>"
FiniteEvent parse_finite_event(const FiniteMPS& sys, const std::string& spec);

// "full" | "empty" | "cyl:<c>=<l>&...|<c>=<l>&..." ('|' unions cylinders)
CylEvent parse_cyl_event(const CylinderSystem& sys, const std::string& spec);

// "<coord>=<letter>&..." (one cylinder / one pattern)
CylinderConstraint parse_pattern(const std::string& spec);

// Two-sided sequences for visit scans:
//   "periodic:<l0>,<l1>,..."  letter at i is the list at i mod length
//   "squares"                 indicator of {0, 1, 4, 9, ...}
//   "const:<letter>"
std::function<int(long long)> make_point(const std::string& spec);

// Window over the acting Z^d: one "lo..hi" per axis, comma-separated; the
// first axis varies slowest.  dims must match the axis count.
std::vector<GVec> parse_gvec_window(const std::string& spec, int dims);

}  // namespace dsetkit
