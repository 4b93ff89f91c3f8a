#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsetkit/multipoly.hpp"

namespace dsetkit {

// The groups form a closed menu rather than an open interface; every later
// computation (defects, unions, densities) stays total and testable that way.
enum class GroupKind { IntegerLine, IntegerLattice, PolyAdd, Heisenberg };

std::string group_kind_name(GroupKind k);

struct GroupDescriptor {
  GroupKind kind = GroupKind::IntegerLine;
  int d = 1;                 // lattice dimension
  std::optional<Fq> field;   // PolyAdd coefficient field
  int k = 1;                 // PolyAdd variable count
  int degree_cap = 24;       // PolyAdd enumeration: max total degree of monomials

  static GroupDescriptor integer_line();
  static GroupDescriptor lattice(int d);
  static GroupDescriptor poly_add(int p, int e, int k);
  static GroupDescriptor heisenberg();

  const Fq& fq() const;  // throws kind_mismatch unless PolyAdd
};

// One payload per kind; the tag says which one is live.  Encodings are
// canonical (no trailing zero coefficients, fixed-length tuples), so equality
// of elements is equality of encodings.
struct Element {
  GroupKind kind = GroupKind::IntegerLine;
  long long z = 0;            // IntegerLine
  std::vector<long long> v;   // IntegerLattice (size d) and Heisenberg (size 3)
  MultiPoly poly;             // PolyAdd

  bool operator==(const Element&) const = default;
  bool operator<(const Element& o) const;
};

Element elem_z(long long n);
Element elem_vec(std::vector<long long> v);
Element elem_heis(long long a, long long b, long long c);
Element elem_poly(MultiPoly p);

Element identity(const GroupDescriptor& G);
Element op_apply(const GroupDescriptor& G, const Element& a, const Element& b);
Element invert(const GroupDescriptor& G, const Element& a);

// Deterministic, duplicate-free prefix of the canonical enumeration:
//   Z:          0, 1, -1, 2, -2, ...
//   Z^d:        max-norm shells outward, lexicographic inside a shell
//   Heisenberg: same shells on the (a,b,c) triples
//   PolyAdd:    element n has the base-q digits of n as coefficients on the
//               monomial sequence 1, X1, .., Xk, X1^2, X1*X2, ... (total
//               degree, then lexicographically descending exponents)
std::vector<Element> enumerate_ball(const GroupDescriptor& G, long long n);

// Text grammar shared with the CLI: integers "7", tuples "(1,0,-2)",
// polynomials "2*X1^3+X2" (bare "X" when there is a single variable).
std::string elem_to_string(const GroupDescriptor& G, const Element& a);
Element elem_parse(const GroupDescriptor& G, const std::string& text);

}  // namespace dsetkit
