#include <set>

#include "doctest.h"
#include "dsetkit/group.hpp"

using namespace dsetkit;

TEST_CASE("integer line basics") {
  GroupDescriptor G = GroupDescriptor::integer_line();
  CHECK(op_apply(G, elem_z(3), elem_z(4)) == elem_z(7));
  CHECK(invert(G, elem_z(5)) == elem_z(-5));
  CHECK(op_apply(G, invert(G, elem_z(5)), elem_z(5)) == identity(G));

  std::vector<Element> ball = enumerate_ball(G, 5);
  REQUIRE(ball.size() == 5);
  CHECK(ball[0] == elem_z(0));
  CHECK(ball[1] == elem_z(1));
  CHECK(ball[2] == elem_z(-1));
  CHECK(ball[3] == elem_z(2));
  CHECK(ball[4] == elem_z(-2));
}

TEST_CASE("characteristic-2 polynomial addition cancels") {
  GroupDescriptor G = GroupDescriptor::poly_add(2, 1, 1);
  Element a = elem_parse(G, "X+1");
  Element b = elem_parse(G, "X");
  CHECK(elem_to_string(G, op_apply(G, a, b)) == "1");
  // additive inverse mod 3
  GroupDescriptor G3 = GroupDescriptor::poly_add(3, 1, 1);
  CHECK(elem_to_string(G3, invert(G3, elem_parse(G3, "X+1"))) == "2*X+2");
}

TEST_CASE("Heisenberg product picks up the commutator term") {
  GroupDescriptor G = GroupDescriptor::heisenberg();
  Element x = elem_heis(1, 0, 0), y = elem_heis(0, 1, 0);
  CHECK(op_apply(G, x, y) == elem_heis(1, 1, 1));
  CHECK(op_apply(G, y, x) == elem_heis(1, 1, 0));
  CHECK(invert(G, elem_heis(1, 1, 1)) == elem_heis(-1, -1, 0));
  CHECK(op_apply(G, elem_heis(1, 1, 1), invert(G, elem_heis(1, 1, 1))) == identity(G));
}

TEST_CASE("lattice ball is the max-norm square") {
  GroupDescriptor G = GroupDescriptor::lattice(2);
  std::vector<Element> ball = enumerate_ball(G, 9);
  REQUIRE(ball.size() == 9);
  CHECK(ball[0] == elem_vec({0, 0}));
  for (const Element& e : ball) {
    CHECK(std::abs(e.v[0]) <= 1);
    CHECK(std::abs(e.v[1]) <= 1);
  }
  std::set<Element> distinct(ball.begin(), ball.end());
  CHECK(distinct.size() == 9);
}

TEST_CASE("poly ball follows degree-then-lex order") {
  GroupDescriptor G = GroupDescriptor::poly_add(2, 1, 1);
  std::vector<Element> ball = enumerate_ball(G, 4);
  REQUIRE(ball.size() == 4);
  CHECK(elem_to_string(G, ball[0]) == "0");
  CHECK(elem_to_string(G, ball[1]) == "1");
  CHECK(elem_to_string(G, ball[2]) == "X");
  CHECK(elem_to_string(G, ball[3]) == "X+1");
}

TEST_CASE("group laws hold on enumerated balls") {
  std::vector<GroupDescriptor> menu = {
      GroupDescriptor::integer_line(),
      GroupDescriptor::lattice(2),
      GroupDescriptor::poly_add(2, 2, 2),  // F_4 in two variables
      GroupDescriptor::heisenberg(),
  };
  for (const GroupDescriptor& G : menu) {
    std::vector<Element> big = enumerate_ball(G, 200);
    CHECK(big.size() == 200);
    std::set<Element> distinct(big.begin(), big.end());
    CHECK(distinct.size() == big.size());
    for (const Element& a : big) {
      CHECK(op_apply(G, a, invert(G, a)) == identity(G));
      CHECK(op_apply(G, identity(G), a) == a);
    }
    std::vector<Element> small = enumerate_ball(G, 30);
    for (const Element& a : small)
      for (const Element& b : small) {
        if (G.kind != GroupKind::Heisenberg) CHECK(op_apply(G, a, b) == op_apply(G, b, a));
        for (const Element& c : small)
          CHECK(op_apply(G, op_apply(G, a, b), c) == op_apply(G, a, op_apply(G, b, c)));
      }
  }
}

TEST_CASE("Heisenberg is not abelian: witness in the 2-ball") {
  GroupDescriptor G = GroupDescriptor::heisenberg();
  bool witness = false;
  std::vector<Element> ball = enumerate_ball(G, 30);
  for (const Element& a : ball)
    for (const Element& b : ball)
      if (op_apply(G, a, b) != op_apply(G, b, a)) witness = true;
  CHECK(witness);
}

TEST_CASE("element text round trip") {
  GroupDescriptor Z = GroupDescriptor::integer_line();
  GroupDescriptor H = GroupDescriptor::heisenberg();
  GroupDescriptor P = GroupDescriptor::poly_add(3, 1, 2);
  for (const GroupDescriptor& G : {Z, H, P})
    for (const Element& e : enumerate_ball(G, 150))
      CHECK(elem_parse(G, elem_to_string(G, e)) == e);
  CHECK_THROWS_AS(elem_parse(Z, "abc"), parse_error);
  CHECK_THROWS_AS(elem_parse(H, "(1,2)"), parse_error);
  // elements of the wrong kind are rejected by the operation itself
  CHECK_THROWS_AS(op_apply(Z, elem_z(1), elem_heis(0, 0, 0)), kind_mismatch);
}

TEST_CASE("enumeration is stable across calls") {
  GroupDescriptor G = GroupDescriptor::poly_add(2, 1, 2);
  CHECK(enumerate_ball(G, 64) == enumerate_ball(G, 64));
  // a prefix of a longer enumeration is the shorter enumeration
  std::vector<Element> big = enumerate_ball(G, 64), small = enumerate_ball(G, 10);
  big.resize(10);
  CHECK(big == small);
}
