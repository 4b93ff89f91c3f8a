#include "doctest.h"
#include "dsetkit/goldbach.hpp"
#include "support/oracles.hpp"

using namespace dsetkit;

TEST_CASE("no even number up to 10^4 misses a prime pair") {
  PPScanResult r = pp_exception_scan(10000);
  CHECK(r.N == 10000);
  CHECK(r.exceptions.empty());
  CHECK(r.evens_counted == 5000);
  CHECK(r.density == Rat(0));
}

TEST_CASE("prime pair scans are thread-deterministic") {
  PPScanResult one = pp_exception_scan(50000, 1);
  PPScanResult four = pp_exception_scan(50000, 4);
  CHECK(one.exceptions == four.exceptions);
  CHECK(one.density == four.density);
}

TEST_CASE("least prime pair matches a by-hand table") {
  CHECK(pp_first_pair(4) == 2);
  CHECK(pp_first_pair(6) == 3);
  CHECK(pp_first_pair(8) == 3);
  CHECK(pp_first_pair(10) == 3);
  CHECK(pp_first_pair(12) == 5);
  CHECK(pp_first_pair(98) == 19);
  CHECK(pp_first_pair(2) == 0);  // 1 + 1 is not a prime split
  CHECK(pp_first_pair(7) == 0);  // odd inputs have no even split
}

TEST_CASE("least prime pair agrees with the sieve on a sample") {
  for (long long n = 4; n <= 2000; n += 2) {
    long long p = pp_first_pair(n);
    REQUIRE(p != 0);
    CHECK(oracles::is_prime_slow(p));
    CHECK(oracles::is_prime_slow(n - p));
    // least means least: nothing smaller splits n
    for (long long q = 2; q < p; ++q)
      if (oracles::is_prime_slow(q)) CHECK_FALSE(oracles::is_prime_slow(n - q));
  }
}

TEST_CASE("scan guards") {
  CHECK_THROWS_AS(pp_exception_scan(2), error);
  CHECK_THROWS_AS(pp_exception_scan(kSieveCap + 1), budget_exceeded);
}

TEST_CASE("splitting X^2 over F_3") {
  Fq F(3, 1);
  DecompositionResult r = fq_goldbach_decompose(F, uni_parse(F, "X^2"));
  REQUIRE(r.found);
  // the degree-1 monics in enumeration order are X, X+1, X+2; the first whose
  // complement X^2 - f2 is irreducible is X+1, leaving X^2+2X+2
  CHECK(uni_to_string(F, r.f1) == "X^2+2*X+2");
  CHECK(uni_to_string(F, r.f2) == "X+1");
  CHECK(r.alpha == 1);
  CHECK(r.candidates_tried == 2);
  CHECK(uni_add(F, r.f1, r.f2) == uni_parse(F, "X^2"));
  CHECK(oracles::irreducible_by_trial_division(F, r.f1));
  CHECK(oracles::irreducible_by_trial_division(F, r.f2));
}

TEST_CASE("splitting X^2 over F_2") {
  Fq F(2, 1);
  DecompositionResult r = fq_goldbach_decompose(F, uni_parse(F, "X^2"));
  REQUIRE(r.found);
  // X is rejected (complement X^2+X = X(X+1)), X+1 works
  CHECK(uni_to_string(F, r.f1) == "X^2+X+1");
  CHECK(uni_to_string(F, r.f2) == "X+1");
  CHECK(r.candidates_tried == 2);
}

TEST_CASE("X^2+X over F_2 admits no monically-split decomposition") {
  Fq F(2, 1);
  DecompositionResult r = fq_goldbach_decompose(F, uni_parse(F, "X^2+X"));
  CHECK_FALSE(r.found);
  CHECK(r.candidates_tried == 2);  // both degree-1 monics, X and X+1, fail
}

TEST_CASE("non-monic targets are normalized by the leading unit") {
  Fq F(3, 1);
  UniPoly m = uni_parse(F, "2*X^2");
  DecompositionResult r = fq_goldbach_decompose(F, m);
  REQUIRE(r.found);
  CHECK(r.alpha == 2);  // 2 is its own inverse in F_3
  CHECK(uni_add(F, r.f1, r.f2) == m);
  // scaling back by the unit keeps both parts irreducible
  CHECK(oracles::irreducible_by_trial_division(F, r.f1));
  CHECK(oracles::irreducible_by_trial_division(F, r.f2));
  CHECK(uni_to_string(F, r.f1) == "2*X^2+X+1");
  CHECK(uni_to_string(F, r.f2) == "2*X+2");
}

TEST_CASE("monic splits over F_3 up to degree 5: exactly eight exceptions") {
  // The split with f2 monic of lower degree does not always exist over small
  // fields.  Exhaustive scan: 8 monics in degrees 3..5 resist (all of them
  // themselves irreducible; X^3+2X+1 is the smallest, checked by hand: each
  // of the six candidate complements has a root).
  Fq F(3, 1);
  std::vector<std::string> misses;
  for (int d = 2; d <= 5; ++d) {
    long long count = int_pow(3, d).convert_to<long long>();
    for (long long idx = 0; idx < count; ++idx) {
      UniPoly m = monic_from_index(F, d, idx);
      DecompositionResult r = fq_goldbach_decompose(F, m);
      if (!r.found) {
        misses.push_back(uni_to_string(F, m));
        continue;
      }
      CHECK(uni_add(F, r.f1, r.f2) == m);
      CHECK(oracles::irreducible_by_trial_division(F, r.f1));
      CHECK(oracles::irreducible_by_trial_division(F, r.f2));
    }
  }
  std::vector<std::string> expected = {
      "X^3+2*X+1",
      "X^3+2*X+2",
      "X^4+2*X^2+2",
      "X^4+X^3+2*X^2+2*X+2",
      "X^4+2*X^3+2*X^2+X+2",
      "X^5+2*X+2",
      "X^5+X^4+X^3+2*X^2+X+2",
      "X^5+2*X^4+X^3+X^2+X+2",
  };
  CHECK(misses == expected);
}

TEST_CASE("the F_3 leftovers still split once leading terms may cancel") {
  // doubling works in characteristic 3: 2f + 2f = f, so any m with 2m
  // irreducible is a relaxed sum; every monic-split exception lands this way
  Fq F(3, 1);
  for (const char* text : {"X^3+2*X+1", "X^4+2*X^2+2", "X^5+2*X+2"}) {
    UniPoly m = uni_parse(F, text);
    CHECK_FALSE(fq_goldbach_decompose(F, m).found);
    PxPxResult r = pxpx_membership(F, m);
    REQUIRE(r.member);
    CHECK(uni_add(F, r.f1, r.f2) == m);
    CHECK(oracles::irreducible_by_trial_division(F, r.f1));
    CHECK(oracles::irreducible_by_trial_division(F, r.f2));
  }
  PxPxResult doubled = pxpx_membership(F, uni_parse(F, "X^3+2*X+1"));
  CHECK(uni_to_string(F, doubled.f1) == "2*X^3+X+2");
  CHECK(uni_to_string(F, doubled.f2) == "2*X^3+X+2");
}

TEST_CASE("monic splits over F_2 up to degree 5: twenty-two exceptions") {
  Fq F(2, 1);
  long long found = 0, missed = 0;
  for (int d = 2; d <= 5; ++d) {
    long long count = int_pow(2, d).convert_to<long long>();
    for (long long idx = 0; idx < count; ++idx) {
      UniPoly m = monic_from_index(F, d, idx);
      DecompositionResult r = fq_goldbach_decompose(F, m);
      if (!r.found) {
        ++missed;
        continue;
      }
      ++found;
      CHECK(uni_add(F, r.f1, r.f2) == m);
      CHECK(oracles::irreducible_by_trial_division(F, r.f1));
      CHECK(oracles::irreducible_by_trial_division(F, r.f2));
    }
  }
  CHECK(missed == 22);
  CHECK(found == 4 + 8 + 16 + 32 - 22);
}

TEST_CASE("degree guards on decomposition inputs") {
  Fq F(2, 1);
  CHECK_THROWS_AS(fq_goldbach_decompose(F, uni_parse(F, "X")), error);
  CHECK_THROWS_AS(fq_goldbach_decompose(F, uni_parse(F, "X^2"), 1), budget_exceeded);
}

TEST_CASE("two-irreducible membership without the monic constraint") {
  Fq F(2, 1);
  PxPxResult r = pxpx_membership(F, uni_parse(F, "X^2"));
  REQUIRE(r.member);
  CHECK(uni_to_string(F, r.f1) == "X^2+X+1");
  CHECK(uni_to_string(F, r.f2) == "X+1");
  CHECK(r.candidates_tried == 2);

  // over F_2 the leading terms of two cubics cancel, reaching X^2+X
  PxPxResult s = pxpx_membership(F, uni_parse(F, "X^2+X"));
  REQUIRE(s.member);
  CHECK(uni_to_string(F, s.f1) == "X^3+X+1");
  CHECK(uni_to_string(F, s.f2) == "X^3+X^2+1");
  CHECK(s.candidates_tried == 4);
  CHECK(uni_add(F, s.f1, s.f2) == uni_parse(F, "X^2+X"));
  CHECK(oracles::irreducible_by_trial_division(F, s.f1));
  CHECK(oracles::irreducible_by_trial_division(F, s.f2));
}

TEST_CASE("two-irreducible membership over F_3 keeps scalar order") {
  Fq F(3, 1);
  PxPxResult r = pxpx_membership(F, uni_parse(F, "X^2+X"));
  REQUIRE(r.member);
  // candidates run degree, then monic index, then scalar; X+2 leaves X^2+1
  CHECK(uni_to_string(F, r.f1) == "X^2+1");
  CHECK(uni_to_string(F, r.f2) == "X+2");
  CHECK(r.candidates_tried == 5);
  CHECK(uni_add(F, r.f1, r.f2) == uni_parse(F, "X^2+X"));
}

TEST_CASE("a monic split is in particular a two-irreducible split") {
  Fq F(2, 1);
  for (int d = 2; d <= 4; ++d) {
    long long count = int_pow(2, d).convert_to<long long>();
    for (long long idx = 0; idx < count; ++idx) {
      UniPoly m = monic_from_index(F, d, idx);
      if (fq_goldbach_decompose(F, m).found) {
        PxPxResult r = pxpx_membership(F, m);
        CHECK(r.member);
        CHECK(uni_add(F, r.f1, r.f2) == m);
      }
    }
  }
}

TEST_CASE("pair order puts the larger degree first") {
  Fq F(2, 1);
  PxPxResult r = pxpx_membership(F, uni_parse(F, "X^3"));
  REQUIRE(r.member);
  CHECK(r.f1.deg() >= r.f2.deg());
  CHECK(oracles::irreducible_by_trial_division(F, r.f1));
  CHECK(oracles::irreducible_by_trial_division(F, r.f2));
  CHECK(uni_add(F, r.f1, r.f2) == uni_parse(F, "X^3"));
}
