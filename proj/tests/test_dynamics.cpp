#include "doctest.h"
#include "dsetkit/dynamics.hpp"

using namespace dsetkit;

namespace {

FiniteMPS rot4() {
  std::vector<Rat> w(4, Rat(1, 4));
  return FiniteMPS(w, {{1, 2, 3, 0}});
}

CylinderSystem coin() { return CylinderSystem({Rat(1, 2), Rat(1, 2)}); }

std::vector<GVec> z_window(long long lo, long long hi) {
  std::vector<GVec> w;
  for (long long g = lo; g <= hi; ++g) w.push_back({g});
  return w;
}

}  // namespace

TEST_CASE("construction rejects broken systems") {
  std::vector<Rat> w(4, Rat(1, 4));
  CHECK_THROWS_AS(FiniteMPS({Rat(1, 2), Rat(1, 3)}, {{1, 0}}), error);   // sums to 5/6
  CHECK_THROWS_AS(FiniteMPS({Rat(1), Rat(0)}, {{0, 0}}), error);         // not a bijection
  CHECK_THROWS_AS(FiniteMPS({Rat(2, 3), Rat(1, 3)}, {{1, 0}}), error);   // weight mismatch
  CHECK_THROWS_AS(FiniteMPS(w, {}), error);                              // no generators
  // (0 1) and (1 2) do not commute
  CHECK_THROWS_AS(FiniteMPS(w, {{1, 0, 2, 3}, {0, 2, 1, 3}}), error);
  CHECK_THROWS_AS(CylinderSystem({Rat(1, 2), Rat(1, 3)}), error);
  CHECK_NOTHROW(FiniteMPS(w, {{1, 0, 3, 2}, {2, 3, 0, 1}}));  // these do commute
}

TEST_CASE("powers of a rotation act by shifted indices") {
  FiniteMPS sys = rot4();
  CHECK(sys.order_of(0) == 4);
  CHECK(sys.apply({1}, 0) == 1);
  CHECK(sys.apply({5}, 0) == 1);
  CHECK(sys.apply({-1}, 0) == 3);
  CHECK(sys.apply({-1000001}, 2) == 1);
  CHECK(sys.apply({0}, 3) == 3);
}

TEST_CASE("events are deduplicated, validated, measured") {
  FiniteMPS sys = rot4();
  FiniteEvent A = make_finite_event(sys, {2, 0, 2});
  CHECK(A == FiniteEvent{0, 2});
  CHECK(event_measure(sys, A) == Rat(1, 2));
  CHECK_THROWS_AS(make_finite_event(sys, {4}), error);
  CHECK(event_measure(sys, make_finite_event(sys, {})) == Rat(0));
}

TEST_CASE("rotation correlations alternate between 1/4 and 0") {
  FiniteMPS sys = rot4();
  FiniteEvent A = make_finite_event(sys, {0});
  for (long long g = -8; g <= 8; ++g)
    CHECK(correlation(sys, A, A, {g}) == (g % 4 == 0 ? Rat(1, 4) : Rat(0)));
}

TEST_CASE("rotation return times have density 25/101 on the centered window") {
  FiniteMPS sys = rot4();
  FiniteEvent A = make_finite_event(sys, {0});
  CorrelationReport rep = correlation_sets(sys, A, A, Rat(1, 100), z_window(-50, 50));
  CHECK(rep.product == Rat(1, 16));
  CHECK(rep.r_density == Rat(25, 101));
  CHECK(rep.l_density == Rat(76, 101));
  CHECK(rep.rl_density == Rat(0));  // values are only ever 1/4 or 0
  // 25 window points at (1/4 - 1/16)^2, 76 at (0 - 1/16)^2
  CHECK(rep.second_moment == Rat(25 * 9 + 76, 256) / 101);
  REQUIRE(rep.translate_r_density.size() == 3);
  for (const auto& [t, dens] : rep.translate_r_density) {
    CHECK(-1 <= t);
    CHECK(t <= 1);
    CHECK(dens == Rat(25, 101));  // 4Z stays 25-in-101 under a unit shift here
  }
}

TEST_CASE("translate densities are only tabulated for contiguous Z windows") {
  FiniteMPS sys = rot4();
  FiniteEvent A = make_finite_event(sys, {0});
  std::vector<GVec> gaps = {{0}, {2}, {4}};
  CorrelationReport rep = correlation_sets(sys, A, A, Rat(1, 100), gaps);
  CHECK(rep.translate_r_density.empty());
  CHECK(rep.g.size() == 3);
}

TEST_CASE("coin-flip correlations split off the zero shift") {
  CylinderSystem sys = coin();
  CylEvent A = make_cyl_event(sys, {{{0, 1}}});
  CHECK(event_measure(sys, A) == Rat(1, 2));
  CHECK(correlation(sys, A, A, 0) == Rat(1, 2));
  for (long long g : {-7, -1, 1, 2, 1000})
    CHECK(correlation(sys, A, A, g) == Rat(1, 4));

  // two-coordinate event: overlap decides how much independence is left
  CylEvent B = make_cyl_event(sys, {{{0, 1}, {1, 1}}});
  CHECK(event_measure(sys, B) == Rat(1, 4));
  CHECK(correlation(sys, A, B, 0) == Rat(1, 4));
  CHECK(correlation(sys, A, B, 1) == Rat(1, 4));   // shifted support {-1, 0} overlaps A
  CHECK(correlation(sys, A, B, -1) == Rat(1, 8));  // shifted support {1, 2} does not
  CHECK(correlation(sys, A, B, 5) == Rat(1, 8));
}

TEST_CASE("coin-flip return times fill all but the zero shift") {
  CylinderSystem sys = coin();
  CylEvent A = make_cyl_event(sys, {{{0, 1}}});
  CorrelationReport rep = correlation_sets(sys, A, A, Rat(1, 100), -1000, 1000);
  CHECK(rep.product == Rat(1, 4));
  CHECK(rep.r_density == Rat(1));
  CHECK(rep.l_density == Rat(2000, 2001));
  CHECK(rep.rl_density == Rat(2000, 2001));
  CHECK(rep.second_moment == Rat(1, 16) / 2001);
  for (const auto& [t, dens] : rep.translate_r_density) CHECK(dens == Rat(1));
}

TEST_CASE("cylinder unions expand to disjoint rows") {
  CylinderSystem sys = coin();
  // x0 = 1 or x1 = 0: rows (0,0), (1,0), (1,1) over support {0,1}
  CylEvent E = make_cyl_event(sys, {{{0, 1}}, {{1, 0}}});
  REQUIRE(E.support == std::vector<long long>{0, 1});
  CHECK(E.patterns.size() == 3);
  CHECK(event_measure(sys, E) == Rat(3, 4));

  // the empty union is the empty event; no constraints means the full space
  CHECK(event_measure(sys, make_cyl_event(sys, {})) == Rat(0));
  CHECK(event_measure(sys, make_cyl_event(sys, {{}})) == Rat(1));

  CHECK_THROWS_AS(make_cyl_event(sys, {{{0, 7}}}), error);  // letter out of range
  // four constrained coordinates, cap forces the expansion to give up
  CHECK_THROWS_AS(
      make_cyl_event(sys, {{{0, 1}}, {{1, 1}}, {{2, 1}}, {{3, 1}}}, 4),
      budget_exceeded);
}

TEST_CASE("cesaro averages over growing windows") {
  FiniteMPS sys = rot4();
  FiniteEvent A = make_finite_event(sys, {0});
  CHECK(cesaro_average(sys, A, A, z_window(1, 400)) == Rat(1, 16));
  // the window [1, 399] misses one 1/4 hit: 99 hits over 399 points
  CHECK(cesaro_average(sys, A, A, z_window(1, 399)) == Rat(99, 4 * 399));
  CHECK_THROWS_AS(cesaro_average(sys, A, A, {}), error);

  CylinderSystem c = coin();
  CylEvent E = make_cyl_event(c, {{{0, 1}}});
  CHECK(cesaro_average(c, E, E, 1, 400) == Rat(1, 4));
  CHECK(cesaro_average(c, E, E, 0, 399) == Rat(1, 4) + Rat(1, 4) / 400);
}

TEST_CASE("orbit partition decides ergodicity") {
  ErgodicityReport good = ergodicity_test(rot4());
  CHECK(good.ergodic);
  CHECK(good.method == "orbit-partition");
  CHECK(good.certificate.empty());
  CHECK(good.crosscheck_ran);

  // two 2-cycles: the orbit {0,1} is invariant with measure 1/2
  FiniteMPS split({Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}, {{1, 0, 3, 2}});
  ErgodicityReport bad = ergodicity_test(split);
  CHECK_FALSE(bad.ergodic);
  CHECK(bad.certificate == std::vector<int>{0, 1});
  CHECK(bad.certificate_measure == Rat(1, 2));
  CHECK(bad.crosscheck_ran);

  // zero-weight atoms may sit in their own orbit without breaking ergodicity
  FiniteMPS padded({Rat(1, 2), Rat(1, 2), Rat(0)}, {{1, 0, 2}});
  CHECK(ergodicity_test(padded).ergodic);

  ErgodicityReport coin_rep = ergodicity_test(coin());
  CHECK(coin_rep.ergodic);
  CHECK(coin_rep.method == "bernoulli-by-construction");
}

TEST_CASE("two commuting rotations are jointly ergodic") {
  // neither generator alone moves every atom, but together they act
  // transitively on the 4-point torus
  std::vector<Rat> w(4, Rat(1, 4));
  FiniteMPS torus(w, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  ErgodicityReport rep = ergodicity_test(torus);
  CHECK(rep.ergodic);
  CHECK(rep.crosscheck_ran);
}

TEST_CASE("weak mixing fails for the rotation and holds for the coin flip") {
  FiniteMPS sys = rot4();
  FiniteEvent A = make_finite_event(sys, {0});
  WMReport rot = weak_mixing_report(sys, {{A, A}}, Rat(1, 100), z_window(-50, 50));
  REQUIRE(rot.pairs.size() == 1);
  CHECK(rot.threshold == Rat(99, 100));
  CHECK(rot.pairs[0].rl_density == Rat(0));
  CHECK_FALSE(rot.consistent);

  CylinderSystem c = coin();
  CylEvent E = make_cyl_event(c, {{{0, 1}}});
  CylEvent F = make_cyl_event(c, {{{0, 0}, {1, 0}}});
  WMReport mix = weak_mixing_report(c, {{E, E}, {E, F}}, Rat(1, 100), -1000, 1000);
  CHECK(mix.consistent);
  for (const WMPairResult& p : mix.pairs) CHECK(p.rl_density >= mix.threshold);
}

TEST_CASE("point spectrum lists one rotation number per atom") {
  std::vector<Rat> spec = koopman_point_spectrum(rot4());
  CHECK(spec == std::vector<Rat>{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4)});

  FiniteMPS split({Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}, {{1, 0, 3, 2}});
  CHECK(koopman_point_spectrum(split) == std::vector<Rat>{Rat(0), Rat(0), Rat(1, 2), Rat(1, 2)});

  FiniteMPS still({Rat(1, 3), Rat(1, 3), Rat(1, 3)}, {{0, 1, 2}});
  CHECK(koopman_point_spectrum(still) == std::vector<Rat>(3, Rat(0)));

  std::vector<Rat> w(4, Rat(1, 4));
  FiniteMPS torus(w, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  CHECK_THROWS_AS(koopman_point_spectrum(torus), unsupported_system);
}

TEST_CASE("visit densities along intervals") {
  auto alternating = [](long long i) { return static_cast<int>(((i % 2) + 2) % 2); };
  std::map<long long, int> want_one = {{0, 1}};
  DensityReport rep = visit_density(alternating, want_one, 100);
  // odd g in [1, n]; the tail-half max lands on the first odd index, 51
  CHECK(rep.estimate == Rat(26, 51));
  CHECK(rep.rows.back().count == 50);

  std::map<long long, int> clash = {{0, 1}, {1, 1}};
  CHECK(visit_density(alternating, clash, 100).estimate == Rat(0));

  // two-coordinate pattern on a period-4 sequence: hits every fourth g
  auto period4 = [](long long i) { return i % 4 == 0 ? 1 : 0; };
  std::map<long long, int> pat = {{0, 1}, {4, 1}};
  DensityReport four = visit_density(period4, pat, 200, 2);
  CHECK(four.rows.back().count == 50);
}

TEST_CASE("report guards") {
  FiniteMPS sys = rot4();
  FiniteEvent A = make_finite_event(sys, {0});
  CHECK_THROWS_AS(correlation_sets(sys, A, A, Rat(0), z_window(0, 5)), error);
  CHECK_THROWS_AS(correlation_sets(sys, A, A, Rat(1, 10), {}), error);
  CylinderSystem c = coin();
  CylEvent E = make_cyl_event(c, {{{0, 1}}});
  CHECK_THROWS_AS(correlation_sets(c, E, E, Rat(1, 10), 5, 4), error);
}
