// Release gate: ten numbered checks, one PASS/FAIL line each, exit code =
// number of failures.  Every check recomputes its expectations from scratch
// (brute-force recounts, trial division, exhaustive sweeps) rather than
// trusting the code path under test.  Check 10 needs the CLI driver binary:
//   dsetkit_acceptance --cli <path-to-dsetkit_cli>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "dsetkit/dynamics.hpp"
#include "dsetkit/folner.hpp"
#include "dsetkit/goldbach.hpp"
#include "dsetkit/group.hpp"
#include "dsetkit/largeness.hpp"
#include "dsetkit/multipoly.hpp"
#include "dsetkit/textio.hpp"
#include "dsetkit/unipoly.hpp"
#include "support/oracles.hpp"

using namespace dsetkit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }
Outcome pass(std::string note = "") { return {true, std::move(note)}; }

// ---------------------------------------------------------------- check 1

Outcome check_interval_defect() {
  GroupDescriptor G = make_group("Z");
  FolnerSequence seq = make_folner(G, "intervals");
  const long long n = 1000;
  for (long long g : {1LL, -1LL, 2LL, -2LL}) {
    Rat d = folner_defect(seq, elem_z(g), n);
    long long ag = g < 0 ? -g : g;
    if (d != Rat(n - ag, n))
      return fail("defect at g=" + std::to_string(g) + " is " + rat_str(d) +
                  ", want " + rat_str(Rat(n - ag, n)));
    if (d < Rat(998, 1000))
      return fail("defect at g=" + std::to_string(g) + " below 998/1000");
  }
  return pass("all four translates exact");
}

// ---------------------------------------------------------------- check 2

// plain sorted-vector recount of |union_{k<=m} F_k^-1 F_{m+1}| / |F_{m+1}|
std::vector<Rat> tempered_by_brute_force(const FolnerSequence& seq, long long n_max) {
  std::vector<Rat> out;
  std::vector<Element> inverses;
  for (long long m = 1; m < n_max; ++m) {
    for (const Element& x : seq.gen(m)) inverses.push_back(invert(seq.G, x));
    std::sort(inverses.begin(), inverses.end());
    inverses.erase(std::unique(inverses.begin(), inverses.end()), inverses.end());
    std::vector<Element> next = seq.gen(m + 1);
    std::vector<Element> uni;
    uni.reserve(inverses.size() * next.size());
    for (const Element& inv : inverses)
      for (const Element& y : next) uni.push_back(op_apply(seq.G, inv, y));
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    out.emplace_back(Int(static_cast<unsigned long long>(uni.size())),
                     Int(static_cast<unsigned long long>(next.size())));
  }
  return out;
}

Outcome check_temperedness() {
  GroupDescriptor Z = make_group("Z");
  FolnerSequence intervals = make_folner(Z, "intervals");
  TemperedResult t = temperedness_constant(intervals, 50);
  if (t.C > 2) return fail("interval constant " + rat_str(t.C) + " above 2");
  std::vector<Rat> brute = tempered_by_brute_force(intervals, 50);
  for (std::size_t i = 0; i < brute.size(); ++i)
    if (t.per_m[i].second != brute[i])
      return fail("interval recount differs at m=" + std::to_string(i + 1));

  FolnerSequence nt = folner_nontempered();
  TemperedResult u = temperedness_constant(nt, 8);
  if (!(u.C > 10)) return fail("non-tempered constant " + rat_str(u.C) + " not above 10");
  std::vector<Rat> brute_nt = tempered_by_brute_force(nt, 8);
  for (std::size_t i = 0; i < brute_nt.size(); ++i)
    if (u.per_m[i].second != brute_nt[i])
      return fail("non-tempered recount differs at m=" + std::to_string(i + 1));
  return pass("intervals C=" + rat_str(t.C) + ", scattered C=" + rat_str(u.C));
}

// ---------------------------------------------------------------- check 3

// random polynomial with deg_{X1}, deg_{X2} <= 2 over F_q
MultiPoly random_box_poly(const Fq& F, std::mt19937_64& rng) {
  MultiPoly acc = mp_zero(2);
  for (int a = 0; a <= 2; ++a) {
    std::vector<int> row(3);
    for (int b = 0; b <= 2; ++b)
      row[static_cast<std::size_t>(b)] = static_cast<int>(rng() % F.q());
    UniPoly in_x2 = uni_trim(std::move(row));
    if (in_x2.is_zero()) continue;
    std::vector<int> xa(static_cast<std::size_t>(a) + 1, 0);
    xa.back() = 1;
    acc = mp_add(F, acc,
                 mp_mul(F, mp_from_uni(uni_trim(std::move(xa)), 1, 2),
                        mp_from_uni(in_x2, 2, 2)));
  }
  return acc;
}

UniPoly random_generator(const Fq& F, std::mt19937_64& rng, int degree) {
  std::vector<int> c(static_cast<std::size_t>(degree) + 1);
  for (int i = 0; i < degree; ++i)
    c[static_cast<std::size_t>(i)] = static_cast<int>(rng() % F.q());
  c[static_cast<std::size_t>(degree)] = 1 + static_cast<int>(rng() % (F.q() - 1));
  return uni_trim(std::move(c));
}

Outcome check_pigeonhole_random() {
  std::mt19937_64 rng(0x5eed0003ULL);
  for (int q : {2, 3}) {
    Fq F = make_field(q);
    for (int trial = 0; trial < 1000; ++trial) {
      int d1 = 1 + static_cast<int>(rng() % 2);
      int d2 = 1 + static_cast<int>(rng() % 2);
      IdealBasis basis(F, 2,
                       {{1, random_generator(F, rng, d1)},
                        {2, random_generator(F, rng, d2)}});
      // the guaranteed length comes from the class count; build it directly
      Int classes = int_pow(Int(q), d1 * d2);
      long long length = ((Int(q - 1) * classes) + 1).convert_to<long long>();
      std::vector<MultiPoly> gs;
      gs.reserve(static_cast<std::size_t>(length));
      for (long long i = 0; i < length; ++i) gs.push_back(random_box_poly(F, rng));
      PigeonholeWitness w = pigeonhole_witness(F, gs, basis);
      if (w.class_count != classes || w.required_length != Int(length))
        return fail("class bookkeeping off in trial " + std::to_string(trial));
      if (static_cast<int>(w.indices.size()) != w.p || w.p != q)
        return fail("witness does not use exactly p indices");
      if (!w.member || !ideal_member(F, w.sum, basis))
        return fail("witness sum escapes the ideal");
      if (!oracles::ideal_member_by_linear_algebra(F, w.sum, basis))
        return fail("span oracle rejects a witness sum");
      if (ideal_member(F, w.remainder, basis) !=
          oracles::ideal_member_by_linear_algebra(F, w.remainder, basis))
        return fail("membership disagrees with the span oracle on a remainder");
    }
  }
  return pass("2000 random sequences certified");
}

// ---------------------------------------------------------------- check 4

UniPoly random_nonzero_rep(const Fq& F, std::mt19937_64& rng, long long m) {
  while (true) {
    std::vector<int> c(static_cast<std::size_t>(m));
    for (auto& x : c) x = static_cast<int>(rng() % F.q());
    UniPoly rep = uni_trim(std::move(c));
    if (!rep.is_zero()) return rep;
  }
}

Outcome check_coset_falsifiers() {
  std::mt19937_64 rng(0x5eed0004ULL);
  for (int q : {2, 3}) {
    Fq F = make_field(q);
    for (long long m = 1; m <= 3; ++m) {
      std::vector<UniPoly> reps = {UniPoly{}, random_nonzero_rep(F, rng, m)};
      CosetIdealResult r = coset_union_contains_ideal(F, reps, m, true);
      if (!r.contains_ideal || r.m != m)
        return fail("zero coset not detected at m=" + std::to_string(m));
    }
    for (int trial = 0; trial < 100; ++trial) {
      long long m = 1 + static_cast<long long>(rng() % 3);
      int count = 1 + static_cast<int>(rng() % 3);
      std::vector<UniPoly> reps;
      for (int i = 0; i < count; ++i) reps.push_back(random_nonzero_rep(F, rng, m));
      CosetIdealResult r = coset_union_contains_ideal(F, reps, m, true);
      if (r.contains_ideal) return fail("zero-free union claimed to contain the ideal");
      if (static_cast<int>(r.falsifier.size()) != q || !r.verified)
        return fail("falsifier missing or unverified in trial " + std::to_string(trial));
      // independent recheck at the coefficient level, no polynomial division
      const UniPoly& base = r.falsifier.front();
      UniPoly total;
      for (const UniPoly& elt : r.falsifier) {
        for (long long i = 0; i < m; ++i)
          if (elt.coeff(static_cast<int>(i)) != base.coeff(static_cast<int>(i)))
            return fail("falsifier element leaves its coset");
        total = uni_add(F, total, elt);
      }
      if (!(total == r.escape_sum)) return fail("escape sum does not match");
      for (long long i = 0; i < m; ++i)
        if (r.escape_sum.coeff(static_cast<int>(i)) != 0)
          return fail("escape sum misses the ideal");
    }
  }
  return pass("200 random zero-free unions falsified");
}

// ---------------------------------------------------------------- check 5

Outcome check_prime_pairs() {
  PPScanResult r = pp_exception_scan(1000000, 4);
  if (!r.exceptions.empty())
    return fail(std::to_string(r.exceptions.size()) + " evens without a prime pair");
  if (r.density != Rat(0)) return fail("density not exactly 0");
  return pass("all " + std::to_string(r.evens_counted) + " evens split");
}

// ---------------------------------------------------------------- check 6

Outcome check_fq_goldbach_sweep() {
  std::string f3_misses;
  int f3_miss_count = 0;
  Fq F3 = make_field(3);
  for (int d = 2; d <= 5; ++d) {
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= 3;
    for (long long idx = 0; idx < total; ++idx) {
      UniPoly m = monic_from_index(F3, d, idx);
      DecompositionResult r = fq_goldbach_decompose(F3, m);
      if (!r.found) {
        ++f3_miss_count;
        if (!f3_misses.empty()) f3_misses += ", ";
        f3_misses += uni_to_string(F3, m);
        continue;
      }
      if (!(uni_add(F3, r.f1, r.f2) == m) || !irreducible_test(F3, r.f1) ||
          !irreducible_test(F3, r.f2) ||
          !oracles::irreducible_by_trial_division(F3, r.f1) ||
          !oracles::irreducible_by_trial_division(F3, r.f2))
        return fail("a returned F_3 pair fails verification at " + uni_to_string(F3, m));
    }
  }

  Fq F2 = make_field(2);
  std::vector<UniPoly> f2_exceptions;
  for (int d = 2; d <= 5; ++d) {
    long long total = 1LL << d;
    for (long long idx = 0; idx < total; ++idx) {
      UniPoly m = monic_from_index(F2, d, idx);
      DecompositionResult r = fq_goldbach_decompose(F2, m);
      if (!r.found) {
        f2_exceptions.push_back(m);
        continue;
      }
      if (!(uni_add(F2, r.f1, r.f2) == m) || !irreducible_test(F2, r.f1) ||
          !irreducible_test(F2, r.f2) ||
          !oracles::irreducible_by_trial_division(F2, r.f1) ||
          !oracles::irreducible_by_trial_division(F2, r.f2))
        return fail("a returned F_2 pair fails verification at " + uni_to_string(F2, m));
    }
  }
  bool f2_has_xx = false;
  UniPoly xx = uni_parse(F2, "X^2+X");
  for (const UniPoly& e : f2_exceptions) f2_has_xx = f2_has_xx || e == xx;
  if (f2_exceptions.empty() || !f2_has_xx)
    return fail("F_2 exception report is missing X^2+X");

  if (f3_miss_count != 0)
    return fail(std::to_string(f3_miss_count) +
                " monics over F_3 have no split into two monic irreducibles: " +
                f3_misses + "  (F_2 half fine: " +
                std::to_string(f2_exceptions.size()) + " exceptions incl. X^2+X)");
  return pass("360 F_3 monics split; F_2 reports " +
              std::to_string(f2_exceptions.size()) + " exceptions");
}

// ---------------------------------------------------------------- check 7

void partitions_of(int n, int max_part, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_of(n - part, part, cur, out);
    cur.pop_back();
  }
}

Outcome check_ergodicity_exhaustive() {
  int systems = 0;
  for (int n = 1; n <= 8; ++n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions_of(n, n, cur, parts);
    for (const std::vector<int>& lambda : parts) {
      ++systems;
      // one permutation with consecutive cycles of the given lengths
      std::vector<int> perm(static_cast<std::size_t>(n));
      int start = 0;
      long long order = 1;
      for (int len : lambda) {
        for (int i = 0; i < len; ++i)
          perm[static_cast<std::size_t>(start + i)] = start + (i + 1) % len;
        order = std::lcm(order, static_cast<long long>(len));
        start += len;
      }
      FiniteMPS sys(std::vector<Rat>(static_cast<std::size_t>(n), Rat(1, n)), {perm});
      bool lib = ergodicity_test(sys).ergodic;

      // exhaustive: every pair of nonempty atom sets must meet under some power
      std::vector<std::vector<int>> img(static_cast<std::size_t>(order));
      img[0].resize(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) img[0][static_cast<std::size_t>(x)] = x;
      for (long long g = 1; g < order; ++g) {
        img[static_cast<std::size_t>(g)].resize(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
          img[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)] =
              perm[static_cast<std::size_t>(
                  img[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(x)])];
      }
      unsigned full = (1u << n) - 1;
      std::vector<std::vector<unsigned>> shifted(
          static_cast<std::size_t>(order),
          std::vector<unsigned>(static_cast<std::size_t>(full) + 1, 0));
      for (long long g = 0; g < order; ++g)
        for (unsigned B = 1; B <= full; ++B) {
          unsigned low = B & (~B + 1u);  // lowest set bit; smaller masks are done
          unsigned rest = B ^ low;
          unsigned bit = 1u << img[static_cast<std::size_t>(g)][static_cast<std::size_t>(
                             __builtin_ctz(low))];
          shifted[static_cast<std::size_t>(g)][B] =
              shifted[static_cast<std::size_t>(g)][rest] | bit;
        }
      bool meets_all = true;
      for (unsigned A = 1; A <= full && meets_all; ++A)
        for (unsigned B = 1; B <= full; ++B) {
          bool hit = false;
          for (long long g = 0; g < order && !hit; ++g)
            hit = (A & shifted[static_cast<std::size_t>(g)][B]) != 0;
          if (!hit) {
            meets_all = false;
            break;
          }
        }
      if (lib != meets_all)
        return fail("verdicts disagree on a " + std::to_string(n) + "-atom system");
    }
  }
  if (systems != 66) return fail("expected 66 cycle types, saw " + std::to_string(systems));
  return pass("66 cycle types agree with the exhaustive sweep");
}

// ---------------------------------------------------------------- check 8

std::vector<GVec> z_window(long long lo, long long hi) {
  std::vector<GVec> w;
  for (long long g = lo; g <= hi; ++g) w.push_back({g});
  return w;
}

Outcome check_correlation_thresholds() {
  SystemSpec rot = parse_system("rot:4");
  FiniteEvent A = parse_finite_event(*rot.finite(), "atoms:0");
  CorrelationReport r1 =
      correlation_sets(*rot.finite(), A, A, Rat(1, 100), z_window(-50, 50));
  if (r1.r_density != Rat(25, 101))
    return fail("rotation R density is " + rat_str(r1.r_density) + ", want 25/101");

  SystemSpec coin = parse_system("bernoulli:1/2,1/2");
  CylEvent E = parse_cyl_event(*coin.cylinder(), "cyl:0=1");
  CorrelationReport r2 =
      correlation_sets(*coin.cylinder(), E, E, Rat(1, 10), -1000, 1000);
  if (r2.rl_density != Rat(2000, 2001))
    return fail("coin R^L density is " + rat_str(r2.rl_density) + ", want 2000/2001");
  if (r2.second_moment != Rat(1, 16) / 2001)
    return fail("coin second moment is " + rat_str(r2.second_moment) +
                ", want (1/16)/2001");
  return pass("rotation misses density one, coin attains it");
}

// ---------------------------------------------------------------- check 9

Outcome check_cesaro() {
  SystemSpec rot = parse_system("rot:4");
  FiniteEvent A = parse_finite_event(*rot.finite(), "atoms:0");
  Rat avg = cesaro_average(*rot.finite(), A, A, z_window(1, 400));
  if (avg != Rat(1, 16)) return fail("average is " + rat_str(avg) + ", want 1/16");
  return pass("1/16 = product of the measures");
}

// ---------------------------------------------------------------- check 10

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome check_cli_determinism(const std::string& cli) {
  if (cli.empty()) return fail("no --cli path given");
  const char* cmds[] = {
      "folner-defect --group Z --g 2 --n 500",
      "tempered --group Z --seq intervals --n 40",
      "density --group Z --set evens --n 50",
      "banach --set evens --L 50 --range -100..200",
      "fs --group Z --elems '1;2;4'",
      "ip-witness --group Z --set evens --pool ball:64 --len 3",
      "ipstar-falsify --group Z --set odds --pool ball:64 --len 3",
      "syndetic --group Z --set evens --window 0..9 --gaps '0;1'",
      "coset-ideal --q 3 --m 2 --reps 'X;1'",
      "reduce --q 3 --basis 'X1^2+1,X2^2' --poly 'X1^3+X2^2+X1'",
      "ideal-member --q 2 --basis 'X1^2' --poly 'X1^3+X1^2'",
      "pigeonhole --q 2 --basis 'X1,X2' --seq '1;X1;1+X1'",
      "irreducible --q 2 --poly 'X^3+X+1'",
      "irreducibles --q 3 --d 3",
      "goldbach-int --max 20000",
      "goldbach-fq --q 3 --poly 'X^4+X'",
      "goldbach int --max 20000",
      "goldbach fq --q 3 --poly 'X^4+X'",
      "pxpx --q 2 --poly 'X^2+X'",
      "correlate --system rot:4 --a atoms:0 --b atoms:0 --g 3",
      "cesaro --system rot:4 --a atoms:0 --b atoms:0 --window 1..400",
      "rsets --system rot:4 --a atoms:0 --b atoms:0 --eps 1/100 --window -50..50",
      "rsets --system 'bernoulli:1/2,1/2' --a 'cyl:0=1' --b 'cyl:0=1' --eps 1/10 "
      "--window -200..200",
      "ergodic --system rot:6",
      "wm-report --system 'bernoulli:1/2,1/2' --pair 'cyl:0=1@cyl:0=1' --eps 1/10 "
      "--window -200..200",
      "spectrum --system 'finite:1/4,1/4,1/4,1/4&(0 1)(2 3)'",
      "visits --point periodic:1,0,0 --pattern 0=1 --n 60",
      "op --group heis --a '(1,2,3)' --b '(4,5,6)'",
      "ball --group poly --q 2 --k 2 --n 16",
      "divmod --q 5 --num 'X^4+3*X+1' --den '2*X^2+1'",
  };
  int ran = 0;
  for (const char* args : cmds) {
    RunResult first = run_cli(cli, args);
    RunResult second = run_cli(cli, args);
    if (first.code == -1 || second.code == -1)
      return fail(std::string("could not run: ") + args);
    if (first.code != second.code || first.out != second.out)
      return fail(std::string("outputs differ for: ") + args);
    ++ran;
  }
  return pass(std::to_string(ran) + " subcommands bit-identical twice");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc) cli = argv[++i];
  }

  struct Check {
    const char* name;
    double limit;  // seconds; 0 = untimed
    Outcome (*run)();
  };
  const Check checks[] = {
      {"interval-defect", 1, check_interval_defect},
      {"temperedness-constants", 5, check_temperedness},
      {"pigeonhole-random", 30, check_pigeonhole_random},
      {"coset-falsifiers", 5, check_coset_falsifiers},
      {"prime-pair-scan", 10, check_prime_pairs},
      {"fq-goldbach-sweep", 60, check_fq_goldbach_sweep},
      {"ergodicity-exhaustive", 60, check_ergodicity_exhaustive},
      {"correlation-thresholds", 5, check_correlation_thresholds},
      {"cesaro-average", 1, check_cesaro},
  };

  int failures = 0;
  int id = 0;
  auto report = [&](const char* name, double limit, double secs, Outcome o) {
    ++id;
    bool in_time = limit == 0 || secs < limit;
    bool ok = o.pass && in_time;
    failures += !ok;
    std::printf("%2d %-4s %-24s %7.2fs", id, ok ? "PASS" : "FAIL", name, secs);
    if (limit > 0) std::printf(" (limit %.0fs)", limit);
    if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
    if (o.pass && !in_time) std::printf("  [over time limit]");
    std::printf("\n");
    std::fflush(stdout);
  };

  for (const Check& c : checks) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(c.name, c.limit, secs, o);
  }

  {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check_cli_determinism(cli);
    } catch (const std::exception& e) {
      o = fail(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report("cli-determinism", 0, secs, o);
  }

  if (failures) std::printf("%d of 10 checks failed\n", failures);
  else std::printf("all 10 checks passed\n");
  return failures;
}
