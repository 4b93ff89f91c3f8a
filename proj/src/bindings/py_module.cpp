// Python face of the library.  Same text grammars as the command line, same
// field names as the JSON reports; rationals travel as exact strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsetkit/dynamics.hpp"
#include "dsetkit/folner.hpp"
#include "dsetkit/goldbach.hpp"
#include "dsetkit/group.hpp"
#include "dsetkit/largeness.hpp"
#include "dsetkit/multipoly.hpp"
#include "dsetkit/textio.hpp"
#include "dsetkit/unipoly.hpp"

namespace py = pybind11;
using namespace dsetkit;

namespace {

py::list density_rows(const DensityReport& rep) {
  py::list rows;
  for (const DensityRow& row : rep.rows) {
    py::dict d;
    d["n"] = row.n;
    d["size"] = row.size;
    d["count"] = row.count;
    d["ratio"] = rat_str(density_ratio(row));
    rows.append(d);
  }
  return rows;
}

py::dict density_dict(const DensityReport& rep) {
  py::dict d;
  d["rows"] = density_rows(rep);
  d["running_max"] = rat_str(rep.running_max);
  d["estimate"] = rat_str(rep.estimate);
  return d;
}

py::object witness_obj(const GroupDescriptor& G, const std::optional<FSWitness>& w) {
  if (!w) return py::none();
  py::dict d;
  d["kind"] = w->kind;
  d["scale"] = w->scale;
  py::list gens, fs;
  for (const Element& g : w->generators) gens.append(elem_to_string(G, g));
  for (const Element& s : w->fs) fs.append(elem_to_string(G, s));
  d["generators"] = gens;
  d["fs"] = fs;
  d["verified"] = w->verified;
  return d;
}

py::dict report_dict(const CorrelationReport& rep) {
  py::dict d;
  d["eps"] = rat_str(rep.eps);
  d["mu_a"] = rat_str(rep.mu_a);
  d["mu_b"] = rat_str(rep.mu_b);
  d["product"] = rat_str(rep.product);
  py::list rows;
  for (std::size_t i = 0; i < rep.g.size(); ++i) {
    py::dict row;
    py::list g;
    for (long long c : rep.g[i]) g.append(c);
    row["g"] = g;
    row["value"] = rat_str(rep.value[i]);
    row["in_r"] = static_cast<bool>(rep.in_r[i]);
    row["in_l"] = static_cast<bool>(rep.in_l[i]);
    rows.append(row);
  }
  d["rows"] = rows;
  d["r_density"] = rat_str(rep.r_density);
  d["l_density"] = rat_str(rep.l_density);
  d["rl_density"] = rat_str(rep.rl_density);
  d["second_moment"] = rat_str(rep.second_moment);
  py::list tr;
  for (const auto& [t, dens] : rep.translate_r_density) {
    py::dict row;
    row["t"] = t;
    row["density"] = rat_str(dens);
    tr.append(row);
  }
  d["translate_r_density"] = tr;
  return d;
}

struct EventPair {
  std::string a, b;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact computations on amenable-group density, finite sums, "
            "polynomial ideals, prime pairs and measure-preserving systems";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const error& e) {
      PyErr_SetString(PyExc_ValueError, (e.kind + ": " + e.what()).c_str());
    }
  });

  // ----- invariant sequences and densities
  m.def(
      "folner_defect",
      [](const std::string& group, const std::string& seq, const std::string& g,
         long long n, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        return rat_str(folner_defect(make_folner(G, seq), elem_parse(G, g), n));
      },
      py::arg("group"), py::arg("seq"), py::arg("g"), py::arg("n"), py::arg("q") = 2,
      py::arg("k") = 1);

  m.def(
      "tempered",
      [](const std::string& group, const std::string& seq, long long n_max, int q,
         int k) {
        GroupDescriptor G = make_group(group, q, k);
        TemperedResult t = temperedness_constant(make_folner(G, seq), n_max);
        py::dict d;
        d["C"] = rat_str(t.C);
        d["attained_at"] = t.attained_at;
        py::list per;
        for (const auto& [mm, ratio] : t.per_m) {
          py::dict row;
          row["m"] = mm;
          row["ratio"] = rat_str(ratio);
          per.append(row);
        }
        d["per_m"] = per;
        return d;
      },
      py::arg("group"), py::arg("seq"), py::arg("n_max"), py::arg("q") = 2,
      py::arg("k") = 1);

  m.def(
      "density",
      [](const std::string& group, const std::string& seq, const std::string& set,
         long long n_max, int threads, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        SetPredicate pred = make_set(G, set);
        return density_dict(
            upper_density_along(pred.member, make_folner(G, seq), n_max, threads));
      },
      py::arg("group"), py::arg("seq"), py::arg("set"), py::arg("n_max"),
      py::arg("threads") = 1, py::arg("q") = 2, py::arg("k") = 1);

  m.def(
      "banach",
      [](const std::string& set, long long L, long long lo, long long hi,
         int threads) {
        GroupDescriptor G = make_group("Z");
        SetPredicate pred = make_set(G, set);
        BanachResult r = banach_density_windows(
            [&pred](long long x) { return pred.member(elem_z(x)); }, L, lo, hi,
            threads);
        py::dict d;
        d["density"] = rat_str(r.density);
        d["window_start"] = r.window_start;
        d["L"] = r.L;
        return d;
      },
      py::arg("set"), py::arg("L"), py::arg("lo"), py::arg("hi"),
      py::arg("threads") = 1);

  // ----- finite-sums structures
  m.def(
      "finite_sums",
      [](const std::string& group, const std::string& elems, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        py::list out;
        for (const Element& s : finite_sums(G, parse_elements(G, elems)))
          out.append(elem_to_string(G, s));
        return out;
      },
      py::arg("group"), py::arg("elems"), py::arg("q") = 2, py::arg("k") = 1);

  m.def(
      "ip_witness",
      [](const std::string& group, const std::string& set, const std::string& pool,
         int len, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        return witness_obj(
            G, ip_witness_search(make_set(G, set), parse_elements(G, pool), len));
      },
      py::arg("group"), py::arg("set"), py::arg("pool"), py::arg("len"),
      py::arg("q") = 2, py::arg("k") = 1);

  m.def(
      "ipstar_falsifier",
      [](const std::string& group, const std::string& set, const std::string& pool,
         int len, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        return witness_obj(
            G, ip_star_falsifier(make_set(G, set), parse_elements(G, pool), len));
      },
      py::arg("group"), py::arg("set"), py::arg("pool"), py::arg("len"),
      py::arg("q") = 2, py::arg("k") = 1);

  m.def(
      "syndetic",
      [](const std::string& group, const std::string& set, const std::string& window,
         const std::string& gaps, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        SyndeticResult r = syndetic_window_check(
            make_set(G, set), parse_elements(G, window), parse_elements(G, gaps));
        py::dict d;
        d["covered"] = r.covered;
        d["uncovered"] =
            r.uncovered ? py::cast(elem_to_string(G, *r.uncovered)) : py::none();
        return d;
      },
      py::arg("group"), py::arg("set"), py::arg("window"), py::arg("gaps"),
      py::arg("q") = 2, py::arg("k") = 1);

  m.def(
      "coset_ideal",
      [](int q, long long m, const std::vector<std::string>& reps, bool require_ip) {
        Fq F = make_field(q);
        std::vector<UniPoly> rs;
        for (const std::string& r : reps) rs.push_back(uni_parse(F, r));
        CosetIdealResult r = coset_union_contains_ideal(F, rs, m, require_ip);
        py::dict d;
        d["contains_ideal"] = r.contains_ideal;
        d["m"] = r.m;
        d["coset_count"] = r.coset_count;
        d["scale_bound"] = int_str(r.scale_bound);
        py::list fal;
        for (const UniPoly& f : r.falsifier) fal.append(uni_to_string(F, f));
        d["falsifier"] = fal;
        d["escape_sum"] = uni_to_string(F, r.escape_sum);
        d["verified"] = r.verified;
        return d;
      },
      py::arg("q"), py::arg("m"), py::arg("reps"), py::arg("require_ip") = true);

  // ----- polynomial ideals
  m.def(
      "reduce",
      [](int q, int k, const std::string& basis, const std::string& poly) {
        Fq F = make_field(q);
        IdealBasis b = parse_basis(F, k, basis);
        MultiPoly g = mp_parse(F, k, poly);
        ReduceResult r = multi_reduce(F, g, b);
        py::dict d;
        py::list cof;
        for (const MultiPoly& h : r.cofactors) cof.append(mp_to_string(F, h));
        d["cofactors"] = cof;
        d["remainder"] = mp_to_string(F, r.remainder);
        d["member"] = r.remainder.is_zero();
        return d;
      },
      py::arg("q"), py::arg("k"), py::arg("basis"), py::arg("poly"));

  m.def(
      "ideal_member",
      [](int q, int k, const std::string& basis, const std::string& poly) {
        Fq F = make_field(q);
        return ideal_member(F, mp_parse(F, k, poly), parse_basis(F, k, basis));
      },
      py::arg("q"), py::arg("k"), py::arg("basis"), py::arg("poly"));

  m.def(
      "pigeonhole",
      [](int q, int k, const std::string& basis, const std::vector<std::string>& seq) {
        Fq F = make_field(q);
        IdealBasis b = parse_basis(F, k, basis);
        std::vector<MultiPoly> gs;
        for (const std::string& s : seq) gs.push_back(mp_parse(F, k, s));
        PigeonholeWitness w = pigeonhole_witness(F, gs, b);
        py::dict d;
        py::list idx;
        for (long long i : w.indices) idx.append(i);
        d["indices"] = idx;
        d["remainder"] = mp_to_string(F, w.remainder);
        d["sum"] = mp_to_string(F, w.sum);
        d["member"] = w.member;
        d["p"] = w.p;
        d["class_count"] = int_str(w.class_count);
        d["required_length"] = int_str(w.required_length);
        return d;
      },
      py::arg("q"), py::arg("k"), py::arg("basis"), py::arg("seq"));

  m.def(
      "irreducible",
      [](int q, const std::string& poly) {
        Fq F = make_field(q);
        return irreducible_test(F, uni_parse(F, poly));
      },
      py::arg("q"), py::arg("poly"));

  m.def(
      "irreducibles",
      [](int q, int d) {
        Fq F = make_field(q);
        py::list out;
        for (const UniPoly& f : enumerate_monic_irreducibles(F, d))
          out.append(uni_to_string(F, f));
        return out;
      },
      py::arg("q"), py::arg("d"));

  // ----- prime pairs
  m.def(
      "goldbach_int",
      [](long long max, int threads) {
        PPScanResult r = pp_exception_scan(max, threads);
        py::dict d;
        d["max"] = r.N;
        d["evens"] = r.evens_counted;
        py::list ex;
        for (long long n : r.exceptions) ex.append(n);
        d["exceptions"] = ex;
        d["density"] = rat_str(r.density);
        return d;
      },
      py::arg("max"), py::arg("threads") = 1);

  m.def(
      "goldbach_fq",
      [](int q, const std::string& poly) {
        Fq F = make_field(q);
        DecompositionResult r = fq_goldbach_decompose(F, uni_parse(F, poly));
        py::dict d;
        if (r.found) {
          py::dict pair;
          pair["f1"] = uni_to_string(F, r.f1);
          pair["f2"] = uni_to_string(F, r.f2);
          pair["alpha"] = r.alpha;
          d["result"] = pair;
        } else {
          d["result"] = py::none();
        }
        d["searched"] = r.candidates_tried;
        return d;
      },
      py::arg("q"), py::arg("poly"));

  m.def(
      "pxpx",
      [](int q, const std::string& poly) {
        Fq F = make_field(q);
        PxPxResult r = pxpx_membership(F, uni_parse(F, poly));
        py::dict d;
        d["member"] = r.member;
        if (r.member) {
          d["f1"] = uni_to_string(F, r.f1);
          d["f2"] = uni_to_string(F, r.f2);
        }
        d["searched"] = r.candidates_tried;
        return d;
      },
      py::arg("q"), py::arg("poly"));

  m.def(
      "pp_first_pair", [](long long n) { return pp_first_pair(n); }, py::arg("n"));

  // ----- measure-preserving systems (string specs, like the CLI)
  m.def(
      "correlate",
      [](const std::string& system, const std::string& a, const std::string& b,
         const std::vector<long long>& g) {
        SystemSpec spec = parse_system(system);
        if (const FiniteMPS* sys = spec.finite())
          return rat_str(correlation(*sys, parse_finite_event(*sys, a),
                                      parse_finite_event(*sys, b), g));
        const CylinderSystem& sys = *spec.cylinder();
        if (g.size() != 1) throw parse_error("shift must have one coordinate");
        return rat_str(
            correlation(sys, parse_cyl_event(sys, a), parse_cyl_event(sys, b), g[0]));
      },
      py::arg("system"), py::arg("a"), py::arg("b"), py::arg("g"));

  m.def(
      "cesaro",
      [](const std::string& system, const std::string& a, const std::string& b,
         const std::string& window) {
        SystemSpec spec = parse_system(system);
        if (const FiniteMPS* sys = spec.finite())
          return rat_str(cesaro_average(*sys, parse_finite_event(*sys, a),
                                        parse_finite_event(*sys, b),
                                        parse_gvec_window(window, sys->dims())));
        const CylinderSystem& sys = *spec.cylinder();
        auto [lo, hi] = parse_range(window);
        return rat_str(
            cesaro_average(sys, parse_cyl_event(sys, a), parse_cyl_event(sys, b), lo, hi));
      },
      py::arg("system"), py::arg("a"), py::arg("b"), py::arg("window"));

  m.def(
      "rsets",
      [](const std::string& system, const std::string& a, const std::string& b,
         const std::string& eps, const std::string& window) {
        SystemSpec spec = parse_system(system);
        Rat e = parse_rat(eps);
        if (const FiniteMPS* sys = spec.finite())
          return report_dict(correlation_sets(*sys, parse_finite_event(*sys, a),
                                              parse_finite_event(*sys, b), e,
                                              parse_gvec_window(window, sys->dims())));
        const CylinderSystem& sys = *spec.cylinder();
        auto [lo, hi] = parse_range(window);
        return report_dict(correlation_sets(sys, parse_cyl_event(sys, a),
                                            parse_cyl_event(sys, b), e, lo, hi));
      },
      py::arg("system"), py::arg("a"), py::arg("b"), py::arg("eps"),
      py::arg("window"));

  m.def(
      "ergodic",
      [](const std::string& system) {
        SystemSpec spec = parse_system(system);
        ErgodicityReport rep = spec.finite() ? ergodicity_test(*spec.finite())
                                             : ergodicity_test(*spec.cylinder());
        py::dict d;
        d["ergodic"] = rep.ergodic;
        d["method"] = rep.method;
        d["crosscheck_ran"] = rep.crosscheck_ran;
        py::list cert;
        for (int x : rep.certificate) cert.append(x);
        d["certificate"] = cert;
        d["certificate_measure"] = rat_str(rep.certificate_measure);
        return d;
      },
      py::arg("system"));

  m.def(
      "wm_report",
      [](const std::string& system, const std::vector<std::pair<std::string, std::string>>& pairs,
         const std::string& eps, const std::string& window) {
        SystemSpec spec = parse_system(system);
        Rat e = parse_rat(eps);
        WMReport rep;
        if (const FiniteMPS* sys = spec.finite()) {
          std::vector<std::pair<FiniteEvent, FiniteEvent>> ps;
          for (const auto& [sa, sb] : pairs)
            ps.emplace_back(parse_finite_event(*sys, sa), parse_finite_event(*sys, sb));
          rep = weak_mixing_report(*sys, ps, e, parse_gvec_window(window, sys->dims()));
        } else {
          const CylinderSystem& csys = *spec.cylinder();
          std::vector<std::pair<CylEvent, CylEvent>> ps;
          for (const auto& [sa, sb] : pairs)
            ps.emplace_back(parse_cyl_event(csys, sa), parse_cyl_event(csys, sb));
          auto [lo, hi] = parse_range(window);
          rep = weak_mixing_report(csys, ps, e, lo, hi);
        }
        py::dict d;
        d["threshold"] = rat_str(rep.threshold);
        d["consistent"] = rep.consistent;
        py::list pj;
        for (const WMPairResult& p : rep.pairs) {
          py::dict row;
          row["r_density"] = rat_str(p.r_density);
          row["l_density"] = rat_str(p.l_density);
          row["rl_density"] = rat_str(p.rl_density);
          row["second_moment"] = rat_str(p.second_moment);
          pj.append(row);
        }
        d["pairs"] = pj;
        return d;
      },
      py::arg("system"), py::arg("pairs"), py::arg("eps"), py::arg("window"));

  m.def(
      "spectrum",
      [](const std::string& system) {
        SystemSpec spec = parse_system(system);
        if (!spec.finite())
          throw unsupported_system("point spectrum needs a finite system");
        py::list out;
        for (const Rat& v : koopman_point_spectrum(*spec.finite()))
          out.append(rat_str(v));
        return out;
      },
      py::arg("system"));

  m.def(
      "visits",
      [](const std::string& point, const std::string& pattern, long long n_max,
         int threads) {
        return density_dict(visit_density(make_point(point), parse_pattern(pattern),
                                          n_max, threads));
      },
      py::arg("point"), py::arg("pattern"), py::arg("n_max"), py::arg("threads") = 1);

  // ----- small conveniences
  m.def(
      "op",
      [](const std::string& group, const std::string& a, const std::string& b, int q,
         int k) {
        GroupDescriptor G = make_group(group, q, k);
        return elem_to_string(G, op_apply(G, elem_parse(G, a), elem_parse(G, b)));
      },
      py::arg("group"), py::arg("a"), py::arg("b"), py::arg("q") = 2,
      py::arg("k") = 1);

  m.def(
      "invert",
      [](const std::string& group, const std::string& a, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        return elem_to_string(G, invert(G, elem_parse(G, a)));
      },
      py::arg("group"), py::arg("a"), py::arg("q") = 2, py::arg("k") = 1);

  m.def(
      "ball",
      [](const std::string& group, long long n, int q, int k) {
        GroupDescriptor G = make_group(group, q, k);
        py::list out;
        for (const Element& e : enumerate_ball(G, n)) out.append(elem_to_string(G, e));
        return out;
      },
      py::arg("group"), py::arg("n"), py::arg("q") = 2, py::arg("k") = 1);
}
