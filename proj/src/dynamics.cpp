#include "dsetkit/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dsetkit {

namespace {

constexpr int kAtomCap = 4096;
constexpr int kDimCap = 4;
constexpr long long kPairProductCap = 1 << 20;

}  // namespace

FiniteMPS::FiniteMPS(std::vector<Rat> weights, std::vector<std::vector<int>> gens)
    : atoms_(static_cast<int>(weights.size())),
      weights_(std::move(weights)),
      gens_(std::move(gens)) {
  if (atoms_ < 1 || atoms_ > kAtomCap)
    throw error("BadSystem", "atom count must be in [1, 4096]");
  Rat total = 0;
  for (const Rat& w : weights_) {
    if (w < 0) throw error("BadSystem", "weights must be nonnegative");
    total += w;
  }
  if (total != 1) throw error("BadSystem", "weights must sum to exactly 1");
  if (gens_.empty() || static_cast<int>(gens_.size()) > kDimCap)
    throw error("BadSystem", "between 1 and 4 generators are required");

  for (const auto& g : gens_) {
    if (static_cast<int>(g.size()) != atoms_)
      throw error("BadSystem", "generator length must equal the atom count");
    std::vector<bool> seen(atoms_, false);
    for (int i = 0; i < atoms_; ++i) {
      if (g[i] < 0 || g[i] >= atoms_ || seen[g[i]])
        throw error("BadSystem", "generator is not a permutation");
      seen[g[i]] = true;
      if (weights_[g[i]] != weights_[i])
        throw error("BadSystem", "generator moves an atom onto a different weight");
    }
  }
  for (std::size_t a = 0; a < gens_.size(); ++a)
    for (std::size_t b = a + 1; b < gens_.size(); ++b)
      for (int i = 0; i < atoms_; ++i)
        if (gens_[a][gens_[b][i]] != gens_[b][gens_[a][i]])
          throw error("BadSystem", "generators must commute (the action is Z^d)");

  cyc_.resize(gens_.size());
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    CycleInfo& info = cyc_[j];
    info.cycle_id.assign(atoms_, -1);
    info.pos.assign(atoms_, 0);
    info.order = 1;
    for (int i = 0; i < atoms_; ++i) {
      if (info.cycle_id[i] != -1) continue;
      std::vector<int> cycle;
      int x = i;
      while (info.cycle_id[x] == -1) {
        info.cycle_id[x] = static_cast<int>(info.cycles.size());
        info.pos[x] = static_cast<int>(cycle.size());
        cycle.push_back(x);
        x = gens_[j][x];
      }
      info.order = std::lcm(info.order, static_cast<long long>(cycle.size()));
      info.cycles.push_back(std::move(cycle));
    }
  }
}

int FiniteMPS::apply_one(int j, long long e, int atom) const {
  const CycleInfo& info = cyc_[j];
  const std::vector<int>& cycle = info.cycles[info.cycle_id[atom]];
  long long len = static_cast<long long>(cycle.size());
  long long r = ((e % len) + len) % len;
  return cycle[(info.pos[atom] + r) % len];
}

int FiniteMPS::apply(const GVec& g, int atom) const {
  if (static_cast<int>(g.size()) != dims())
    throw kind_mismatch("group element dimension does not match the action");
  for (int j = 0; j < dims(); ++j) atom = apply_one(j, g[j], atom);
  return atom;
}

FiniteEvent make_finite_event(const FiniteMPS& sys, std::vector<int> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  for (int a : atoms)
    if (a < 0 || a >= sys.atoms())
      throw error("BadEvent", "atom index out of range");
  return atoms;
}

Rat event_measure(const FiniteMPS& sys, const FiniteEvent& A) {
  Rat total = 0;
  for (int a : A) total += sys.weights()[a];
  return total;
}

CylinderSystem::CylinderSystem(std::vector<Rat> marginal_)
    : alphabet(static_cast<int>(marginal_.size())), marginal(std::move(marginal_)) {
  if (alphabet < 1 || alphabet > 256)
    throw error("BadSystem", "alphabet size must be in [1, 256]");
  Rat total = 0;
  for (const Rat& m : marginal) {
    if (m < 0) throw error("BadSystem", "marginals must be nonnegative");
    total += m;
  }
  if (total != 1) throw error("BadSystem", "marginals must sum to exactly 1");
}

CylEvent make_cyl_event(const CylinderSystem& sys,
                        const std::vector<CylinderConstraint>& cylinders, long long cap) {
  CylEvent ev;
  std::set<long long> coords;
  for (const auto& cyl : cylinders)
    for (const auto& [coord, letter] : cyl) {
      if (letter < 0 || letter >= sys.alphabet)
        throw error("BadEvent", "cylinder letter outside the alphabet");
      coords.insert(coord);
    }
  ev.support.assign(coords.begin(), coords.end());

  std::set<std::vector<int>> rows;
  for (const auto& cyl : cylinders) {
    // free coordinates of this cylinder within the joint support
    std::vector<std::size_t> free_at;
    std::vector<int> row(ev.support.size(), 0);
    for (std::size_t i = 0; i < ev.support.size(); ++i) {
      auto it = cyl.find(ev.support[i]);
      if (it == cyl.end())
        free_at.push_back(i);
      else
        row[i] = it->second;
    }
    long long expanded = 1;
    for (std::size_t f = 0; f < free_at.size(); ++f) {
      expanded *= sys.alphabet;
      if (expanded > cap) throw budget_exceeded("cylinder expansion exceeds the pattern cap");
    }
    for (long long idx = 0; idx < expanded; ++idx) {
      long long v = idx;
      for (std::size_t f : free_at) {
        row[f] = static_cast<int>(v % sys.alphabet);
        v /= sys.alphabet;
      }
      rows.insert(row);
      if (static_cast<long long>(rows.size()) > cap)
        throw budget_exceeded("cylinder union exceeds the pattern cap");
    }
  }
  ev.patterns.assign(rows.begin(), rows.end());
  return ev;
}

Rat event_measure(const CylinderSystem& sys, const CylEvent& A) {
  Rat total = 0;
  for (const auto& row : A.patterns) {
    Rat prod = 1;
    for (int letter : row) prod *= sys.marginal[letter];
    total += prod;
  }
  return total;
}

Rat correlation(const FiniteMPS& sys, const FiniteEvent& A, const FiniteEvent& B,
                const GVec& g) {
  std::vector<bool> in_a(sys.atoms(), false);
  for (int a : A) in_a[a] = true;
  Rat total = 0;
  for (int b : B) {
    int x = sys.apply(g, b);
    if (in_a[x]) total += sys.weights()[x];
  }
  return total;
}

Rat correlation(const CylinderSystem& sys, const CylEvent& A, const CylEvent& B,
                long long g) {
  if (static_cast<long long>(A.patterns.size()) *
          std::max<long long>(1, B.patterns.size()) >
      kPairProductCap)
    throw budget_exceeded("pattern pair count exceeds the correlation budget");

  // T_g B constrains coordinate s - g with B's letter for coordinate s.
  std::vector<long long> shifted(B.support.size());
  for (std::size_t i = 0; i < B.support.size(); ++i) shifted[i] = B.support[i] - g;

  Rat total = 0;
  for (const auto& arow : A.patterns) {
    for (const auto& brow : B.patterns) {
      Rat prod = 1;
      bool ok = true;
      std::size_t i = 0, j = 0;
      while (ok && (i < A.support.size() || j < shifted.size())) {
        if (j == shifted.size() ||
            (i < A.support.size() && A.support[i] < shifted[j])) {
          prod *= sys.marginal[arow[i]];
          ++i;
        } else if (i == A.support.size() || shifted[j] < A.support[i]) {
          prod *= sys.marginal[brow[j]];
          ++j;
        } else {  // same coordinate: letters must agree
          if (arow[i] != brow[j])
            ok = false;
          else {
            prod *= sys.marginal[arow[i]];
            ++i;
            ++j;
          }
        }
      }
      if (ok) total += prod;
    }
  }
  return total;
}

Rat cesaro_average(const FiniteMPS& sys, const FiniteEvent& A, const FiniteEvent& B,
                   const std::vector<GVec>& window) {
  if (window.empty()) throw error("BadArgument", "empty window");
  Rat total = 0;
  for (const GVec& g : window) total += correlation(sys, A, B, g);
  return total / Rat(static_cast<long long>(window.size()));
}

Rat cesaro_average(const CylinderSystem& sys, const CylEvent& A, const CylEvent& B,
                   long long lo, long long hi) {
  if (hi < lo) throw error("BadArgument", "empty window");
  Rat total = 0;
  for (long long g = lo; g <= hi; ++g) total += correlation(sys, A, B, g);
  return total / Rat(hi - lo + 1);
}

namespace {

CorrelationReport assemble_report(const Rat& eps, const Rat& mu_a, const Rat& mu_b,
                                  std::vector<GVec> gs, std::vector<Rat> values,
                                  const std::optional<std::pair<Rat, Rat>>& boundary) {
  CorrelationReport rep;
  rep.eps = eps;
  rep.mu_a = mu_a;
  rep.mu_b = mu_b;
  rep.product = mu_a * mu_b;
  rep.g = std::move(gs);
  rep.value = std::move(values);

  long long size = static_cast<long long>(rep.g.size());
  long long nr = 0, nl = 0, nrl = 0;
  Rat moment = 0;
  rep.in_r.resize(size);
  rep.in_l.resize(size);
  for (long long i = 0; i < size; ++i) {
    bool r = rep.value[i] > rep.product - eps;
    bool l = rep.value[i] < rep.product + eps;
    rep.in_r[i] = r ? 1 : 0;
    rep.in_l[i] = l ? 1 : 0;
    nr += r;
    nl += l;
    nrl += (r && l);
    Rat dev = rep.value[i] - rep.product;
    moment += dev * dev;
  }
  rep.r_density = Rat(nr) / Rat(size);
  rep.l_density = Rat(nl) / Rat(size);
  rep.rl_density = Rat(nrl) / Rat(size);
  rep.second_moment = moment / Rat(size);

  if (boundary) {
    // flags at window positions -1 and size (one step past each end)
    bool r_lo = boundary->first > rep.product - eps;
    bool r_hi = boundary->second > rep.product - eps;
    for (long long t = -1; t <= 1; ++t) {
      long long count = 0;
      for (long long i = 0; i < size; ++i) {
        long long at = i + t;
        bool r = at < 0      ? r_lo
                 : at >= size ? r_hi
                              : rep.in_r[at] != 0;
        count += r;
      }
      rep.translate_r_density.emplace_back(t, Rat(count) / Rat(size));
    }
  }
  return rep;
}

}  // namespace

CorrelationReport correlation_sets(const FiniteMPS& sys, const FiniteEvent& A,
                                   const FiniteEvent& B, const Rat& eps,
                                   const std::vector<GVec>& window) {
  if (eps <= 0) throw error("BadArgument", "epsilon must be positive");
  if (window.empty()) throw error("BadArgument", "empty window");
  std::vector<Rat> values;
  values.reserve(window.size());
  for (const GVec& g : window) values.push_back(correlation(sys, A, B, g));

  // a contiguous Z window admits the 1-ball translate densities
  std::optional<std::pair<Rat, Rat>> boundary;
  if (sys.dims() == 1) {
    bool contiguous = true;
    for (std::size_t i = 0; i < window.size(); ++i)
      if (window[i].size() != 1 || window[i][0] != window[0][0] + static_cast<long long>(i))
        contiguous = false;
    if (contiguous) {
      Rat below = correlation(sys, A, B, {window.front()[0] - 1});
      Rat above = correlation(sys, A, B, {window.back()[0] + 1});
      boundary = {below, above};
    }
  }
  return assemble_report(eps, event_measure(sys, A), event_measure(sys, B), window,
                         std::move(values), boundary);
}

CorrelationReport correlation_sets(const CylinderSystem& sys, const CylEvent& A,
                                   const CylEvent& B, const Rat& eps, long long lo,
                                   long long hi) {
  if (eps <= 0) throw error("BadArgument", "epsilon must be positive");
  if (hi < lo) throw error("BadArgument", "empty window");
  if (hi - lo + 1 > kScanBudget) throw budget_exceeded("window exceeds the scan budget");
  std::vector<GVec> gs;
  std::vector<Rat> values;
  gs.reserve(hi - lo + 1);
  for (long long g = lo; g <= hi; ++g) {
    gs.push_back({g});
    values.push_back(correlation(sys, A, B, g));
  }
  std::optional<std::pair<Rat, Rat>> boundary{
      {correlation(sys, A, B, lo - 1), correlation(sys, A, B, hi + 1)}};
  return assemble_report(eps, event_measure(sys, A), event_measure(sys, B),
                         std::move(gs), std::move(values), boundary);
}

namespace {

// all T_g images for g in the box prod [0, order_j), as atom maps
std::vector<std::vector<int>> group_box_maps(const FiniteMPS& sys) {
  std::vector<long long> orders(sys.dims());
  long long box = 1;
  for (int j = 0; j < sys.dims(); ++j) {
    orders[j] = sys.order_of(j);
    box *= orders[j];
    if (box > kCrosscheckBox) return {};
  }
  std::vector<std::vector<int>> maps;
  maps.reserve(box);
  GVec g(sys.dims(), 0);
  while (true) {
    std::vector<int> img(sys.atoms());
    for (int a = 0; a < sys.atoms(); ++a) img[a] = sys.apply(g, a);
    maps.push_back(std::move(img));
    int j = 0;
    while (j < sys.dims() && g[j] == orders[j] - 1) {
      g[j] = 0;
      ++j;
    }
    if (j == sys.dims()) break;
    ++g[j];
  }
  return maps;
}

}  // namespace

ErgodicityReport ergodicity_test(const FiniteMPS& sys) {
  // orbit partition under the generated permutation group
  std::vector<int> parent(sys.atoms());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : sys.gens())
    for (int i = 0; i < sys.atoms(); ++i) {
      int a = find(i), b = find(g[i]);
      if (a != b) parent[a] = b;
    }

  std::map<int, std::vector<int>> components;
  for (int i = 0; i < sys.atoms(); ++i) components[find(i)].push_back(i);

  std::vector<std::vector<int>> positive;
  for (auto& [root, atoms] : components) {
    Rat w = 0;
    for (int a : atoms) w += sys.weights()[a];
    if (w > 0) positive.push_back(atoms);
  }

  ErgodicityReport rep;
  rep.method = "orbit-partition";
  rep.ergodic = positive.size() == 1;
  rep.crosscheck_ran = false;
  rep.certificate_measure = 0;
  if (!rep.ergodic) {
    rep.certificate = positive.front();  // smallest-atom component first (map order)
    rep.certificate_measure = 0;
    for (int a : rep.certificate) rep.certificate_measure += sys.weights()[a];
  }

  // independent re-derivation on small systems: ergodic iff every pair of
  // positive-measure atom sets of size <= 2 meets under some T_g
  if (sys.atoms() <= 12) {
    std::vector<std::vector<int>> maps = group_box_maps(sys);
    if (!maps.empty()) {
      unsigned pos_mask = 0;
      for (int a = 0; a < sys.atoms(); ++a)
        if (sys.weights()[a] > 0) pos_mask |= 1u << a;
      std::vector<unsigned> sets;
      for (int i = 0; i < sys.atoms(); ++i)
        for (int j = i; j < sys.atoms(); ++j) {
          unsigned mask = (1u << i) | (1u << j);
          if (mask & pos_mask) sets.push_back(mask);
        }
      bool all_meet = true;
      for (unsigned a_mask : sets) {
        for (unsigned b_mask : sets) {
          bool meet = false;
          for (const auto& img : maps) {
            unsigned moved = 0;
            for (int a = 0; a < sys.atoms(); ++a)
              if (a_mask & (1u << a)) moved |= 1u << img[a];
            if (moved & b_mask & pos_mask) {
              meet = true;
              break;
            }
          }
          if (!meet) {
            all_meet = false;
            break;
          }
        }
        if (!all_meet) break;
      }
      rep.crosscheck_ran = true;
      if (all_meet != rep.ergodic)
        throw error("Internal", "orbit partition and overlap sweep disagree");
    }
  }
  return rep;
}

ErgodicityReport ergodicity_test(const CylinderSystem&) {
  ErgodicityReport rep;
  rep.ergodic = true;
  rep.method = "bernoulli-by-construction";
  rep.certificate_measure = 0;
  rep.crosscheck_ran = false;
  return rep;
}

namespace {

template <typename Sys, typename Ev, typename RunSets>
WMReport wm_generic(const Sys& sys, const std::vector<std::pair<Ev, Ev>>& pairs,
                    RunSets run) {
  WMReport rep;
  rep.threshold = Rat(99, 100);
  rep.consistent = true;
  for (const auto& [A, B] : pairs) {
    CorrelationReport cr = run(sys, A, B);
    WMPairResult pr;
    pr.r_density = cr.r_density;
    pr.l_density = cr.l_density;
    pr.rl_density = cr.rl_density;
    pr.second_moment = cr.second_moment;
    if (pr.rl_density < rep.threshold) rep.consistent = false;
    rep.pairs.push_back(std::move(pr));
  }
  return rep;
}

}  // namespace

WMReport weak_mixing_report(const FiniteMPS& sys,
                            const std::vector<std::pair<FiniteEvent, FiniteEvent>>& pairs,
                            const Rat& eps, const std::vector<GVec>& window) {
  return wm_generic(sys, pairs,
                    [&](const FiniteMPS& s, const FiniteEvent& A, const FiniteEvent& B) {
                      return correlation_sets(s, A, B, eps, window);
                    });
}

WMReport weak_mixing_report(const CylinderSystem& sys,
                            const std::vector<std::pair<CylEvent, CylEvent>>& pairs,
                            const Rat& eps, long long lo, long long hi) {
  return wm_generic(sys, pairs,
                    [&](const CylinderSystem& s, const CylEvent& A, const CylEvent& B) {
                      return correlation_sets(s, A, B, eps, lo, hi);
                    });
}

std::vector<Rat> koopman_point_spectrum(const FiniteMPS& sys) {
  if (sys.dims() != 1)
    throw unsupported_system("point spectrum needs a single-generator action");
  std::vector<Rat> spectrum;
  // walk the generator's cycles directly
  std::vector<bool> seen(sys.atoms(), false);
  for (int i = 0; i < sys.atoms(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    int x = i;
    while (!seen[x]) {
      seen[x] = true;
      x = sys.gens()[0][x];
      ++len;
    }
    for (long long j = 0; j < len; ++j) spectrum.emplace_back(Rat(j) / Rat(len));
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

DensityReport visit_density(const std::function<int(long long)>& point,
                            const std::map<long long, int>& pattern, long long n_max,
                            int threads) {
  auto member = [&](const Element& e) {
    for (const auto& [coord, letter] : pattern)
      if (point(coord + e.z) != letter) return false;
    return true;
  };
  return upper_density_along(member, folner_intervals(), n_max, threads);
}

}  // namespace dsetkit
