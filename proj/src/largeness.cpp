#include "dsetkit/largeness.hpp"

#include <algorithm>

namespace dsetkit {

std::set<Element> finite_sums(const GroupDescriptor& G, const std::vector<Element>& xs) {
  if (xs.empty()) throw error("BadArgument", "finite_sums needs at least one element");
  if (static_cast<int>(xs.size()) > kMaxFsGenerators)
    throw too_long("finite_sums is capped at 20 generators (2^20 sums)");
  std::set<Element> fs;
  for (const Element& x : xs) {
    std::vector<Element> fresh;
    fresh.reserve(fs.size() + 1);
    fresh.push_back(x);
    for (const Element& s : fs) fresh.push_back(op_apply(G, s, x));
    fs.insert(fresh.begin(), fresh.end());
  }
  return fs;
}

namespace {

struct WitnessSearch {
  const SetPredicate& A;
  const std::vector<Element>& pool;
  int k;
  std::vector<Element> gens;
  std::set<Element> fs;

  bool extend(std::size_t from) {
    if (static_cast<int>(gens.size()) == k) return true;
    for (std::size_t i = from; i < pool.size(); ++i) {
      const Element& x = pool[i];
      std::vector<Element> fresh;
      fresh.reserve(fs.size() + 1);
      fresh.push_back(x);
      for (const Element& s : fs) fresh.push_back(op_apply(A.G, s, x));
      bool ok = true;
      for (const Element& s : fresh)
        if (!A.member(s) || fs.count(s)) {
          ok = false;
          break;
        }
      if (ok) {
        // the fresh sums must also be distinct among themselves
        std::set<Element> dedup(fresh.begin(), fresh.end());
        if (dedup.size() != fresh.size()) ok = false;
      }
      if (!ok) continue;
      gens.push_back(x);
      std::size_t added = fresh.size();
      fs.insert(fresh.begin(), fresh.end());
      if (extend(i + 1)) return true;
      gens.pop_back();
      for (const Element& s : fresh) fs.erase(s);
      (void)added;
    }
    return false;
  }
};

std::optional<FSWitness> run_search(const SetPredicate& A, const std::vector<Element>& pool,
                                    int k, const std::string& kind) {
  if (k < 1) throw error("BadArgument", "witness length must be >= 1");
  if (k > kMaxWitnessLength) throw too_long("witness length is capped at 10");
  WitnessSearch search{A, pool, k, {}, {}};
  if (!search.extend(0)) return std::nullopt;

  FSWitness w;
  w.kind = kind;
  w.scale = k;
  w.generators = search.gens;
  // independent pass: recompute the sums from scratch and re-ask the oracle
  std::set<Element> fs = finite_sums(A.G, w.generators);
  w.fs.assign(fs.begin(), fs.end());
  w.verified = std::all_of(w.fs.begin(), w.fs.end(),
                           [&](const Element& s) { return A.member(s); });
  return w;
}

}  // namespace

std::optional<FSWitness> ip_witness_search(const SetPredicate& A,
                                           const std::vector<Element>& pool, int k) {
  return run_search(A, pool, k, "ip-witness");
}

std::optional<FSWitness> ip_star_falsifier(const SetPredicate& A,
                                           const std::vector<Element>& pool, int k) {
  SetPredicate complement{A.G, [&A](const Element& e) { return !A.member(e); },
                          "complement of " + A.description};
  return run_search(complement, pool, k, "ipstar-falsifier");
}

SyndeticResult syndetic_window_check(const SetPredicate& A,
                                     const std::vector<Element>& window,
                                     const std::vector<Element>& gaps) {
  for (const Element& w : window) {
    bool hit = false;
    for (const Element& t : gaps)
      if (A.member(op_apply(A.G, t, w))) {
        hit = true;
        break;
      }
    if (!hit) return {false, w};
  }
  return {true, std::nullopt};
}

CosetIdealResult coset_union_contains_ideal(const Fq& F, const std::vector<UniPoly>& reps,
                                            long long m, bool require_ip) {
  if (m < 1) throw malformed_cosets("the ideal power m must be >= 1");
  if (reps.empty()) throw malformed_cosets("at least one coset is required");
  for (const UniPoly& f : reps)
    if (f.deg() >= m)
      throw malformed_cosets("representative " + uni_to_string(F, f) +
                             " has degree >= " + std::to_string(m));

  std::vector<UniPoly> distinct;
  for (const UniPoly& f : reps)
    if (std::find(distinct.begin(), distinct.end(), f) == distinct.end())
      distinct.push_back(f);

  CosetIdealResult res;
  res.m = m;
  res.coset_count = static_cast<int>(distinct.size());
  res.scale_bound = Int(res.coset_count) * (F.p() - 1) + 1;
  res.verified = false;

  for (const UniPoly& f : distinct)
    if (f.is_zero()) {
      res.contains_ideal = true;
      return res;
    }

  res.contains_ideal = false;
  if (!require_ip) return res;

  // p elements of the first coset: f1 + j*X^m for the prime-subfield scalars
  // j = 0..p-1.  Their sum is p*f1 + (sum of j)*X^m; the first term vanishes
  // in characteristic p, so the total lands inside <X^m>.
  std::vector<int> xm(m + 1, 0);
  xm[m] = 1;
  const UniPoly Xm = uni_trim(std::move(xm));
  const UniPoly& f1 = distinct.front();
  UniPoly sum = UniPoly::zero();
  for (int j = 0; j < F.p(); ++j) {
    UniPoly elt = uni_add(F, f1, uni_scale(F, Xm, j));
    sum = uni_add(F, sum, elt);
    res.falsifier.push_back(std::move(elt));
  }
  res.escape_sum = sum;

  // re-check through plain division: every falsifier element's residue mod X^m
  // is a listed representative, the sum's residue is zero (so outside A)
  auto residue = [&](const UniPoly& g) { return uni_mod(F, g, Xm); };
  bool ok = true;
  for (const UniPoly& elt : res.falsifier) {
    UniPoly r = residue(elt);
    ok = ok && std::find(distinct.begin(), distinct.end(), r) != distinct.end();
  }
  UniPoly sr = residue(sum);
  ok = ok && sr.is_zero();
  ok = ok && std::find(distinct.begin(), distinct.end(), sr) == distinct.end();
  res.verified = ok;
  return res;
}

}  // namespace dsetkit
