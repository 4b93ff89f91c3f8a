#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace dsetkit::oracles {

bool irreducible_by_trial_division(const Fq& F, const UniPoly& f) {
  int n = f.deg();
  if (n < 1) return false;
  for (int t = 1; 2 * t <= n; ++t) {
    long long count = 1;
    for (int i = 0; i < t; ++i) count *= F.q();
    for (long long idx = 0; idx < count; ++idx) {
      UniPoly cand = monic_from_index(F, t, idx);
      if (uni_mod(F, f, cand).is_zero()) return false;
    }
  }
  return true;
}

bool ideal_member_by_linear_algebra(const Fq& F, const MultiPoly& g, const IdealBasis& basis) {
  if (g.is_zero()) return true;
  const int k = basis.k;

  std::vector<int> box(k);
  for (int v = 1; v <= k; ++v) box[v - 1] = g.deg_in(v);

  // Index all monomials inside the box.
  std::map<Expo, int> mono_index;
  {
    Expo e(k, 0);
    while (true) {
      mono_index.emplace(e, static_cast<int>(mono_index.size()));
      int i = 0;
      while (i < k) {
        if (e[i] < box[i]) {
          ++e[i];
          break;
        }
        e[i] = 0;
        ++i;
      }
      if (i == k) break;
    }
  }
  const int dim = static_cast<int>(mono_index.size());

  auto to_vec = [&](const MultiPoly& poly) {
    std::vector<int> v(dim, 0);
    for (const auto& [e, c] : poly.terms) v[mono_index.at(e)] = c;
    return v;
  };

  // Rows: every multiple monomial*f_i that stays inside the box.
  std::vector<std::vector<int>> rows;
  for (const auto& [var, f] : basis.gens) {
    MultiPoly fmp = mp_from_uni(f, var, k);
    for (const auto& [e, idx] : mono_index) {
      if (e[var - 1] + f.deg() > box[var - 1]) continue;
      bool fits = true;
      for (int j = 0; j < k && fits; ++j)
        if (e[j] > box[j]) fits = false;
      if (!fits) continue;
      MultiPoly mono{k, {}};
      mono.terms[e] = 1;
      MultiPoly prod = mp_mul(F, mono, fmp);
      bool inside = true;
      for (const auto& [pe, pc] : prod.terms)
        for (int j = 0; j < k; ++j)
          if (pe[j] > box[j]) inside = false;
      if (inside) rows.push_back(to_vec(prod));
    }
  }

  // Row reduce, then test whether g's vector is spanned.
  std::vector<int> target = to_vec(g);
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    int inv = F.inv(rows[rank][col]);
    for (int j = 0; j < dim; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      int factor = rows[r][col];
      for (int j = 0; j < dim; ++j)
        rows[r][j] = F.sub(rows[r][j], F.mul(factor, rows[rank][j]));
    }
    if (target[col] != 0) {
      int factor = target[col];
      for (int j = 0; j < dim; ++j)
        target[j] = F.sub(target[j], F.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return std::all_of(target.begin(), target.end(), [](int x) { return x == 0; });
}

bool is_prime_slow(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace dsetkit::oracles
