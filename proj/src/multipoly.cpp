#include "dsetkit/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace dsetkit {

int MultiPoly::deg_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, e[var - 1]);
  return d;
}

int MultiPoly::total_deg() const {
  int d = 0;
  for (const auto& [e, c] : terms) {
    int t = 0;
    for (int x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

MultiPoly mp_zero(int k) { return MultiPoly{k, {}}; }

MultiPoly mp_const(int k, int c) {
  MultiPoly r{k, {}};
  if (c != 0) r.terms[Expo(k, 0)] = c;
  return r;
}

MultiPoly mp_add(const Fq& F, const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end()) {
      r.terms.emplace(e, c);
    } else {
      it->second = F.add(it->second, c);
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

MultiPoly mp_neg(const Fq& F, const MultiPoly& a) {
  MultiPoly r = a;
  for (auto& [e, c] : r.terms) c = F.neg(c);
  return r;
}

MultiPoly mp_sub(const Fq& F, const MultiPoly& a, const MultiPoly& b) {
  return mp_add(F, a, mp_neg(F, b));
}

MultiPoly mp_mul(const Fq& F, const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r{a.k, {}};
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      Expo e(a.k);
      for (int i = 0; i < a.k; ++i) e[i] = ea[i] + eb[i];
      int prod = F.mul(ca, cb);
      auto it = r.terms.find(e);
      if (it == r.terms.end()) {
        if (prod != 0) r.terms.emplace(std::move(e), prod);
      } else {
        it->second = F.add(it->second, prod);
        if (it->second == 0) r.terms.erase(it);
      }
    }
  }
  return r;
}

MultiPoly mp_scale(const Fq& F, const MultiPoly& a, int s) {
  if (s == 0) return mp_zero(a.k);
  MultiPoly r = a;
  for (auto& [e, c] : r.terms) c = F.mul(c, s);
  return r;
}

MultiPoly mp_from_uni(const UniPoly& u, int var, int k) {
  MultiPoly r{k, {}};
  for (int i = 0; i <= u.deg(); ++i) {
    if (u.coeff(i) == 0) continue;
    Expo e(k, 0);
    e[var - 1] = i;
    r.terms.emplace(std::move(e), u.coeff(i));
  }
  return r;
}

UniPoly mp_to_uni(const MultiPoly& g, int var) {
  std::vector<int> c;
  for (const auto& [e, coeff] : g.terms) {
    for (int i = 0; i < g.k; ++i)
      if (e[i] != 0 && i != var - 1)
        throw kind_mismatch("polynomial is not univariate in X" + std::to_string(var));
    int d = e[var - 1];
    if (static_cast<int>(c.size()) <= d) c.resize(d + 1, 0);
    c[d] = coeff;
  }
  return uni_trim(std::move(c));
}

int mp_single_variable(const MultiPoly& g) {
  int var = 0;
  for (const auto& [e, c] : g.terms) {
    for (int i = 0; i < g.k; ++i) {
      if (e[i] == 0) continue;
      if (var == 0)
        var = i + 1;
      else if (var != i + 1)
        return -1;
    }
  }
  return var;
}

// ---------------------------------------------------------------------------
// text form

namespace {

int total_of(const Expo& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

// Print order: total degree descending, then exponent vector lexicographically
// descending -- X1^2 before X1*X2 before X2^2.
bool print_before(const Expo& a, const Expo& b) {
  int ta = total_of(a), tb = total_of(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

std::string var_name(int k, int i) {
  return k == 1 ? "X" : "X" + std::to_string(i);
}

struct PolyParser {
  const Fq& F;
  int k;
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  long long parse_number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw parse_error("expected number at '" + s.substr(start) + "'");
    if (pos - start > 12) throw parse_error("number too long in polynomial");
    return std::stoll(s.substr(start, pos - start));
  }

  // factor := NUMBER | VAR ['^' NUMBER]
  // Returns a monomial (coefficient, exponents).
  std::pair<int, Expo> parse_factor() {
    skip_ws();
    if (pos >= s.size()) throw parse_error("unexpected end of polynomial");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = parse_number();
      return {F.from_int(v), Expo(k, 0)};
    }
    if (c == 'X' || c == 'x') {
      ++pos;
      int var = 1;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        var = static_cast<int>(parse_number());
        if (var < 1 || var > k)
          throw parse_error("variable X" + std::to_string(var) + " outside X1..X" +
                            std::to_string(k));
      } else if (k != 1) {
        throw parse_error("bare 'X' is only valid with a single variable");
      }
      int exp = 1;
      if (eat('^')) {
        long long e = parse_number();
        if (e < 0 || e > 1000) throw parse_error("exponent out of range");
        exp = static_cast<int>(e);
      }
      Expo e(k, 0);
      e[var - 1] = exp;
      return {1, e};
    }
    throw parse_error(std::string("unexpected character '") + c + "' in polynomial");
  }

  // term := factor ('*' factor)*
  std::pair<int, Expo> parse_term() {
    auto [coeff, expo] = parse_factor();
    while (eat('*')) {
      auto [c2, e2] = parse_factor();
      coeff = F.mul(coeff, c2);
      for (int i = 0; i < k; ++i) expo[i] += e2[i];
    }
    return {coeff, expo};
  }

  MultiPoly parse() {
    MultiPoly out{k, {}};
    bool negate = eat('-');
    if (!negate) eat('+');
    while (true) {
      auto [coeff, expo] = parse_term();
      if (negate) coeff = F.neg(coeff);
      if (coeff != 0) {
        MultiPoly t{k, {}};
        t.terms[expo] = coeff;
        out = mp_add(F, out, t);
      }
      skip_ws();
      if (pos >= s.size()) break;
      if (eat('+')) {
        negate = false;
      } else if (eat('-')) {
        negate = true;
      } else {
        throw parse_error("expected '+' or '-' at '" + s.substr(pos) + "'");
      }
    }
    return out;
  }
};

}  // namespace

std::string mp_to_string(const Fq& F, const MultiPoly& g) {
  (void)F;
  if (g.is_zero()) return "0";
  std::vector<const std::pair<const Expo, int>*> ts;
  for (const auto& t : g.terms) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(),
            [](auto* a, auto* b) { return print_before(a->first, b->first); });
  std::string out;
  for (auto* t : ts) {
    const auto& [e, c] = *t;
    if (!out.empty()) out += "+";
    bool constant = total_of(e) == 0;
    if (constant) {
      out += std::to_string(c);
      continue;
    }
    std::string mono;
    for (int i = 0; i < g.k; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(g.k, i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += mono;
  }
  return out;
}

MultiPoly mp_parse(const Fq& F, int k, const std::string& text) {
  if (k < 1) throw parse_error("variable count must be >= 1");
  PolyParser p{F, k, text};
  MultiPoly out = p.parse();
  return out;
}

UniPoly uni_parse(const Fq& F, const std::string& text) {
  return mp_to_uni(mp_parse(F, 1, text), 1);
}

// ---------------------------------------------------------------------------
// ideal reduction

IdealBasis::IdealBasis(const Fq& F, int k_, std::vector<std::pair<int, UniPoly>> gens_)
    : k(k_), gens(std::move(gens_)) {
  (void)F;
  if (k < 1) throw malformed_cosets("variable count must be >= 1");
  if (gens.empty()) throw malformed_cosets("ideal basis is empty");
  std::set<int> seen;
  for (const auto& [var, f] : gens) {
    if (var < 1 || var > k)
      throw malformed_cosets("basis variable X" + std::to_string(var) + " outside X1..X" +
                             std::to_string(k));
    if (!seen.insert(var).second)
      throw malformed_cosets("two basis polynomials share variable X" + std::to_string(var));
    if (f.deg() < 1)
      throw malformed_cosets("basis polynomial in X" + std::to_string(var) +
                             " must be nonconstant");
  }
}

ReduceResult multi_reduce(const Fq& F, const MultiPoly& g, const IdealBasis& basis) {
  ReduceResult res;
  res.cofactors.assign(basis.gens.size(), mp_zero(basis.k));
  res.remainder = g;

  std::vector<MultiPoly> gen_mp;
  gen_mp.reserve(basis.gens.size());
  for (const auto& [var, f] : basis.gens) gen_mp.push_back(mp_from_uni(f, var, basis.k));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t gi = 0; gi < basis.gens.size(); ++gi) {
      const int var = basis.gens[gi].first;
      const UniPoly& f = basis.gens[gi].second;
      const int d = f.deg();
      const int lead_inv = F.inv(f.lc());
      while (true) {
        // Highest power of X_var first; ties broken by the largest exponent
        // vector so the choice is deterministic.
        const Expo* best = nullptr;
        int best_coeff = 0;
        for (const auto& [e, c] : res.remainder.terms) {
          if (e[var - 1] < d) continue;
          if (!best || e[var - 1] > (*best)[var - 1] ||
              (e[var - 1] == (*best)[var - 1] && e > *best)) {
            best = &e;
            best_coeff = c;
          }
        }
        if (!best) break;
        Expo shifted = *best;
        shifted[var - 1] -= d;
        MultiPoly mono{basis.k, {}};
        mono.terms[shifted] = F.mul(best_coeff, lead_inv);
        res.remainder = mp_sub(F, res.remainder, mp_mul(F, mono, gen_mp[gi]));
        res.cofactors[gi] = mp_add(F, res.cofactors[gi], mono);
        changed = true;
      }
    }
  }
  return res;
}

bool ideal_member(const Fq& F, const MultiPoly& g, const IdealBasis& basis) {
  return multi_reduce(F, g, basis).remainder.is_zero();
}

PigeonholeWitness pigeonhole_witness(const Fq& F, const std::vector<MultiPoly>& gs,
                                     const IdealBasis& basis) {
  const int p = F.p();

  // Remainder box: exponent of X_i below deg f_i for basis variables, at most
  // the largest input degree for free variables.
  long long monomials = 1;
  auto mul_guarded = [&monomials](long long f) {
    monomials *= f;
    if (monomials > 1'000'000)
      throw budget_exceeded("remainder class space has over 10^6 monomial slots");
  };
  std::vector<bool> has_basis(basis.k + 1, false);
  for (const auto& [var, f] : basis.gens) has_basis[var] = true;
  for (const auto& [var, f] : basis.gens) mul_guarded(f.deg());
  for (int var = 1; var <= basis.k; ++var) {
    if (has_basis[var]) continue;
    int dmax = 0;
    for (const auto& g : gs) dmax = std::max(dmax, g.deg_in(var));
    mul_guarded(dmax + 1);
  }
  Int class_count = int_pow(Int(F.q()), monomials);
  Int required = Int(p - 1) * class_count + 1;

  std::map<MultiPoly, std::vector<long long>> classes;
  for (std::size_t n = 0; n < gs.size(); ++n) {
    if (gs[n].k != basis.k) throw kind_mismatch("input and basis variable counts differ");
    MultiPoly r = multi_reduce(F, gs[n], basis).remainder;
    auto& bucket = classes[r];
    bucket.push_back(static_cast<long long>(n) + 1);
    if (static_cast<int>(bucket.size()) == p) {
      PigeonholeWitness w;
      w.indices = bucket;
      w.remainder = r;
      w.sum = mp_zero(basis.k);
      for (long long idx : bucket) w.sum = mp_add(F, w.sum, gs[idx - 1]);
      w.member = ideal_member(F, w.sum, basis);
      w.p = p;
      w.class_count = class_count;
      w.required_length = required;
      return w;
    }
  }
  throw insufficient_sequence(required);
}

}  // namespace dsetkit
