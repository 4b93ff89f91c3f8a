#include "dsetkit/group.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace dsetkit {

std::string group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::IntegerLine: return "Z";
    case GroupKind::IntegerLattice: return "Z^d";
    case GroupKind::PolyAdd: return "PolyAdd";
    case GroupKind::Heisenberg: return "Heisenberg";
  }
  return "?";
}

GroupDescriptor GroupDescriptor::integer_line() {
  GroupDescriptor g;
  g.kind = GroupKind::IntegerLine;
  return g;
}

GroupDescriptor GroupDescriptor::lattice(int d) {
  if (d < 1) throw error("BadGroup", "lattice dimension must be >= 1");
  if (d > 8) throw budget_exceeded("lattice dimension capped at 8");
  GroupDescriptor g;
  g.kind = GroupKind::IntegerLattice;
  g.d = d;
  return g;
}

GroupDescriptor GroupDescriptor::poly_add(int p, int e, int k) {
  if (k < 1) throw error("BadGroup", "variable count must be >= 1");
  if (k > 4) throw budget_exceeded("variable count capped at 4");
  GroupDescriptor g;
  g.kind = GroupKind::PolyAdd;
  g.field.emplace(p, e);
  g.k = k;
  return g;
}

GroupDescriptor GroupDescriptor::heisenberg() {
  GroupDescriptor g;
  g.kind = GroupKind::Heisenberg;
  g.d = 3;
  return g;
}

const Fq& GroupDescriptor::fq() const {
  if (kind != GroupKind::PolyAdd || !field)
    throw kind_mismatch("group has no coefficient field");
  return *field;
}

bool Element::operator<(const Element& o) const {
  if (kind != o.kind) return kind < o.kind;
  switch (kind) {
    case GroupKind::IntegerLine: return z < o.z;
    case GroupKind::IntegerLattice:
    case GroupKind::Heisenberg: return v < o.v;
    case GroupKind::PolyAdd: return poly < o.poly;
  }
  return false;
}

Element elem_z(long long n) {
  Element e;
  e.kind = GroupKind::IntegerLine;
  e.z = n;
  return e;
}

Element elem_vec(std::vector<long long> v) {
  Element e;
  e.kind = GroupKind::IntegerLattice;
  e.v = std::move(v);
  return e;
}

Element elem_heis(long long a, long long b, long long c) {
  Element e;
  e.kind = GroupKind::Heisenberg;
  e.v = {a, b, c};
  return e;
}

Element elem_poly(MultiPoly p) {
  Element e;
  e.kind = GroupKind::PolyAdd;
  e.poly = std::move(p);
  return e;
}

namespace {

void check_kind(const GroupDescriptor& G, const Element& a) {
  if (a.kind != G.kind)
    throw kind_mismatch("element encoded for " + group_kind_name(a.kind) +
                        " used with " + group_kind_name(G.kind));
  if (G.kind == GroupKind::IntegerLattice && static_cast<int>(a.v.size()) != G.d)
    throw kind_mismatch("lattice element has wrong dimension");
  if (G.kind == GroupKind::Heisenberg && a.v.size() != 3)
    throw kind_mismatch("Heisenberg element needs 3 coordinates");
  if (G.kind == GroupKind::PolyAdd && a.poly.k != G.k)
    throw kind_mismatch("polynomial element has wrong variable count");
}

}  // namespace

Element identity(const GroupDescriptor& G) {
  switch (G.kind) {
    case GroupKind::IntegerLine: return elem_z(0);
    case GroupKind::IntegerLattice: return elem_vec(std::vector<long long>(G.d, 0));
    case GroupKind::Heisenberg: return elem_heis(0, 0, 0);
    case GroupKind::PolyAdd: return elem_poly(mp_zero(G.k));
  }
  throw kind_mismatch("unknown group kind");
}

Element op_apply(const GroupDescriptor& G, const Element& a, const Element& b) {
  check_kind(G, a);
  check_kind(G, b);
  switch (G.kind) {
    case GroupKind::IntegerLine: return elem_z(a.z + b.z);
    case GroupKind::IntegerLattice: {
      std::vector<long long> r(G.d);
      for (int i = 0; i < G.d; ++i) r[i] = a.v[i] + b.v[i];
      return elem_vec(std::move(r));
    }
    case GroupKind::Heisenberg:
      // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
      return elem_heis(a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2] + a.v[0] * b.v[1]);
    case GroupKind::PolyAdd: return elem_poly(mp_add(G.fq(), a.poly, b.poly));
  }
  throw kind_mismatch("unknown group kind");
}

Element invert(const GroupDescriptor& G, const Element& a) {
  check_kind(G, a);
  switch (G.kind) {
    case GroupKind::IntegerLine: return elem_z(-a.z);
    case GroupKind::IntegerLattice: {
      std::vector<long long> r(G.d);
      for (int i = 0; i < G.d; ++i) r[i] = -a.v[i];
      return elem_vec(std::move(r));
    }
    case GroupKind::Heisenberg:
      // solves (a,b,c)(x,y,z) = (0,0,0): x=-a, y=-b, z = ab-c
      return elem_heis(-a.v[0], -a.v[1], a.v[0] * a.v[1] - a.v[2]);
    case GroupKind::PolyAdd: return elem_poly(mp_neg(G.fq(), a.poly));
  }
  throw kind_mismatch("unknown group kind");
}

namespace {

// Monomial sequence for PolyAdd enumeration: total degree ascending, then
// exponent vectors lexicographically descending (X1^2, X1*X2, X2^2, ...).
std::vector<Expo> monomials_up_to(int k, int max_total, std::size_t need) {
  std::vector<Expo> out;
  for (int t = 0; t <= max_total && out.size() < need; ++t) {
    std::vector<Expo> level;
    Expo e(k, 0);
    // enumerate all vectors with sum t
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == k - 1) {
        e[pos] = left;
        level.push_back(e);
        return;
      }
      for (int take = 0; take <= left; ++take) {
        e[pos] = take;
        rec(pos + 1, left - take);
      }
    };
    rec(0, t);
    std::sort(level.begin(), level.end(), std::greater<Expo>());
    for (auto& m : level) out.push_back(std::move(m));
  }
  return out;
}

std::vector<Element> ball_lattice(int dims, long long n, bool heis) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long long r = 0; static_cast<long long>(out.size()) < n; ++r) {
    // all tuples with max-norm exactly r, lexicographic order
    std::vector<long long> t(dims, -r);
    while (true) {
      long long norm = 0;
      for (long long x : t) norm = std::max(norm, std::llabs(x));
      if (norm == r) {
        out.push_back(heis ? elem_heis(t[0], t[1], t[2]) : elem_vec(t));
        if (static_cast<long long>(out.size()) == n) return out;
      }
      int i = dims - 1;
      while (i >= 0 && t[i] == r) {
        t[i] = -r;
        --i;
      }
      if (i < 0) break;
      ++t[i];
    }
    if (r > (1 << 20)) throw budget_exceeded("enumeration radius exploded");
  }
  return out;
}

}  // namespace

std::vector<Element> enumerate_ball(const GroupDescriptor& G, long long n) {
  if (n < 0) throw error("BadArgument", "ball size must be >= 0");
  if (n > 4'000'000) throw budget_exceeded("ball size exceeds element budget");
  std::vector<Element> out;
  if (n == 0) return out;
  switch (G.kind) {
    case GroupKind::IntegerLine: {
      out.push_back(elem_z(0));
      for (long long i = 1; static_cast<long long>(out.size()) < n; ++i) {
        out.push_back(elem_z(i));
        if (static_cast<long long>(out.size()) < n) out.push_back(elem_z(-i));
      }
      return out;
    }
    case GroupKind::IntegerLattice: return ball_lattice(G.d, n, false);
    case GroupKind::Heisenberg: return ball_lattice(3, n, true);
    case GroupKind::PolyAdd: {
      const Fq& F = G.fq();
      // number of monomial digit positions needed so that q^m >= n
      std::size_t need = 1;
      long long span = F.q();
      while (span < n) {
        span *= F.q();
        ++need;
      }
      std::vector<Expo> monos = monomials_up_to(G.k, G.degree_cap, need);
      if (monos.size() < need)
        throw budget_exceeded("enumeration needs monomials beyond the degree cap");
      for (long long idx = 0; idx < n; ++idx) {
        MultiPoly p = mp_zero(G.k);
        long long v = idx;
        for (std::size_t i = 0; i < need && v > 0; ++i) {
          int digit = static_cast<int>(v % F.q());
          v /= F.q();
          if (digit != 0) p.terms[monos[i]] = digit;
        }
        out.push_back(elem_poly(std::move(p)));
      }
      return out;
    }
  }
  throw kind_mismatch("unknown group kind");
}

std::string elem_to_string(const GroupDescriptor& G, const Element& a) {
  check_kind(G, a);
  switch (G.kind) {
    case GroupKind::IntegerLine: return std::to_string(a.z);
    case GroupKind::IntegerLattice:
    case GroupKind::Heisenberg: {
      std::string s = "(";
      for (std::size_t i = 0; i < a.v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.v[i]);
      }
      return s + ")";
    }
    case GroupKind::PolyAdd: return mp_to_string(G.fq(), a.poly);
  }
  throw kind_mismatch("unknown group kind");
}

namespace {

long long parse_ll(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw parse_error("empty integer");
  std::size_t consumed = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &consumed);
  } catch (const std::exception&) {
    throw parse_error("bad integer '" + s + "'");
  }
  if (consumed != t.size()) throw parse_error("trailing characters in integer '" + s + "'");
  return v;
}

}  // namespace

Element elem_parse(const GroupDescriptor& G, const std::string& text) {
  switch (G.kind) {
    case GroupKind::IntegerLine: return elem_z(parse_ll(text));
    case GroupKind::IntegerLattice:
    case GroupKind::Heisenberg: {
      std::string s = text;
      s.erase(std::remove_if(s.begin(), s.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              s.end());
      if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw parse_error("expected tuple '(a,b,...)', got '" + text + "'");
      s = s.substr(1, s.size() - 2);
      std::vector<long long> vals;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = s.find(',', start);
        vals.push_back(parse_ll(s.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      int want = G.kind == GroupKind::Heisenberg ? 3 : G.d;
      if (static_cast<int>(vals.size()) != want)
        throw parse_error("expected " + std::to_string(want) + " coordinates");
      Element e;
      e.kind = G.kind;
      e.v = std::move(vals);
      return e;
    }
    case GroupKind::PolyAdd: return elem_poly(mp_parse(G.fq(), G.k, text));
  }
  throw kind_mismatch("unknown group kind");
}

}  // namespace dsetkit
