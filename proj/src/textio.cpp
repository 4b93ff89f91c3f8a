#include "dsetkit/textio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace dsetkit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// "prefix:rest" -> rest, or nullopt when the prefix does not match
std::optional<std::string> after_prefix(const std::string& s, const std::string& prefix) {
  if (s.rfind(prefix, 0) == 0) return s.substr(prefix.size());
  return std::nullopt;
}

int parse_int_strict(const std::string& s) {
  long long v = parse_ll_strict(s);
  if (v < -2000000000LL || v > 2000000000LL) throw parse_error("integer out of range: " + s);
  return static_cast<int>(v);
}

bool is_square(long long n) {
  if (n < 0) return false;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  for (long long t = std::max(0LL, r - 2); t <= r + 2; ++t)
    if (t * t == n) return true;
  return false;
}

}  // namespace

long long parse_ll_strict(const std::string& text) {
  std::string s = strip(text);
  if (s.empty()) throw parse_error("empty integer");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw parse_error("malformed integer: " + text);
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw parse_error("malformed integer: " + text);
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    throw parse_error("integer out of range: " + text);
  }
}

std::pair<long long, long long> parse_range(const std::string& spec) {
  std::size_t dots = spec.find("..", 1);  // a leading '-' is part of lo
  if (dots == std::string::npos) throw parse_error("expected lo..hi: " + spec);
  long long lo = parse_ll_strict(spec.substr(0, dots));
  long long hi = parse_ll_strict(spec.substr(dots + 2));
  if (hi < lo) throw parse_error("empty range: " + spec);
  return {lo, hi};
}

GroupDescriptor make_group(const std::string& spec_raw, int q, int k) {
  std::string spec = strip(spec_raw);
  if (spec == "Z") return GroupDescriptor::integer_line();
  if (auto rest = after_prefix(spec, "Z^")) return GroupDescriptor::lattice(parse_int_strict(*rest));
  if (spec == "heis") return GroupDescriptor::heisenberg();
  if (spec == "poly") {
    Fq F = make_field(q);
    return GroupDescriptor::poly_add(F.p(), F.e(), k);
  }
  throw parse_error("unknown group: " + spec + " (expected Z, Z^d, poly, heis)");
}

Fq make_field(int q) {
  if (q < 2) throw parse_error("field size must be >= 2");
  for (int p = 2; p <= q; ++p) {
    if (!is_prime_int(p)) continue;
    long long power = p;
    for (int e = 1; e <= 4; ++e, power *= p) {
      if (power == q) return Fq(p, e);
      if (power > q) break;
    }
    if (q % p == 0) break;  // divisible by p but not a power of it
  }
  throw parse_error(std::to_string(q) + " is not a prime power p^e with e <= 4");
}

FolnerSequence make_folner(const GroupDescriptor& G, const std::string& name_raw) {
  std::string name = strip(name_raw);
  auto fits = [&](const FolnerSequence& s) {
    if (s.G.kind != G.kind || s.G.d != G.d || s.G.k != G.k) return false;
    if (G.kind == GroupKind::PolyAdd && !s.G.fq().same(G.fq())) return false;
    return true;
  };
  FolnerSequence seq;
  if (name == "default") {
    switch (G.kind) {
      case GroupKind::IntegerLine: seq = folner_intervals(); break;
      case GroupKind::IntegerLattice: seq = folner_boxes(G.d); break;
      case GroupKind::PolyAdd: seq = folner_polydeg(G.fq().p(), G.fq().e(), G.k); break;
      case GroupKind::Heisenberg: seq = folner_heis_boxes(); break;
    }
  } else if (name == "intervals") {
    seq = folner_intervals();
  } else if (name == "boxes") {
    seq = folner_boxes(G.d);
  } else if (name == "polydeg") {
    if (G.kind != GroupKind::PolyAdd) throw parse_error("polydeg needs the poly group");
    seq = folner_polydeg(G.fq().p(), G.fq().e(), G.k);
  } else if (name == "heisboxes") {
    seq = folner_heis_boxes();
  } else if (name == "nontempered") {
    seq = folner_nontempered();
  } else {
    throw parse_error("unknown sequence: " + name);
  }
  if (!fits(seq)) throw parse_error("sequence " + seq.name + " does not fit the group");
  return seq;
}

SetPredicate make_set(const GroupDescriptor& G, const std::string& spec_raw) {
  std::string spec = strip(spec_raw);
  if (spec == "all") return {G, [](const Element&) { return true; }, "all"};
  if (spec == "none") return {G, [](const Element&) { return false; }, "none"};

  if (G.kind == GroupKind::IntegerLine) {
    if (spec == "evens") return {G, [](const Element& e) { return e.z % 2 == 0; }, spec};
    if (spec == "odds") return {G, [](const Element& e) { return e.z % 2 != 0; }, spec};
    if (spec == "squares") return {G, [](const Element& e) { return is_square(e.z); }, spec};
    if (auto rest = after_prefix(spec, "mod:")) {
      auto parts = split(*rest, ',');
      if (parts.size() != 2) throw parse_error("expected mod:<r>,<m>");
      long long r = parse_ll_strict(parts[0]), m = parse_ll_strict(parts[1]);
      if (m < 1) throw parse_error("modulus must be >= 1");
      return {G, [r, m](const Element& e) { return ((e.z - r) % m + m) % m == 0; }, spec};
    }
  }

  if (G.kind == GroupKind::PolyAdd) {
    const Fq F = G.fq();  // captured by value: the predicate outlives its group argument
    if (auto rest = after_prefix(spec, "ideal:")) {
      auto basis = std::make_shared<IdealBasis>(parse_basis(F, G.k, *rest));
      return {G, [F, basis](const Element& e) { return ideal_member(F, e.poly, *basis); },
              spec};
    }
    if (auto rest = after_prefix(spec, "coset:")) {
      auto parts = split(*rest, '@');
      if (parts.size() != 2) throw parse_error("expected coset:<f>@<generators>");
      MultiPoly f = mp_parse(F, G.k, parts[0]);
      auto basis = std::make_shared<IdealBasis>(parse_basis(F, G.k, parts[1]));
      return {G,
              [F, f, basis](const Element& e) {
                return ideal_member(F, mp_sub(F, e.poly, f), *basis);
              },
              spec};
    }
    if (auto rest = after_prefix(spec, "unioncosets:")) {
      if (G.k != 1) throw parse_error("unioncosets needs a single variable");
      auto parts = split(*rest, '@');
      if (parts.size() != 2) throw parse_error("expected unioncosets:<m>@<f1;f2;...>");
      long long m = parse_ll_strict(parts[0]);
      if (m < 1) throw parse_error("ideal power must be >= 1");
      std::vector<int> xm_c(m + 1, 0);
      xm_c[m] = 1;
      UniPoly xm = uni_trim(std::move(xm_c));
      auto reps = std::make_shared<std::vector<UniPoly>>();
      for (const std::string& part : split(parts[1], ';'))
        reps->push_back(uni_mod(F, uni_parse(F, part), xm));
      return {G,
              [F, xm, reps](const Element& e) {
                UniPoly r = uni_mod(F, mp_to_uni(e.poly, 1), xm);
                return std::find(reps->begin(), reps->end(), r) != reps->end();
              },
              spec};
    }
  }
  throw parse_error("unknown set for this group: " + spec);
}

std::vector<Element> parse_elements(const GroupDescriptor& G, const std::string& spec_raw) {
  std::string spec = strip(spec_raw);
  if (auto rest = after_prefix(spec, "ball:"))
    return enumerate_ball(G, parse_ll_strict(*rest));
  if (G.kind == GroupKind::IntegerLine && spec.find("..") != std::string::npos) {
    auto [lo, hi] = parse_range(spec);
    if (hi - lo + 1 > kSetBudget) throw window_too_large("element range exceeds the budget");
    std::vector<Element> out;
    out.reserve(hi - lo + 1);
    for (long long v = lo; v <= hi; ++v) out.push_back(elem_z(v));
    return out;
  }
  std::vector<Element> out;
  for (const std::string& part : split(spec, ';')) out.push_back(elem_parse(G, part));
  return out;
}

IdealBasis parse_basis(const Fq& F, int k, const std::string& spec) {
  std::vector<std::pair<int, UniPoly>> gens;
  for (const std::string& part : split(spec, ';')) {
    MultiPoly f = mp_parse(F, k, part);
    int var = mp_single_variable(f);
    if (var <= 0)
      throw parse_error("basis entry must be univariate and nonconstant: " + strip(part));
    gens.emplace_back(var, mp_to_uni(f, var));
  }
  return IdealBasis(F, k, std::move(gens));
}

std::vector<int> parse_perm_cycles(int n, const std::string& spec) {
  std::vector<int> img(n);
  std::vector<bool> moved(n, false);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::string s = strip(spec);
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '(') throw parse_error("expected '(' in cycle notation: " + spec);
    std::size_t close = s.find(')', i);
    if (close == std::string::npos) throw parse_error("unclosed cycle: " + spec);
    std::istringstream in(s.substr(i + 1, close - i - 1));
    std::vector<int> cycle;
    std::string tok;
    while (in >> tok) cycle.push_back(parse_int_strict(tok));
    for (int a : cycle) {
      if (a < 0 || a >= n) throw parse_error("cycle entry out of range: " + spec);
      if (moved[a]) throw parse_error("atom repeated across cycles: " + spec);
      moved[a] = true;
    }
    for (std::size_t t = 0; t < cycle.size(); ++t)
      img[cycle[t]] = cycle[(t + 1) % cycle.size()];
    i = close + 1;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  return img;
}

namespace {

std::vector<Rat> parse_rat_list(const std::string& spec) {
  std::vector<Rat> out;
  for (const std::string& part : split(spec, ',')) out.push_back(parse_rat(strip(part)));
  return out;
}

SystemSpec system_from_json(const nlohmann::json& j, const std::string& text) {
  std::string type = j.at("type").get<std::string>();
  if (type == "finite") {
    std::vector<Rat> weights;
    for (const auto& w : j.at("weights")) weights.push_back(parse_rat(w.get<std::string>()));
    std::vector<std::vector<int>> gens;
    for (const auto& g : j.at("generators"))
      gens.push_back(parse_perm_cycles(static_cast<int>(weights.size()), g.get<std::string>()));
    return {FiniteMPS(std::move(weights), std::move(gens)), text};
  }
  if (type == "bernoulli") {
    std::vector<Rat> marginal;
    for (const auto& m : j.at("marginal")) marginal.push_back(parse_rat(m.get<std::string>()));
    return {CylinderSystem(std::move(marginal)), text};
  }
  throw parse_error("unknown system type: " + type);
}

}  // namespace

SystemSpec parse_system(const std::string& spec_raw) {
  std::string spec = strip(spec_raw);
  if (auto rest = after_prefix(spec, "rot:")) {
    int n = parse_int_strict(*rest);
    if (n < 1) throw parse_error("rotation needs >= 1 atoms");
    std::vector<Rat> weights(n, Rat(1, n));
    std::vector<int> cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return {FiniteMPS(std::move(weights), {cycle}), spec};
  }
  if (auto rest = after_prefix(spec, "bernoulli:"))
    return {CylinderSystem(parse_rat_list(*rest)), spec};
  if (auto rest = after_prefix(spec, "finite:")) {
    auto parts = split(*rest, '&');
    if (parts.size() < 2) throw parse_error("expected finite:<weights>&<perm>[&<perm>...]");
    std::vector<Rat> weights = parse_rat_list(parts[0]);
    std::vector<std::vector<int>> gens;
    for (std::size_t i = 1; i < parts.size(); ++i)
      gens.push_back(parse_perm_cycles(static_cast<int>(weights.size()), parts[i]));
    return {FiniteMPS(std::move(weights), std::move(gens)), spec};
  }
  // everything else is a description file
  std::ifstream in(spec);
  if (!in) throw parse_error("cannot open system description: " + spec);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw parse_error("bad system JSON: " + std::string(ex.what()));
  }
  try {
    return system_from_json(j, "file:" + spec);
  } catch (const nlohmann::json::exception& ex) {
    throw parse_error("bad system description: " + std::string(ex.what()));
  }
}

FiniteEvent parse_finite_event(const FiniteMPS& sys, const std::string& spec_raw) {
  std::string spec = strip(spec_raw);
  if (spec == "empty") return {};
  if (spec == "full") {
    std::vector<int> all(sys.atoms());
    for (int i = 0; i < sys.atoms(); ++i) all[i] = i;
    return all;
  }
  if (auto rest = after_prefix(spec, "atoms:")) spec = *rest;
  std::vector<int> atoms;
  for (const std::string& part : split(spec, ',')) atoms.push_back(parse_int_strict(part));
  return make_finite_event(sys, std::move(atoms));
}

CylinderConstraint parse_pattern(const std::string& spec) {
  CylinderConstraint out;
  for (const std::string& part : split(spec, '&')) {
    auto kv = split(strip(part), '=');
    if (kv.size() != 2) throw parse_error("expected <coord>=<letter>: " + part);
    long long coord = parse_ll_strict(kv[0]);
    int letter = parse_int_strict(kv[1]);
    if (out.count(coord)) throw parse_error("coordinate constrained twice: " + part);
    out[coord] = letter;
  }
  return out;
}

CylEvent parse_cyl_event(const CylinderSystem& sys, const std::string& spec_raw) {
  std::string spec = strip(spec_raw);
  if (spec == "empty") return make_cyl_event(sys, {});
  if (spec == "full") return make_cyl_event(sys, {CylinderConstraint{}});
  if (auto rest = after_prefix(spec, "cyl:")) spec = *rest;
  std::vector<CylinderConstraint> cylinders;
  for (const std::string& part : split(spec, '|')) cylinders.push_back(parse_pattern(part));
  return make_cyl_event(sys, cylinders);
}

std::function<int(long long)> make_point(const std::string& spec_raw) {
  std::string spec = strip(spec_raw);
  if (auto rest = after_prefix(spec, "periodic:")) {
    auto parts = split(*rest, ',');
    std::vector<int> letters;
    for (const std::string& p : parts) letters.push_back(parse_int_strict(p));
    if (letters.empty()) throw parse_error("periodic point needs letters");
    long long len = static_cast<long long>(letters.size());
    return [letters, len](long long i) {
      return letters[static_cast<std::size_t>(((i % len) + len) % len)];
    };
  }
  if (spec == "squares") return [](long long i) { return is_square(i) ? 1 : 0; };
  if (auto rest = after_prefix(spec, "const:")) {
    int letter = parse_int_strict(*rest);
    return [letter](long long) { return letter; };
  }
  throw parse_error("unknown point: " + spec);
}

std::vector<GVec> parse_gvec_window(const std::string& spec, int dims) {
  auto axes = split(strip(spec), ',');
  if (static_cast<int>(axes.size()) != dims)
    throw parse_error("window needs one lo..hi range per acting dimension");
  std::vector<std::pair<long long, long long>> ranges;
  long long total = 1;
  for (const std::string& axis : axes) {
    ranges.push_back(parse_range(axis));
    long long span = ranges.back().second - ranges.back().first + 1;
    if (span > kScanBudget || total > kScanBudget / span)
      throw budget_exceeded("window exceeds the scan budget");
    total *= span;
  }
  std::vector<GVec> out;
  out.reserve(total);
  GVec g(dims);
  for (int i = 0; i < dims; ++i) g[i] = ranges[i].first;
  while (true) {
    out.push_back(g);
    int i = dims - 1;  // first axis varies slowest
    while (i >= 0 && g[i] == ranges[i].second) {
      g[i] = ranges[i].first;
      --i;
    }
    if (i < 0) break;
    ++g[i];
  }
  return out;
}

}  // namespace dsetkit
