#include "dsetkit/rational.hpp"

#include <cctype>

namespace dsetkit {

std::string int_str(const Int& x) { return x.str(); }

std::string rat_str(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) {
    s += "/";
    s += den.str();
  }
  return s;
}

namespace {

Int parse_int_token(const std::string& tok) {
  std::size_t i = 0;
  if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) ++i;
  if (i == tok.size()) throw parse_error("empty integer in '" + tok + "'");
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw parse_error("bad integer '" + tok + "'");
  return Int(tok);
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Rat parse_rat(const std::string& text) {
  std::string s = strip(text);
  if (s.empty()) throw parse_error("empty rational");
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int_token(s));
  if (s.find('/', slash + 1) != std::string::npos)
    throw parse_error("multiple '/' in rational '" + s + "'");
  Int num = parse_int_token(strip(s.substr(0, slash)));
  Int den = parse_int_token(strip(s.substr(slash + 1)));
  if (den == 0) throw parse_error("zero denominator in '" + s + "'");
  return Rat(num, den);
}

Int int_pow(Int base, long long exp) {
  if (exp < 0) throw error("Internal", "int_pow: negative exponent");
  Int acc = 1;
  while (exp > 0) {
    if (exp & 1) acc *= base;
    base *= base;
    exp >>= 1;
  }
  return acc;
}

}  // namespace dsetkit
