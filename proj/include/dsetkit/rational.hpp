#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "dsetkit/errors.hpp"

namespace dsetkit {

// Exact arithmetic everywhere: densities, measures and averages are
// cpp_rational, counts that may outgrow 64 bits are cpp_int.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

std::string int_str(const Int& x);

// Canonical text form "num/den", reduced, with "/1" suppressed ("3", "-1/2").
std::string rat_str(const Rat& r);

// Parses "a" or "a/b" with optional sign, exactly; throws parse_error.
Rat parse_rat(const std::string& text);

Int int_pow(Int base, long long exp);

}  // namespace dsetkit
