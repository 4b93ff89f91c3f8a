#pragma once

#include <stdexcept>
#include <string>

namespace dsetkit {

// Every library error carries a stable machine-readable kind string; the CLI
// maps kinds onto its error report format and exit codes.
struct error : std::runtime_error {
  std::string kind;
  error(std::string kind_, const std::string& what_)
      : std::runtime_error(what_), kind(std::move(kind_)) {}
};

#define DSETKIT_ERROR_KIND(Name, Kind)                                       \
  struct Name : error {                                                      \
    explicit Name(const std::string& what_) : error(Kind, what_) {}          \
  }

DSETKIT_ERROR_KIND(kind_mismatch, "KindMismatch");
DSETKIT_ERROR_KIND(field_mismatch, "FieldMismatch");
DSETKIT_ERROR_KIND(divide_by_zero, "DivideByZero");
DSETKIT_ERROR_KIND(malformed_cosets, "MalformedCosets");
DSETKIT_ERROR_KIND(too_long, "TooLong");
DSETKIT_ERROR_KIND(window_too_large, "WindowTooLarge");
DSETKIT_ERROR_KIND(budget_exceeded, "BudgetExceeded");
DSETKIT_ERROR_KIND(unsupported_system, "UnsupportedSystem");
DSETKIT_ERROR_KIND(parse_error, "ParseError");

#undef DSETKIT_ERROR_KIND

}  // namespace dsetkit
