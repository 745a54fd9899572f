#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace atlas {

/// Exact rational scalar. Always stored in reduced form with positive
/// denominator (mpq_class canonicalizes on construction and arithmetic).
using Scalar = mpq_class;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p". Throws InvalidInput on malformed text or q = 0.
Scalar parse_scalar(const std::string& text);

/// Serializes as "p/q" (denominator always printed, q >= 1).
std::string format_scalar(const Scalar& s);

inline Scalar factorial(unsigned n) {
  Scalar r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= static_cast<long>(k);
  return r;
}

}  // namespace atlas
