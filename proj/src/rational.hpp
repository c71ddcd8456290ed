#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sf {

// Exact rational arithmetic. All event times, growths, costs, and algorithm
// parameters are Rationals; values are kept canonical (lowest terms, positive
// denominator) by GMP.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "num/den" or a plain integer. Throws std::invalid_argument on junk.
Rational rat_parse(const std::string& text);

// Canonical "num/den" form, "num" when the denominator is 1.
std::string rat_str(const Rational& value);

// Always "num/den", even for integers. Used by trace documents.
std::string rat_str_frac(const Rational& value);

// Fixed-point decimal with the given number of fractional digits, rounded
// half away from zero. Deterministic; used for report ratios.
std::string rat_decimal(const Rational& value, int digits);

}  // namespace sf
