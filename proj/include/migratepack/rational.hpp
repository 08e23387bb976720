#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace migratepack {

// All scalar quantities (item sizes, LP entries, objectives, parameters) are
// exact rationals. mpq_class keeps numerator/denominator in lowest terms with
// a positive denominator as long as every value is built through the helpers
// below; raw mpq_class(int,int) and string constructors do NOT canonicalize.
using Rational = mpq_class;

Rational make_rat(long num, long den = 1);

// Parses "p/q", integer, or decimal strings ("0.25") exactly.
// Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

// Always "p/q" in lowest terms, including q = 1 (e.g. "3/1"), so that
// serialized files are byte-deterministic.
std::string rat_to_fraction(const Rational& r);

// Shortest decimal approximation for plots/logs; not used in any comparison.
std::string rat_to_decimal(const Rational& r, int digits = 6);

bool rat_is_integer(const Rational& r);

// Exact floor/ceil. Values in this project stay far below 2^63; throws
// std::overflow_error if that ever stops being true.
long rat_floor(const Rational& r);
long rat_ceil(const Rational& r);

}  // namespace migratepack
