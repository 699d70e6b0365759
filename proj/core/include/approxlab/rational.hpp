// Exact rational scalars used throughout the library.
//
// All radii, Lipschitz constants, growth ratios and report numbers are exact
// rationals (GMP mpq).  Floating point only ever appears in derived display
// quantities (e.g. box-dimension style estimates), never in a comparison that
// decides a certificate.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace approxlab {

using Rat = mpq_class;
using Int = mpz_class;
using json = nlohmann::ordered_json;

// Canonicalized rational from a (possibly negative) numerator/denominator pair.
Rat make_rat(long long num, long long den);

// Parses "p", "p/q" or a decimal like "0.25" into an exact rational.
std::optional<Rat> parse_rat(const std::string& text);

// x^e with the convention 0^0 = 1.
Rat rat_pow(const Rat& x, unsigned long e);

// Truncated geometric sum 1 + l + l^2 + ... + l^(n-1); zero when n == 0.
Rat geom_sum(const Rat& l, unsigned long n);

// Largest multiple of 2^-bits that is <= x (a dyadic lower approximant).
Rat dyadic_floor(const Rat& x, unsigned bits);

// Largest multiple of 2^-bits that is <= 2^(-p/q), for p >= 0, q >= 1.
// Exact power of two when q divides p.
Rat dyadic_floor_pow2(long long p, long long q, unsigned bits);

double to_double(const Rat& x);

// Rationals serialize as {"num": ..., "den": ...}; components that fit in a
// 64-bit integer are emitted as JSON numbers, anything larger as a decimal
// string.
json rat_to_json(const Rat& x);
std::optional<Rat> rat_from_json(const json& j);

// Display form "p/q" (or just "p" when q == 1).
std::string rat_to_string(const Rat& x);

}  // namespace approxlab
