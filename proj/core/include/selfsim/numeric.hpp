#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <string>

namespace selfsim {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

// Accepts plain decimals ("0.25"), scientific notation ("1e-12", "2.5E3")
// and fraction syntax ("3/4"); the result is exact.
Rat parse_rational(const std::string& text);

// Fixed-point decimal with `digits` places after the point, rounded toward
// -inf / +inf so a printed [floor(lo), ceil(hi)] pair is still an enclosure.
std::string decimal_floor(const Rat& r, int digits);
std::string decimal_ceil(const Rat& r, int digits);

double to_double(const Rat& r);
double to_double(const BigInt& n);

// log_base(x) for positive x, evaluated in 50-digit floats and rounded to
// double; the intermediate error is far below double resolution.
double log_base(const Rat& x, int base);
double log_base(const BigInt& x, int base);

std::string to_string(const BigInt& n);

}  // namespace selfsim
