#include "selfsim/numeric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cctype>
#include <sstream>

#include "selfsim/errors.hpp"

namespace selfsim {

using Float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

BigInt pow10(int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

Float50 to_float50(const Rat& r) {
  return Float50(r.numerator()) / Float50(r.denominator());
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty numeric literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in " + text);
    return Rat(num, den);
  }

  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');

  std::string ipart, fpart;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ipart.push_back(s[i++]);
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) fpart.push_back(s[i++]);
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    if (digits.empty()) throw Error(ErrorCode::InvalidArgument, "bad exponent in " + text);
    exp10 = std::stol(digits);
    if (eneg) exp10 = -exp10;
  }
  if (i != s.size() || (ipart.empty() && fpart.empty()))
    throw Error(ErrorCode::InvalidArgument, "bad numeric literal " + text);

  BigInt mantissa(ipart.empty() ? "0" : ipart);
  for (char c : fpart) mantissa = mantissa * 10 + (c - '0');
  long shift = exp10 - static_cast<long>(fpart.size());
  Rat r(mantissa, 1);
  if (shift > 0)
    r *= Rat(pow10(static_cast<int>(shift)), 1);
  else if (shift < 0)
    r /= Rat(pow10(static_cast<int>(-shift)), 1);
  return neg ? -r : r;
}

namespace {

// floor(r * 10^digits) rendered as a fixed-point string
std::string decimal_dir(const Rat& r, int digits, bool ceil) {
  BigInt scale = pow10(digits);
  BigInt num = r.numerator() * scale;
  BigInt den = r.denominator();
  BigInt q = num / den;
  BigInt rem = num % den;
  if (rem != 0) {
    // cpp_int division truncates toward zero
    bool negative = r.numerator() < 0;
    if (ceil && !negative) q += 1;
    if (!ceil && negative) q -= 1;
  }
  bool neg = q < 0;
  BigInt absq = neg ? BigInt(-q) : q;
  std::string s = absq.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits + 1) - s.size(), '0');
  s.insert(s.size() - static_cast<size_t>(digits), ".");
  return (neg ? "-" : "") + s;
}

}  // namespace

std::string decimal_floor(const Rat& r, int digits) { return decimal_dir(r, digits, false); }
std::string decimal_ceil(const Rat& r, int digits) { return decimal_dir(r, digits, true); }

double to_double(const Rat& r) { return to_float50(r).convert_to<double>(); }
double to_double(const BigInt& n) { return Float50(n).convert_to<double>(); }

double log_base(const Rat& x, int base) {
  if (x.numerator() <= 0) throw Error(ErrorCode::InvalidArgument, "log of non-positive value");
  Float50 v = log(Float50(x.numerator())) - log(Float50(x.denominator()));
  return (v / log(Float50(base))).convert_to<double>();
}

double log_base(const BigInt& x, int base) { return log_base(Rat(x, 1), base); }

std::string to_string(const BigInt& n) { return n.str(); }

}  // namespace selfsim
