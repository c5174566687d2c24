#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hilb {

// Exact arbitrary-precision rationals. Everything downstream is exact: there is no
// floating point anywhere in this library.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  return Rat(num, den);
}

inline Rat factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rat(f);
}

inline Rat binomial(int n, int k) {
  if (k < 0 || k > n) return Rat(0);
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return Rat(num, den);
}

inline Rat rat_pow(const Rat& base, int e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: negative power of zero");
    return rat_pow(Rat(1) / base, -e);
  }
  Rat r = 1, b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Canonical text form: "p/q" in lowest terms, "n" for integers. This is the wire
// format used by the CLI and the JSON output.
inline std::string rat_str(const Rat& r) { return r.str(); }

inline Rat parse_rat(const std::string& s) {
  // Accept an optional sign, digits, optionally "/digits". boost's string
  // constructor is more permissive than we want, so validate first.
  std::size_t i = 0;
  auto digits = [&](std::size_t& j) {
    std::size_t start = j;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    return j > start;
  };
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (!digits(i)) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  if (i < s.size()) {
    if (s[i] != '/') throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    ++i;
    if (!digits(i) || i != s.size())
      throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  }
  Rat r(s);
  return r;
}

}  // namespace hilb
