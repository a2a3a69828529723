#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <stdexcept>
#include <string>

namespace zetascope {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Quad = boost::multiprecision::cpp_bin_float_quad;

/// Error in user-supplied data (bad dimensions, zero polynomial, malformed rationals...).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A request exceeded the precision the object carries (e.g. derivative beyond
/// the truncation order). The caller must rebuild with a larger order.
class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// A theorem hypothesis failed; carries the violated hypothesis in what().
class not_applicable : public std::runtime_error {
 public:
  explicit not_applicable(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical stage could not reach the requested tolerance.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_tolerance(achieved) {}
  double achieved_tolerance;
};

/// Violated internal invariant: a bug here or a degenerate input upstream.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// A configurable resource cap (cone budget, cell budget) was exceeded.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q" or "p" with optional sign; q must be nonzero.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw input_error("rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw input_error("cannot parse rational '" + s + "': " + e.what());
  }
}

/// Renders as "p/q", or "p" when the denominator is 1.
inline std::string rational_string(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// For integer q, its value as BigInt.
inline BigInt integer_part(const Rational& q) {
  return boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
}

}  // namespace zetascope
