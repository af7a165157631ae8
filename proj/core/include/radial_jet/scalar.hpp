#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace radial_jet {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

/// Raised when two jets (or a jet and a table) of incompatible shape meet.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's mathematical precondition fails
/// (vanishing constant term, s <= -1, point outside the ball, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when two independent computation paths disagree. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Regime { exact, floating };

std::string_view to_string(Regime regime);

/// Lowest-terms "p/q", always with an explicit denominator ("3/1", "0/1").
std::string format_rational(const Rational& q);

/// Accepts "p/q", "p", or a finite decimal such as "-0.25" or "1e-3".
Rational parse_rational(std::string_view text);

Integer factorial(unsigned k);

double to_double(const Rational& q);

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  using Magnitude = Rational;
  static constexpr Regime regime = Regime::exact;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational magnitude(const Rational& q) { return abs(q); }
  static bool is_zero(const Rational& q) { return sgn(q) == 0; }
  static Complex to_complex(const Rational& q) { return {to_double(q), 0.0}; }
};

template <>
struct ScalarTraits<Complex> {
  using Magnitude = double;
  static constexpr Regime regime = Regime::floating;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static double magnitude(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static Complex to_complex(const Complex& z) { return z; }
};

}  // namespace radial_jet
