#pragma once

#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "radial_jet/jet.hpp"

namespace radial_jet::cli {

/// Syntax error in a polynomial literal; the message names the offset.
class PolynomialSyntaxError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse polynomial in z1..z_variables with exact coefficients.
struct Polynomial {
  int variables = 1;
  std::map<std::vector<int>, Rational> terms;

  int degree() const;
};

/// Parses expressions such as "1 + z1*z2 - 3/4*z2^2" (see the README for the
/// grammar). Division is allowed only by a nonzero constant.
Polynomial parse_polynomial(std::string_view text);

/// The polynomial as a jet with n variables and cap D. Throws ShapeError if
/// n is smaller than the highest variable index used; terms above D are
/// dropped.
ExactJet to_jet(const Polynomial& p, int n, int max_degree);

}  // namespace radial_jet::cli
