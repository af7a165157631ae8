#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radial_jet/multi_index.hpp"
#include "radial_jet/scalar.hpp"

namespace radial_jet {

/// A total-degree-truncated Taylor expansion at 0 in C^n: the coefficients
/// of z^alpha for |alpha| <= D, densely stored in graded order.
///
/// Every operation on jets is degree-graded (the degree-d part of a result
/// depends only on input parts of degree <= d), so a jet computes exactly the
/// Taylor coefficients up to D of the corresponding analytic function.
template <class Scalar>
class Jet {
 public:
  using value_type = Scalar;
  using Traits = ScalarTraits<Scalar>;

  Jet(int n, int max_degree) : Jet(MonomialBasis::get(n, max_degree)) {}

  explicit Jet(std::shared_ptr<const MonomialBasis> basis)
      : basis_(std::move(basis)), coeffs_(basis_->size(), Traits::zero()) {}

  static Jet constant(int n, int max_degree, Scalar c) {
    Jet out(n, max_degree);
    out.coeffs_[0] = std::move(c);
    return out;
  }

  /// z_{j+1} for 0-based variable index j.
  static Jet variable(int n, int max_degree, int j) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e.at(static_cast<std::size_t>(j)) = 1;
    return monomial(n, max_degree, MultiIndex(std::move(e)));
  }

  static Jet monomial(int n, int max_degree, const MultiIndex& alpha, Scalar c = Traits::one()) {
    Jet out(n, max_degree);
    out.set(alpha, std::move(c));
    return out;
  }

  int variables() const { return basis_->variables(); }
  int max_degree() const { return basis_->max_degree(); }
  std::size_t size() const { return coeffs_.size(); }
  const MonomialBasis& basis() const { return *basis_; }
  const std::shared_ptr<const MonomialBasis>& shared_basis() const { return basis_; }

  std::span<const Scalar> coefficients() const { return coeffs_; }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
  Scalar& operator[](std::size_t i) { return coeffs_[i]; }

  /// Coefficient of z^alpha; zero when |alpha| exceeds the cap.
  Scalar coefficient(const MultiIndex& alpha) const {
    const std::size_t i = basis_->index_of(alpha);
    return i < coeffs_.size() ? coeffs_[i] : Traits::zero();
  }

  /// Sets the coefficient of z^alpha. Terms above the cap are dropped.
  void set(const MultiIndex& alpha, Scalar value) {
    const std::size_t i = basis_->index_of(alpha);
    if (i < coeffs_.size()) coeffs_[i] = std::move(value);
  }

  const Scalar& constant_term() const { return coeffs_[0]; }

  /// Highest total degree carrying a nonzero coefficient; -1 for the zero jet.
  int degree() const {
    for (std::size_t i = coeffs_.size(); i-- > 0;)
      if (!Traits::is_zero(coeffs_[i])) return basis_->degree(i);
    return -1;
  }

  bool is_zero() const { return degree() < 0; }

  bool same_shape(const Jet& other) const { return basis_ == other.basis_; }

  Jet& operator+=(const Jet& rhs) {
    require_same_shape(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
  }

  Jet& operator-=(const Jet& rhs) {
    require_same_shape(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
  }

  Jet& operator*=(const Scalar& c) {
    for (auto& a : coeffs_) a *= c;
    return *this;
  }

  Jet& operator*=(const Jet& rhs);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Scalar& c) { return a *= c; }
  friend Jet operator*(const Scalar& c, Jet a) { return a *= c; }
  friend Jet operator-(Jet a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend bool operator==(const Jet& a, const Jet& b) { return a.basis_ == b.basis_ && a.coeffs_ == b.coeffs_; }

  void require_same_shape(const Jet& other) const {
    if (!same_shape(other))
      throw ShapeError("jet shape mismatch: (n=" + std::to_string(variables()) + ", D=" +
                       std::to_string(max_degree()) + ") vs (n=" + std::to_string(other.variables()) +
                       ", D=" + std::to_string(other.max_degree()) + ")");
  }

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<Scalar> coeffs_;
};

using ExactJet = Jet<Rational>;
using FloatJet = Jet<Complex>;

namespace detail {

/// Truncated Cauchy product into a fresh coefficient vector.
template <class Scalar>
std::vector<Scalar> convolve(const MonomialBasis& basis, std::span<const Scalar> a, std::span<const Scalar> b) {
  const std::size_t size = basis.size();
  std::vector<Scalar> out(size, ScalarTraits<Scalar>::zero());
  const int cap = basis.max_degree();
  for (std::size_t i = 0; i < size; ++i) {
    if (ScalarTraits<Scalar>::is_zero(a[i])) continue;
    const std::size_t limit = basis.offset(cap - basis.degree(i) + 1);
    for (std::size_t j = 0; j < limit; ++j) out[basis.product(i, j)] += a[i] * b[j];
  }
  return out;
}

/// Exact product: integer numerators over a common denominator, so the
/// inner loop is mpz_addmul and each output coefficient is reduced once.
template <>
std::vector<Rational> convolve<Rational>(const MonomialBasis& basis, std::span<const Rational> a,
                                         std::span<const Rational> b);

}  // namespace detail

template <class Scalar>
Jet<Scalar>& Jet<Scalar>::operator*=(const Jet& rhs) {
  require_same_shape(rhs);
  coeffs_ = detail::convolve<Scalar>(*basis_, coeffs_, rhs.coeffs_);
  return *this;
}

template <class Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  Jet<Scalar> out = a;
  out *= b;
  return out;
}

template <class Scalar>
Jet<Scalar> mul(const Jet<Scalar>& f, const Jet<Scalar>& g) {
  return f * g;
}

/// R^m h: the coefficient of z^alpha is multiplied by |alpha|^m.
template <class Scalar>
Jet<Scalar> radial_power(Jet<Scalar> h, int m) {
  if (m < 0) throw DomainError("radial_power needs m >= 0");
  if (m == 0) return h;
  const auto& basis = h.basis();
  for (std::size_t i = 0; i < h.size(); ++i) {
    long eigen = 1;
    for (int p = 0; p < m; ++p) eigen *= basis.degree(i);
    h[i] *= ScalarTraits<Scalar>::from_int(eigen);
  }
  return h;
}

/// The unique g with f * g = 1 up to the cap. Needs f(0) != 0.
template <class Scalar>
Jet<Scalar> inverse(const Jet<Scalar>& f) {
  using Traits = ScalarTraits<Scalar>;
  if (Traits::is_zero(f.constant_term())) throw DomainError("cannot invert a jet with vanishing constant term");
  // Graded back-substitution: g_0 = 1/f_0, then each degree block in turn.
  const auto& basis = f.basis();
  const Scalar inv0 = Traits::one() / f.constant_term();
  Jet<Scalar> g(f.shared_basis());
  g[0] = inv0;
  // acc holds f * g restricted to the degrees already solved for.
  std::vector<Scalar> acc(f.size(), Traits::zero());
  for (int d = 1; d <= f.max_degree(); ++d) {
    const std::size_t begin = basis.offset(d - 1);
    const std::size_t end = basis.offset(d);
    for (std::size_t j = begin; j < end; ++j) {
      if (Traits::is_zero(g[j])) continue;
      const std::size_t limit = basis.offset(f.max_degree() - basis.degree(j) + 1);
      for (std::size_t i = 1; i < limit; ++i) acc[basis.product(i, j)] += f[i] * g[j];
    }
    for (std::size_t k = basis.offset(d); k < basis.offset(d + 1); ++k) g[k] = -acc[k] * inv0;
  }
  return g;
}

/// f^k under truncated multiplication; k < 0 goes through the inverse.
template <class Scalar>
Jet<Scalar> int_pow(const Jet<Scalar>& f, long k) {
  Jet<Scalar> base = k < 0 ? inverse(f) : f;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  Jet<Scalar> out = Jet<Scalar>::constant(f.variables(), f.max_degree(), ScalarTraits<Scalar>::one());
  while (e > 0) {
    if (e & 1UL) out *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return out;
}

/// exp of a jet. Exact regime: g(0) must be 0 and the result is the finite
/// nilpotent sum of v^k/k!. Float regime: exp(g(0)) times that sum.
Jet<Rational> exp_series(const Jet<Rational>& g);
Jet<Complex> exp_series(const Jet<Complex>& g);

/// log of a jet. Exact regime: f(0) must be 1 and the result is
/// sum_{k<=D} (-1)^{k+1} u^k / k with u = f - 1. Float regime: f(0) != 0 and
/// the principal branch is used for log f(0).
Jet<Rational> log_series(const Jet<Rational>& f);
Jet<Complex> log_series(const Jet<Complex>& f);

/// f^t = exp(t log f). Exact regime: f(0) = 1 and t rational.
Jet<Rational> real_pow(const Jet<Rational>& f, const Rational& t);
Jet<Complex> real_pow(const Jet<Complex>& f, double t);

/// Keeps degrees <= new_cap (new_cap <= D).
template <class Scalar>
Jet<Scalar> truncate(const Jet<Scalar>& f, int new_cap) {
  if (new_cap > f.max_degree()) throw ShapeError("truncate cannot raise the degree cap");
  Jet<Scalar> out(f.variables(), new_cap);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i];
  return out;
}

/// Re-embeds f in a larger cap, padding with zeros. This treats the
/// stored coefficients as a polynomial.
template <class Scalar>
Jet<Scalar> extend(const Jet<Scalar>& f, int new_cap) {
  if (new_cap < f.max_degree()) throw ShapeError("extend cannot lower the degree cap");
  Jet<Scalar> out(f.variables(), new_cap);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

/// Max-abs coefficient difference. Throws on shape mismatch.
template <class Scalar>
typename ScalarTraits<Scalar>::Magnitude max_abs_difference(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  a.require_same_shape(b);
  using Traits = ScalarTraits<Scalar>;
  typename Traits::Magnitude best = Traits::magnitude(Traits::zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto diff = Traits::magnitude(a[i] - b[i]);
    if (diff > best) best = diff;
  }
  return best;
}

template <class Scalar>
FloatJet to_float(const Jet<Scalar>& f) {
  FloatJet out(f.shared_basis());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = ScalarTraits<Scalar>::to_complex(f[i]);
  return out;
}

/// Polynomial value sum_alpha c_alpha z^alpha at a point of C^n.
template <class Scalar>
Complex evaluate(const Jet<Scalar>& f, std::span<const Complex> z) {
  if (z.size() != static_cast<std::size_t>(f.variables())) throw ShapeError("evaluation point has wrong dimension");
  const auto& basis = f.basis();
  // Powers z_j^e for e <= D.
  const std::size_t cap = static_cast<std::size_t>(f.max_degree());
  std::vector<Complex> powers(z.size() * (cap + 1));
  for (std::size_t j = 0; j < z.size(); ++j) {
    powers[j * (cap + 1)] = 1.0;
    for (std::size_t e = 1; e <= cap; ++e) powers[j * (cap + 1) + e] = powers[j * (cap + 1) + e - 1] * z[j];
  }
  Complex sum{};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (ScalarTraits<Scalar>::is_zero(f[i])) continue;
    Complex term = ScalarTraits<Scalar>::to_complex(f[i]);
    const auto& alpha = basis.monomial(i);
    for (std::size_t j = 0; j < z.size(); ++j) term *= powers[j * (cap + 1) + static_cast<std::size_t>(alpha[j])];
    sum += term;
  }
  return sum;
}

enum class ConstantTerm { free, unit };

/// Seeded random jet. Coefficients are small rationals p/q with p in [-9, 9]
/// and q in [1, 9]; the float regime draws real and imaginary parts that way.
template <class Scalar>
Jet<Scalar> random_jet(int n, int max_degree, std::uint64_t seed, ConstantTerm constraint);

template <>
Jet<Rational> random_jet<Rational>(int n, int max_degree, std::uint64_t seed, ConstantTerm constraint);
template <>
Jet<Complex> random_jet<Complex>(int n, int max_degree, std::uint64_t seed, ConstantTerm constraint);

}  // namespace radial_jet
