#include "radial_jet/jet.hpp"

#include <random>

namespace radial_jet {

namespace detail {

namespace {

// Integer numerators over the lcm of the denominators.
Integer common_denominator(std::span<const Rational> a, std::vector<Integer>& numerators) {
  Integer lcm = 1;
  for (const auto& q : a)
    if (sgn(q) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  numerators.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) {
      numerators[i] = 0;
      continue;
    }
    mpz_divexact(numerators[i].get_mpz_t(), lcm.get_mpz_t(), a[i].get_den_mpz_t());
    numerators[i] *= a[i].get_num();
  }
  return lcm;
}

}  // namespace

template <>
std::vector<Rational> convolve<Rational>(const MonomialBasis& basis, std::span<const Rational> a,
                                         std::span<const Rational> b) {
  std::vector<Integer> an;
  std::vector<Integer> bn;
  const Integer da = common_denominator(a, an);
  const Integer db = common_denominator(b, bn);
  const std::size_t size = basis.size();
  std::vector<Integer> acc(size);
  const int cap = basis.max_degree();
  for (std::size_t i = 0; i < size; ++i) {
    if (sgn(an[i]) == 0) continue;
    const std::size_t limit = basis.offset(cap - basis.degree(i) + 1);
    for (std::size_t j = 0; j < limit; ++j) {
      if (sgn(bn[j]) == 0) continue;
      mpz_addmul(acc[basis.product(i, j)].get_mpz_t(), an[i].get_mpz_t(), bn[j].get_mpz_t());
    }
  }
  const Integer den = da * db;
  std::vector<Rational> out(size);
  for (std::size_t k = 0; k < size; ++k) {
    if (sgn(acc[k]) == 0) continue;
    out[k] = Rational(acc[k], den);
    out[k].canonicalize();
  }
  return out;
}

}  // namespace detail

namespace {

// sum_{k=0}^{D} v^k / k! for v with zero constant term (v^{D+1} vanishes).
template <class Scalar>
Jet<Scalar> exp_nilpotent(const Jet<Scalar>& v) {
  using Traits = ScalarTraits<Scalar>;
  Jet<Scalar> sum = Jet<Scalar>::constant(v.variables(), v.max_degree(), Traits::one());
  Jet<Scalar> term = sum;
  for (int k = 1; k <= v.max_degree(); ++k) {
    term *= v;
    term *= Traits::one() / Traits::from_int(k);
    sum += term;
  }
  return sum;
}

// sum_{k=1}^{D} (-1)^{k+1} u^k / k for u with zero constant term.
template <class Scalar>
Jet<Scalar> log_one_plus_nilpotent(const Jet<Scalar>& u) {
  using Traits = ScalarTraits<Scalar>;
  Jet<Scalar> sum(u.shared_basis());
  Jet<Scalar> power = Jet<Scalar>::constant(u.variables(), u.max_degree(), Traits::one());
  for (int k = 1; k <= u.max_degree(); ++k) {
    power *= u;
    const Scalar weight = Traits::from_int(k % 2 == 1 ? 1 : -1) / Traits::from_int(k);
    sum += power * weight;
  }
  return sum;
}

}  // namespace

Jet<Rational> exp_series(const Jet<Rational>& g) {
  if (sgn(g.constant_term()) != 0)
    throw DomainError("exact exp_series needs a zero constant term (exp of a nonzero rational is irrational)");
  return exp_nilpotent(g);
}

Jet<Complex> exp_series(const Jet<Complex>& g) {
  Jet<Complex> v = g;
  const Complex c = g.constant_term();
  v[0] = 0.0;
  return exp_nilpotent(v) * std::exp(c);
}

Jet<Rational> log_series(const Jet<Rational>& f) {
  if (f.constant_term() != 1) throw DomainError("exact log_series needs f(0) = 1");
  Jet<Rational> u = f;
  u[0] = 0;
  return log_one_plus_nilpotent(u);
}

Jet<Complex> log_series(const Jet<Complex>& f) {
  const Complex c = f.constant_term();
  if (c == Complex{}) throw DomainError("log_series needs f(0) != 0");
  Jet<Complex> u = f * (1.0 / c);
  u[0] = 0.0;
  Jet<Complex> out = log_one_plus_nilpotent(u);
  out[0] = std::log(c);
  return out;
}

Jet<Rational> real_pow(const Jet<Rational>& f, const Rational& t) {
  if (f.constant_term() != 1) throw DomainError("exact real_pow needs f(0) = 1");
  return exp_series(log_series(f) * t);
}

Jet<Complex> real_pow(const Jet<Complex>& f, double t) {
  const Complex c = f.constant_term();
  if (c == Complex{}) throw DomainError("real_pow needs f(0) != 0");
  Jet<Complex> g = log_series(f * (1.0 / c));
  // Principal branch at the origin: c^t = exp(t log c).
  return exp_series(g * Complex(t, 0.0)) * std::exp(t * std::log(c));
}

namespace {

Rational draw_small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  const int p = num(rng);
  const int q = den(rng);
  Rational out(p, q);
  out.canonicalize();
  return out;
}

}  // namespace

template <>
Jet<Rational> random_jet<Rational>(int n, int max_degree, std::uint64_t seed, ConstantTerm constraint) {
  std::mt19937_64 rng(seed);
  Jet<Rational> out(n, max_degree);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = draw_small_rational(rng);
  if (constraint == ConstantTerm::unit) out[0] = 1;
  return out;
}

template <>
Jet<Complex> random_jet<Complex>(int n, int max_degree, std::uint64_t seed, ConstantTerm constraint) {
  std::mt19937_64 rng(seed);
  Jet<Complex> out(n, max_degree);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double re = to_double(draw_small_rational(rng));
    const double im = to_double(draw_small_rational(rng));
    out[i] = {re, im};
  }
  if (constraint == ConstantTerm::unit) out[0] = 1.0;
  return out;
}

}  // namespace radial_jet
