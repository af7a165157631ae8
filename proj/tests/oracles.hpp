#pragma once

// Independent reference computations used only by the test suites. Nothing
// here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "radial_jet/multi_index.hpp"
#include "radial_jet/scalar.hpp"

namespace radial_jet::oracle {

/// Classical Faa di Bruno coefficient nu! / prod_j (alpha_j! (j!)^{alpha_j}).
inline Integer fdb_closed_form(const MultiIndex& alpha) {
  Integer nu_factorial = 1;
  int nu = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) nu += static_cast<int>(j + 1) * alpha[j];
  for (int i = 2; i <= nu; ++i) nu_factorial *= i;
  Integer den = 1;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    Integer jf = 1;
    for (std::size_t i = 2; i <= j + 1; ++i) jf *= static_cast<long>(i);
    for (int e = 0; e < alpha[j]; ++e) den *= jf * (e + 1);
  }
  return nu_factorial / den;
}

/// Bell numbers via B_{n+1} = sum_k C(n, k) B_k.
inline std::vector<Integer> bell_numbers(int count) {
  std::vector<Integer> bell{1};
  for (int n = 0; n + 1 < count; ++n) {
    Integer next = 0;
    Integer c = 1;
    for (int k = 0; k <= n; ++k) {
      next += c * bell[static_cast<std::size_t>(k)];
      c = c * (n - k) / (k + 1);
    }
    bell.push_back(next);
  }
  return bell;
}

/// Number of partitions of n into exactly k parts: p(n,k) = p(n-1,k-1) + p(n-k,k).
inline long partitions_into_parts(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n <= 0 || k <= 0 || k > n) return 0;
  return partitions_into_parts(n - 1, k - 1) + partitions_into_parts(n - k, k);
}

/// Pascal's triangle, as an integer matrix-free reference for C(m, k).
inline Integer pascal(int m, int k) {
  std::vector<Integer> row{1};
  for (int i = 1; i <= m; ++i) {
    std::vector<Integer> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row.at(static_cast<std::size_t>(k));
}

/// Monte-Carlo estimate of the normalized-volume integral over the unit ball
/// of C^n of |z^alpha|^2 (1 - |z|^2)^s for a batch of alphas and weights,
/// sharing the same uniform sample. Points are drawn in R^{2n} by the
/// Gaussian-direction / U^{1/2n}-radius method. Both the measure and the
/// weight are invariant under permuting coordinates, so each sample is
/// averaged over all n! relabelings of its coordinates.
inline std::vector<double> monte_carlo_ball_moments(int n, const std::vector<MultiIndex>& alphas,
                                                    const std::vector<double>& exponents, std::size_t samples,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  const std::size_t dim = static_cast<std::size_t>(n);
  int top = 0;
  for (const auto& a : alphas)
    for (std::size_t j = 0; j < dim; ++j) top = std::max(top, a[j]);
  const std::size_t stride = static_cast<std::size_t>(top) + 1;

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<double> acc(alphas.size() * exponents.size(), 0.0);
  std::vector<double> x(2 * dim);
  std::vector<double> powers(dim * stride);  // powers[j*stride + e] = |z_j|^{2e}
  std::vector<double> weights(exponents.size());
  for (std::size_t sample = 0; sample < samples; ++sample) {
    double norm2 = 0;
    for (auto& xi : x) {
      xi = gauss(rng);
      norm2 += xi * xi;
    }
    const double radius = std::pow(unif(rng), 1.0 / static_cast<double>(2 * dim)) / std::sqrt(norm2);
    double r2 = 0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double mod2 = (x[2 * j] * x[2 * j] + x[2 * j + 1] * x[2 * j + 1]) * radius * radius;
      r2 += mod2;
      powers[j * stride] = 1.0;
      for (std::size_t e = 1; e < stride; ++e) powers[j * stride + e] = powers[j * stride + e - 1] * mod2;
    }
    for (std::size_t e = 0; e < exponents.size(); ++e) weights[e] = std::pow(1.0 - r2, exponents[e]);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      double sym = 0;
      for (const auto& p : perms) {
        double v = 1.0;
        for (std::size_t j = 0; j < dim; ++j) v *= powers[p[j] * stride + static_cast<std::size_t>(alphas[a][j])];
        sym += v;
      }
      sym /= static_cast<double>(perms.size());
      for (std::size_t e = 0; e < exponents.size(); ++e) acc[a * exponents.size() + e] += sym * weights[e];
    }
  }
  for (auto& v : acc) v /= static_cast<double>(samples);
  return acc;
}

/// Ball moment by quadrature, independent of the Gamma-function closed form.
/// With r_j = |z_j|^2 the normalized volume is n! dr on the simplex
/// {sum r_j < 1}; writing r = rho * x with x on the unit simplex splits the
/// integral into an adaptive 1-D radial part
///   int_0^1 rho^{|alpha| + n - 1} (1 - rho)^s d rho      (tanh-sinh)
/// and a polynomial simplex part integrated exactly by nested Gauss-Legendre.
inline double quadrature_ball_moment(const MultiIndex& alpha, double s) {
  const int n = static_cast<int>(alpha.size());
  boost::math::quadrature::tanh_sinh<double> radial_rule;
  const double radial = radial_rule.integrate(
      [&](double rho) { return std::pow(rho, alpha.weight() + n - 1) * std::pow(1.0 - rho, s); }, 0.0, 1.0);

  using Gauss = boost::math::quadrature::gauss<double, 12>;
  // Integrate prod_j x_j^{alpha_j} over {x_1..x_{n-1} >= 0, sum <= 1},
  // x_n = 1 - sum.
  auto simplex = [&](auto&& self, std::size_t j, double remaining, double acc) -> double {
    if (j + 1 == alpha.size()) return acc * std::pow(remaining, alpha[j]);
    return Gauss::integrate(
        [&](double x) { return self(self, j + 1, remaining - x, acc * std::pow(x, alpha[j])); }, 0.0, remaining);
  };
  const double angular = simplex(simplex, 0, 1.0, 1.0);
  double n_factorial = 1;
  for (int i = 2; i <= n; ++i) n_factorial *= i;
  return n_factorial * radial * angular;
}

}  // namespace radial_jet::oracle
