#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "radial_jet/jet.hpp"

namespace radial_jet {

// All integrals use the volume measure on the unit ball of C^n normalized so
// that v(B) = 1. Under that convention
//   w(alpha, s) = int_B |z^alpha|^2 (1 - |z|^2)^s dv
//               = n! Gamma(s+1) alpha! / Gamma(n + |alpha| + s + 1).

/// Drury-Arveson space H^2_n: kernel 1/(1 - <z, w>), ||z^alpha||^2 = alpha!/|alpha|!.
struct DruryArveson {
  int n = 1;
};

/// H_{m,s}: ||h||^2 = |h(0)|^2 + int_B |R^m h|^2 (1-|z|^2)^s dv.
struct BesovDirichlet {
  int n = 1;
  int m = 1;
  double s = 0.0;
};

using SpaceParams = std::variant<DruryArveson, BesovDirichlet>;

int variables(const SpaceParams& space);

/// Throws DomainError unless n >= 1 (and m >= 1, s > -1 for H_{m,s}).
void validate(const SpaceParams& space);

/// w(alpha, s) with n = alpha.size(). Integer s goes through exact
/// factorials, other s through lgamma (relative error around 1e-13).
double monomial_weight(const MultiIndex& alpha, double s);

/// n! s! alpha! / (n + |alpha| + s)! for integer s >= 0.
Rational monomial_weight_exact(const MultiIndex& alpha, int s);

/// ||z^alpha||^2 in the given space.
double monomial_norm_sq(const SpaceParams& space, const MultiIndex& alpha);

/// Weighted Bergman norm squared int_B |g|^2 (1-|z|^2)^s dv.
double bergman_norm_sq(const FloatJet& g, double s);

/// ||h||_{m,s}^2 = |h(0)|^2 + sum_alpha |alpha|^{2m} |h_alpha|^2 w(alpha, s).
double hms_norm_sq(const FloatJet& h, int m, double s);
Rational hms_norm_sq(const ExactJet& h, int m, int s);

/// ||h||^2 in H^2_n: sum_alpha |h_alpha|^2 alpha!/|alpha|!.
double da_norm_sq(const FloatJet& h);
Rational da_norm_sq(const ExactJet& h);

double norm_sq(const SpaceParams& space, const FloatJet& h);

/// <a, b> in the space (linear in a). Monomials are orthogonal.
Complex inner_product(const SpaceParams& space, const FloatJet& a, const FloatJet& b);

/// Degree-D truncation of the reproducing kernel at w: the coefficient of
/// z^alpha is conj(w)^alpha / ||z^alpha||^2. Throws DomainError if |w| >= 1.
FloatJet kernel_eval(const SpaceParams& space, std::span<const Complex> w, int max_degree);

struct ScanRow {
  int degree = 0;
  double ratio = 0.0;
};

/// ||z^alpha||^2_{H^2_n} / ||z^alpha||^2_{m0,k0} for alpha = (d, 0, ..., 0),
/// 1 <= d <= d_max. For these two spaces the ratio depends on alpha only
/// through |alpha|, so one representative per degree is exact.
struct EquivalenceScan {
  int n = 0;
  int m0 = 0;
  int k0 = 0;
  std::vector<ScanRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Throws DomainError unless m0 >= 1, k0 >= 0 and 2 m0 - k0 = n.
EquivalenceScan equivalence_scan(int n, int m0, int k0, int d_max);

/// Upper limit on the number of output monomials in a compression.
inline constexpr std::size_t kCompressionCapacity = 4096;

/// sup ||f h|| / ||h|| over polynomials h of degree <= D: the top singular
/// value of multiplication by f between the weighted coefficient spaces.
/// A lower bound for the multiplier norm, nondecreasing in D.
/// Throws ShapeError when deg f + D needs more than kCompressionCapacity monomials.
double compression_multiplier_norm(const FloatJet& f, const SpaceParams& space, int max_degree);

/// Quasi-random sample of the ball: Halton points with a seeded
/// Cranley-Patterson shift, ball_points uniform in the ball of radius
/// min(ball_radius, radius) and sphere_points uniform on the sphere of radius
/// `radius`.
struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t ball_points = 4096;
  std::size_t sphere_points = 1024;
  double radius = 0.99;
  double ball_radius = 0.95;
};

/// Flattened n-by-count array of points (point i is [i*n, (i+1)*n)).
std::vector<Complex> sample_points(int n, const SamplerConfig& config);

/// max |f| over the sample. A lower bound for the true sup norm.
double sup_norm_estimate(const FloatJet& f, const SamplerConfig& config);

struct ModulusRange {
  double min = 0.0;
  double max = 0.0;
};

/// min and max |f| over the sample.
ModulusRange modulus_range(const FloatJet& f, const SamplerConfig& config);

/// max |log f| over the sample, with the branch of log f continued from
/// the principal value at the origin along the segment [0, z].
double sup_abs_log_estimate(const FloatJet& f, const SamplerConfig& config);

}  // namespace radial_jet
