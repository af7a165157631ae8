#include "radial_jet/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace radial_jet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_nonnegative_integer(double s) { return s >= 0 && s == std::floor(s) && s < 1e6; }

double radial_eigen_sq(int degree, int m) { return std::pow(static_cast<double>(degree), 2.0 * m); }

}  // namespace

int variables(const SpaceParams& space) {
  return std::visit([](const auto& p) { return p.n; }, space);
}

void validate(const SpaceParams& space) {
  std::visit(overloaded{
                 [](const DruryArveson& p) {
                   if (p.n < 1) throw DomainError("Drury-Arveson space needs n >= 1");
                 },
                 [](const BesovDirichlet& p) {
                   if (p.n < 1) throw DomainError("H_{m,s} needs n >= 1");
                   if (p.m < 1) throw DomainError("H_{m,s} needs m >= 1");
                   if (!(p.s > -1.0)) throw DomainError("H_{m,s} needs s > -1");
                 },
             },
             space);
}

Rational monomial_weight_exact(const MultiIndex& alpha, int s) {
  if (s < 0) throw DomainError("monomial_weight_exact needs an integer s >= 0");
  const auto n = static_cast<unsigned>(alpha.size());
  Rational w(factorial(n) * factorial(static_cast<unsigned>(s)) * alpha.factorial(),
             factorial(n + static_cast<unsigned>(alpha.weight()) + static_cast<unsigned>(s)));
  w.canonicalize();
  return w;
}

double monomial_weight(const MultiIndex& alpha, double s) {
  if (!(s > -1.0)) throw DomainError("monomial_weight needs s > -1, got " + std::to_string(s));
  if (alpha.size() == 0) throw ShapeError("monomial_weight needs n >= 1");
  if (is_nonnegative_integer(s)) return to_double(monomial_weight_exact(alpha, static_cast<int>(s)));
  const double n = static_cast<double>(alpha.size());
  double log_w = std::lgamma(n + 1.0) + std::lgamma(s + 1.0) - std::lgamma(n + alpha.weight() + s + 1.0);
  for (int a : alpha.entries()) log_w += std::lgamma(a + 1.0);
  return std::exp(log_w);
}

double monomial_norm_sq(const SpaceParams& space, const MultiIndex& alpha) {
  if (alpha.size() != static_cast<std::size_t>(variables(space))) throw ShapeError("monomial arity does not match space");
  return std::visit(overloaded{
                        [&](const DruryArveson&) {
                          Rational q(alpha.factorial(), factorial(static_cast<unsigned>(alpha.weight())));
                          q.canonicalize();
                          return to_double(q);
                        },
                        [&](const BesovDirichlet& p) {
                          if (alpha.weight() == 0) return 1.0;
                          return radial_eigen_sq(alpha.weight(), p.m) * monomial_weight(alpha, p.s);
                        },
                    },
                    space);
}

double bergman_norm_sq(const FloatJet& g, double s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == Complex{}) continue;
    sum += std::norm(g[i]) * monomial_weight(g.basis().monomial(i), s);
  }
  return sum;
}

double hms_norm_sq(const FloatJet& h, int m, double s) {
  validate(BesovDirichlet{h.variables(), m, s});
  return std::norm(h.constant_term()) + bergman_norm_sq(radial_power(h, m), s);
}

Rational hms_norm_sq(const ExactJet& h, int m, int s) {
  validate(BesovDirichlet{h.variables(), m, static_cast<double>(s)});
  if (s < 0) throw DomainError("exact hms_norm_sq needs an integer s >= 0");
  Rational sum = h.constant_term() * h.constant_term();
  const auto rh = radial_power(h, m);
  for (std::size_t i = 1; i < rh.size(); ++i) {
    if (sgn(rh[i]) == 0) continue;
    sum += rh[i] * rh[i] * monomial_weight_exact(rh.basis().monomial(i), s);
  }
  return sum;
}

double da_norm_sq(const FloatJet& h) {
  double sum = 0.0;
  const DruryArveson space{h.variables()};
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != Complex{}) sum += std::norm(h[i]) * monomial_norm_sq(space, h.basis().monomial(i));
  return sum;
}

Rational da_norm_sq(const ExactJet& h) {
  Rational sum = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (sgn(h[i]) == 0) continue;
    const auto& alpha = h.basis().monomial(i);
    Rational w(alpha.factorial(), factorial(static_cast<unsigned>(alpha.weight())));
    w.canonicalize();
    sum += h[i] * h[i] * w;
  }
  return sum;
}

double norm_sq(const SpaceParams& space, const FloatJet& h) {
  validate(space);
  if (variables(space) != h.variables()) throw ShapeError("jet and space have different n");
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != Complex{}) sum += std::norm(h[i]) * monomial_norm_sq(space, h.basis().monomial(i));
  return sum;
}

Complex inner_product(const SpaceParams& space, const FloatJet& a, const FloatJet& b) {
  validate(space);
  a.require_same_shape(b);
  if (variables(space) != a.variables()) throw ShapeError("jet and space have different n");
  Complex sum{};
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += a[i] * std::conj(b[i]) * monomial_norm_sq(space, a.basis().monomial(i));
  return sum;
}

FloatJet kernel_eval(const SpaceParams& space, std::span<const Complex> w, int max_degree) {
  validate(space);
  const int n = variables(space);
  if (w.size() != static_cast<std::size_t>(n)) throw ShapeError("kernel point has wrong dimension");
  double r2 = 0.0;
  for (const auto& c : w) r2 += std::norm(c);
  if (r2 >= 1.0) throw DomainError("kernel_eval needs |w| < 1");

  std::vector<Complex> wbar(w.begin(), w.end());
  for (auto& c : wbar) c = std::conj(c);
  FloatJet out(n, max_degree);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& alpha = out.basis().monomial(i);
    Complex power = 1.0;
    for (std::size_t j = 0; j < wbar.size(); ++j)
      for (int e = 0; e < alpha[j]; ++e) power *= wbar[j];
    out[i] = power / monomial_norm_sq(space, alpha);
  }
  return out;
}

EquivalenceScan equivalence_scan(int n, int m0, int k0, int d_max) {
  if (n < 1 || m0 < 1 || k0 < 0 || 2 * m0 - k0 != n)
    throw DomainError("equivalence_scan needs m0 >= 1, k0 >= 0 and 2*m0 - k0 = n (got n=" + std::to_string(n) +
                      ", m0=" + std::to_string(m0) + ", k0=" + std::to_string(k0) + ")");
  const SpaceParams da = DruryArveson{n};
  const SpaceParams hms = BesovDirichlet{n, m0, static_cast<double>(k0)};
  EquivalenceScan scan{n, m0, k0, {}, 0.0, 0.0};
  for (int d = 1; d <= d_max; ++d) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[0] = d;
    const MultiIndex alpha(std::move(e));
    scan.rows.push_back({d, monomial_norm_sq(da, alpha) / monomial_norm_sq(hms, alpha)});
  }
  if (!scan.rows.empty()) {
    auto [lo, hi] = std::minmax_element(scan.rows.begin(), scan.rows.end(),
                                        [](const ScanRow& a, const ScanRow& b) { return a.ratio < b.ratio; });
    scan.min_ratio = lo->ratio;
    scan.max_ratio = hi->ratio;
  }
  return scan;
}

double compression_multiplier_norm(const FloatJet& f, const SpaceParams& space, int max_degree) {
  validate(space);
  const int n = variables(space);
  if (f.variables() != n) throw ShapeError("multiplier and space have different n");
  if (max_degree < 0) throw DomainError("compression degree must be >= 0");
  const int f_degree = std::max(f.degree(), 0);
  const int out_degree = max_degree + f_degree;
  if (MonomialBasis::count(n, out_degree) > kCompressionCapacity)
    throw ShapeError("compression of degree " + std::to_string(max_degree) + " exceeds capacity " +
                     std::to_string(kCompressionCapacity));

  const auto out_basis = MonomialBasis::get(n, out_degree);
  const std::size_t rows = out_basis->size();
  const std::size_t cols = MonomialBasis::count(n, max_degree);
  std::vector<double> scale(rows);
  for (std::size_t i = 0; i < rows; ++i) scale[i] = std::sqrt(monomial_norm_sq(space, out_basis->monomial(i)));

  // Column beta holds f * z^beta in orthonormalized coordinates.
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const std::size_t f_terms = out_basis->offset(std::min(f_degree, f.max_degree()) + 1);
  for (std::size_t beta = 0; beta < cols; ++beta) {
    for (std::size_t a = 0; a < f_terms; ++a) {
      const Complex coeff = f[f.basis().index_of(out_basis->monomial(a))];
      if (coeff == Complex{}) continue;
      const std::size_t gamma = out_basis->product(a, beta);
      op(static_cast<Eigen::Index>(gamma), static_cast<Eigen::Index>(beta)) += coeff * scale[gamma] / scale[beta];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op);
  return svd.singularValues()(0);
}

namespace {

double radical_inverse(std::uint64_t index, unsigned base) {
  double inv_base = 1.0 / base;
  double factor = inv_base;
  double out = 0.0;
  while (index > 0) {
    out += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv_base;
  }
  return out;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Shifted Halton coordinates of point `index` in `dims` dimensions.
std::vector<double> halton(std::uint64_t index, std::size_t dims, const std::vector<double>& shift) {
  std::vector<double> u(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    const double x = radical_inverse(index + 1, kPrimes[d]) + shift[d];
    u[d] = x - std::floor(x);
  }
  return u;
}

double exponential_variate(double u) { return -std::log1p(-std::min(u, 1.0 - 1e-16)); }

void place_point(int n, const std::vector<double>& u, std::size_t simplex_coords, double radius,
                 std::vector<Complex>& out) {
  // |z_j|^2 proportional to independent exponentials: uniform on the
  // simplex, which is the law of (|z_1|^2, ..., |z_n|^2) for the uniform
  // measure (on the sphere with n coordinates, in the ball with n + 1).
  std::vector<double> e(simplex_coords);
  double total = 0.0;
  for (std::size_t j = 0; j < simplex_coords; ++j) total += e[j] = exponential_variate(u[j]);
  for (int j = 0; j < n; ++j) {
    const double modulus = radius * std::sqrt(e[static_cast<std::size_t>(j)] / total);
    const double phase = 2.0 * std::numbers::pi * u[simplex_coords + static_cast<std::size_t>(j)];
    out.push_back(std::polar(modulus, phase));
  }
}

}  // namespace

std::vector<Complex> sample_points(int n, const SamplerConfig& config) {
  if (n < 1) throw DomainError("sample_points needs n >= 1");
  if (!(config.radius > 0.0 && config.radius < 1.0)) throw DomainError("sampler radius must lie in (0, 1)");
  if (2 * static_cast<std::size_t>(n) + 1 > std::size(kPrimes)) throw DomainError("sampler supports n <= 12");
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unif;
  std::vector<double> shift(2 * static_cast<std::size_t>(n) + 1);
  for (auto& s : shift) s = unif(rng);

  const double ball_radius = std::min(config.ball_radius, config.radius);
  std::vector<Complex> out;
  out.reserve((config.ball_points + config.sphere_points) * static_cast<std::size_t>(n));
  const std::size_t nn = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < config.ball_points; ++i) {
    const auto u = halton(i, 2 * nn + 1, shift);
    place_point(n, u, nn + 1, ball_radius, out);
  }
  std::vector<double> sphere_shift(shift.begin() + 1, shift.end());
  for (std::size_t i = 0; i < config.sphere_points; ++i) {
    const auto u = halton(i, 2 * nn, sphere_shift);
    place_point(n, u, nn, config.radius, out);
  }
  return out;
}

ModulusRange modulus_range(const FloatJet& f, const SamplerConfig& config) {
  const auto points = sample_points(f.variables(), config);
  const std::size_t n = static_cast<std::size_t>(f.variables());
  ModulusRange range{std::abs(f.constant_term()), std::abs(f.constant_term())};
  for (std::size_t i = 0; i + n <= points.size(); i += n) {
    const double v = std::abs(evaluate(f, std::span<const Complex>(points.data() + i, n)));
    range.min = std::min(range.min, v);
    range.max = std::max(range.max, v);
  }
  return range;
}

double sup_norm_estimate(const FloatJet& f, const SamplerConfig& config) { return modulus_range(f, config).max; }

double sup_abs_log_estimate(const FloatJet& f, const SamplerConfig& config) {
  if (f.constant_term() == Complex{}) throw DomainError("log f needs f(0) != 0");
  constexpr int kSteps = 128;
  const auto points = sample_points(f.variables(), config);
  const std::size_t n = static_cast<std::size_t>(f.variables());
  const Complex log0 = std::log(f.constant_term());
  double best = std::abs(log0);
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i + n <= points.size(); i += n) {
    double arg = log0.imag();
    Complex previous = f.constant_term();
    Complex value = previous;
    for (int step = 1; step <= kSteps; ++step) {
      const double scale = static_cast<double>(step) / kSteps;
      for (std::size_t j = 0; j < n; ++j) z[j] = points[i + j] * scale;
      value = evaluate(f, std::span<const Complex>(z));
      if (value == Complex{}) throw DomainError("f vanishes on a sampled segment; log f is undefined");
      arg += std::arg(value / previous);
      previous = value;
    }
    best = std::max(best, std::abs(Complex(std::log(std::abs(value)), arg)));
  }
  return best;
}

}  // namespace radial_jet
