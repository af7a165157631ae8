#include "radial_jet/identities.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace radial_jet {

namespace {

using Clock = std::chrono::steady_clock;

template <class Scalar>
Scalar lift(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>)
    return q;
  else
    return Complex(to_double(q), 0.0);
}

template <class Scalar>
Scalar lift(const Integer& z) {
  return lift<Scalar>(Rational(z));
}

template <class Scalar>
Jet<Scalar> one_like(const Jet<Scalar>& f) {
  return Jet<Scalar>::constant(f.variables(), f.max_degree(), ScalarTraits<Scalar>::one());
}

/// f^0, f^1, ..., f^count.
template <class Scalar>
std::vector<Jet<Scalar>> powers(const Jet<Scalar>& f, int count) {
  std::vector<Jet<Scalar>> out{one_like(f)};
  for (int k = 1; k <= count; ++k) out.push_back(out.back() * f);
  return out;
}

/// R^0 f, R^1 f, ..., R^count f.
template <class Scalar>
std::vector<Jet<Scalar>> radial_family(const Jet<Scalar>& f, int count) {
  std::vector<Jet<Scalar>> out{f};
  for (int j = 1; j <= count; ++j) out.push_back(radial_power(out.back(), 1));
  return out;
}

template <class Scalar>
Jet<Scalar> leibniz(const Jet<Scalar>& g, const Jet<Scalar>& h, int m) {
  g.require_same_shape(h);
  const auto rg = radial_family(g, m);
  const auto rh = radial_family(h, m);
  Jet<Scalar> sum(g.shared_basis());
  for (int nu = 1; nu <= m; ++nu)
    sum += rg[static_cast<std::size_t>(nu)] * rh[static_cast<std::size_t>(m - nu)] * lift<Scalar>(binomial(m, nu));
  return sum;
}

template <class Scalar>
Jet<Scalar> direct_defect(const Jet<Scalar>& g, const Jet<Scalar>& h, int m) {
  g.require_same_shape(h);
  return radial_power(g * h, m) - g * radial_power(h, m);
}

/// R^m(f^k h) - f^k R^m h for k = 0..m (entry 0 is zero).
template <class Scalar>
std::vector<Jet<Scalar>> power_defects(const std::vector<Jet<Scalar>>& f_powers, const Jet<Scalar>& h, int m) {
  std::vector<Jet<Scalar>> out;
  const auto rh = radial_power(h, m);
  for (const auto& fk : f_powers) out.push_back(radial_power(fk * h, m) - fk * rh);
  return out;
}

/// (R^1 f, ..., R^nu f)^alpha with radial[j] = R^j f.
template <class Scalar>
Jet<Scalar> radial_monomial(const std::vector<Jet<Scalar>>& radial, const MultiIndex& alpha) {
  Jet<Scalar> out = one_like(radial.front());
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (int e = 0; e < alpha[j]; ++e) out *= radial[j + 1];
  return out;
}

template <class Scalar>
Jet<Scalar> x_operator_impl(const Jet<Scalar>& f, const Jet<Scalar>& h, int m, int i) {
  f.require_same_shape(h);
  if (m < 1 || i < 1 || i > m)
    throw DomainError("x_operator needs 1 <= i <= m (got i=" + std::to_string(i) + ", m=" + std::to_string(m) + ")");
  const auto rf = radial_family(f, m);
  const auto rh = radial_family(h, m);
  Jet<Scalar> sum(f.shared_basis());
  for (int nu = i; nu <= m; ++nu) {
    Jet<Scalar> inner(f.shared_basis());
    for (const auto& entry : fdb_table(nu).stratum(i)) inner += radial_monomial(rf, entry.alpha) * lift<Scalar>(entry.b);
    sum += inner * rh[static_cast<std::size_t>(m - nu)] * lift<Scalar>(binomial(m, nu));
  }
  return int_pow(f, -i) * sum;
}

/// sum_k c_{k,r} f^{-k} sum_nu C(m,nu) (R^nu f^k)(R^{m-nu} h), for every r.
template <class Scalar>
std::vector<Jet<Scalar>> c_weighted_sums(const Jet<Scalar>& f, const Jet<Scalar>& h, int m) {
  const CTable c = c_table(m);
  const auto fp = powers(f, m);
  const auto fi = powers(inverse(f), m);
  std::vector<Jet<Scalar>> inner;
  for (int k = 0; k <= m; ++k) inner.push_back(k == 0 ? Jet<Scalar>(f.shared_basis()) : fi[static_cast<std::size_t>(k)] * leibniz(fp[static_cast<std::size_t>(k)], h, m));
  std::vector<Jet<Scalar>> out{Jet<Scalar>(f.shared_basis())};
  for (int r = 1; r <= m; ++r) {
    Jet<Scalar> sum(f.shared_basis());
    for (int k = 1; k <= r; ++k) sum += inner[static_cast<std::size_t>(k)] * lift<Scalar>(c(k, r));
    out.push_back(std::move(sum));
  }
  return out;
}

template <class Scalar>
VerificationReport start_report(std::string_view id, const Jet<Scalar>& f, int m) {
  VerificationReport report;
  report.id = std::string(id);
  report.n = f.variables();
  report.D = f.max_degree();
  report.m = m;
  report.regime = ScalarTraits<Scalar>::regime;
  return report;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class Scalar>
void finish_report(VerificationReport& report, const Jet<Scalar>& lhs, const Jet<Scalar>& rhs, double tolerance,
                   Clock::time_point started) {
  const auto residual = max_abs_difference(lhs, rhs);
  if constexpr (std::is_same_v<Scalar, Rational>) {
    report.exact_zero = sgn(residual) == 0;
    report.residual = report.exact_zero ? "0" : format_rational(residual);
    report.residual_value = to_double(residual);
    report.pass = report.exact_zero;
  } else {
    double scale = 1.0;
    for (const auto& c : lhs.coefficients()) scale = std::max(scale, std::abs(c));
    for (const auto& c : rhs.coefficients()) scale = std::max(scale, std::abs(c));
    const double scaled = residual / scale;
    report.exact_zero = residual == 0.0;
    report.residual = format_double(scaled);
    report.residual_value = scaled;
    report.pass = scaled <= tolerance;
  }
  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
}

void require_unit_constant(const ExactJet& f, const char* what) {
  if (f.constant_term() != 1) throw DomainError(std::string(what) + " in the exact regime needs f(0) = 1");
}

template <class Scalar>
void require_nonzero_constant(const Jet<Scalar>& f, const char* what) {
  if (ScalarTraits<Scalar>::is_zero(f.constant_term())) throw DomainError(std::string(what) + " needs f(0) != 0");
}

// Shared bodies; f_t is f^t computed by the caller in the jet's regime.
template <class Scalar>
VerificationReport power_identity(const Jet<Scalar>& f, const Jet<Scalar>& h, int m, const Jet<Scalar>& f_t,
                                  const std::vector<Scalar>& rho, double tolerance) {
  const auto started = Clock::now();
  auto report = start_report("eq1.3", f, m);
  const auto lhs = direct_defect(f_t, h, m);
  const auto defects = power_defects(powers(f, m), h, m);
  const auto inv = inverse(f);
  Jet<Scalar> inv_power = one_like(f);
  Jet<Scalar> sum(f.shared_basis());
  for (int k = 1; k <= m; ++k) {
    inv_power *= inv;
    sum += inv_power * defects[static_cast<std::size_t>(k)] * rho[static_cast<std::size_t>(k)];
  }
  finish_report(report, lhs, f_t * sum, tolerance, started);
  return report;
}

template <class Scalar>
VerificationReport log_identity(const Jet<Scalar>& f, const Jet<Scalar>& h, int m, const Jet<Scalar>& log_f,
                                double tolerance) {
  const auto started = Clock::now();
  auto report = start_report("eq1.4", f, m);
  const auto a = a_coefficients(m);
  const auto lhs = direct_defect(log_f, h, m);
  const auto defects = power_defects(powers(f, m), h, m);
  const auto inv = inverse(f);
  Jet<Scalar> inv_power = one_like(f);
  Jet<Scalar> rhs(f.shared_basis());
  for (int k = 1; k <= m; ++k) {
    inv_power *= inv;
    rhs += inv_power * defects[static_cast<std::size_t>(k)] * lift<Scalar>(a.a[static_cast<std::size_t>(k)]);
  }
  finish_report(report, lhs, rhs, tolerance, started);
  return report;
}

template <class Scalar>
Jet<Scalar> reciprocal_rhs(const Jet<Scalar>& f, const Jet<Scalar>& h, int m) {
  const auto fp = powers(f, m);
  const auto fi = powers(inverse(f), m + 1);
  Jet<Scalar> rhs(f.shared_basis());
  for (int k = 0; k <= m; ++k) {
    const int sign = (m - k) % 2 == 0 ? 1 : -1;
    const Scalar weight = lift<Scalar>(Rational(binomial(m + 1, k) * sign));
    rhs += fi[static_cast<std::size_t>(m - k + 1)] * radial_power(fp[static_cast<std::size_t>(m - k)] * h, m) * weight;
  }
  return rhs;
}

template <class Scalar>
VerificationReport reciprocal_identity(const Jet<Scalar>& f, const Jet<Scalar>& h, int m, double tolerance) {
  const auto started = Clock::now();
  require_nonzero_constant(f, "the reciprocal identity");
  f.require_same_shape(h);
  auto report = start_report("eq1.2", f, m);
  const auto lhs = radial_power(inverse(f) * h, m);
  finish_report(report, lhs, reciprocal_rhs(f, h, m), tolerance, started);
  return report;
}

template <class Scalar>
VerificationReport x_operator_identity(const Jet<Scalar>& f, const Jet<Scalar>& h, int m, int r, double tolerance) {
  const auto started = Clock::now();
  require_nonzero_constant(f, "the X-operator identity");
  if (r < 1 || r > m) throw DomainError("x-operator identity needs 1 <= r <= m");
  auto report = start_report("eq3.4", f, m);
  report.r = r;
  const auto sums = c_weighted_sums(f, h, m);
  finish_report(report, sums[static_cast<std::size_t>(r)], x_operator_impl(f, h, m, r), tolerance, started);
  return report;
}

template <class Scalar>
VerificationReport fdb_power_identity(const Jet<Scalar>& f, int k, int nu, double tolerance) {
  const auto started = Clock::now();
  if (k < 1 || nu < 1) throw DomainError("fdb power expansion needs k >= 1 and nu >= 1");
  auto report = start_report("fdb", f, 0);
  report.k = k;
  report.nu = nu;
  const auto lhs = radial_power(int_pow(f, k), nu);
  const auto rf = radial_family(f, nu);
  const auto fp = powers(f, k);
  const auto table = fdb_table(nu);
  Jet<Scalar> rhs(f.shared_basis());
  for (int i = 1; i <= std::min(k, nu); ++i) {
    Jet<Scalar> inner(f.shared_basis());
    for (const auto& entry : table.stratum(i)) inner += radial_monomial(rf, entry.alpha) * lift<Scalar>(entry.b);
    rhs += fp[static_cast<std::size_t>(k - i)] * inner * lift<Scalar>(falling_factorial(k, i));
  }
  finish_report(report, lhs, rhs, tolerance, started);
  return report;
}

template <class Scalar>
Jet<Scalar> commutator_defect_impl(const Jet<Scalar>& g, const Jet<Scalar>& h, int m) {
  if (m < 0) throw DomainError("commutator_defect needs m >= 0");
  auto direct = direct_defect(g, h, m);
  const auto by_leibniz = leibniz(g, h, m);
  const auto diff = max_abs_difference(direct, by_leibniz);
  bool agree = false;
  if constexpr (std::is_same_v<Scalar, Rational>) {
    agree = sgn(diff) == 0;
  } else {
    double scale = 1.0;
    for (const auto& c : direct.coefficients()) scale = std::max(scale, std::abs(c));
    agree = diff <= 1e-9 * scale;
  }
  if (!agree) throw InternalError("commutator_defect: direct and Leibniz forms disagree");
  return direct;
}

}  // namespace

ExactJet commutator_defect(const ExactJet& g, const ExactJet& h, int m) { return commutator_defect_impl(g, h, m); }
FloatJet commutator_defect(const FloatJet& g, const FloatJet& h, int m) { return commutator_defect_impl(g, h, m); }
ExactJet leibniz_defect(const ExactJet& g, const ExactJet& h, int m) { return leibniz(g, h, m); }
FloatJet leibniz_defect(const FloatJet& g, const FloatJet& h, int m) { return leibniz(g, h, m); }

VerificationReport verify_power_identity(const ExactJet& f, const ExactJet& h, int m, const Rational& t) {
  require_unit_constant(f, "the power identity");
  f.require_same_shape(h);
  const auto rho = rho_coefficients(m, t);
  auto report = power_identity(f, h, m, real_pow(f, t), rho.rho, 0.0);
  report.t = format_rational(t);
  return report;
}

VerificationReport verify_power_identity(const FloatJet& f, const FloatJet& h, int m, double t, double tolerance) {
  require_nonzero_constant(f, "the power identity");
  f.require_same_shape(h);
  std::vector<Complex> rho;
  for (double v : rho_coefficients_float(m, t)) rho.emplace_back(v, 0.0);
  auto report = power_identity(f, h, m, real_pow(f, t), rho, tolerance);
  report.t = format_double(t);
  return report;
}

VerificationReport verify_log_identity(const ExactJet& f, const ExactJet& h, int m) {
  require_unit_constant(f, "the log identity");
  f.require_same_shape(h);
  return log_identity(f, h, m, log_series(f), 0.0);
}

VerificationReport verify_log_identity(const FloatJet& f, const FloatJet& h, int m, double tolerance) {
  require_nonzero_constant(f, "the log identity");
  f.require_same_shape(h);
  return log_identity(f, h, m, log_series(f), tolerance);
}

VerificationReport verify_reciprocal_identity(const ExactJet& f, const ExactJet& h, int m) {
  return reciprocal_identity(f, h, m, 0.0);
}

VerificationReport verify_reciprocal_identity(const FloatJet& f, const FloatJet& h, int m, double tolerance) {
  return reciprocal_identity(f, h, m, tolerance);
}

ExactJet reciprocal_formula(const ExactJet& f, const ExactJet& h, int m) {
  require_nonzero_constant(f, "the reciprocal formula");
  f.require_same_shape(h);
  return reciprocal_rhs(f, h, m);
}

ExactJet power_formula(const ExactJet& f, const ExactJet& h, int m, const Rational& t) {
  require_unit_constant(f, "the power formula");
  f.require_same_shape(h);
  const auto rho = rho_coefficients(m, t);
  const auto f_t = real_pow(f, t);
  const auto defects = power_defects(powers(f, m), h, m);
  const auto inv = inverse(f);
  ExactJet inv_power = one_like(f);
  ExactJet sum(f.shared_basis());
  for (int k = 1; k <= m; ++k) {
    inv_power *= inv;
    sum += inv_power * defects[static_cast<std::size_t>(k)] * rho.rho[static_cast<std::size_t>(k)];
  }
  return f_t * radial_power(h, m) + f_t * sum;
}

VerificationReport verify_reciprocal_consistency(const ExactJet& f, const ExactJet& h, int m) {
  const auto started = Clock::now();
  require_unit_constant(f, "the reciprocal consistency check");
  auto report = start_report("triangle", f, m);
  report.t = format_rational(Rational(-1));
  const auto direct = radial_power(int_pow(f, -1) * h, m);
  const auto by_reciprocal = reciprocal_formula(f, h, m);
  const auto by_power = power_formula(f, h, m, Rational(-1));
  const Rational worst = std::max({max_abs_difference(direct, by_reciprocal), max_abs_difference(direct, by_power),
                                   max_abs_difference(by_reciprocal, by_power)});
  report.exact_zero = sgn(worst) == 0;
  report.residual = report.exact_zero ? "0" : format_rational(worst);
  report.residual_value = to_double(worst);
  report.pass = report.exact_zero;
  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return report;
}

ExactJet x_operator(const ExactJet& f, const ExactJet& h, int m, int i) {
  require_nonzero_constant(f, "x_operator");
  return x_operator_impl(f, h, m, i);
}

FloatJet x_operator(const FloatJet& f, const FloatJet& h, int m, int i) {
  require_nonzero_constant(f, "x_operator");
  return x_operator_impl(f, h, m, i);
}

VerificationReport verify_x_operator_identity(const ExactJet& f, const ExactJet& h, int m, int r) {
  return x_operator_identity(f, h, m, r, 0.0);
}

VerificationReport verify_x_operator_identity(const FloatJet& f, const FloatJet& h, int m, int r, double tolerance) {
  return x_operator_identity(f, h, m, r, tolerance);
}

VerificationReport verify_fdb_power(const ExactJet& f, int k, int nu) { return fdb_power_identity(f, k, nu, 0.0); }

VerificationReport verify_fdb_power(const FloatJet& f, int k, int nu, double tolerance) {
  return fdb_power_identity(f, k, nu, tolerance);
}

VerificationReport verify_power_expansion(const ExactJet& f, const ExactJet& h, int m, const Rational& t) {
  const auto started = Clock::now();
  require_unit_constant(f, "the power expansion");
  auto report = start_report("eq3.6", f, m);
  report.t = format_rational(t);
  const auto coeffs = rho_coefficients(m, t);
  const auto f_t = real_pow(f, t);
  const auto sums = c_weighted_sums(f, h, m);
  ExactJet rhs(f.shared_basis());
  for (int r = 1; r <= m; ++r) rhs += sums[static_cast<std::size_t>(r)] * coeffs.u[static_cast<std::size_t>(r)];
  finish_report(report, leibniz(f_t, h, m), f_t * rhs, 0.0, started);
  return report;
}

VerificationReport verify_power_x_expansion(const ExactJet& f, const ExactJet& h, int m, const Rational& t) {
  const auto started = Clock::now();
  require_unit_constant(f, "the power expansion");
  auto report = start_report("eq3.7", f, m);
  report.t = format_rational(t);
  const auto coeffs = rho_coefficients(m, t);
  const auto f_t = real_pow(f, t);
  ExactJet rhs(f.shared_basis());
  for (int r = 1; r <= m; ++r) rhs += x_operator_impl(f, h, m, r) * coeffs.u[static_cast<std::size_t>(r)];
  finish_report(report, leibniz(f_t, h, m), f_t * rhs, 0.0, started);
  return report;
}

VerificationReport verify_log_expansion(const ExactJet& f, const ExactJet& h, int m) {
  const auto started = Clock::now();
  require_unit_constant(f, "the log expansion");
  auto report = start_report("eq3.9", f, m);
  const auto coeffs = a_coefficients(m);
  const auto sums = c_weighted_sums(f, h, m);
  ExactJet rhs(f.shared_basis());
  for (int r = 1; r <= m; ++r) rhs += sums[static_cast<std::size_t>(r)] * coeffs.v[static_cast<std::size_t>(r)];
  finish_report(report, leibniz(log_series(f), h, m), rhs, 0.0, started);
  return report;
}

VerificationReport verify_log_x_expansion(const ExactJet& f, const ExactJet& h, int m) {
  const auto started = Clock::now();
  require_unit_constant(f, "the log expansion");
  auto report = start_report("eq3.10", f, m);
  const auto coeffs = a_coefficients(m);
  ExactJet rhs(f.shared_basis());
  for (int r = 1; r <= m; ++r) rhs += x_operator_impl(f, h, m, r) * coeffs.v[static_cast<std::size_t>(r)];
  finish_report(report, leibniz(log_series(f), h, m), rhs, 0.0, started);
  return report;
}

namespace {

struct WireEntry {
  IdentityId id;
  std::string_view name;
  std::string_view alias;
};

constexpr WireEntry kWireNames[] = {
    {IdentityId::power, "eq1.3", "power"},
    {IdentityId::log, "eq1.4", "log"},
    {IdentityId::reciprocal, "eq1.2", "reciprocal"},
    {IdentityId::reciprocal_triangle, "triangle", "reciprocal-triangle"},
    {IdentityId::x_operator, "eq3.4", "x-operator"},
    {IdentityId::power_expansion, "eq3.6", "power-expansion"},
    {IdentityId::power_x_expansion, "eq3.7", "power-x-expansion"},
    {IdentityId::log_expansion, "eq3.9", "log-expansion"},
    {IdentityId::log_x_expansion, "eq3.10", "log-x-expansion"},
    {IdentityId::fdb_power, "fdb", "fdb-power"},
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) { return splitmix64(splitmix64(seed) ^ stream); }

bool allows_general_constant(IdentityId id) {
  return id == IdentityId::reciprocal || id == IdentityId::x_operator || id == IdentityId::fdb_power;
}

Rational nonzero_rational(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::bernoulli_distribution negative;
  Rational c(num(rng), den(rng));
  c.canonicalize();
  return negative(rng) ? Rational(-c) : c;
}

void validate_spec(const TrialSpec& spec) {
  if (spec.n < 1) throw DomainError("trials need n >= 1");
  if (spec.D < 0) throw DomainError("trials need D >= 0");
  if (spec.id == IdentityId::fdb_power) {
    if (spec.k < 1 || spec.nu < 1) throw DomainError("fdb trials need k >= 1 and nu >= 1");
  } else if (spec.m < 1) {
    throw DomainError("trials need m >= 1");
  }
  if (spec.id == IdentityId::x_operator && (spec.r < 0 || spec.r > spec.m))
    throw DomainError("x-operator trials need 0 <= r <= m");
}

template <class Report>
void keep_worst(VerificationReport& worst, const Report& next) {
  if (!next.pass || next.residual_value > worst.residual_value || (worst.pass && !next.pass)) {
    const bool pass = worst.pass && next.pass;
    const double elapsed = worst.elapsed_seconds + next.elapsed_seconds;
    worst = next;
    worst.pass = pass;
    worst.elapsed_seconds = elapsed;
  } else {
    worst.elapsed_seconds += next.elapsed_seconds;
  }
}

VerificationReport run_exact(const TrialSpec& spec, const TrialInputs& in) {
  switch (spec.id) {
    case IdentityId::power:
      return verify_power_identity(in.f, in.h, spec.m, spec.t);
    case IdentityId::log:
      return verify_log_identity(in.f, in.h, spec.m);
    case IdentityId::reciprocal:
      return verify_reciprocal_identity(in.f, in.h, spec.m);
    case IdentityId::reciprocal_triangle:
      return verify_reciprocal_consistency(in.f, in.h, spec.m);
    case IdentityId::x_operator: {
      if (spec.r != 0) return verify_x_operator_identity(in.f, in.h, spec.m, spec.r);
      auto worst = verify_x_operator_identity(in.f, in.h, spec.m, 1);
      for (int r = 2; r <= spec.m; ++r) keep_worst(worst, verify_x_operator_identity(in.f, in.h, spec.m, r));
      worst.r.reset();
      return worst;
    }
    case IdentityId::power_expansion:
      return verify_power_expansion(in.f, in.h, spec.m, spec.t);
    case IdentityId::power_x_expansion:
      return verify_power_x_expansion(in.f, in.h, spec.m, spec.t);
    case IdentityId::log_expansion:
      return verify_log_expansion(in.f, in.h, spec.m);
    case IdentityId::log_x_expansion:
      return verify_log_x_expansion(in.f, in.h, spec.m);
    case IdentityId::fdb_power:
      return verify_fdb_power(in.f, spec.k, spec.nu);
  }
  throw InternalError("unknown identity id");
}

VerificationReport run_float(const TrialSpec& spec, const FloatTrialInputs& in) {
  const double tol = spec.tolerance;
  switch (spec.id) {
    case IdentityId::power: {
      auto report = verify_power_identity(in.f, in.h, spec.m, to_double(spec.t), tol);
      report.t = format_rational(spec.t);
      return report;
    }
    case IdentityId::log:
      return verify_log_identity(in.f, in.h, spec.m, tol);
    case IdentityId::reciprocal:
      return verify_reciprocal_identity(in.f, in.h, spec.m, tol);
    case IdentityId::x_operator: {
      if (spec.r != 0) return verify_x_operator_identity(in.f, in.h, spec.m, spec.r, tol);
      auto worst = verify_x_operator_identity(in.f, in.h, spec.m, 1, tol);
      for (int r = 2; r <= spec.m; ++r) keep_worst(worst, verify_x_operator_identity(in.f, in.h, spec.m, r, tol));
      worst.r.reset();
      return worst;
    }
    case IdentityId::fdb_power:
      return verify_fdb_power(in.f, spec.k, spec.nu, tol);
    default:
      throw DomainError(std::string(wire_name(spec.id)) + " is only available in the exact regime");
  }
}

}  // namespace

std::string_view wire_name(IdentityId id) {
  for (const auto& e : kWireNames)
    if (e.id == id) return e.name;
  throw InternalError("unknown identity id");
}

std::optional<IdentityId> parse_identity_id(std::string_view name) {
  for (const auto& e : kWireNames)
    if (e.name == name || e.alias == name) return e.id;
  return std::nullopt;
}

std::vector<IdentityId> all_identity_ids() {
  std::vector<IdentityId> out;
  for (const auto& e : kWireNames) out.push_back(e.id);
  return out;
}

TrialInputs exact_trial_inputs(const TrialSpec& spec, std::uint64_t seed) {
  auto f = random_jet<Rational>(spec.n, spec.D, stream_seed(seed, 0), ConstantTerm::unit);
  if (allows_general_constant(spec.id)) f *= nonzero_rational(stream_seed(seed, 2));
  auto h = random_jet<Rational>(spec.n, spec.D, stream_seed(seed, 1), ConstantTerm::free);
  return {std::move(f), std::move(h)};
}

FloatTrialInputs float_trial_inputs(const TrialSpec& spec, std::uint64_t seed) {
  auto f = random_jet<Complex>(spec.n, spec.D, stream_seed(seed, 0), ConstantTerm::unit);
  const Rational re = nonzero_rational(stream_seed(seed, 2));
  const Rational im = nonzero_rational(stream_seed(seed, 3));
  f *= Complex(to_double(re), to_double(im));
  auto h = random_jet<Complex>(spec.n, spec.D, stream_seed(seed, 1), ConstantTerm::free);
  return {std::move(f), std::move(h)};
}

VerificationReport run_trial(const TrialSpec& spec, std::uint64_t seed) {
  validate_spec(spec);
  VerificationReport report = spec.regime == Regime::exact ? run_exact(spec, exact_trial_inputs(spec, seed))
                                                           : run_float(spec, float_trial_inputs(spec, seed));
  report.id = std::string(wire_name(spec.id));
  report.seed = seed;
  if (spec.id == IdentityId::power || spec.id == IdentityId::power_expansion ||
      spec.id == IdentityId::power_x_expansion)
    report.t = format_rational(spec.t);
  return report;
}

unsigned default_thread_count() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RADIAL_JET_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) threads = std::min(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

std::vector<VerificationReport> run_trials(const TrialSpec& spec, std::uint64_t first_seed, int trials,
                                           unsigned threads) {
  validate_spec(spec);
  if (trials <= 0) return {};
  std::vector<VerificationReport> reports(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      try {
        reports[static_cast<std::size_t>(i)] = run_trial(spec, first_seed + static_cast<std::uint64_t>(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };
  const unsigned count = std::clamp(threads, 1u, static_cast<unsigned>(trials));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

namespace {

double sup_power(const ModulusRange& range, double exponent, double headroom) {
  if (exponent == 0.0) return 1.0;
  return exponent > 0 ? std::pow(range.max * headroom, exponent) : std::pow(range.min / headroom, exponent);
}

}  // namespace

NormBoundReport norm_bound_demo(const FloatJet& f, const FloatJet& h, int m, double s, BoundMode mode, double t,
                                const NormBoundOptions& options) {
  f.require_same_shape(h);
  validate(BesovDirichlet{f.variables(), m, s});
  if (options.headroom < 1.0) throw DomainError("headroom must be >= 1");
  const int needed = m * std::max(f.degree(), 0) + std::max(h.degree(), 0);
  if (needed > f.max_degree())
    throw ShapeError("norm_bound_demo needs D >= m deg f + deg h = " + std::to_string(needed));

  const ModulusRange range = modulus_range(f, options.sampler);
  if (range.min < options.min_modulus)
    throw DomainError("|f| comes within " + std::to_string(range.min) + " of zero on the sample; |f| >= c fails");

  NormBoundReport report;
  report.mode = mode;
  report.n = f.variables();
  report.m = m;
  report.D = f.max_degree();
  report.s = s;
  report.t = mode == BoundMode::power ? t : 0.0;
  report.min_modulus = range.min;

  const auto fp = powers(f, m);
  std::vector<double> radial_part;  // ||R^m(f^k h)||_s
  std::vector<double> full_part;    // ||f^k h||_{m,s}
  for (const auto& fk : fp) {
    const auto product = fk * h;
    radial_part.push_back(std::sqrt(bergman_norm_sq(radial_power(product, m), s)));
    full_part.push_back(std::sqrt(hms_norm_sq(product, m, s)));
  }

  FloatJet transformed(f.shared_basis());
  if (mode == BoundMode::power) {
    transformed = real_pow(f, t);
    const auto rho = rho_coefficients_float(m, t);
    for (int k = 0; k <= m; ++k) {
      const double factor = std::abs(rho[static_cast<std::size_t>(k)]) * sup_power(range, t - k, options.headroom);
      report.middle += factor * radial_part[static_cast<std::size_t>(k)];
      report.rhs += factor * full_part[static_cast<std::size_t>(k)];
    }
  } else {
    transformed = log_series(f);
    const auto a = a_coefficients(m);
    const double sup_log = sup_abs_log_estimate(f, options.sampler) * options.headroom;
    const double c = range.min / options.headroom;
    report.middle = sup_log * std::sqrt(bergman_norm_sq(radial_power(h, m), s));
    report.rhs = sup_log * std::sqrt(hms_norm_sq(h, m, s));
    for (int k = 0; k <= m; ++k) {
      const double factor = std::abs(to_double(a.a[static_cast<std::size_t>(k)])) * std::pow(c, -k);
      report.middle += factor * radial_part[static_cast<std::size_t>(k)];
      report.rhs += factor * full_part[static_cast<std::size_t>(k)];
    }
  }
  const auto product = transformed * h;
  report.lhs = std::sqrt(bergman_norm_sq(radial_power(product, m), s));
  report.multiplier_lhs = std::sqrt(hms_norm_sq(product, m, s));
  report.multiplier_rhs = std::abs(transformed.constant_term() * h.constant_term()) + report.lhs;
  report.slack = report.rhs - report.lhs;

  constexpr double kRoundoff = 1e-12;
  const auto le = [](double a, double b) { return a <= b * (1.0 + kRoundoff) + kRoundoff; };
  report.pass = le(report.lhs, report.middle) && le(report.middle, report.rhs) &&
                le(report.multiplier_lhs, report.multiplier_rhs);
  return report;
}

}  // namespace radial_jet
