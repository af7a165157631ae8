#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radial_jet/coefficients.hpp"
#include "radial_jet/jet.hpp"
#include "radial_jet/spaces.hpp"

namespace radial_jet {

/// Outcome of checking one identity on one pair of jets.
struct VerificationReport {
  std::string id;
  int n = 0;
  int m = 0;
  int D = 0;
  std::optional<std::string> t;
  std::optional<std::uint64_t> seed;
  std::optional<int> r;
  std::optional<int> k;
  std::optional<int> nu;
  Regime regime = Regime::exact;
  /// Max-abs coefficient difference between the two sides: "0" or "p/q"
  /// in the exact regime. In the float regime it is divided by
  /// max(1, largest |coefficient| of either side) and printed as a decimal.
  std::string residual = "0";
  double residual_value = 0.0;
  bool exact_zero = false;
  bool pass = false;
  double elapsed_seconds = 0.0;
};

inline constexpr double kDefaultTolerance = 1e-10;

/// R^m(g h) - g R^m h, computed directly and cross-checked against the
/// Leibniz form sum_{nu=1}^m C(m,nu) (R^nu g)(R^{m-nu} h). Throws
/// InternalError if the two disagree.
ExactJet commutator_defect(const ExactJet& g, const ExactJet& h, int m);
FloatJet commutator_defect(const FloatJet& g, const FloatJet& h, int m);

/// The Leibniz form alone.
ExactJet leibniz_defect(const ExactJet& g, const ExactJet& h, int m);
FloatJet leibniz_defect(const FloatJet& g, const FloatJet& h, int m);

/// R^m(f^t h) - f^t R^m h against f^t sum_k rho_k f^{-k} (R^m(f^k h) - f^k R^m h).
VerificationReport verify_power_identity(const ExactJet& f, const ExactJet& h, int m, const Rational& t);
VerificationReport verify_power_identity(const FloatJet& f, const FloatJet& h, int m, double t,
                                         double tolerance = kDefaultTolerance);

/// R^m((log f) h) - (log f) R^m h against sum_k a_k f^{-k} (R^m(f^k h) - f^k R^m h).
VerificationReport verify_log_identity(const ExactJet& f, const ExactJet& h, int m);
VerificationReport verify_log_identity(const FloatJet& f, const FloatJet& h, int m,
                                       double tolerance = kDefaultTolerance);

/// R^m(h/f) against sum_{k=0}^m (-1)^{m-k} C(m+1,k) f^{-(m-k+1)} R^m(f^{m-k} h).
/// Any nonzero f(0) is allowed.
VerificationReport verify_reciprocal_identity(const ExactJet& f, const ExactJet& h, int m);
VerificationReport verify_reciprocal_identity(const FloatJet& f, const FloatJet& h, int m,
                                              double tolerance = kDefaultTolerance);

/// The right-hand side of the reciprocal formula, as a jet.
ExactJet reciprocal_formula(const ExactJet& f, const ExactJet& h, int m);

/// R^m(f^t h) rebuilt from the power identity:
/// f^t R^m h + f^t sum_k rho_k f^{-k} (R^m(f^k h) - f^k R^m h).
ExactJet power_formula(const ExactJet& f, const ExactJet& h, int m, const Rational& t);

/// Pairwise agreement of three routes to R^m(h/f): direct jet arithmetic,
/// the reciprocal formula, and the power formula at t = -1 (f(0) = 1).
/// The residual is the largest of the three pairwise differences.
VerificationReport verify_reciprocal_consistency(const ExactJet& f, const ExactJet& h, int m);

/// X_{f,i} h = f^{-i} sum_{nu=i}^m C(m,nu) sum_{alpha in A_{nu,i}} b_alpha
///             (Rf, ..., R^nu f)^alpha R^{m-nu} h,   1 <= i <= m.
ExactJet x_operator(const ExactJet& f, const ExactJet& h, int m, int i);
FloatJet x_operator(const FloatJet& f, const FloatJet& h, int m, int i);

/// sum_k c_{k,r} f^{-k} sum_{nu=1}^m C(m,nu) (R^nu f^k)(R^{m-nu} h) against X_{f,r} h.
VerificationReport verify_x_operator_identity(const ExactJet& f, const ExactJet& h, int m, int r);
VerificationReport verify_x_operator_identity(const FloatJet& f, const FloatJet& h, int m, int r,
                                              double tolerance = kDefaultTolerance);

/// R^nu(f^k) against sum_i beta_{i,k} f^{k-i} sum_{alpha in A_{nu,i}} b_alpha (Rf, ..., R^nu f)^alpha.
VerificationReport verify_fdb_power(const ExactJet& f, int k, int nu);
VerificationReport verify_fdb_power(const FloatJet& f, int k, int nu, double tolerance = kDefaultTolerance);

/// Intermediate steps of the power and log identities:
///   "sum": sum_nu C(m,nu)(R^nu F(f))(R^{m-nu} h) against
///          [f^t] sum_r w(r) sum_k c_{k,r} f^{-k} sum_nu C(m,nu)(R^nu f^k)(R^{m-nu} h)
///   "x":   the same left side against [f^t] sum_r w(r) X_{f,r} h
/// with F = x^t, w = u (power) or F = log, w = v (log).
VerificationReport verify_power_expansion(const ExactJet& f, const ExactJet& h, int m, const Rational& t);
VerificationReport verify_power_x_expansion(const ExactJet& f, const ExactJet& h, int m, const Rational& t);
VerificationReport verify_log_expansion(const ExactJet& f, const ExactJet& h, int m);
VerificationReport verify_log_x_expansion(const ExactJet& f, const ExactJet& h, int m);

/// Identities that can be swept over seeded random jets.
enum class IdentityId {
  power,                // R^m(f^t h) commutator, rho coefficients
  log,                  // R^m((log f) h) commutator, a coefficients
  reciprocal,           // R^m(h/f) closed formula
  reciprocal_triangle,  // three routes to R^m(h/f)
  x_operator,           // c-table sums against X_{f,r} h
  power_expansion,
  power_x_expansion,
  log_expansion,
  log_x_expansion,
  fdb_power,            // R^nu(f^k) chain-rule expansion
};

/// Wire names used in reports and on the command line ("eq1.3", ...).
std::string_view wire_name(IdentityId id);
std::optional<IdentityId> parse_identity_id(std::string_view name);
std::vector<IdentityId> all_identity_ids();

struct TrialSpec {
  IdentityId id = IdentityId::power;
  int n = 2;
  int m = 3;
  int D = 6;
  Rational t = Rational(1, 2);
  Regime regime = Regime::exact;
  double tolerance = kDefaultTolerance;
  /// x_operator: row r; 0 checks every r in 1..m.
  int r = 0;
  /// fdb_power: exponent k and derivative order nu.
  int k = 2;
  int nu = 2;
};

/// Deterministic inputs for trial `seed`: f with f(0) = 1 (or a random
/// nonzero constant for identities that allow one) and a free h.
struct TrialInputs {
  ExactJet f;
  ExactJet h;
};
TrialInputs exact_trial_inputs(const TrialSpec& spec, std::uint64_t seed);

struct FloatTrialInputs {
  FloatJet f;
  FloatJet h;
};
FloatTrialInputs float_trial_inputs(const TrialSpec& spec, std::uint64_t seed);

/// One trial with inputs derived from `seed`; the report carries the seed.
VerificationReport run_trial(const TrialSpec& spec, std::uint64_t seed);

/// Trials with seeds first_seed, first_seed + 1, ..., evaluated on up to
/// `threads` threads and returned in seed order.
std::vector<VerificationReport> run_trials(const TrialSpec& spec, std::uint64_t first_seed, int trials,
                                           unsigned threads);

/// Thread cap from RADIAL_JET_THREADS, else the hardware concurrency.
unsigned default_thread_count();

enum class BoundMode { power, log };

/// One inequality chain behind the multiplier-norm estimates, evaluated numerically.
///   power: ||R^m(f^t h)||_s <= sum_k |rho_k| sup|f^{t-k}| ||R^m(f^k h)||_s
///                          <= sum_k |rho_k| sup|f^{t-k}| ||f^k h||_{m,s}
///   log:   ||R^m((log f) h)||_s <= sup|log f| ||R^m h||_s
///                                 + sum_k |a_k| c^{-k} ||R^m(f^k h)||_s  <= ...
/// Sup-type quantities are estimated from samples and so are lower bounds;
/// they enter the right-hand sides inflated by `headroom` (the infimum c is
/// divided by it). The left side uses the degree-D truncation of
/// R^m(f^t h), which can only lower it.
struct NormBoundReport {
  BoundMode mode = BoundMode::power;
  int n = 0;
  int m = 0;
  int D = 0;
  double s = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double middle = 0.0;
  double rhs = 0.0;
  /// The multiplier-norm step: ||F h||_{m,s} <= |F(0) h(0)| + ||R^m(F h)||_s,
  /// with F = f^t or log f.
  double multiplier_lhs = 0.0;
  double multiplier_rhs = 0.0;
  double slack = 0.0;
  double min_modulus = 0.0;
  bool pass = false;
};

struct NormBoundOptions {
  SamplerConfig sampler{};
  double headroom = 1.1;
  /// Refuse to run when min |f| over the samples falls below this.
  double min_modulus = 1e-3;
};

/// f and h are polynomials stored in jets of a common cap D; choose D at
/// least m*deg f + deg h so the f^k h terms are exact. Throws DomainError
/// when f comes too close to vanishing on the sample.
NormBoundReport norm_bound_demo(const FloatJet& f, const FloatJet& h, int m, double s, BoundMode mode, double t,
                                const NormBoundOptions& options = {});

}  // namespace radial_jet
