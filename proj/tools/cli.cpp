#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polynomial.hpp"
#include "radial_jet/identities.hpp"
#include "radial_jet/serialization.hpp"
#include "radial_jet/spaces.hpp"

namespace radial_jet::cli {

namespace {

using Json = nlohmann::ordered_json;

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest round-trip decimal, always with a fractional part ("2.0").
std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

/// Writes `content` to `path` through a temporary file in the same
/// directory, or to `out` when no path is given.
void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ParameterError("cannot write " + tmp.string());
    file << content;
    file.close();
    if (!file) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw ParameterError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ParameterError("cannot rename onto " + path);
  }
}

Rational parse_t(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ParameterError(std::string("--t: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParameterError("cannot read " + path);
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

struct CoeffsOptions {
  int m = 0;
  std::string t;
  int nu = 0;
  std::string out;
};

int run_coeffs(const CoeffsOptions& o, std::ostream& out) {
  std::string doc;
  if (o.nu != 0) {
    if (o.nu < 1) throw ParameterError("--nu must be >= 1");
    doc = fdb_table_json(fdb_table(o.nu));
  } else {
    if (o.m < 1) throw ParameterError("--m must be >= 1");
    std::optional<Rational> t;
    if (!o.t.empty()) t = parse_t(o.t);
    doc = coefficient_table_json(o.m, t);
  }
  emit(doc + "\n", o.out, out);
  return kOk;
}

struct VerifyOptions {
  std::string id = "eq1.3";
  int n = 2;
  int m = 3;
  int D = 6;
  std::string t = "1/2";
  int trials = 20;
  std::uint64_t seed = 0;
  std::string regime = "exact";
  double tol = kDefaultTolerance;
  int r = 0;
  int k = 2;
  int nu = 2;
  std::string out;
};

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const auto id = parse_identity_id(o.id);
  if (!id) throw ParameterError("unknown identity id '" + o.id + "'");
  if (o.trials < 0) throw ParameterError("--trials must be >= 0");
  if (!(o.tol >= 0.0)) throw ParameterError("--tol must be >= 0");
  TrialSpec spec;
  spec.id = *id;
  spec.n = o.n;
  spec.m = o.m;
  spec.D = o.D;
  spec.t = parse_t(o.t);
  spec.regime = o.regime == "exact" ? Regime::exact : Regime::floating;
  spec.tolerance = o.tol;
  spec.r = o.r;
  spec.k = o.k;
  spec.nu = o.nu;

  const auto reports = run_trials(spec, o.seed, o.trials, default_thread_count());
  std::string body;
  int failed = 0;
  for (const auto& report : reports) {
    body += report_json_line(report);
    body += '\n';
    failed += report.pass ? 0 : 1;
  }
  emit(body, o.out, out);
  err << "verify " << wire_name(*id) << ": " << reports.size() << " trials, " << reports.size() - failed
      << " passed, " << failed << " failed\n";
  return failed == 0 ? kOk : kTrialFailed;
}

struct NormsOptions {
  std::string space = "hms";
  std::string quantity = "norm";
  std::string h;
  std::string f;
  int n = 0;
  int D = -1;
  int m = 1;
  double s = 0.0;
  std::string t = "1/2";
  std::string mode = "power";
  std::string sampler;
  std::string format = "text";
  std::string out;
};

Polynomial parse_argument(const std::string& flag, const std::string& text) {
  if (text.empty()) throw ParameterError(flag + " is required here");
  try {
    return parse_polynomial(text);
  } catch (const PolynomialSyntaxError& e) {
    throw ParameterError(flag + ": " + e.what());
  }
}

int run_norms(const NormsOptions& o, std::ostream& out) {
  const bool need_h = o.quantity == "norm" || o.quantity == "bound";
  const bool need_f = o.quantity != "norm";
  std::optional<Polynomial> h;
  std::optional<Polynomial> f;
  if (need_h) h = parse_argument("--h", o.h);
  if (need_f) f = parse_argument("--f", o.f);

  int n = std::max({o.n, h ? h->variables : 1, f ? f->variables : 1});
  if (o.n != 0 && o.n < n) throw ParameterError("--n is smaller than the highest variable index used");
  const auto space_for = [&](int vars) -> SpaceParams {
    if (o.space == "da") return DruryArveson{vars};
    return BesovDirichlet{vars, o.m, o.s};
  };
  const SpaceParams space = space_for(n);
  validate(space);
  const SamplerConfig sampler = o.sampler.empty() ? SamplerConfig{} : sampler_config_from_json(read_file(o.sampler));

  Json doc{{"quantity", o.quantity}, {"space", o.space}, {"n", n}};
  if (o.space == "hms") {
    doc["m"] = o.m;
    doc["s"] = o.s;
  }
  double value = 0.0;
  bool pass = true;
  std::string text;

  if (o.quantity == "norm") {
    const int cap = std::max(o.D, h->degree());
    const ExactJet jet = to_jet(*h, n, cap);
    value = norm_sq(space, to_float(jet));
    doc["norm_sq"] = value;
    if (o.space == "da") {
      doc["exact"] = format_rational(da_norm_sq(jet));
    } else if (o.s == std::floor(o.s) && o.s >= 0 && o.s < 1e6) {
      doc["exact"] = format_rational(hms_norm_sq(jet, o.m, static_cast<int>(o.s)));
    }
    text = format_number(value);
  } else if (o.quantity == "compression") {
    const int cap = o.D < 0 ? 4 : o.D;
    const FloatJet fj = to_float(to_jet(*f, n, f->degree()));
    value = compression_multiplier_norm(fj, space, cap);
    doc["D"] = cap;
    doc["norm"] = value;
    text = format_number(value);
  } else if (o.quantity == "sup") {
    const FloatJet fj = to_float(to_jet(*f, n, f->degree()));
    value = sup_norm_estimate(fj, sampler);
    doc["sup"] = value;
    text = format_number(value);
  } else if (o.quantity == "bound") {
    if (o.space != "hms") throw ParameterError("--quantity bound uses the H_{m,s} norms (--space hms)");
    BoundMode mode;
    if (o.mode == "power")
      mode = BoundMode::power;
    else if (o.mode == "log")
      mode = BoundMode::log;
    else
      throw ParameterError("--mode must be power or log");
    const int cap = std::max({o.D, o.m * f->degree() + h->degree(), 8});
    NormBoundOptions options;
    options.sampler = sampler;
    const auto report = norm_bound_demo(to_float(to_jet(*f, n, cap)), to_float(to_jet(*h, n, cap)), o.m, o.s, mode,
                                        to_double(parse_t(o.t)), options);
    pass = report.pass;
    const std::string body = to_json(report);
    emit(body + "\n", o.out, out);
    return pass ? kOk : kTrialFailed;
  } else {
    throw ParameterError("--quantity must be norm, compression, sup or bound");
  }
  emit((o.format == "json" ? doc.dump(2) : text) + "\n", o.out, out);
  return kOk;
}

struct ScanOptions {
  int n = 2;
  int m0 = 1;
  int k0 = 0;
  int dmax = 40;
  std::string format = "csv";
  std::string out;
};

int run_scan(const ScanOptions& o, std::ostream& out) {
  if (o.dmax < 1) throw ParameterError("--Dmax must be >= 1");
  const auto scan = equivalence_scan(o.n, o.m0, o.k0, o.dmax);
  emit(o.format == "json" ? scan_json(scan) + "\n" : scan_csv(scan), o.out, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact jets, radial-derivative identities and multiplier-norm diagnostics", "radial_jet"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "radial_jet 0.1.0");

  CoeffsOptions coeffs;
  auto* c = app.add_subcommand("coeffs", "Coefficient tables (beta, c, rho, a) or a Faa di Bruno table");
  c->add_option("--m", coeffs.m, "Order m >= 1");
  c->add_option("--t", coeffs.t, "Exponent t as p/q; adds rho");
  c->add_option("--nu", coeffs.nu, "Print the Faa di Bruno table of order nu instead");
  c->add_option("--out", coeffs.out, "Output file (written atomically)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Check an identity on seeded random jets; one JSON line per trial");
  v->add_option("--id", verify.id, "eq1.2, eq1.3, eq1.4, eq3.4, eq3.6, eq3.7, eq3.9, eq3.10, triangle or fdb")
      ->capture_default_str();
  v->add_option("--n", verify.n, "Number of variables")->capture_default_str();
  v->add_option("--m", verify.m, "Order of R^m")->capture_default_str();
  v->add_option("--D", verify.D, "Total-degree cap")->capture_default_str();
  v->add_option("--t", verify.t, "Exponent t as p/q")->capture_default_str();
  v->add_option("--trials", verify.trials, "Number of trials")->capture_default_str();
  v->add_option("--seed", verify.seed, "First trial seed")->capture_default_str();
  v->add_option("--regime", verify.regime, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  v->add_option("--tol", verify.tol, "Float-regime tolerance")->capture_default_str();
  v->add_option("--r", verify.r, "eq3.4 row r (0 = every r)")->capture_default_str();
  v->add_option("--k", verify.k, "fdb exponent k")->capture_default_str();
  v->add_option("--nu", verify.nu, "fdb derivative order nu")->capture_default_str();
  v->add_option("--out", verify.out, "Output file (written atomically)");

  NormsOptions norms;
  auto* nm = app.add_subcommand("norms", "Norms, compression norms, sampled sup norms and norm-bound chains");
  nm->add_option("--space", norms.space, "da or hms")->check(CLI::IsMember({"da", "hms"}))->capture_default_str();
  nm->add_option("--quantity", norms.quantity, "norm, compression, sup or bound")
      ->check(CLI::IsMember({"norm", "compression", "sup", "bound"}))
      ->capture_default_str();
  nm->add_option("--h", norms.h, "Polynomial h, e.g. \"1+z1\"");
  nm->add_option("--f", norms.f, "Polynomial multiplier f");
  nm->add_option("--n", norms.n, "Number of variables (default: highest index used)");
  nm->add_option("--D", norms.D, "Degree cap (compression: degree of the test polynomials, default 4)");
  nm->add_option("--m", norms.m, "H_{m,s}: m")->capture_default_str();
  nm->add_option("--s", norms.s, "H_{m,s}: s > -1")->capture_default_str();
  nm->add_option("--t", norms.t, "bound: exponent t")->capture_default_str();
  nm->add_option("--mode", norms.mode, "bound: power or log")->capture_default_str();
  nm->add_option("--sampler", norms.sampler, "Sampler config JSON file");
  nm->add_option("--format", norms.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  nm->add_option("--out", norms.out, "Output file (written atomically)");

  ScanOptions scan;
  auto* sc = app.add_subcommand("scan", "Monomial norm ratios between H^2_n and H_{m0,k0}");
  sc->add_option("--n", scan.n, "Number of variables")->capture_default_str();
  sc->add_option("--m0", scan.m0, "m0 >= 1")->capture_default_str();
  sc->add_option("--k0", scan.k0, "k0 >= 0 with 2 m0 - k0 = n")->capture_default_str();
  sc->add_option("--Dmax", scan.dmax, "Largest degree")->capture_default_str();
  sc->add_option("--format", scan.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sc->add_option("--out", scan.out, "Output file (written atomically)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParameterError;
  }

  try {
    if (*c) return run_coeffs(coeffs, out);
    if (*v) return run_verify(verify, out, err);
    if (*nm) return run_norms(norms, out);
    if (*sc) return run_scan(scan, out);
  } catch (const InternalError& e) {
    err << "internal disagreement: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kParameterError;
}

}  // namespace radial_jet::cli
