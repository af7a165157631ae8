#include "radial_jet/serialization.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace radial_jet {

namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing key \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json alpha_json(const MultiIndex& alpha) {
  Json out = Json::array();
  for (std::size_t j = 0; j < alpha.size(); ++j) out.push_back(alpha[j]);
  return out;
}

template <class Scalar>
Json jet_header(const Jet<Scalar>& f) {
  return Json{{"n", f.variables()},
              {"D", f.max_degree()},
              {"regime", std::string(to_string(ScalarTraits<Scalar>::regime))},
              {"coeffs", Json::array()}};
}

template <class Scalar, class Read>
Jet<Scalar> jet_from_json(std::string_view text, std::string_view regime, Read read) {
  const Json doc = parse(text);
  const int n = field<int>(doc, "n");
  const int cap = field<int>(doc, "D");
  if (n < 1 || cap < 0) throw FormatError("jet needs n >= 1 and D >= 0");
  if (doc.contains("regime") && field<std::string>(doc, "regime") != regime)
    throw FormatError("jet regime is not \"" + std::string(regime) + "\"");
  Jet<Scalar> f(n, cap);
  const Json coeffs = field<Json>(doc, "coeffs");
  if (!coeffs.is_array()) throw FormatError("\"coeffs\" must be an array");
  for (const auto& entry : coeffs) {
    const auto alpha = field<std::vector<int>>(entry, "alpha");
    if (alpha.size() != static_cast<std::size_t>(n)) throw FormatError("alpha has the wrong length");
    try {
      const MultiIndex index(alpha);
      if (index.weight() > cap) throw FormatError("coefficient " + index.to_string() + " exceeds D");
      f.set(index, read(entry));
    } catch (const ShapeError& e) {
      throw FormatError(e.what());
    }
  }
  return f;
}

Json rational_row(const std::vector<Rational>& values, std::size_t from) {
  Json out = Json::array();
  for (std::size_t i = from; i < values.size(); ++i) out.push_back(format_rational(values[i]));
  return out;
}

}  // namespace

std::string to_json(const ExactJet& f) {
  Json doc = jet_header(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (sgn(f[i]) == 0) continue;
    doc["coeffs"].push_back(Json{{"alpha", alpha_json(f.basis().monomial(i))}, {"value", format_rational(f[i])}});
  }
  return doc.dump();
}

std::string to_json(const FloatJet& f) {
  Json doc = jet_header(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == Complex(0.0, 0.0)) continue;
    doc["coeffs"].push_back(
        Json{{"alpha", alpha_json(f.basis().monomial(i))}, {"re", f[i].real()}, {"im", f[i].imag()}});
  }
  return doc.dump();
}

ExactJet exact_jet_from_json(std::string_view text) {
  return jet_from_json<Rational>(text, "exact", [](const Json& entry) {
    try {
      return parse_rational(field<std::string>(entry, "value"));
    } catch (const FormatError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  });
}

FloatJet float_jet_from_json(std::string_view text) {
  return jet_from_json<Complex>(text, "float", [](const Json& entry) {
    const double im = entry.contains("im") ? field<double>(entry, "im") : 0.0;
    return Complex(field<double>(entry, "re"), im);
  });
}

std::string coefficient_table_json(int m, const std::optional<Rational>& t) {
  const BetaMatrix beta = beta_matrix(m);
  const CTable c = c_table(m);
  Json doc{{"m", m}};
  if (t) doc["t"] = format_rational(*t);
  doc["paths_agreed"] = c.paths_agreed;
  Json beta_rows = Json::array();
  Json c_rows = Json::array();
  for (int i = 1; i <= m; ++i) {
    Json brow = Json::array();
    Json crow = Json::array();
    for (int k = 1; k <= m; ++k) {
      brow.push_back(integer_json(beta(i, k)));
      crow.push_back(format_rational(c(i, k)));
    }
    beta_rows.push_back(std::move(brow));
    c_rows.push_back(std::move(crow));
  }
  doc["beta"] = std::move(beta_rows);
  doc["c"] = std::move(c_rows);
  if (t) {
    const auto rho = rho_coefficients(m, *t);
    doc["rho"] = rational_row(rho.rho, 1);
    doc["rho0"] = format_rational(rho.rho0());
  }
  const auto a = a_coefficients(m);
  doc["a"] = rational_row(a.a, 1);
  doc["a0"] = format_rational(a.a0());
  return doc.dump(2);
}

std::string fdb_table_json(const FdbTable& table) {
  Json entries = Json::array();
  Integer bell = 0;
  for (const auto& e : table.entries()) {
    bell += e.b;
    entries.push_back(Json{{"alpha", alpha_json(e.alpha)}, {"i", e.alpha.weight()}, {"b", integer_json(e.b)}});
  }
  Json doc{{"nu", table.order()}, {"bell", integer_json(bell)}, {"entries", std::move(entries)}};
  return doc.dump(2);
}

std::string report_json_line(const VerificationReport& report) {
  Json doc{{"id", report.id}, {"n", report.n}, {"m", report.m}, {"D", report.D}};
  if (report.t) doc["t"] = *report.t;
  if (report.r) doc["r"] = *report.r;
  if (report.k) doc["k"] = *report.k;
  if (report.nu) doc["nu"] = *report.nu;
  if (report.seed) doc["seed"] = *report.seed;
  doc["regime"] = std::string(to_string(report.regime));
  doc["residual"] = report.residual;
  doc["pass"] = report.pass;
  return doc.dump();
}

std::string scan_csv(const EquivalenceScan& scan) {
  std::ostringstream os;
  os.precision(17);
  os << "degree,ratio\n";
  for (const auto& row : scan.rows) os << row.degree << ',' << row.ratio << '\n';
  return os.str();
}

std::string scan_json(const EquivalenceScan& scan) {
  Json rows = Json::array();
  for (const auto& row : scan.rows) rows.push_back(Json{{"degree", row.degree}, {"ratio", row.ratio}});
  Json doc{{"n", scan.n},          {"m0", scan.m0},
           {"k0", scan.k0},        {"rows", std::move(rows)},
           {"min_ratio", scan.min_ratio}, {"max_ratio", scan.max_ratio}};
  return doc.dump(2);
}

std::string to_json(const SamplerConfig& config) {
  Json doc{{"seed", config.seed},
           {"ball_points", config.ball_points},
           {"sphere_points", config.sphere_points},
           {"radius", config.radius},
           {"ball_radius", config.ball_radius}};
  return doc.dump();
}

SamplerConfig sampler_config_from_json(std::string_view text) {
  const Json doc = parse(text);
  if (!doc.is_object()) throw FormatError("sampler config must be a JSON object");
  SamplerConfig config;
  if (doc.contains("seed")) config.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("ball_points")) config.ball_points = field<std::size_t>(doc, "ball_points");
  if (doc.contains("sphere_points")) config.sphere_points = field<std::size_t>(doc, "sphere_points");
  if (doc.contains("radius")) config.radius = field<double>(doc, "radius");
  if (doc.contains("ball_radius")) config.ball_radius = field<double>(doc, "ball_radius");
  if (!(config.radius > 0.0 && config.radius < 1.0)) throw FormatError("sampler radius must lie in (0, 1)");
  if (!(config.ball_radius > 0.0 && config.ball_radius < 1.0))
    throw FormatError("sampler ball_radius must lie in (0, 1)");
  return config;
}

std::string to_json(const NormBoundReport& report) {
  Json doc{{"mode", report.mode == BoundMode::power ? "power" : "log"},
           {"n", report.n},
           {"m", report.m},
           {"D", report.D},
           {"s", report.s}};
  if (report.mode == BoundMode::power) doc["t"] = report.t;
  doc["lhs"] = report.lhs;
  doc["middle"] = report.middle;
  doc["rhs"] = report.rhs;
  doc["slack"] = report.slack;
  doc["multiplier_lhs"] = report.multiplier_lhs;
  doc["multiplier_rhs"] = report.multiplier_rhs;
  doc["min_modulus"] = report.min_modulus;
  doc["pass"] = report.pass;
  return doc.dump(2);
}

}  // namespace radial_jet
