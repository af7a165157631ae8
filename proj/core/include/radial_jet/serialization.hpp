#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "radial_jet/coefficients.hpp"
#include "radial_jet/identities.hpp"
#include "radial_jet/jet.hpp"
#include "radial_jet/spaces.hpp"

namespace radial_jet {

/// Malformed JSON or a document with the wrong structure.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {"n", "D", "regime": "exact" | "float", "coeffs": [{"alpha": [...], ...}]}
/// with "value": "p/q" in the exact regime and "re"/"im" numbers otherwise.
/// Only nonzero coefficients are listed, in graded order.
std::string to_json(const ExactJet& f);
std::string to_json(const FloatJet& f);
ExactJet exact_jet_from_json(std::string_view text);
FloatJet float_jet_from_json(std::string_view text);

/// {"m", "t"?, "paths_agreed", "beta", "c", "rho"?, "rho0"?, "a", "a0"}.
/// beta and c are m-by-m (row i, column k); rho and a list k = 1..m.
std::string coefficient_table_json(int m, const std::optional<Rational>& t);

/// {"nu", "bell", "entries": [{"alpha": [...], "i": |alpha|, "b": ...}]}.
std::string fdb_table_json(const FdbTable& table);

/// One JSON object, no trailing newline. Elapsed time is left out so that
/// reruns produce identical bytes.
std::string report_json_line(const VerificationReport& report);

/// "degree,ratio" header then one row per degree.
std::string scan_csv(const EquivalenceScan& scan);
std::string scan_json(const EquivalenceScan& scan);

/// {"seed", "ball_points", "sphere_points", "radius", "ball_radius"}; missing
/// keys keep their defaults.
std::string to_json(const SamplerConfig& config);
SamplerConfig sampler_config_from_json(std::string_view text);

std::string to_json(const NormBoundReport& report);

}  // namespace radial_jet
