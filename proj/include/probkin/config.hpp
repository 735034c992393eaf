#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "probkin/numerics.hpp"
#include "probkin/qubit_map.hpp"
#include "probkin/qudit_osc.hpp"

namespace probkin::cli {

enum class Mode { Map, Evolve, Gksl, Channel, Qudit, Oscillator };
enum class OutputFormat { Csv, Json };

std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view s);
bool is_qubit_mode(Mode m);

/// A validated run description. Exactly one of the initial_* fields is set;
/// initial_probs is used by the qubit modes, initial_family by qudit and
/// oscillator runs.
struct RunConfig {
  Mode mode = Mode::Map;
  std::optional<ComplexMatrix> hamiltonian;
  std::vector<ComplexMatrix> lindblad;
  std::vector<ComplexMatrix> kraus;
  std::optional<ProbTriple> initial_probs;
  std::optional<QuditProbFamily> initial_family;
  std::optional<ComplexMatrix> initial_rho;
  double t_final = 0.0;
  double step = 1e-3;
  int sample_every = 10;
  int repetitions = 1;  // channel mode: number of channel applications
  int n_max = 16;       // oscillator mode: Fock truncation
  std::string output_path;
  OutputFormat output_format = OutputFormat::Csv;

  friend bool operator==(const RunConfig& a, const RunConfig& b);
};

/// Thrown by parse_config with every violation found, each prefixed by the
/// offending field path.
class SchemaViolations : public Error {
 public:
  SchemaViolations(Errc code, std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Parses a JSON document. `cli_mode`, when given, fills a missing "mode"
/// and must agree with a present one.
RunConfig parse_config(const nlohmann::json& doc, std::optional<Mode> cli_mode = std::nullopt);
RunConfig parse_config_text(std::string_view text, std::optional<Mode> cli_mode = std::nullopt);

/// Serializes a config so that parse_config(config_to_json(c)) == c.
nlohmann::json config_to_json(const RunConfig& c);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json real_matrix_to_json(const RealMatrix& m);

}  // namespace probkin::cli
