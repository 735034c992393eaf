#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "probkin/config.hpp"

namespace probkin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNonAdmissible = 3;
inline constexpr int kExitInvalidKraus = 4;
inline constexpr int kExitNumerical = 5;

int exit_code_for(Errc code);

/// One row per sampled time; columns start with "t" and end with
/// "quantumness_defect" and "trace_residual".
struct TrajectoryTable {
  Mode mode = Mode::Map;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata;
};

/// Runs the library for a validated config. Throws probkin::Error.
TrajectoryTable simulate(const RunConfig& config);

/// "# probkin trajectory v1 ..." comment line, header line, rows at %.17g.
std::string format_csv(const TrajectoryTable& table);
std::string format_json(const TrajectoryTable& table);

std::string default_output_path(const RunConfig& config);
std::string metadata_path(const std::string& output_path);

/// simulate + write trajectory and sidecar. Failures print one diagnostic
/// line to `diag` and return the mapped exit code.
int run(const RunConfig& config, std::ostream& diag);

struct Overrides {
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> step;
  std::optional<double> t_final;
};

void apply_overrides(nlohmann::json& doc, const Overrides& o);

/// `field=start:stop:count`; field is a top-level key or a JSON pointer.
struct SweepSpec {
  std::string field;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  static SweepSpec parse(const std::string& text);
  double value(int i) const;
};

/// Runs `count` independent configs (OpenMP), each writing its own files with
/// a ".sweep<i>" infix. Returns the first nonzero exit code, or 0.
int run_sweep(const nlohmann::json& doc, std::optional<Mode> mode, const SweepSpec& sweep,
              std::ostream& diag);

}  // namespace probkin::cli
