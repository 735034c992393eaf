#include "probkin/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "probkin/channels.hpp"
#include "probkin/dynamics.hpp"
#include "probkin/kernels.hpp"

namespace probkin::cli {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double raw_defect(const ProbTriple& p) {
  const double x = p.p1 - 0.5, y = p.p2 - 0.5, z = p.p3 - 0.5;
  return 0.25 - (x * x + y * y + z * z);
}

std::vector<std::string> qubit_columns() {
  return {"t", "p1", "p2", "p3", "quantumness_defect", "trace_residual"};
}

std::vector<double> qubit_row(double t, const ProbTriple& p, double trace_residual) {
  return {t, p.p1, p.p2, p.p3, raw_defect(p), trace_residual};
}

std::vector<std::string> family_columns(int dim) {
  std::vector<std::string> cols{"t"};
  for (auto& name : QuditProbFamily::column_names(dim)) cols.push_back(std::move(name));
  cols.push_back("quantumness_defect");
  cols.push_back("trace_residual");
  return cols;
}

std::vector<double> family_row(double t, const ComplexMatrix& rho) {
  std::vector<double> row{t};
  for (double v : qudit_rho_to_probs(rho).family.flatten()) row.push_back(v);
  row.push_back(min_eigenvalue(rho));
  row.push_back(std::abs(rho.trace() - 1.0));
  return row;
}

void require_admissible(const ProbTriple& p) {
  const double defect = quantumness_defect(p);
  if (defect < -tol::positivity)
    throw Error(Errc::NonAdmissibleState, "quantumness_defect = " + fmt17(defect));
}

ProbTriple qubit_initial(const RunConfig& cfg) {
  if (cfg.initial_probs) {
    check_probabilities(*cfg.initial_probs);
    return *cfg.initial_probs;
  }
  return rho_to_probs(*cfg.initial_rho);
}

Hamiltonian hamiltonian_or_zero(const RunConfig& cfg, Eigen::Index dim) {
  return cfg.hamiltonian ? Hamiltonian(*cfg.hamiltonian) : Hamiltonian::zero(dim);
}

json six_vector_json(const SixVector& v) { return std::vector<double>(v.data(), v.data() + 6); }

json generator_json(const KineticGenerator& g) {
  return {{"gen", real_matrix_to_json(g.gen)},
          {"affine", six_vector_json(g.affine)},
          {"triple_linear", real_matrix_to_json(g.triple_flow.linear)},
          {"triple_offset", std::vector<double>(g.triple_flow.offset.data(),
                                                g.triple_flow.offset.data() + 3)}};
}

json triple_json(const ProbTriple& p) { return {p.p1, p.p2, p.p3}; }

double max_deviation(const ProbTriple& a, const ProbTriple& b) {
  return std::max({std::abs(a.p1 - b.p1), std::abs(a.p2 - b.p2), std::abs(a.p3 - b.p3)});
}

void fill_kinetic_rows(TrajectoryTable& table, const Trajectory<SixVector>& traj) {
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    table.rows.push_back(qubit_row(traj.times[i], from_six_vector(traj.states[i]),
                                   std::abs(traj.states[i].sum() - 1.0)));
}

TrajectoryTable simulate_map(const RunConfig& cfg) {
  TrajectoryTable table;
  table.columns = qubit_columns();
  const ProbTriple p = qubit_initial(cfg);
  require_admissible(p);
  const ComplexMatrix rho = probs_to_rho(p);
  table.rows.push_back(qubit_row(0.0, p, std::abs(rho.trace() - 1.0)));
  json born = json::array();
  for (const ComplexMatrix& effect : measurement_basis()) born.push_back(born_probability(rho, effect));
  table.metadata["rho"] = matrix_to_json(rho);
  table.metadata["six_vector"] = six_vector_json(to_six_vector(p));
  table.metadata["born_probabilities"] = born;
  table.metadata["quantumness_defect"] = quantumness_defect(p);
  return table;
}

TrajectoryTable simulate_evolve(const RunConfig& cfg) {
  TrajectoryTable table;
  table.columns = qubit_columns();
  const ProbTriple p0 = qubit_initial(cfg);
  require_admissible(p0);
  const Hamiltonian h(*cfg.hamiltonian);
  const KineticGenerator g = kinetic_generator(h);
  const auto traj = integrate_kinetic(g, p0, cfg.t_final, cfg.step, cfg.sample_every);
  fill_kinetic_rows(table, traj);
  const ProbTriple oracle = propagate_unitary(h, p0, cfg.t_final);
  table.metadata["generator"] = generator_json(g);
  table.metadata["oracle_final"] = triple_json(oracle);
  table.metadata["oracle_max_deviation"] = max_deviation(oracle, from_six_vector(traj.final_state()));
  return table;
}

TrajectoryTable simulate_gksl(const RunConfig& cfg) {
  TrajectoryTable table;
  table.columns = qubit_columns();
  const ProbTriple p0 = qubit_initial(cfg);
  require_admissible(p0);
  const Hamiltonian h = hamiltonian_or_zero(cfg, 2);
  const KineticGenerator g = gksl_kinetic_generator(h, cfg.lindblad);
  const auto traj = integrate_kinetic(g, p0, cfg.t_final, cfg.step, cfg.sample_every);
  fill_kinetic_rows(table, traj);
  const auto direct = integrate_gksl(h, cfg.lindblad, probs_to_rho(p0), cfg.t_final, cfg.step,
                                     cfg.sample_every);
  ComplexMatrix rho_final = direct.final_state();
  rho_final = 0.5 * (rho_final + rho_final.adjoint());
  const ProbTriple oracle = rho_to_probs(rho_final);
  table.metadata["generator"] = generator_json(g);
  if (auto fp = kinetic_fixed_point(g)) table.metadata["fixed_point"] = triple_json(*fp);
  table.metadata["oracle_final"] = triple_json(oracle);
  table.metadata["oracle_max_deviation"] = max_deviation(oracle, from_six_vector(traj.final_state()));
  return table;
}

TrajectoryTable simulate_channel(const RunConfig& cfg) {
  TrajectoryTable table;
  table.columns = qubit_columns();
  const KrausSet ks(cfg.kraus);
  ProbTriple p = qubit_initial(cfg);
  require_admissible(p);
  table.rows.push_back(qubit_row(0.0, p, 0.0));
  for (int k = 1; k <= cfg.repetitions; ++k) {
    const ComplexMatrix out = apply_channel(ks, probs_to_rho(p));
    const double residual = std::abs(out.trace() - 1.0);
    p = apply_channel_probs(ks, p);
    table.rows.push_back(qubit_row(static_cast<double>(k), p, residual));
  }
  const SixAffine ps = pseudostochastic_matrix(ks);
  table.metadata["superoperator"] = matrix_to_json(channel_superoperator(ks));
  table.metadata["pseudostochastic_matrix"] = real_matrix_to_json(ps.matrix);
  table.metadata["pseudostochastic_offset"] = six_vector_json(ps.offset);
  table.metadata["completeness_defect"] = kraus_completeness_defect(ks.ops());
  table.metadata["time_unit"] = "channel applications";
  return table;
}

void require_positive(const ComplexMatrix& rho) {
  const double lambda = min_eigenvalue(rho);
  if (lambda < -tol::positivity)
    throw Error(Errc::NonAdmissibleState, "initial state has min eigenvalue " + fmt17(lambda));
}

TrajectoryTable simulate_qudit(const RunConfig& cfg) {
  const Hamiltonian h(*cfg.hamiltonian);
  ComplexMatrix rho0;
  if (cfg.initial_family) {
    rho0 = qudit_probs_to_rho(*cfg.initial_family);
  } else {
    qudit_rho_to_probs(*cfg.initial_rho);  // validates Hermiticity and trace
    rho0 = *cfg.initial_rho;
  }
  require_positive(rho0);
  TrajectoryTable table;
  table.columns = family_columns(static_cast<int>(h.dim()));
  const auto traj = integrate_gksl(h, cfg.lindblad, rho0, cfg.t_final, cfg.step, cfg.sample_every);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const ComplexMatrix rho = 0.5 * (traj.states[i] + traj.states[i].adjoint());
    table.rows.push_back(family_row(traj.times[i], rho));
  }
  table.metadata["dim"] = h.dim();
  table.metadata["index_base"] = 0;
  return table;
}

TrajectoryTable simulate_oscillator(const RunConfig& cfg) {
  const ComplexMatrix seed =
      cfg.initial_family ? qudit_probs_to_rho(*cfg.initial_family) : *cfg.initial_rho;
  const FockDensityMatrix rho0 = FockDensityMatrix::embed(seed, cfg.n_max);
  TrajectoryTable table;
  table.columns = family_columns(cfg.n_max + 1);
  const StepPlan plan(0.0, cfg.t_final, cfg.step);
  FockDensityMatrix last = rho0;
  for (double t : plan.sample_times(cfg.sample_every)) {
    last = oscillator_evolve(rho0, t);
    table.rows.push_back(family_row(t, last.matrix()));
  }
  const double norm0 = kernels::diagonal_integral(rho0, -10.0, 10.0, 2001);
  const double norm1 = kernels::diagonal_integral(last, -10.0, 10.0, 2001);
  table.metadata["n_max"] = cfg.n_max;
  table.metadata["index_base"] = 0;
  table.metadata["normalization_residual_initial"] = std::abs(norm0 - 1.0);
  table.metadata["normalization_residual_final"] = std::abs(norm1 - 1.0);
  table.metadata["normalization_quadrature"] = "Simpson, [-10, 10], 2001 nodes";
  return table;
}

std::string sweep_path(const std::string& base, int i) {
  const auto slash = base.find_last_of('/');
  const auto dot = base.find_last_of('.');
  const std::string infix = ".sweep" + std::to_string(i);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + infix;
  return base.substr(0, dot) + infix + base.substr(dot);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(Errc::IoError, "failed writing '" + path + "'");
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::SchemaError:
    case Errc::DimensionMismatch:
    case Errc::WrongDimension:
    case Errc::NotSquare:
    case Errc::NotHermitian:
    case Errc::DegreeTooLarge:
    case Errc::IoError:
      return kExitSchema;
    case Errc::NonAdmissibleState:
    case Errc::InvalidDensityMatrix:
    case Errc::OutOfRangeProbability:
    case Errc::DiagonalOverflow:
    case Errc::InvalidMarginal:
      return kExitNonAdmissible;
    case Errc::InvalidKrausSet:
    case Errc::EmptySet:
    case Errc::NotUnitary:
    case Errc::WeightsNotNormalized:
      return kExitInvalidKraus;
    case Errc::NonFiniteEntry:
    case Errc::NonFiniteDerivative:
    case Errc::RangeExceeded:
      return kExitNumerical;
  }
  return kExitNumerical;
}

TrajectoryTable simulate(const RunConfig& cfg) {
  TrajectoryTable table;
  switch (cfg.mode) {
    case Mode::Map: table = simulate_map(cfg); break;
    case Mode::Evolve: table = simulate_evolve(cfg); break;
    case Mode::Gksl: table = simulate_gksl(cfg); break;
    case Mode::Channel: table = simulate_channel(cfg); break;
    case Mode::Qudit: table = simulate_qudit(cfg); break;
    case Mode::Oscillator: table = simulate_oscillator(cfg); break;
  }
  table.mode = cfg.mode;
  for (const auto& row : table.rows)
    for (double v : row)
      if (!std::isfinite(v)) throw Error(Errc::NonFiniteEntry, "trajectory contains NaN/Inf");
  json meta;
  meta["format"] = "probkin-metadata";
  meta["version"] = kFormatVersion;
  meta["mode"] = std::string(mode_name(cfg.mode));
  meta["columns"] = table.columns;
  meta["rows"] = table.rows.size();
  meta["config"] = config_to_json(cfg);
  meta.update(table.metadata);
  table.metadata = std::move(meta);
  return table;
}

std::string format_csv(const TrajectoryTable& table) {
  std::string out = "# probkin trajectory v" + std::to_string(kFormatVersion) +
                    " mode=" + std::string(mode_name(table.mode)) + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out += (c ? "," : "") + table.columns[c];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + fmt17(row[c]);
    out += '\n';
  }
  return out;
}

std::string format_json(const TrajectoryTable& table) {
  std::string out = "{\n  \"format\": \"probkin-trajectory\",\n  \"version\": " +
                    std::to_string(kFormatVersion) + ",\n  \"mode\": \"" +
                    std::string(mode_name(table.mode)) + "\",\n  \"columns\": [";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out += (c ? ", \"" : "\"") + table.columns[c] + "\"";
  out += "],\n  \"records\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += r ? ",\n    {" : "\n    {";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out += (c ? ", \"" : "\"") + table.columns[c] + "\": " + fmt17(table.rows[r][c]);
    out += "}";
  }
  out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string default_output_path(const RunConfig& config) {
  return "probkin_" + std::string(mode_name(config.mode)) +
         (config.output_format == OutputFormat::Csv ? ".csv" : ".json");
}

std::string metadata_path(const std::string& output_path) { return output_path + ".meta.json"; }

int run(const RunConfig& config, std::ostream& diag) {
  try {
    const TrajectoryTable table = simulate(config);
    const std::string path =
        config.output_path.empty() ? default_output_path(config) : config.output_path;
    write_file(path, config.output_format == OutputFormat::Csv ? format_csv(table)
                                                               : format_json(table));
    write_file(metadata_path(path), table.metadata.dump(2) + "\n");
    return kExitOk;
  } catch (const Error& e) {
    diag << "probkin " << mode_name(config.mode) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    diag << "probkin " << mode_name(config.mode) << ": NumericalFailure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

void apply_overrides(json& doc, const Overrides& o) {
  if (!doc.is_object()) return;
  if (o.out) doc["output_path"] = *o.out;
  if (o.format) doc["output_format"] = *o.format;
  if (o.step) doc["step"] = *o.step;
  if (o.t_final) doc["t_final"] = *o.t_final;
}

SweepSpec SweepSpec::parse(const std::string& text) {
  const auto eq = text.find('=');
  const auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (eq == std::string::npos || eq == 0 || c1 == std::string::npos || c2 == std::string::npos)
    throw Error(Errc::SchemaError, "--sweep expects <field>=<start>:<stop>:<count>");
  SweepSpec s;
  s.field = text.substr(0, eq);
  try {
    std::size_t used = 0;
    const std::string a = text.substr(eq + 1, c1 - eq - 1);
    const std::string b = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string n = text.substr(c2 + 1);
    s.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    s.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    s.count = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
  } catch (const std::logic_error&) {
    throw Error(Errc::SchemaError, "--sweep has a malformed number in '" + text + "'");
  }
  if (s.count < 1) throw Error(Errc::SchemaError, "--sweep count must be >= 1");
  return s;
}

double SweepSpec::value(int i) const {
  if (count == 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

int run_sweep(const json& doc, std::optional<Mode> mode, const SweepSpec& sweep,
              std::ostream& diag) {
  std::vector<int> codes(static_cast<std::size_t>(sweep.count), kExitOk);
  std::vector<std::string> messages(codes.size());

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < sweep.count; ++i) {
    std::ostringstream local;
    try {
      json instance = doc;
      if (!sweep.field.empty() && sweep.field.front() == '/') {
        const json::json_pointer ptr(sweep.field);
        if (!instance.contains(ptr))
          throw Error(Errc::SchemaError, "--sweep field " + sweep.field + " does not exist");
        instance[ptr] = sweep.value(i);
      } else {
        instance[sweep.field] = sweep.value(i);
      }
      RunConfig cfg = parse_config(instance, mode);
      const std::string base = cfg.output_path.empty() ? default_output_path(cfg) : cfg.output_path;
      cfg.output_path = sweep_path(base, i);
      codes[static_cast<std::size_t>(i)] = run(cfg, local);
    } catch (const Error& e) {
      local << "probkin sweep[" << i << "]: " << e.what() << '\n';
      codes[static_cast<std::size_t>(i)] = exit_code_for(e.code());
    } catch (const std::exception& e) {
      local << "probkin sweep[" << i << "]: SchemaError: " << e.what() << '\n';
      codes[static_cast<std::size_t>(i)] = kExitSchema;
    }
    messages[static_cast<std::size_t>(i)] = local.str();
  }

  int first = kExitOk;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    diag << messages[i];
    if (first == kExitOk) first = codes[i];
  }
  return first;
}

}  // namespace probkin::cli
