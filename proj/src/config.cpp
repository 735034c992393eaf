#include "probkin/config.hpp"

#include <cmath>
#include <set>

namespace probkin::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownFields{
    "mode",         "hamiltonian",   "lindblad",    "kraus",       "initial_probs",
    "initial_rho",  "t_final",       "step",        "sample_every", "repetitions",
    "n_max",        "output_path",   "output_format"};

struct Collector {
  std::vector<std::string> schema;
  std::vector<std::string> dimension;

  void bad(const std::string& path, const std::string& msg) { schema.push_back(path + ": " + msg); }
  void dim(const std::string& path, const std::string& msg) { dimension.push_back(path + ": " + msg); }
};

std::optional<ComplexMatrix> read_matrix(const json& j, const std::string& path, Collector& c) {
  if (!j.is_array() || j.empty()) {
    c.bad(path, "expected a nonempty row-major array of rows");
    return std::nullopt;
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) {
    c.bad(path + "[0]", "expected a nonempty row of [re, im] pairs");
    return std::nullopt;
  }
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  bool ok = true;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      c.bad(rpath, "expected a row of " + std::to_string(cols) + " [re, im] pairs");
      ok = false;
      continue;
    }
    for (Eigen::Index col = 0; col < cols; ++col) {
      const json& e = row[static_cast<std::size_t>(col)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number() ||
          !std::isfinite(e[0].get<double>()) || !std::isfinite(e[1].get<double>())) {
        c.bad(rpath + "[" + std::to_string(col) + "]", "expected a finite [re, im] pair");
        ok = false;
        continue;
      }
      m(r, col) = cplx{e[0].get<double>(), e[1].get<double>()};
    }
  }
  if (!ok) return std::nullopt;
  return m;
}

std::vector<ComplexMatrix> read_matrix_list(const json& j, const std::string& path, Collector& c) {
  std::vector<ComplexMatrix> out;
  if (!j.is_array()) {
    c.bad(path, "expected an array of matrices");
    return out;
  }
  for (std::size_t k = 0; k < j.size(); ++k)
    if (auto m = read_matrix(j[k], path + "[" + std::to_string(k) + "]", c)) out.push_back(*m);
  return out;
}

std::optional<double> read_number(const json& doc, const char* key, Collector& c) {
  if (!doc.contains(key)) return std::nullopt;
  const json& j = doc.at(key);
  if (!j.is_number() || !std::isfinite(j.get<double>())) {
    c.bad(key, "expected a finite number");
    return std::nullopt;
  }
  return j.get<double>();
}

std::optional<int> read_int(const json& doc, const char* key, Collector& c) {
  if (!doc.contains(key)) return std::nullopt;
  const json& j = doc.at(key);
  if (!j.is_number_integer()) {
    c.bad(key, "expected an integer");
    return std::nullopt;
  }
  return j.get<int>();
}

std::optional<double> read_probability(const json& j, const std::string& path, Collector& c) {
  if (!j.is_number() || !std::isfinite(j.get<double>())) {
    c.bad(path, "expected a finite number");
    return std::nullopt;
  }
  return j.get<double>();
}

std::optional<QuditProbFamily> read_family(const json& j, Collector& c) {
  const std::string path = "initial_probs";
  if (!j.contains("diag") || !j.at("diag").is_array() || j.at("diag").empty()) {
    c.bad(path + ".diag", "expected a nonempty array of p3 values");
    return std::nullopt;
  }
  QuditProbFamily f;
  f.dim = static_cast<int>(j.at("diag").size()) + 1;
  for (std::size_t k = 0; k < j.at("diag").size(); ++k)
    if (auto v = read_probability(j.at("diag")[k], path + ".diag[" + std::to_string(k) + "]", c))
      f.diag.push_back(*v);
  const std::size_t pairs = static_cast<std::size_t>(f.dim) * (f.dim - 1) / 2;
  if (!j.contains("offdiag") || !j.at("offdiag").is_array() || j.at("offdiag").size() != pairs) {
    c.dim(path + ".offdiag", "expected " + std::to_string(pairs) + " [p1, p2] pairs for dim " +
                                 std::to_string(f.dim));
    return std::nullopt;
  }
  for (std::size_t k = 0; k < pairs; ++k) {
    const json& e = j.at("offdiag")[k];
    const std::string epath = path + ".offdiag[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2) {
      c.bad(epath, "expected a [p1, p2] pair");
      continue;
    }
    auto p1 = read_probability(e[0], epath + "[0]", c);
    auto p2 = read_probability(e[1], epath + "[1]", c);
    if (p1 && p2) f.offdiag.push_back({*p1, *p2});
  }
  if (f.diag.size() + 1 != static_cast<std::size_t>(f.dim) || f.offdiag.size() != pairs)
    return std::nullopt;
  return f;
}

void check_dim(const std::optional<ComplexMatrix>& m, Eigen::Index dim, const std::string& path,
               Collector& c) {
  if (m && (m->rows() != dim || m->cols() != dim))
    c.dim(path, "expected " + std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                    std::to_string(m->rows()) + "x" + std::to_string(m->cols()));
}

bool matrices_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool lists_equal(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!matrices_equal(a[k], b[k])) return false;
  return true;
}

bool optional_matrices_equal(const std::optional<ComplexMatrix>& a,
                             const std::optional<ComplexMatrix>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || matrices_equal(*a, *b);
}

}  // namespace

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Map: return "map";
    case Mode::Evolve: return "evolve";
    case Mode::Gksl: return "gksl";
    case Mode::Channel: return "channel";
    case Mode::Qudit: return "qudit";
    case Mode::Oscillator: return "oscillator";
  }
  return "map";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::Map, Mode::Evolve, Mode::Gksl, Mode::Channel, Mode::Qudit, Mode::Oscillator})
    if (mode_name(m) == s) return m;
  return std::nullopt;
}

bool is_qubit_mode(Mode m) { return m != Mode::Qudit && m != Mode::Oscillator; }

bool operator==(const RunConfig& a, const RunConfig& b) {
  const bool families_equal =
      a.initial_family.has_value() == b.initial_family.has_value() &&
      (!a.initial_family || (a.initial_family->dim == b.initial_family->dim &&
                             a.initial_family->offdiag == b.initial_family->offdiag &&
                             a.initial_family->diag == b.initial_family->diag));
  return a.mode == b.mode && optional_matrices_equal(a.hamiltonian, b.hamiltonian) &&
         lists_equal(a.lindblad, b.lindblad) && lists_equal(a.kraus, b.kraus) &&
         a.initial_probs == b.initial_probs && families_equal &&
         optional_matrices_equal(a.initial_rho, b.initial_rho) && a.t_final == b.t_final &&
         a.step == b.step && a.sample_every == b.sample_every &&
         a.repetitions == b.repetitions && a.n_max == b.n_max &&
         a.output_path == b.output_path && a.output_format == b.output_format;
}

namespace {
std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}
}  // namespace

SchemaViolations::SchemaViolations(Errc code, std::vector<std::string> violations)
    : Error(code, join(violations)), violations_(std::move(violations)) {}

RunConfig parse_config_text(std::string_view text, std::optional<Mode> cli_mode) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaViolations(Errc::SchemaError, {std::string("document: ") + e.what()});
  }
  return parse_config(doc, cli_mode);
}

RunConfig parse_config(const json& doc, std::optional<Mode> cli_mode) {
  Collector c;
  if (!doc.is_object()) throw SchemaViolations(Errc::SchemaError, {"document: expected a JSON object"});
  for (const auto& [key, value] : doc.items())
    if (!kKnownFields.contains(key)) c.bad(key, "unknown field");

  RunConfig cfg;
  std::optional<Mode> mode = cli_mode;
  if (doc.contains("mode")) {
    const json& jm = doc.at("mode");
    const auto parsed = jm.is_string() ? parse_mode(jm.get<std::string>()) : std::nullopt;
    if (!parsed)
      c.bad("mode", "expected one of map, evolve, gksl, channel, qudit, oscillator");
    else if (cli_mode && *cli_mode != *parsed)
      c.bad("mode", "document says '" + std::string(mode_name(*parsed)) +
                        "' but the command line says '" + std::string(mode_name(*cli_mode)) + "'");
    else
      mode = parsed;
  }
  if (!mode && !doc.contains("mode")) c.bad("mode", "missing");
  cfg.mode = mode.value_or(Mode::Map);

  if (doc.contains("hamiltonian")) cfg.hamiltonian = read_matrix(doc.at("hamiltonian"), "hamiltonian", c);
  if (doc.contains("lindblad")) cfg.lindblad = read_matrix_list(doc.at("lindblad"), "lindblad", c);
  if (doc.contains("kraus")) cfg.kraus = read_matrix_list(doc.at("kraus"), "kraus", c);
  if (doc.contains("initial_rho")) cfg.initial_rho = read_matrix(doc.at("initial_rho"), "initial_rho", c);

  const bool has_probs = doc.contains("initial_probs");
  const bool has_rho = doc.contains("initial_rho");
  if (has_probs && has_rho)
    c.bad("initial_probs, initial_rho", "exactly one of initial_probs and initial_rho may be given");
  if (!has_probs && !has_rho)
    c.bad("initial_probs, initial_rho", "one of initial_probs and initial_rho is required");
  if (has_probs) {
    const json& jp = doc.at("initial_probs");
    if (is_qubit_mode(cfg.mode)) {
      if (!jp.is_array() || jp.size() != 3) {
        c.dim("initial_probs", "expected [p1, p2, p3]");
      } else {
        ProbTriple p;
        bool ok = true;
        for (int a = 0; a < 3; ++a) {
          auto v = read_probability(jp[a], "initial_probs[" + std::to_string(a) + "]", c);
          if (v) p[a] = *v; else ok = false;
        }
        if (ok) cfg.initial_probs = p;
      }
    } else if (!jp.is_object()) {
      c.bad("initial_probs", "expected an object {\"offdiag\": [[p1, p2], ...], \"diag\": [p3, ...]}");
    } else {
      cfg.initial_family = read_family(jp, c);
    }
  }

  if (auto v = read_number(doc, "t_final", c)) {
    if (*v < 0.0) c.bad("t_final", "must be >= 0");
    cfg.t_final = *v;
  }
  if (auto v = read_number(doc, "step", c)) {
    if (!(*v > 0.0)) c.bad("step", "must be > 0");
    cfg.step = *v;
  }
  if (auto v = read_int(doc, "sample_every", c)) {
    if (*v < 1) c.bad("sample_every", "must be >= 1");
    cfg.sample_every = *v;
  }
  if (auto v = read_int(doc, "repetitions", c)) {
    if (*v < 0) c.bad("repetitions", "must be >= 0");
    cfg.repetitions = *v;
  }
  if (auto v = read_int(doc, "n_max", c)) {
    if (*v < 1 || *v > kMaxHermiteDegree) c.bad("n_max", "must be in [1, 200]");
    cfg.n_max = *v;
  }
  if (doc.contains("output_path")) {
    if (!doc.at("output_path").is_string()) c.bad("output_path", "expected a string");
    else cfg.output_path = doc.at("output_path").get<std::string>();
  }
  if (doc.contains("output_format")) {
    const json& f = doc.at("output_format");
    if (f == "csv") cfg.output_format = OutputFormat::Csv;
    else if (f == "json") cfg.output_format = OutputFormat::Json;
    else c.bad("output_format", "expected \"csv\" or \"json\"");
  }

  // Mode-specific requirements and dimensional consistency.
  switch (cfg.mode) {
    case Mode::Map:
    case Mode::Evolve:
    case Mode::Gksl:
    case Mode::Channel: {
      check_dim(cfg.hamiltonian, 2, "hamiltonian", c);
      check_dim(cfg.initial_rho, 2, "initial_rho", c);
      for (std::size_t k = 0; k < cfg.lindblad.size(); ++k)
        check_dim(cfg.lindblad[k], 2, "lindblad[" + std::to_string(k) + "]", c);
      for (std::size_t k = 0; k < cfg.kraus.size(); ++k)
        check_dim(cfg.kraus[k], 2, "kraus[" + std::to_string(k) + "]", c);
      if (cfg.mode == Mode::Evolve && !doc.contains("hamiltonian"))
        c.bad("hamiltonian", "required in evolve mode");
      if (cfg.mode == Mode::Channel && (!doc.contains("kraus") || doc.at("kraus").empty()))
        c.bad("kraus", "a nonempty Kraus set is required in channel mode");
      break;
    }
    case Mode::Qudit: {
      if (!doc.contains("hamiltonian")) {
        c.bad("hamiltonian", "required in qudit mode");
        break;
      }
      if (!cfg.hamiltonian) break;
      const Eigen::Index n = cfg.hamiltonian->rows();
      if (cfg.hamiltonian->cols() != n || n < 2)
        c.dim("hamiltonian", "expected a square matrix of dimension >= 2");
      check_dim(cfg.initial_rho, n, "initial_rho", c);
      for (std::size_t k = 0; k < cfg.lindblad.size(); ++k)
        check_dim(cfg.lindblad[k], n, "lindblad[" + std::to_string(k) + "]", c);
      if (cfg.initial_family && cfg.initial_family->dim != n)
        c.dim("initial_probs", "family dimension " + std::to_string(cfg.initial_family->dim) +
                                   " differs from hamiltonian dimension " + std::to_string(n));
      break;
    }
    case Mode::Oscillator: {
      const Eigen::Index levels = cfg.n_max + 1;
      if (cfg.initial_rho && (cfg.initial_rho->rows() != cfg.initial_rho->cols() ||
                              cfg.initial_rho->rows() > levels))
        c.dim("initial_rho", "expected a square matrix with at most n_max + 1 = " +
                                 std::to_string(levels) + " rows");
      if (cfg.initial_family && cfg.initial_family->dim > levels)
        c.dim("initial_probs", "family dimension exceeds n_max + 1");
      if (doc.contains("hamiltonian") || doc.contains("lindblad") || doc.contains("kraus"))
        c.bad("hamiltonian/lindblad/kraus", "not used in oscillator mode");
      break;
    }
  }

  if (!c.schema.empty() || !c.dimension.empty()) {
    std::vector<std::string> all = c.schema;
    all.insert(all.end(), c.dimension.begin(), c.dimension.end());
    throw SchemaViolations(c.schema.empty() ? Errc::DimensionMismatch : Errc::SchemaError,
                           std::move(all));
  }
  return cfg;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json config_to_json(const RunConfig& c) {
  json doc;
  doc["mode"] = std::string(mode_name(c.mode));
  if (c.hamiltonian) doc["hamiltonian"] = matrix_to_json(*c.hamiltonian);
  if (!c.lindblad.empty()) {
    doc["lindblad"] = json::array();
    for (const auto& m : c.lindblad) doc["lindblad"].push_back(matrix_to_json(m));
  }
  if (!c.kraus.empty()) {
    doc["kraus"] = json::array();
    for (const auto& m : c.kraus) doc["kraus"].push_back(matrix_to_json(m));
  }
  if (c.initial_probs) doc["initial_probs"] = {c.initial_probs->p1, c.initial_probs->p2, c.initial_probs->p3};
  if (c.initial_family) {
    json off = json::array();
    for (const auto& [p1, p2] : c.initial_family->offdiag) off.push_back({p1, p2});
    doc["initial_probs"] = {{"offdiag", off}, {"diag", c.initial_family->diag}};
  }
  if (c.initial_rho) doc["initial_rho"] = matrix_to_json(*c.initial_rho);
  doc["t_final"] = c.t_final;
  doc["step"] = c.step;
  doc["sample_every"] = c.sample_every;
  doc["repetitions"] = c.repetitions;
  doc["n_max"] = c.n_max;
  if (!c.output_path.empty()) doc["output_path"] = c.output_path;
  doc["output_format"] = c.output_format == OutputFormat::Csv ? "csv" : "json";
  return doc;
}

}  // namespace probkin::cli
