#include "qtt/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>
#include <utility>

#include "qtt/errors.hpp"
#include "qtt/spm.hpp"
#include "qtt/transfer.hpp"

namespace qtt::sweep {

namespace {

constexpr const char* kUnitsNote =
    "2m = hbar = c = 1; E = k^2; lengths in units of 1/k";

double require_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) {
    throw ConfigError("config: field '" + field + "' must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ConfigError("config: field '" + field + "' must be finite");
  }
  return v;
}

double require_positive(const nlohmann::json& j, const std::string& field) {
  const double v = require_number(j, field);
  if (!(v > 0.0)) {
    throw ConfigError("config: field '" + field + "' must be > 0");
  }
  return v;
}

int require_int(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer()) {
    throw ConfigError("config: field '" + field + "' must be an integer");
  }
  return j.get<int>();
}

void reject_unknown_keys(const nlohmann::json& obj,
                         const std::set<std::string>& known,
                         const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.contains(key)) {
      throw ConfigError("config: unknown field '" + scope + key + "'");
    }
  }
}

PotentialSpec parse_potential(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: field 'potential' must be an object");
  }
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ConfigError("config: field 'potential.type' must be a string");
  }
  PotentialSpec spec;
  const std::string type = j["type"].get<std::string>();
  if (type == "rectangular") {
    reject_unknown_keys(j, {"type", "V", "b"}, "potential.");
    if (!j.contains("V") || !j.contains("b")) {
      throw ConfigError("config: rectangular potential needs 'potential.V' "
                        "and 'potential.b'");
    }
    spec.kind = PotentialSpec::Kind::kRectangular;
    spec.height = require_number(j["V"], "potential.V");
    spec.width = require_positive(j["b"], "potential.b");
  } else if (type == "segments") {
    reject_unknown_keys(j, {"type", "segments"}, "potential.");
    if (!j.contains("segments") || !j["segments"].is_array() ||
        j["segments"].empty()) {
      throw ConfigError(
          "config: field 'potential.segments' must be a non-empty array");
    }
    spec.kind = PotentialSpec::Kind::kSegments;
    std::size_t i = 0;
    for (const auto& pair : j["segments"]) {
      const std::string field = "potential.segments[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2) {
        throw ConfigError("config: field '" + field +
                          "' must be a [width, height] pair");
      }
      const double w = require_positive(pair[0], field + ".width");
      const double h = require_number(pair[1], field + ".height");
      spec.segments.push_back({w, h});
      ++i;
    }
    double total = 0.0;
    for (const auto& s : spec.segments) total += s.width;
    spec.width = total;
  } else if (type == "cantor") {
    reject_unknown_keys(j, {"type", "variant", "ratio", "level", "V", "width"},
                        "potential.");
    spec.kind = PotentialSpec::Kind::kCantor;
    if (!j.contains("variant") || !j["variant"].is_string()) {
      throw ConfigError("config: field 'potential.variant' must be "
                        "\"standard\" or \"svc\"");
    }
    const std::string variant = j["variant"].get<std::string>();
    if (variant == "standard") {
      spec.variant = CantorVariant::kStandard;
    } else if (variant == "svc") {
      spec.variant = CantorVariant::kSmithVolterra;
    } else {
      throw ConfigError("config: field 'potential.variant' must be "
                        "\"standard\" or \"svc\"");
    }
    if (j.contains("ratio")) {
      spec.ratio = require_number(j["ratio"], "potential.ratio");
      if (!(spec.ratio > 0.0) || !(spec.ratio < 1.0)) {
        throw ConfigError("config: field 'potential.ratio' must lie in (0,1)");
      }
    }
    if (!j.contains("level") || !j.contains("V") || !j.contains("width")) {
      throw ConfigError("config: cantor potential needs 'potential.level', "
                        "'potential.V' and 'potential.width'");
    }
    spec.level = require_int(j["level"], "potential.level");
    if (spec.level < 0) {
      throw ConfigError("config: field 'potential.level' must be >= 0");
    }
    spec.height = require_number(j["V"], "potential.V");
    spec.width = require_positive(j["width"], "potential.width");
  } else {
    throw ConfigError("config: field 'potential.type' must be one of "
                      "rectangular|segments|cantor");
  }
  return spec;
}

EnergyGrid parse_energy(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: field 'energy' must be an object");
  }
  reject_unknown_keys(j, {"min", "max", "points"}, "energy.");
  if (!j.contains("min") || !j.contains("max") || !j.contains("points")) {
    throw ConfigError("config: field 'energy' needs 'min', 'max', 'points'");
  }
  EnergyGrid grid;
  grid.min = require_positive(j["min"], "energy.min");
  grid.max = require_number(j["max"], "energy.max");
  grid.points = require_int(j["points"], "energy.points");
  if (!(grid.max >= grid.min)) {
    throw ConfigError("config: field 'energy.max' must be >= energy.min");
  }
  if (grid.points < 2) {
    throw ConfigError("config: field 'energy.points' must be >= 2");
  }
  return grid;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json make_metadata(const std::string& command,
                                     const SweepConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["command"] = command;
  meta["units"] = kUnitsNote;
  meta["config"] = config_echo(cfg);
  return meta;
}

const EnergyGrid& require_energy(const SweepConfig& cfg,
                                 const std::string& command) {
  if (!cfg.energy) {
    throw ConfigError("config: field 'energy' is required for " + command);
  }
  return *cfg.energy;
}

double require_single_energy(const SweepConfig& cfg,
                             const std::string& command) {
  if (!cfg.single_energy) {
    throw ConfigError("config: field 'E' is required for " + command);
  }
  return *cfg.single_energy;
}

void require_periodic_lists(const SweepConfig& cfg,
                            const std::string& command) {
  if (cfg.repetition_counts.empty() || cfg.gaps.empty()) {
    throw ConfigError("config: field 'periodic' (N and L lists) is required "
                      "for " + command);
  }
}

const std::vector<double>& require_thickness(const SweepConfig& cfg,
                                             const std::string& command) {
  if (cfg.thickness.empty()) {
    throw ConfigError("config: field 'thickness' is required for " + command);
  }
  if (cfg.thickness.size() < 4) {
    throw ConfigError("config: field 'thickness' needs at least 4 points");
  }
  for (std::size_t i = 1; i < cfg.thickness.size(); ++i) {
    if (!(cfg.thickness[i] > cfg.thickness[i - 1])) {
      throw ConfigError("config: field 'thickness' must be strictly "
                        "increasing");
    }
  }
  return cfg.thickness;
}

constexpr double kLn10 = std::numbers::ln10;

Table ttime_table(const SweepConfig& cfg,
                  const PiecewiseConstantPotential& potential,
                  const std::string& command) {
  const auto energies = require_energy(cfg, command).values();
  std::vector<TunnelingTimeResult> results(
      energies.size(), TunnelingTimeResult{0, 0, 0, TimeMethod::kNumericSpm, 0});
  parallel_for(energies.size(), [&](std::size_t i) {
    results[i] =
        tunneling_time_single(potential, energies[i], cfg.derivative_step);
  });

  Table table;
  table.columns = {"E", "tau", "phase_derivative", "geometric_term"};
  table.rows.reserve(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    table.rows.push_back({energies[i], results[i].tau,
                          results[i].phase_derivative,
                          results[i].geometric_term});
  }
  table.metadata = make_metadata(command, cfg);
  return table;
}

Table saturation_table(const SweepConfig& cfg, const std::string& command,
                       std::optional<double> tau_limit) {
  const double energy = require_single_energy(cfg, command);
  const auto& grid = require_thickness(cfg, command);
  const auto family = [&cfg](double b) {
    return cfg.potential.build_with_width(b);
  };
  const auto scan = saturation_scan(family, energy, grid,
                                    cfg.saturation_tolerance,
                                    cfg.derivative_step);

  Table table;
  table.columns = {"b", "tau", "tau_limit", "abs_err"};
  table.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid[i], scan.tau[i], std::monostate{},
                          std::monostate{}};
    if (tau_limit) {
      row[2] = *tau_limit;
      row[3] = std::abs(scan.tau[i] - *tau_limit);
    }
    table.rows.push_back(std::move(row));
  }
  table.metadata = make_metadata(command, cfg);
  table.metadata["converged"] = scan.converged;
  table.metadata["tau_limit_estimate"] = scan.tau_limit_estimate;
  return table;
}

}  // namespace

PiecewiseConstantPotential PotentialSpec::build() const {
  switch (kind) {
    case Kind::kRectangular:
      return make_rectangular(height, width);
    case Kind::kSegments:
      return make_segments(segments);
    case Kind::kCantor:
      return make_cantor(variant, level, height, width, ratio);
  }
  throw ConfigError("config: field 'potential.type' is invalid");
}

PiecewiseConstantPotential PotentialSpec::build_with_width(
    double total_width) const {
  switch (kind) {
    case Kind::kRectangular:
      return make_rectangular(height, total_width);
    case Kind::kSegments: {
      const double factor = total_width / width;
      std::vector<Segment> scaled = segments;
      for (auto& s : scaled) s.width *= factor;
      return make_segments(std::move(scaled));
    }
    case Kind::kCantor:
      return make_cantor(variant, level, height, total_width, ratio);
  }
  throw ConfigError("config: field 'potential.type' is invalid");
}

std::vector<double> EnergyGrid::values() const {
  std::vector<double> out;
  out.reserve(points);
  const double step = (max - min) / (points - 1);
  for (int i = 0; i < points; ++i) out.push_back(min + i * step);
  return out;
}

SweepConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("config: top level must be an object");
  }
  reject_unknown_keys(doc,
                      {"potential", "energy", "E", "periodic", "thickness",
                       "derivative_step", "format", "tolerance", "mode"},
                      "");
  SweepConfig cfg;
  if (!doc.contains("potential")) {
    throw ConfigError("config: missing field 'potential'");
  }
  cfg.potential = parse_potential(doc["potential"]);

  if (doc.contains("energy")) cfg.energy = parse_energy(doc["energy"]);
  if (doc.contains("E")) cfg.single_energy = require_positive(doc["E"], "E");

  if (doc.contains("periodic")) {
    const auto& p = doc["periodic"];
    if (!p.is_object()) {
      throw ConfigError("config: field 'periodic' must be an object");
    }
    reject_unknown_keys(p, {"N", "L"}, "periodic.");
    if (!p.contains("N") || !p["N"].is_array() || p["N"].empty()) {
      throw ConfigError(
          "config: field 'periodic.N' must be a non-empty array");
    }
    if (!p.contains("L") || !p["L"].is_array() || p["L"].empty()) {
      throw ConfigError(
          "config: field 'periodic.L' must be a non-empty array");
    }
    for (const auto& n : p["N"]) {
      const int value = require_int(n, "periodic.N");
      if (value < 1) {
        throw ConfigError("config: field 'periodic.N' entries must be >= 1");
      }
      cfg.repetition_counts.push_back(value);
    }
    for (const auto& l : p["L"]) {
      const double value = require_number(l, "periodic.L");
      if (!(value >= 0.0)) {
        throw ConfigError("config: field 'periodic.L' entries must be >= 0");
      }
      cfg.gaps.push_back(value);
    }
  }

  if (doc.contains("thickness")) {
    if (!doc["thickness"].is_array() || doc["thickness"].empty()) {
      throw ConfigError(
          "config: field 'thickness' must be a non-empty array");
    }
    for (const auto& b : doc["thickness"]) {
      cfg.thickness.push_back(require_positive(b, "thickness"));
    }
  }

  if (doc.contains("derivative_step")) {
    cfg.derivative_step =
        require_positive(doc["derivative_step"], "derivative_step");
  }

  if (doc.contains("format")) {
    if (!doc["format"].is_string()) {
      throw ConfigError("config: field 'format' must be \"csv\" or \"json\"");
    }
    const std::string fmt = doc["format"].get<std::string>();
    if (fmt == "csv") {
      cfg.format = OutputFormat::kCsv;
    } else if (fmt == "json") {
      cfg.format = OutputFormat::kJson;
    } else {
      throw ConfigError("config: field 'format' must be \"csv\" or \"json\"");
    }
  }

  if (doc.contains("tolerance")) {
    const auto& tol = doc["tolerance"];
    if (!tol.is_object()) {
      throw ConfigError("config: field 'tolerance' must be an object");
    }
    reject_unknown_keys(tol, {"saturation"}, "tolerance.");
    if (tol.contains("saturation")) {
      cfg.saturation_tolerance =
          require_positive(tol["saturation"], "tolerance.saturation");
    }
  }

  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) {
      throw ConfigError("config: field 'mode' must be \"ttime\" or "
                        "\"hartman\"");
    }
    cfg.fractal_mode = doc["mode"].get<std::string>();
    if (cfg.fractal_mode != "ttime" && cfg.fractal_mode != "hartman") {
      throw ConfigError("config: field 'mode' must be \"ttime\" or "
                        "\"hartman\"");
    }
  }

  return cfg;
}

nlohmann::ordered_json config_echo(const SweepConfig& cfg) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json pot;
  switch (cfg.potential.kind) {
    case PotentialSpec::Kind::kRectangular:
      pot["type"] = "rectangular";
      pot["V"] = cfg.potential.height;
      pot["b"] = cfg.potential.width;
      break;
    case PotentialSpec::Kind::kSegments: {
      pot["type"] = "segments";
      auto arr = nlohmann::ordered_json::array();
      for (const auto& s : cfg.potential.segments) {
        arr.push_back({s.width, s.height});
      }
      pot["segments"] = std::move(arr);
      break;
    }
    case PotentialSpec::Kind::kCantor:
      pot["type"] = "cantor";
      pot["variant"] = cfg.potential.variant == CantorVariant::kStandard
                           ? "standard"
                           : "svc";
      if (cfg.potential.variant == CantorVariant::kStandard) {
        pot["ratio"] = cfg.potential.ratio;
      }
      pot["level"] = cfg.potential.level;
      pot["V"] = cfg.potential.height;
      pot["width"] = cfg.potential.width;
      break;
  }
  doc["potential"] = std::move(pot);
  if (cfg.energy) {
    doc["energy"] = {{"min", cfg.energy->min},
                     {"max", cfg.energy->max},
                     {"points", cfg.energy->points}};
  }
  if (cfg.single_energy) doc["E"] = *cfg.single_energy;
  if (!cfg.repetition_counts.empty() && !cfg.gaps.empty()) {
    doc["periodic"] = {{"N", cfg.repetition_counts}, {"L", cfg.gaps}};
  }
  if (!cfg.thickness.empty()) doc["thickness"] = cfg.thickness;
  if (cfg.derivative_step) doc["derivative_step"] = *cfg.derivative_step;
  doc["format"] = cfg.format == OutputFormat::kCsv ? "csv" : "json";
  doc["tolerance"] = {{"saturation", cfg.saturation_tolerance}};
  doc["mode"] = cfg.fractal_mode;
  return doc;
}

Table run_transmit(const SweepConfig& cfg) {
  const auto energies = require_energy(cfg, "transmit").values();
  const auto potential = cfg.potential.build();

  struct Point {
    double k = 0.0;
    double log10_t = 0.0;
    double wrapped = 0.0;
  };
  std::vector<Point> points(energies.size());
  parallel_for(energies.size(), [&](std::size_t i) {
    const double e = energies[i];
    const auto t = transmission(cell_matrix(e, potential), e);
    points[i] = {std::sqrt(e), 2.0 * t.log_magnitude / kLn10, t.phase};
  });

  std::vector<double> wrapped;
  wrapped.reserve(points.size());
  for (const auto& p : points) wrapped.push_back(p.wrapped);
  const auto unwrapped = unwrap_phase(wrapped);

  Table table;
  table.columns = {"E", "k", "log10_T", "delta_unwrapped"};
  table.rows.reserve(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    table.rows.push_back(
        {energies[i], points[i].k, points[i].log10_t, unwrapped[i]});
  }
  table.metadata = make_metadata("transmit", cfg);
  return table;
}

Table run_ttime(const SweepConfig& cfg) {
  return ttime_table(cfg, cfg.potential.build(), "ttime");
}

Table run_periodic(const SweepConfig& cfg) {
  const auto energies = require_energy(cfg, "periodic").values();
  require_periodic_lists(cfg, "periodic");
  const auto potential = cfg.potential.build();
  const auto& counts = cfg.repetition_counts;
  const auto& gaps = cfg.gaps;

  struct Point {
    double chi = 0.0;
    std::optional<double> phase;
    std::optional<double> log10_t;
    std::optional<double> tau;
    bool flagged = false;
  };
  const std::size_t total = energies.size() * counts.size() * gaps.size();
  std::vector<Point> points(total);
  parallel_for(total, [&](std::size_t idx) {
    const std::size_t ie = idx / (counts.size() * gaps.size());
    const std::size_t rest = idx % (counts.size() * gaps.size());
    const std::size_t in = rest / gaps.size();
    const std::size_t il = rest % gaps.size();
    const double e = energies[ie];
    const PeriodicSpec spec(counts[in], gaps[il], potential.total_width());

    Point p;
    const auto t = transmission(cell_matrix(e, potential), e);
    const auto periodic = t_periodic(t, spec, std::sqrt(e));
    p.chi = periodic.chi;
    p.flagged = periodic.near_singular;
    if (!periodic.near_singular) {
      p.phase = periodic.phase;
      p.log10_t = 2.0 * periodic.log_magnitude / kLn10;
      try {
        p.tau = tunneling_time_periodic(potential, spec, e,
                                        cfg.derivative_step).tau;
      } catch (const ResonanceProximityError&) {
        p.flagged = true;
      }
    }
    points[idx] = p;
  });

  Table table;
  table.columns = {"E", "N", "L", "chi", "phi_N", "log10_T_N", "tau_N",
                   "resonance_flag"};
  table.rows.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::size_t ie = idx / (counts.size() * gaps.size());
    const std::size_t rest = idx % (counts.size() * gaps.size());
    const std::size_t in = rest / gaps.size();
    const std::size_t il = rest % gaps.size();
    const auto& p = points[idx];
    std::vector<Cell> row;
    row.push_back(energies[ie]);
    row.push_back(static_cast<long long>(counts[in]));
    row.push_back(gaps[il]);
    row.push_back(p.chi);
    row.push_back(p.phase ? Cell{*p.phase} : Cell{std::monostate{}});
    row.push_back(p.log10_t ? Cell{*p.log10_t} : Cell{std::monostate{}});
    row.push_back(p.tau ? Cell{*p.tau} : Cell{std::monostate{}});
    row.push_back(static_cast<long long>(p.flagged ? 1 : 0));
    table.rows.push_back(std::move(row));
  }
  table.metadata = make_metadata("periodic", cfg);
  return table;
}

Table run_hartman(const SweepConfig& cfg) {
  if (cfg.potential.kind != PotentialSpec::Kind::kRectangular) {
    throw ConfigError(
        "config: field 'potential.type' must be rectangular for hartman");
  }
  const double energy = require_single_energy(cfg, "hartman");
  if (!(energy < cfg.potential.height)) {
    throw ConfigError("config: field 'E' must be below potential.V for "
                      "hartman");
  }
  const double limit = hartman_limit_rect(cfg.potential.height, energy);
  return saturation_table(cfg, "hartman", limit);
}

Table run_ghe(const SweepConfig& cfg) {
  const double energy = require_single_energy(cfg, "ghe");
  require_periodic_lists(cfg, "ghe");
  const auto cell = cfg.potential.build();
  const auto& counts = cfg.repetition_counts;
  const auto& gaps = cfg.gaps;

  const double tau_cell =
      tunneling_time_single(cell, energy, cfg.derivative_step).tau;

  const std::size_t total = counts.size() * gaps.size();
  std::vector<std::optional<double>> taus(total);
  parallel_for(total, [&](std::size_t idx) {
    const std::size_t in = idx / gaps.size();
    const std::size_t il = idx % gaps.size();
    const PeriodicSpec spec(counts[in], gaps[il], cell.total_width());
    try {
      taus[idx] = tunneling_time_periodic(cell, spec, energy,
                                          cfg.derivative_step).tau;
    } catch (const ResonanceProximityError&) {
      taus[idx] = std::nullopt;
    }
  });

  std::optional<double> lo, hi;
  for (const auto& t : taus) {
    if (!t) continue;
    if (!lo || *t < *lo) lo = *t;
    if (!hi || *t > *hi) hi = *t;
  }
  const std::optional<double> spread =
      lo ? std::optional<double>(*hi - *lo) : std::nullopt;

  Table table;
  table.columns = {"N", "L", "tau_N", "tau_0", "abs_diff", "spread"};
  table.rows.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::size_t in = idx / gaps.size();
    const std::size_t il = idx % gaps.size();
    std::vector<Cell> row;
    row.push_back(static_cast<long long>(counts[in]));
    row.push_back(gaps[il]);
    row.push_back(taus[idx] ? Cell{*taus[idx]} : Cell{std::monostate{}});
    row.push_back(tau_cell);
    row.push_back(taus[idx] ? Cell{std::abs(*taus[idx] - tau_cell)}
                            : Cell{std::monostate{}});
    row.push_back(spread ? Cell{*spread} : Cell{std::monostate{}});
    table.rows.push_back(std::move(row));
  }
  table.metadata = make_metadata("ghe", cfg);
  return table;
}

Table run_fractal(const SweepConfig& cfg) {
  if (cfg.potential.kind != PotentialSpec::Kind::kCantor) {
    throw ConfigError(
        "config: field 'potential.type' must be cantor for fractal");
  }
  if (cfg.fractal_mode == "ttime") {
    return ttime_table(cfg, cfg.potential.build(), "fractal");
  }
  return saturation_table(cfg, "fractal", std::nullopt);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (std::holds_alternative<double>(row[c])) {
        out += format_double(std::get<double>(row[c]));
      } else if (std::holds_alternative<long long>(row[c])) {
        out += std::to_string(std::get<long long>(row[c]));
      }
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["metadata"] = table.metadata;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::holds_alternative<double>(row[c])) {
        obj[table.columns[c]] = std::get<double>(row[c]);
      } else if (std::holds_alternative<long long>(row[c])) {
        obj[table.columns[c]] = std::get<long long>(row[c]);
      } else {
        obj[table.columns[c]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::size_t worker_count() {
  if (const char* env = std::getenv("QTT_SWEEP_WORKERS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0 && parsed < 1024) {
      return static_cast<std::size_t>(parsed);
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qtt::sweep
