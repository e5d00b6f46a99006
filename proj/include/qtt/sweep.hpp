#ifndef QTT_SWEEP_HPP
#define QTT_SWEEP_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qtt/potential.hpp"

namespace qtt::sweep {

// Malformed configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class OutputFormat { kCsv, kJson };

// Potential sub-schema of the sweep config.
struct PotentialSpec {
  enum class Kind { kRectangular, kSegments, kCantor };

  Kind kind = Kind::kRectangular;
  double height = 0.0;  // V (rectangular, cantor)
  double width = 0.0;   // b (rectangular), total width (cantor)
  std::vector<Segment> segments;
  CantorVariant variant = CantorVariant::kStandard;
  double ratio = 1.0 / 3.0;
  int level = 0;

  PiecewiseConstantPotential build() const;
  // Same shape scaled to the given total width (thickness scans).
  PiecewiseConstantPotential build_with_width(double total_width) const;
};

struct EnergyGrid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  std::vector<double> values() const;
};

struct SweepConfig {
  PotentialSpec potential;
  std::optional<EnergyGrid> energy;
  std::optional<double> single_energy;  // "E"
  std::vector<int> repetition_counts;   // periodic.N
  std::vector<double> gaps;             // periodic.L
  std::vector<double> thickness;        // thickness grid for scans
  std::optional<double> derivative_step;
  OutputFormat format = OutputFormat::kCsv;
  double saturation_tolerance = 1e-6;
  std::string fractal_mode = "ttime";  // "ttime" | "hartman"
};

// Parse and validate a JSON config document. Throws ConfigError naming the
// offending field.
SweepConfig parse_config(const nlohmann::json& doc);

// Normalized re-serialization of a config; re-parsing it yields an
// equivalent SweepConfig.
nlohmann::ordered_json config_echo(const SweepConfig& cfg);

// One table cell: empty (flagged/not applicable), float, or integer.
using Cell = std::variant<std::monostate, double, long long>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json metadata;
};

// Sweep runners, one per CLI subcommand. Rows come out in deterministic
// lexicographic grid order regardless of internal parallelism.
Table run_transmit(const SweepConfig& cfg);
Table run_ttime(const SweepConfig& cfg);
Table run_periodic(const SweepConfig& cfg);
Table run_hartman(const SweepConfig& cfg);
Table run_ghe(const SweepConfig& cfg);
Table run_fractal(const SweepConfig& cfg);

// RFC-style CSV: header row, comma separators, LF line endings, floats with
// 17 significant digits.
std::string to_csv(const Table& table);

// JSON document with the metadata object (config echo + units note) and the
// row array.
std::string to_json(const Table& table);

// Worker count for grid evaluation: the QTT_SWEEP_WORKERS environment
// variable when set, otherwise the hardware concurrency.
std::size_t worker_count();

// Run fn(0..n-1) over worker_count() threads; any exception is rethrown on
// the calling thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qtt::sweep

#endif  // QTT_SWEEP_HPP
