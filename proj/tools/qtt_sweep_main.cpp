// qtt-sweep: transmission and stationary-phase tunneling-time sweeps over
// piecewise-constant potentials and their periodic repetitions. Reads a JSON
// config, runs the requested sweep, writes CSV or JSON tables.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtt/sweep.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::optional<double> energy;
  std::vector<int> repetition_counts;
  std::vector<double> gaps;
  std::vector<double> thickness;
  std::string out_path;
  std::string format;
};

void add_common_options(CLI::App* cmd, CliOverrides* opts) {
  cmd->add_option("--config", opts->config_path,
                  "JSON sweep configuration file")
      ->required();
  cmd->add_option("--E", opts->energy, "override the single energy E");
  cmd->add_option("--N", opts->repetition_counts,
                  "override the repetition-count list")
      ->delimiter(',');
  cmd->add_option("--L", opts->gaps, "override the gap-length list")
      ->delimiter(',');
  cmd->add_option("--b", opts->thickness, "override the thickness grid")
      ->delimiter(',');
  cmd->add_option("--out", opts->out_path,
                  "output file (stdout when omitted)");
  cmd->add_option("--format", opts->format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

qtt::sweep::SweepConfig load_config(const CliOverrides& opts) {
  std::ifstream in(opts.config_path);
  if (!in) {
    throw qtt::sweep::ConfigError("config: cannot open file '" +
                                  opts.config_path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw qtt::sweep::ConfigError("config: invalid JSON in '" +
                                  opts.config_path + "': " +
                                  std::string(err.what()));
  }
  auto cfg = qtt::sweep::parse_config(doc);

  if (opts.energy) {
    if (!(*opts.energy > 0.0)) {
      throw qtt::sweep::ConfigError("config: flag --E must be > 0");
    }
    cfg.single_energy = *opts.energy;
  }
  if (!opts.repetition_counts.empty()) {
    for (int n : opts.repetition_counts) {
      if (n < 1) {
        throw qtt::sweep::ConfigError("config: flag --N entries must be >= 1");
      }
    }
    cfg.repetition_counts = opts.repetition_counts;
  }
  if (!opts.gaps.empty()) {
    for (double l : opts.gaps) {
      if (!(l >= 0.0)) {
        throw qtt::sweep::ConfigError("config: flag --L entries must be >= 0");
      }
    }
    cfg.gaps = opts.gaps;
  }
  if (!opts.thickness.empty()) {
    for (double b : opts.thickness) {
      if (!(b > 0.0)) {
        throw qtt::sweep::ConfigError("config: flag --b entries must be > 0");
      }
    }
    cfg.thickness = opts.thickness;
  }
  if (opts.format == "csv") cfg.format = qtt::sweep::OutputFormat::kCsv;
  if (opts.format == "json") cfg.format = qtt::sweep::OutputFormat::kJson;
  return cfg;
}

void write_output(const qtt::sweep::Table& table,
                  const qtt::sweep::SweepConfig& cfg,
                  const std::string& out_path) {
  const bool csv = cfg.format == qtt::sweep::OutputFormat::kCsv;
  const std::string payload =
      csv ? qtt::sweep::to_csv(table) : qtt::sweep::to_json(table);
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + out_path + "'");
  }
  out << payload;
  // CSV cannot carry the config echo inline; park it in a sidecar so every
  // result file re-parses to the sweep that produced it.
  if (csv) {
    std::ofstream meta(out_path + ".meta.json", std::ios::binary);
    if (!meta) {
      throw std::runtime_error("cannot open metadata file '" + out_path +
                               ".meta.json'");
    }
    meta << table.metadata.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "transmission and stationary-phase tunneling-time sweeps for "
      "piecewise-constant potentials (units 2m = hbar = c = 1)"};
  app.require_subcommand(1);

  CliOverrides opts;
  using Runner = qtt::sweep::Table (*)(const qtt::sweep::SweepConfig&);
  struct Command {
    const char* name;
    const char* help;
    Runner runner;
  };
  const Command commands[] = {
      {"transmit", "per-cell transmission over the energy grid",
       &qtt::sweep::run_transmit},
      {"ttime", "single-cell tunneling time over the energy grid",
       &qtt::sweep::run_ttime},
      {"periodic", "N-cell transmission and tunneling time over E x N x L",
       &qtt::sweep::run_periodic},
      {"hartman", "thickness saturation scan for a rectangular barrier",
       &qtt::sweep::run_hartman},
      {"ghe", "gap-independence experiment over N x L",
       &qtt::sweep::run_ghe},
      {"fractal", "expand a cantor/svc cell and run ttime or hartman",
       &qtt::sweep::run_fractal},
  };

  Runner selected = nullptr;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common_options(sub, &opts);
    sub->callback([&selected, &cmd]() { selected = cmd.runner; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = load_config(opts);
    const auto table = selected(cfg);
    write_output(table, cfg, opts.out_path);
  } catch (const qtt::sweep::ConfigError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
