#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "secnoma/montecarlo.hpp"
#include "secnoma/system_config.hpp"

namespace secnoma {

enum class Mode { validate, sweep, optimize, compare, tradeoff };
enum class SweepAxis { alpha, snr_db, d2, r_th, rs_th, xi };
enum class OutputFormat { csv, json };

Mode parse_mode(const std::string& s);
SweepAxis parse_axis(const std::string& s);
const char* to_string(Mode mode);
const char* to_string(SweepAxis axis);

// Flat key=value experiment description. Units live in the key names; the
// core library only ever sees the linear SystemConfig built per sweep point.
struct ExperimentConfig {
  Mode mode = Mode::sweep;
  SweepAxis axis = SweepAxis::snr_db;
  double sweep_start = 0.0;
  double sweep_stop = 30.0;
  double sweep_step = 6.0;

  EngineeringParams base;
  // The sweep axis snr_db drives the transmit SNR directly; snr_offset_db
  // shifts it so the axis can be read as an equivalent received SNR.
  double snr_offset_db = 0.0;
  double alpha = 0.5;             // fixed alpha for non-alpha sweeps

  SimulationSpec sim;
  bool with_monte_carlo = true;   // sweep mode may skip MC columns

  double golden_eps = 1e-2;
  double quad_tol = 1e-9;
  double pop_rmse_threshold = 3e-4;
  double sop_rmse_threshold = 5e-4;

  std::string out_path = "results.csv";
  OutputFormat format = OutputFormat::csv;
};

// Parses the flat key=value text ('#' starts a comment). Unknown keys are
// errors; silent unit mistakes are worse than loud ones.
// Throws std::invalid_argument with a line diagnostic.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// A cell is a number or the explicit "infeasible" sentinel; NaN is never
// emitted.
struct Cell {
  std::variant<double, std::string> value;
  static Cell num(double v);
  static Cell infeasible();
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RunOutcome {
  int exit_code = 0;              // 0 ok, 1 config error, 2 validation failure
  ResultTable table;
  std::string message;            // diagnostics for the console
};

// Executes the experiment and fills the result table (one row per sweep
// point, ordered by sweep value). Does not touch the filesystem.
RunOutcome run_experiment(const ExperimentConfig& cfg);

// Serialization. CSV: header row, RFC 4180 quoting, '.' decimal separator,
// 9 significant digits. JSON: array of objects with the same field names and
// the same 9-digit rounding, so the two formats parse back equal.
void emit_csv(const ResultTable& table, std::ostream& os);
void emit_json(const ResultTable& table, std::ostream& os);

// Runs, writes the result file, and returns the exit code (I/O failures are
// reported with path context on stderr and exit code 1).
int run_and_write(const ExperimentConfig& cfg);

}  // namespace secnoma
