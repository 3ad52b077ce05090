#include "secnoma/experiment.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "secnoma/analytic.hpp"
#include "secnoma/errors.hpp"
#include "secnoma/optimize.hpp"

namespace secnoma {

Mode parse_mode(const std::string& s) {
  if (s == "validate") return Mode::validate;
  if (s == "sweep") return Mode::sweep;
  if (s == "optimize") return Mode::optimize;
  if (s == "compare") return Mode::compare;
  if (s == "tradeoff") return Mode::tradeoff;
  throw std::invalid_argument("unknown mode: " + s);
}

SweepAxis parse_axis(const std::string& s) {
  if (s == "alpha") return SweepAxis::alpha;
  if (s == "snr_db") return SweepAxis::snr_db;
  if (s == "d2") return SweepAxis::d2;
  if (s == "r_th") return SweepAxis::r_th;
  if (s == "rs_th") return SweepAxis::rs_th;
  if (s == "xi") return SweepAxis::xi;
  throw std::invalid_argument("unknown sweep_axis: " + s);
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::validate: return "validate";
    case Mode::sweep: return "sweep";
    case Mode::optimize: return "optimize";
    case Mode::compare: return "compare";
    case Mode::tradeoff: return "tradeoff";
  }
  return "?";
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::snr_db: return "snr_db";
    case SweepAxis::d2: return "d2";
    case SweepAxis::r_th: return "r_th";
    case SweepAxis::rs_th: return "rs_th";
    case SweepAxis::xi: return "xi";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': not a number: '" + value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("key '" + key + "': trailing junk in '" + value + "'");
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v < 0.0 || v != std::floor(v))
    throw std::invalid_argument("key '" + key + "': expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key or value");

    if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "sweep_axis") cfg.axis = parse_axis(value);
    else if (key == "sweep_start") cfg.sweep_start = to_double(key, value);
    else if (key == "sweep_stop") cfg.sweep_stop = to_double(key, value);
    else if (key == "sweep_step") cfg.sweep_step = to_double(key, value);
    else if (key == "d1_m") cfg.base.d1_m = to_double(key, value);
    else if (key == "d2_m") cfg.base.d2_m = to_double(key, value);
    else if (key == "path_loss_const") cfg.base.path_loss_const = to_double(key, value);
    else if (key == "path_loss_exp") cfg.base.path_loss_exp = to_double(key, value);
    else if (key == "noise_dbm") cfg.base.noise_dbm = to_double(key, value);
    else if (key == "snr_db") cfg.base.snr_db = to_double(key, value);
    else if (key == "snr_offset_db") cfg.snr_offset_db = to_double(key, value);
    else if (key == "residual_dbm") cfg.base.residual_dbm = to_double(key, value);
    else if (key == "residual11_dbm") cfg.base.residual11_dbm = to_double(key, value);
    else if (key == "residual22_dbm") cfg.base.residual22_dbm = to_double(key, value);
    else if (key == "r1_th") cfg.base.r1_th = to_double(key, value);
    else if (key == "r2_th") cfg.base.r2_th = to_double(key, value);
    else if (key == "rs1_th") cfg.base.rs1_th = to_double(key, value);
    else if (key == "rs2_th") cfg.base.rs2_th = to_double(key, value);
    else if (key == "xi") cfg.base.xi = to_double(key, value);
    else if (key == "alpha") cfg.alpha = to_double(key, value);
    else if (key == "samples") cfg.sim.sample_count = to_u64(key, value);
    else if (key == "seed") cfg.sim.seed = to_u64(key, value);
    else if (key == "conditioning") {
      if (value == "independent") cfg.sim.conditioning = Conditioning::independent;
      else if (value == "sorted") cfg.sim.conditioning = Conditioning::sorted;
      else throw std::invalid_argument("conditioning must be independent|sorted");
    } else if (key == "with_monte_carlo") {
      if (value == "true") cfg.with_monte_carlo = true;
      else if (value == "false") cfg.with_monte_carlo = false;
      else throw std::invalid_argument("with_monte_carlo must be true|false");
    } else if (key == "golden_eps") cfg.golden_eps = to_double(key, value);
    else if (key == "quad_tol") cfg.quad_tol = to_double(key, value);
    else if (key == "pop_rmse_threshold") cfg.pop_rmse_threshold = to_double(key, value);
    else if (key == "sop_rmse_threshold") cfg.sop_rmse_threshold = to_double(key, value);
    else if (key == "out") cfg.out_path = value;
    else if (key == "format") {
      if (value == "csv") cfg.format = OutputFormat::csv;
      else if (value == "json") cfg.format = OutputFormat::json;
      else throw std::invalid_argument("format must be csv|json");
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

Cell Cell::num(double v) {
  if (!std::isfinite(v))
    throw std::logic_error("refusing to emit a non-finite result cell");
  return Cell{v};
}

Cell Cell::infeasible() { return Cell{std::string("infeasible")}; }

namespace {

std::vector<double> sweep_values(const ExperimentConfig& cfg) {
  if (!(cfg.sweep_step > 0.0))
    throw std::invalid_argument("sweep_step must be > 0");
  if (cfg.sweep_start > cfg.sweep_stop)
    throw std::invalid_argument("empty sweep range (start > stop)");
  std::vector<double> values;
  for (double v = cfg.sweep_start; v <= cfg.sweep_stop + 0.5 * cfg.sweep_step;
       v += cfg.sweep_step) {
    values.push_back(std::min(v, cfg.sweep_stop));
  }
  return values;
}

// A sweep point: the system built for the axis value plus the alpha to probe.
struct SweepPoint {
  SystemConfig sys;
  double alpha;
};

SweepPoint point_at(const ExperimentConfig& cfg, double value) {
  EngineeringParams p = cfg.base;
  double alpha = cfg.alpha;
  switch (cfg.axis) {
    case SweepAxis::alpha: alpha = value; break;
    case SweepAxis::snr_db: p.snr_db = value + cfg.snr_offset_db; break;
    case SweepAxis::d2: p.d2_m = value; break;
    case SweepAxis::r_th: p.r1_th = p.r2_th = value; break;
    case SweepAxis::rs_th: p.rs1_th = p.rs2_th = value; break;
    case SweepAxis::xi: p.xi = value; break;
  }
  SweepPoint pt{make_config(p), alpha};
  if (!(pt.alpha > 0.0 && pt.alpha < 1.0))
    throw std::invalid_argument("alpha must lie strictly inside (0,1)");
  return pt;
}

void run_validate(const ExperimentConfig& cfg, RunOutcome& out) {
  const std::vector<double> values = sweep_values(cfg);
  if (values.size() < 2)
    throw std::invalid_argument("validate mode needs a grid of at least 2 points");

  out.table.columns = {to_string(cfg.axis), "alpha",
                       "pop_analytic", "pop_mc", "pop_mc_stderr",
                       "sop_near_analytic", "sop_near_mc", "sop_near_mc_stderr",
                       "sop_far_analytic", "sop_far_mc", "sop_far_mc_stderr",
                       "sop_near_asymptotic", "sop_far_asymptotic",
                       "rmse_pop", "rmse_sop_near", "rmse_sop_far"};

  const double alpha = cfg.alpha;
  std::vector<SystemConfig> grid;
  std::vector<PointEstimates> mc;
  std::vector<std::array<double, 5>> analytic;  // pop, s1, s2, asy1, asy2
  for (double v : values) {
    const SystemConfig sys = point_at(cfg, v).sys;
    grid.push_back(sys);
    mc.push_back(estimate_point(sys, alpha, cfg.sim));
    analytic.push_back({pop(sys, alpha).value,
                        sop_near(sys, alpha, cfg.quad_tol).value,
                        sop_far(sys, alpha, cfg.quad_tol).value,
                        sop_near_asymptotic(sys, alpha).value,
                        sop_far_asymptotic(sys, alpha).value});
  }

  double se_pop = 0.0, se_s1 = 0.0, se_s2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dp = analytic[i][0] - mc[i].pop.estimate;
    const double d1 = analytic[i][1] - mc[i].sop_near.estimate;
    const double d2 = analytic[i][2] - mc[i].sop_far.estimate;
    se_pop += dp * dp;
    se_s1 += d1 * d1;
    se_s2 += d2 * d2;
  }
  const double n = static_cast<double>(grid.size());
  const double rmse_pop = std::sqrt(se_pop / n);
  const double rmse_s1 = std::sqrt(se_s1 / n);
  const double rmse_s2 = std::sqrt(se_s2 / n);

  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<Cell> row;
    row.push_back(Cell::num(values[i]));
    row.push_back(Cell::num(alpha));
    row.push_back(Cell::num(analytic[i][0]));
    row.push_back(Cell::num(mc[i].pop.estimate));
    row.push_back(Cell::num(mc[i].pop.std_error));
    row.push_back(Cell::num(analytic[i][1]));
    row.push_back(Cell::num(mc[i].sop_near.estimate));
    row.push_back(Cell::num(mc[i].sop_near.std_error));
    row.push_back(Cell::num(analytic[i][2]));
    row.push_back(Cell::num(mc[i].sop_far.estimate));
    row.push_back(Cell::num(mc[i].sop_far.std_error));
    row.push_back(Cell::num(analytic[i][3]));
    row.push_back(Cell::num(analytic[i][4]));
    row.push_back(Cell::num(rmse_pop));
    row.push_back(Cell::num(rmse_s1));
    row.push_back(Cell::num(rmse_s2));
    out.table.rows.push_back(std::move(row));
  }

  const bool pop_ok = rmse_pop < cfg.pop_rmse_threshold;
  const bool sop_ok = rmse_s1 < cfg.sop_rmse_threshold && rmse_s2 < cfg.sop_rmse_threshold;
  if (!pop_ok || !sop_ok) {
    out.exit_code = 2;
    std::ostringstream msg;
    msg << "validation failure: rmse_pop=" << rmse_pop << " (threshold "
        << cfg.pop_rmse_threshold << "), rmse_sop_near=" << rmse_s1
        << ", rmse_sop_far=" << rmse_s2 << " (threshold "
        << cfg.sop_rmse_threshold << ")";
    out.message = msg.str();
  }
}

void run_sweep(const ExperimentConfig& cfg, RunOutcome& out) {
  out.table.columns = {to_string(cfg.axis), "pop", "sop_near", "sop_far",
                       "sop_near_asymptotic", "sop_far_asymptotic"};
  if (cfg.with_monte_carlo) {
    for (const char* c : {"pop_mc", "pop_mc_stderr", "sop_near_mc",
                          "sop_near_mc_stderr", "sop_far_mc", "sop_far_mc_stderr"})
      out.table.columns.push_back(c);
  }

  for (double v : sweep_values(cfg)) {
    const SweepPoint pt = point_at(cfg, v);
    std::vector<Cell> row;
    row.push_back(Cell::num(v));
    row.push_back(Cell::num(pop(pt.sys, pt.alpha).value));
    row.push_back(Cell::num(sop_near(pt.sys, pt.alpha, cfg.quad_tol).value));
    row.push_back(Cell::num(sop_far(pt.sys, pt.alpha, cfg.quad_tol).value));
    row.push_back(Cell::num(sop_near_asymptotic(pt.sys, pt.alpha).value));
    row.push_back(Cell::num(sop_far_asymptotic(pt.sys, pt.alpha).value));
    if (cfg.with_monte_carlo) {
      const PointEstimates mc = estimate_point(pt.sys, pt.alpha, cfg.sim);
      row.push_back(Cell::num(mc.pop.estimate));
      row.push_back(Cell::num(mc.pop.std_error));
      row.push_back(Cell::num(mc.sop_near.estimate));
      row.push_back(Cell::num(mc.sop_near.std_error));
      row.push_back(Cell::num(mc.sop_far.estimate));
      row.push_back(Cell::num(mc.sop_far.std_error));
    }
    out.table.rows.push_back(std::move(row));
  }
}

void run_optimize(const ExperimentConfig& cfg, RunOutcome& out) {
  out.table.columns = {to_string(cfg.axis),
                       "alpha_pop_star", "pop_min",
                       "alpha1_star", "sop_near_min",
                       "alpha2_star", "sop_far_min",
                       "window_lb", "window_ub",
                       "alpha_minmax", "minmax_sop",
                       "alpha_minmax_asy", "minmax_sop_asy"};

  for (double v : sweep_values(cfg)) {
    const SweepPoint pt = point_at(cfg, v);
    std::vector<Cell> row;
    row.push_back(Cell::num(v));

    try {
      const PaSolution p = minimize_pop(pt.sys);
      row.push_back(Cell::num(p.alpha_star));
      row.push_back(Cell::num(p.objective_value));
    } catch (const NoFeasibleCandidate&) {
      row.push_back(Cell::infeasible());
      row.push_back(Cell::infeasible());
    }

    const PaSolution near = minimize_sop_near(pt.sys, cfg.golden_eps);
    row.push_back(Cell::num(near.alpha_star));
    row.push_back(Cell::num(near.objective_value));
    const PaSolution far = minimize_sop_far(pt.sys, cfg.golden_eps);
    row.push_back(Cell::num(far.alpha_star));
    row.push_back(Cell::num(far.objective_value));

    const AlphaInterval window = pop_feasible_interval(pt.sys);
    if (window.empty) {
      for (int k = 0; k < 6; ++k) row.push_back(Cell::infeasible());
    } else {
      row.push_back(Cell::num(window.lb));
      row.push_back(Cell::num(window.ub));
      const PaSolution mm = minmax_sop(pt.sys, cfg.golden_eps);
      row.push_back(Cell::num(mm.alpha_star));
      row.push_back(Cell::num(mm.objective_value));
      try {
        const PaSolution mma = minmax_sop_asymptotic(pt.sys);
        row.push_back(Cell::num(mma.alpha_star));
        row.push_back(Cell::num(mma.objective_value));
      } catch (const DegenerateTargetRate&) {
        row.push_back(Cell::infeasible());
        row.push_back(Cell::infeasible());
      }
    }
    out.table.rows.push_back(std::move(row));
  }
}

void run_compare(const ExperimentConfig& cfg, RunOutcome& out) {
  out.table.columns = {to_string(cfg.axis),
                       "alpha_minmax", "minmax_sop",
                       "obj_fixed_033", "gain_fixed_pct",
                       "alpha1_star", "obj_alpha1", "gain_alpha1_pct",
                       "alpha2_star", "obj_alpha2", "gain_alpha2_pct"};

  for (double v : sweep_values(cfg)) {
    const SweepPoint pt = point_at(cfg, v);
    std::vector<Cell> row;
    row.push_back(Cell::num(v));
    try {
      const PaSolution mm = minmax_sop(pt.sys, cfg.golden_eps);
      const PaSolution near = minimize_sop_near(pt.sys, cfg.golden_eps);
      const PaSolution far = minimize_sop_far(pt.sys, cfg.golden_eps);
      const double obj_fixed = max_sop(pt.sys, 0.33);
      const double obj_a1 = max_sop(pt.sys, near.alpha_star);
      const double obj_a2 = max_sop(pt.sys, far.alpha_star);
      auto gain = [&](double baseline) {
        return baseline > 0.0
                   ? 100.0 * (baseline - mm.objective_value) / baseline
                   : 0.0;
      };
      row.push_back(Cell::num(mm.alpha_star));
      row.push_back(Cell::num(mm.objective_value));
      row.push_back(Cell::num(obj_fixed));
      row.push_back(Cell::num(gain(obj_fixed)));
      row.push_back(Cell::num(near.alpha_star));
      row.push_back(Cell::num(obj_a1));
      row.push_back(Cell::num(gain(obj_a1)));
      row.push_back(Cell::num(far.alpha_star));
      row.push_back(Cell::num(obj_a2));
      row.push_back(Cell::num(gain(obj_a2)));
    } catch (const QosInfeasible&) {
      while (row.size() < out.table.columns.size())
        row.push_back(Cell::infeasible());
    }
    out.table.rows.push_back(std::move(row));
  }
}

void run_tradeoff(const ExperimentConfig& cfg, RunOutcome& out) {
  out.table.columns = {to_string(cfg.axis), "window_lb", "window_ub",
                       "alpha_minmax", "minmax_sop"};

  for (double v : sweep_values(cfg)) {
    const SweepPoint pt = point_at(cfg, v);
    std::vector<Cell> row;
    row.push_back(Cell::num(v));
    const AlphaInterval window = pop_feasible_interval(pt.sys);
    if (window.empty) {
      for (int k = 0; k < 4; ++k) row.push_back(Cell::infeasible());
    } else {
      row.push_back(Cell::num(window.lb));
      row.push_back(Cell::num(window.ub));
      const PaSolution mm = minmax_sop(pt.sys, cfg.golden_eps);
      row.push_back(Cell::num(mm.alpha_star));
      row.push_back(Cell::num(mm.objective_value));
    }
    out.table.rows.push_back(std::move(row));
  }
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg) {
  RunOutcome out;
  switch (cfg.mode) {
    case Mode::validate: run_validate(cfg, out); break;
    case Mode::sweep: run_sweep(cfg, out); break;
    case Mode::optimize: run_optimize(cfg, out); break;
    case Mode::compare: run_compare(cfg, out); break;
    case Mode::tradeoff: run_tradeoff(cfg, out); break;
  }
  return out;
}

namespace {

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string cell_text(const Cell& cell) {
  if (std::holds_alternative<double>(cell.value))
    return format_sig9(std::get<double>(cell.value));
  return std::get<std::string>(cell.value);
}

}  // namespace

void emit_csv(const ResultTable& table, std::ostream& os) {
  if (table.rows.empty()) throw std::logic_error("refusing to emit an empty table");
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_quote(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_quote(cell_text(row[i]));
    }
    os << '\n';
  }
}

void emit_json(const ResultTable& table, std::ostream& os) {
  if (table.rows.empty()) throw std::logic_error("refusing to emit an empty table");
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::holds_alternative<double>(row[i].value)) {
        // Round through the 9-digit text form so csv and json parse equal.
        obj[table.columns[i]] = std::strtod(cell_text(row[i]).c_str(), nullptr);
      } else {
        obj[table.columns[i]] = std::get<std::string>(row[i].value);
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

int run_and_write(const ExperimentConfig& cfg) {
  RunOutcome outcome;
  try {
    outcome = run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << cfg.out_path << '\n';
    return 1;
  }
  if (cfg.format == OutputFormat::csv)
    emit_csv(outcome.table, out);
  else
    emit_json(outcome.table, out);
  out.flush();
  if (!out) {
    std::cerr << "write failed: " << cfg.out_path << '\n';
    return 1;
  }

  if (!outcome.message.empty()) std::cerr << outcome.message << '\n';
  return outcome.exit_code;
}

}  // namespace secnoma
