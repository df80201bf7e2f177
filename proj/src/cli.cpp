#include "hessdist/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "hessdist/distance.hpp"
#include "hessdist/entropy.hpp"
#include "hessdist/hessian.hpp"

namespace hessdist::cli {

namespace {

enum class Verbosity { Quiet, Info, Debug };

Verbosity verbosity() {
  const char* env = std::getenv("HESSDIST_LOG");
  if (env == nullptr) return Verbosity::Quiet;
  const std::string level(env);
  if (level == "debug") return Verbosity::Debug;
  if (level == "info") return Verbosity::Info;
  return Verbosity::Quiet;
}

void log(Verbosity level, const std::string& message) {
  if (verbosity() >= level) {
    std::clog << (level == Verbosity::Debug ? "[debug] " : "[info] ") << message << '\n';
  }
}

constexpr double kGridSpacingTolerance = 1e-9;
constexpr std::size_t kMinGrid = 16;
constexpr std::size_t kEntropyTableSize = 50;

double parse_number(const std::string& field, const std::string& path, std::size_t row) {
  const auto first = field.find_first_not_of(" \t");
  const auto last = field.find_last_not_of(" \t");
  if (first == std::string::npos) {
    throw Error(ErrorCode::ParseError, path + ": empty field on data row " + std::to_string(row));
  }
  const std::string trimmed = field.substr(first, last - first + 1);
  char* end = nullptr;
  const double value = std::strtod(trimmed.c_str(), &end);
  if (end != trimmed.c_str() + trimmed.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError,
                path + ": cannot parse '" + trimmed + "' on data row " + std::to_string(row));
  }
  return value;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

GridDensity load_grid(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() != 2 || trim(table.header[0]) != "x" || trim(table.header[1]) != "p") {
    throw Error(ErrorCode::ParseError, path + ": expected header 'x,p'");
  }
  std::vector<double> xs;
  std::vector<double> ps;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != 2) {
      throw Error(ErrorCode::ParseError, path + ": data row " + std::to_string(r + 1) +
                                             " does not have two fields");
    }
    xs.push_back(parse_number(row[0], path, r + 1));
    ps.push_back(parse_number(row[1], path, r + 1));
  }
  if (xs.size() < 2) throw Error(ErrorCode::ParseError, path + ": need at least two grid rows");

  const double lo = xs.front();
  const double hi = xs.back();
  if (!(hi > lo)) throw Error(ErrorCode::ParseError, path + ": x column is not increasing");
  const double step = (hi - lo) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expected = lo + static_cast<double>(i) * step;
    if (std::abs(xs[i] - expected) > kGridSpacingTolerance * (hi - lo)) {
      throw Error(ErrorCode::ParseError,
                  path + ": x column is not a uniform increasing grid at row " + std::to_string(i + 1));
    }
  }
  return build_density(ps, lo, hi, Normalization::Strict);
}

GridDensity load_samples(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() != 1 || trim(table.header[0]) != "sample") {
    throw Error(ErrorCode::ParseError, path + ": expected header 'sample'");
  }
  std::vector<double> samples;
  samples.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != 1) {
      throw Error(ErrorCode::ParseError, path + ": data row " + std::to_string(r + 1) +
                                             " does not have one field");
    }
    samples.push_back(parse_number(table.rows[r][0], path, r + 1));
  }
  return from_samples(samples);
}

InputSpec parse_input(const std::string& arg, InputFormat fallback) {
  if (arg.starts_with("grid:")) return {arg.substr(5), InputFormat::Grid};
  if (arg.starts_with("samples:")) return {arg.substr(8), InputFormat::Samples};
  return {arg, fallback};
}

std::optional<InputFormat> parse_format(const std::string& name) {
  if (name == "grid") return InputFormat::Grid;
  if (name == "samples") return InputFormat::Samples;
  return std::nullopt;
}

std::vector<GridDensity> load_all(const RunConfig& config) {
  std::vector<GridDensity> out;
  out.reserve(config.inputs.size());
  for (const auto& input : config.inputs) {
    out.push_back(resample(load_input(input.path, input.format), config.grid));
    log(Verbosity::Debug, "loaded " + input.path + " on [" + format_double(out.back().support_lo()) +
                              ", " + format_double(out.back().support_hi()) + "]");
  }
  return out;
}

void validate(const RunConfig& config) {
  const std::size_t n = config.inputs.size();
  const auto need = [&](bool ok, const std::string& what) {
    if (!ok) {
      throw Error(ErrorCode::InvalidArgument,
                  command_name(config.command) + " needs " + what + ", got " + std::to_string(n));
    }
  };
  switch (config.command) {
    case Command::Dist: need(n == 2, "exactly 2 inputs"); break;
    case Command::Geodesic: need(n == 2, "exactly 2 inputs"); break;
    case Command::Matrix: need(n >= 2, "at least 2 inputs"); break;
    case Command::HessianCheck: need(n == 1, "exactly 1 input"); break;
    case Command::EntropyTable: break;
  }
  if (config.quantiles < kMinGrid || config.grid < kMinGrid) {
    throw Error(ErrorCode::InvalidArgument, "--grid and --quantiles must be at least 16");
  }
  if (config.steps < 2) throw Error(ErrorCode::InvalidArgument, "--steps must be at least 2");
}

CsvTable run_dist(const RunConfig& config, const EntropyModel& e) {
  const auto densities = load_all(config);
  const GridDensity& p = densities[0];
  const GridDensity& q = densities[1];
  const double by_quantile = dist_h_quantile(e, p, q, config.quantiles);
  const double by_map = dist_h_map(e, p, q);
  CsvTable table;
  table.header = {"dist_h_quantile", "dist_h_map", "formulation_gap", "dist_wasserstein",
                  "dist_hellinger"};
  table.rows.push_back({format_double(by_quantile), format_double(by_map),
                        format_double(std::abs(by_quantile - by_map)),
                        format_double(dist_wasserstein(p, q, config.quantiles)),
                        format_double(dist_hellinger(p, q))});
  return table;
}

CsvTable run_matrix(const RunConfig& config, const EntropyModel& e) {
  const auto densities = load_all(config);
  const std::size_t n = densities.size();
  std::vector<QuantileFunction> quantiles;
  quantiles.reserve(n);
  for (const auto& d : densities) quantiles.push_back(quantile(d, config.quantiles));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> results(pairs.size(), 0.0);
  std::vector<std::exception_ptr> failures(pairs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      try {
        results[k] = dist_h_quantile(e, quantiles[pairs[k].first], quantiles[pairs[k].second]);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, pairs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    matrix[pairs[k].first][pairs[k].second] = results[k];
    matrix[pairs[k].second][pairs[k].first] = results[k];
  }

  CsvTable table;
  table.header.push_back("name");
  for (const auto& input : config.inputs) {
    table.header.push_back(std::filesystem::path(input.path).filename().string());
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row{table.header[i + 1]};
    for (std::size_t j = 0; j < n; ++j) row.push_back(format_double(matrix[i][j]));
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable run_geodesic(const RunConfig& config, const EntropyModel& e) {
  const auto densities = load_all(config);
  std::vector<double> t_grid(config.steps);
  for (std::size_t k = 0; k < config.steps; ++k) {
    t_grid[k] = static_cast<double>(k) / static_cast<double>(config.steps - 1);
  }
  // The first input is the start of the path (t = 0).
  const GeodesicPath path = geodesic(e, densities[1], densities[0], t_grid, config.quantiles);

  CsvTable table;
  table.header = {"t", "y", "quantile", "derivative"};
  table.rows.reserve(config.steps * config.quantiles);
  for (std::size_t k = 0; k < path.t_grid.size(); ++k) {
    const QuantileFunction& qf = path.quantiles[k];
    for (std::size_t j = 0; j < qf.size(); ++j) {
      table.rows.push_back({format_double(path.t_grid[k]), format_double(qf.y(j)),
                            format_double(qf.values()[j]), format_double(qf.derivative()[j])});
    }
  }
  return table;
}

CsvTable run_hessian_check(const RunConfig& config, const EntropyModel& e) {
  const auto densities = load_all(config);
  const GridDensity& p = densities[0];
  const TangentPerturbation s = cosine_perturbation(p);

  // Largest eps <= 0.1 keeping p + eps s at 1% of p's minimum or above.
  const auto pv = p.values();
  const auto sv = s.values();
  double eps = 0.1;
  const auto admissible = [&](double v) {
    for (std::size_t i = 0; i < pv.size(); ++i) {
      if (pv[i] + v * sv[i] < 0.01 * p.p_min()) return false;
    }
    return true;
  };
  for (int halvings = 0; !admissible(eps); ++halvings) {
    if (halvings > 60) {
      throw Error(ErrorCode::PerturbedDensityInvalid, "no admissible perturbation size");
    }
    eps *= 0.5;
  }
  const std::vector<double> eps_list{eps, 0.5 * eps, 0.25 * eps};
  log(Verbosity::Info, "hessian form = " + format_double(hessian_form(e, p, s)));

  CsvTable table;
  table.header = {"eps", "residual"};
  for (const auto& sample : taylor_residual(e, p, s, eps_list, config.quantiles)) {
    table.rows.push_back({format_double(sample.eps), format_double(sample.residual)});
  }
  return table;
}

CsvTable run_entropy_table(const EntropyModel& e) {
  CsvTable table;
  table.header = {"y", "h_closed", "h_numeric", "abs_diff"};
  for (std::size_t k = 0; k < kEntropyTableSize; ++k) {
    const double y =
        std::pow(10.0, -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(kEntropyTableSize - 1));
    const double numeric = h_numeric(e.f_second_function(), y);
    const double closed = e.has_closed_h() ? e.h_closed(y) : numeric;
    table.rows.push_back({format_double(y), format_double(closed), format_double(numeric),
                          format_double(std::abs(closed - numeric))});
  }
  return table;
}

void apply_config_file(const std::string& path, RunConfig& config, const CLI::App& app,
                       InputFormat flag_format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, "no such config file: " + path);
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, path + ": " + ex.what());
  }
  if (!json.is_object()) throw Error(ErrorCode::ParseError, path + ": expected a JSON object");

  const auto given = [&](const std::string& flag) { return app.count(flag) > 0; };
  try {
    InputFormat format = flag_format;
    if (json.contains("format") && !given("--format")) {
      const auto parsed = parse_format(json.at("format").get<std::string>());
      if (!parsed) throw Error(ErrorCode::ParseError, path + ": unknown format");
      format = *parsed;
    }
    for (const auto& [key, value] : json.items()) {
      if (key == "command") {
        if (given("command")) continue;
        const auto command = parse_command(value.get<std::string>());
        if (!command) throw Error(ErrorCode::ParseError, path + ": unknown command");
        config.command = *command;
      } else if (key == "entropy") {
        if (!given("--entropy")) config.entropy = value.get<std::string>();
      } else if (key == "gamma") {
        if (!given("--gamma")) config.gamma = value.get<double>();
      } else if (key == "grid") {
        if (!given("--grid")) config.grid = value.get<std::size_t>();
      } else if (key == "quantiles") {
        if (!given("--quantiles")) config.quantiles = value.get<std::size_t>();
      } else if (key == "steps") {
        if (!given("--steps")) config.steps = value.get<std::size_t>();
      } else if (key == "out") {
        if (!given("--out")) config.output = value.get<std::string>();
      } else if (key == "inputs") {
        if (given("inputs")) continue;
        config.inputs.clear();
        for (const auto& item : value) config.inputs.push_back(parse_input(item.get<std::string>(), format));
      } else if (key != "format") {
        throw Error(ErrorCode::ParseError, path + ": unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, path + ": " + ex.what());
  }
}

}  // namespace

int exit_code(ErrorCode code) { return 10 + static_cast<int>(code); }

std::optional<Command> parse_command(const std::string& name) {
  if (name == "dist") return Command::Dist;
  if (name == "matrix") return Command::Matrix;
  if (name == "geodesic") return Command::Geodesic;
  if (name == "hessian-check") return Command::HessianCheck;
  if (name == "entropy-table") return Command::EntropyTable;
  return std::nullopt;
}

std::string command_name(Command command) {
  switch (command) {
    case Command::Dist: return "dist";
    case Command::Matrix: return "matrix";
    case Command::Geodesic: return "geodesic";
    case Command::HessianCheck: return "hessian-check";
    case Command::EntropyTable: return "entropy-table";
  }
  return "unknown";
}

GridDensity load_input(const std::string& path, InputFormat format) {
  return format == InputFormat::Grid ? load_grid(path) : load_samples(path);
}

CsvTable execute(const RunConfig& config) {
  validate(config);
  const EntropyModel e = parse_entropy(config.entropy, config.gamma);
  log(Verbosity::Info, command_name(config.command) + " with entropy " + e.name());
  switch (config.command) {
    case Command::Dist: return run_dist(config, e);
    case Command::Matrix: return run_matrix(config, e);
    case Command::Geodesic: return run_geodesic(config, e);
    case Command::HessianCheck: return run_hessian_check(config, e);
    case Command::EntropyTable: return run_entropy_table(e);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown command");
}

int run(const RunConfig& config, std::ostream& out) {
  const CsvTable table = execute(config);
  if (config.output.empty()) {
    out << to_csv(table);
  } else {
    write_output(table, config.output);
    log(Verbosity::Info, "wrote " + std::to_string(table.rows.size()) + " rows to " + config.output);
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transport information Hessian distances between 1-D densities"};
  RunConfig config;
  std::string command;
  std::vector<std::string> inputs;
  std::string format = "grid";
  std::string config_path;
  double gamma = 0.0;

  app.add_option("command", command, "dist | matrix | geodesic | hessian-check | entropy-table");
  app.add_option("inputs", inputs, "input files; prefix with grid: or samples: to override --format");
  app.add_option("--entropy", config.entropy, "boltzmann | quadratic | cross | reciprocal | gamma[:g]");
  app.add_option("--gamma", gamma, "parameter of the gamma entropy");
  app.add_option("--grid", config.grid, "grid intervals N each input is resampled to");
  app.add_option("--quantiles", config.quantiles, "quantile grid size M");
  app.add_option("--steps", config.steps, "geodesic time steps");
  app.add_option("--out", config.output, "output CSV path (default: standard output)");
  app.add_option("--format", format, "default input format: grid | samples");
  app.add_option("--config", config_path, "JSON config file; flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    const auto default_format = parse_format(format);
    if (!default_format) {
      err << "error: unknown --format '" << format << "'\n";
      return kExitUsage;
    }
    if (app.count("--gamma") > 0) config.gamma = gamma;
    for (const auto& arg : inputs) config.inputs.push_back(parse_input(arg, *default_format));
    if (!command.empty()) {
      const auto parsed = parse_command(command);
      if (!parsed) {
        err << "error: unknown command '" << command << "'\n";
        return kExitUsage;
      }
      config.command = *parsed;
    }
    if (!config_path.empty()) {
      apply_config_file(config_path, config, app, *default_format);
    } else if (command.empty()) {
      err << "error: a command is required\n";
      return kExitUsage;
    }
    return run(config, out);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code(ex.code());
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace hessdist::cli
