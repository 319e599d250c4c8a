#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace symgrowth::cli {

/// Malformed or invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  Growth,
  Propagation,
  Delta,
  Spectrum,
  Filling,
  Distortion,
  Certificate,
  Appendix,
  Isoperimetric,
  All
};

std::string to_string(Experiment e);
/// ConfigError on an unknown name.
Experiment experiment_from_string(const std::string& name);

/// One flat set of knobs; each experiment reads the keys it needs.
struct ExperimentConfig {
  int version = 1;
  Experiment experiment = Experiment::All;
  nlohmann::json map;          // zoo description, growth
  std::string lift;            // standard lift id: propagation, delta, certificate
  std::vector<double> x;       // delta: fixed pair of `map` (used when both are set)
  std::vector<double> y;
  nlohmann::json hamiltonian;  // {"m", "epsilon", "H", "time"}: spectrum
  std::string filling_model;   // "torus2n" or "hyperbolic"
  int half_dim = 1;
  std::vector<double> s_grid;
  double t = 8.0;              // filling: v(t) is reported
  long q = 2;
  long p = 1;
  long n_max = 64;
  int grid = 64;
  int radius = 12;
  std::size_t max_nodes = 20'000'000;
  double tolerance = 1e-8;
  double kappa = 10.0;
  int contractible = 200;
  int winding = 20;
  std::string corpus;          // isoperimetric: JSON loop file, empty = generated
  std::string out_dir = "symgrowth-out";
  unsigned long seed = 2024;
  int jobs = 1;
};

/// The pinned defaults; config/defaults.json holds the same object.
nlohmann::json default_config_json();
ExperimentConfig default_config();
/// Defaults overridden by `j`. Unknown keys, wrong types, non-positive
/// tolerances or sizes raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
/// ConfigError if the file cannot be read or is not valid JSON.
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& c);

/// Tag -> statement tested. Every record carries one of these tags.
const std::map<std::string, std::string>& tag_registry();

struct CheckRecord {
  std::string check_id;
  std::string tag;
  nlohmann::json values;  // computed quantities
  std::string target;     // bound or target, human readable
  bool pass = false;
  double runtime = 0.0;   // seconds
};

/// A table written as CSV and as a plot data file.
struct Series {
  std::string name;       // file stem
  std::string tag;        // statement tested
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> plot_columns;  // subset for the plot file; empty = all
};

struct Report {
  std::string experiment;
  nlohmann::json config;
  std::vector<CheckRecord> checks;
  std::vector<Series> series;

  bool all_pass() const;
  /// Records and config; runtimes included.
  nlohmann::json to_json() const;
};

/// Runs the configured experiment. Library errors on bad model parameters
/// surface as ConfigError.
Report run(const ExperimentConfig& config);

/// The acceptance checks, one record per criterion, on pinned defaults.
Report verify_all(const ExperimentConfig& config);

/// Writes <name>.csv for each series and report.json; returns the paths.
std::vector<std::string> write_artifacts(const Report& report, const std::string& out_dir);

/// Whitespace-separated <name>.dat files with header comments naming the statement.
std::vector<std::string> emit_plot_data(const Report& report, const std::string& out_dir);

/// Write to a sibling temporary file, then rename over `path`.
void write_atomic(const std::string& path, const std::string& content);

/// SYMGROWTH_OUT_DIR if set, otherwise `fallback`.
std::string resolve_out_dir(const std::string& fallback);

/// 0 if every check passed, 1 otherwise.
int exit_code(const Report& report);

/// Shortest round-trip decimal form, used for every numeric CSV cell.
std::string format_number(double x);

}  // namespace symgrowth::cli
