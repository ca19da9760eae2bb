#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quditchain/measures.hpp"
#include "quditchain/model.hpp"

namespace quditchain {

enum class Engine { Numeric, Analytic, ClosedForm, Crosscheck };

std::string engine_name(Engine e);
Engine engine_from_name(const std::string& name);

enum class FieldKind { Zero, Constant, Consistent, Pulse };

/// Everything a scenario run needs; parsed from an ini-style file.
struct ScenarioConfig {
  std::string scenario;  // fig1 | fig2 | fig3 | fig4 | pulse_block | sweep | custom
  Engine engine = Engine::ClosedForm;
  /// Engines compared under crosscheck; empty means every applicable one.
  std::vector<Engine> crosscheck_engines;
  double tolerance = 1e-6;
  /// File prefix for <prefix>.csv and <prefix>.gp; empty writes nothing.
  std::string output;

  int dim = 3;
  std::size_t sites = 2;
  double J = 0.1;
  double Q = 0.0;
  double aniso_d = 0.0;

  FieldKind field = FieldKind::Zero;
  Vec3 h{0.0, 0.0, 0.0};
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega = 0.0;
  double k = 0.0;
  /// Alternate the field sign from site to site (h_bar = -h for a pair).
  bool opposite = false;
  double pulse_amplitude = 2.0;

  double t0 = 0.0;
  double t1 = 100.0;
  std::size_t samples = 1000;
  /// RK4 steps per output sample; 0 picks refine * default_steps() spread
  /// over the samples.
  std::size_t substeps = 0;
  double refine = 1.0;

  std::vector<Measure> measures;

  std::vector<double> sweep_J;
  std::vector<double> sweep_Q;
  std::vector<double> sweep_k;
  std::vector<double> sweep_omega1;
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);

struct ScenarioInfo {
  std::string name;
  std::string description;
};
const std::vector<ScenarioInfo>& scenario_catalog();

/// The shipped configs/*.ini files, embedded at build time; `check` runs
/// them without writing output.
std::vector<ScenarioConfig> builtin_scenarios();

struct IntegrityReport {
  std::size_t states = 0;
  double max_hermiticity_error = 0.0;
  double max_trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double max_purity_drift = 0.0;
  double max_norm_error = 0.0;

  /// Throws NumericQualityError when any bound below is exceeded.
  void check() const;

  static constexpr double kHermiticityTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenvalueFloor = -1e-9;
  static constexpr double kPurityTol = 1e-6;
  static constexpr double kNormTol = 1e-10;
};

struct ScenarioResult {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  /// Largest deviation between engines over every compared series.
  double max_deviation = 0.0;
  std::string worst_series;
  IntegrityReport integrity;
  /// Human-readable findings (skipped engines, pulse-window changes, ...).
  std::vector<std::string> notes;
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> plot_path;

  /// Column values by header name; throws InvalidArgument when absent.
  std::vector<double> column(const std::string& name) const;
};

/// Runs a scenario, writes <output>.csv and <output>.gp when output is set,
/// and throws CrosscheckError when engines disagree beyond the tolerance
/// (after the files are written).
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// CSV text with a header row and 17 significant digits.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Writes a gnuplot script next to the CSV mapping columns to the curve set
/// of `layout` (a scenario name). Throws IoError when the CSV is missing.
std::filesystem::path emit_plot_script(const std::filesystem::path& csv,
                                       const std::string& layout);

/// Worker count for sweeps: QUDITCHAIN_THREADS when set, else hardware.
unsigned worker_count();

}  // namespace quditchain
