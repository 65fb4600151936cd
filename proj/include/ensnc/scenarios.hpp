#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "ensnc/bred_vector.hpp"
#include "ensnc/config.hpp"
#include "ensnc/ensemble.hpp"
#include "ensnc/observables.hpp"
#include "ensnc/stepper.hpp"

namespace ensnc {

enum class Scenario { DoublePaneWindow, Mms };

struct ScenarioConfig {
  Scenario scenario = Scenario::DoublePaneWindow;
  double rayleigh = 1.0e4;
  double prandtl = 0.71;
  int m = 64;                 // benchmark mesh subdivisions
  double dt0 = 0.001;         // benchmark initial step
  double t_final = std::numeric_limits<double>::infinity();
  double steady_tol = 1e-5;   // benchmark stopping tolerance
  long max_steps = 1'000'000;
  int members = 2;
  CflConfig cfl;
  BredVectorConfig bred;
  double eps_mms = 0.01;              // members scaled by 1 +/- eps_mms
  std::vector<int> mms_levels{8, 16, 24};  // dt = 1/m on each level
  std::string output_dir;             // empty: no files written
  bool write_vtk = true;

  /// Paper settings: Pr 0.71, Ra 1e4, m 64, dt 0.001 for the cavity;
  /// Pr 1, Ra 100, t* = 1 for the manufactured solution.
  static ScenarioConfig defaults(Scenario scenario);

  /// Throws std::invalid_argument on non-positive sizes or steps, J != 2, etc.
  void validate() const;
};

/// Overrides fields from key=value entries. Keys: scenario (cavity|mms), ra,
/// pr, m, dt, t_final, steady_tol, max_steps, j, c_dagger, cfl, seed,
/// epsilon (three comma-separated values), delta_t, k_star, eps_mms,
/// mms_levels (comma-separated), out, vtk. Unknown keys throw.
void apply_key_values(ScenarioConfig& config, const KeyValues& values);

struct MmsLevelResult {
  int m = 0;
  double dt = 0.0;
  ErrorNorms errors;
  long steps = 0;
  int halvings = 0;
};

struct MmsRates {
  int m_coarse = 0;
  int m_fine = 0;
  ErrorNorms rates;  // same fields, holding convergence rates
};

struct MmsReport {
  std::vector<MmsLevelResult> levels;
  std::vector<MmsRates> rates;
};

/// Errors of the member average against the exact solution on every level of
/// the ladder, and rates between successive levels. Writes mms_rates.csv to
/// output_dir when set.
MmsReport run_mms(const ScenarioConfig& config);

/// One level of the study: J = 2 members scaled by 1 +/- eps, all-Dirichlet
/// temperature, exact initial data (with pressure), uniform dt = 1/m.
MmsLevelResult run_mms_level(const ScenarioConfig& config, int m);

void write_mms_rates_csv(std::ostream& out, const MmsReport& report);

struct BenchmarkReport {
  double rayleigh = 0.0;
  int m = 0;
  double nu_avg = 0.0;
  LineMax max_u1_vertical_centre;    // max u1 on x = 0.5
  LineMax max_u2_horizontal_centre;  // max u2 on y = 0.5
  long steps = 0;
  double t = 0.0;
  double dt = 0.0;
  int halvings = 0;
  bool reached_steady = false;
  double max_energy = 0.0;  // max over steps and members of the discrete energy
  std::vector<WallSample> nusselt_hot;
  std::vector<WallSample> nusselt_cold;
  std::vector<StepRecord> log;
  EnsembleState final_state;
};

/// Double pane window: bred initial conditions, startup, then BDF2 ensemble
/// steps until steady (or t_final). Observables are taken from the member
/// average at the stopping step. Writes benchmark_report.csv,
/// nusselt_hot.csv, nusselt_cold.csv, step_log.csv, fields.vtk and
/// bred_vectors.vtk to output_dir when set. `observer` sees every step.
BenchmarkReport run_benchmark(const ScenarioConfig& config,
                              const std::function<void(const EnsembleState&, const EnsembleState&)>& observer = {});

/// CSV: ra,nu_avg,max_u1_x05,max_u2_y05 followed by run statistics.
void write_benchmark_report_csv(std::ostream& out, const BenchmarkReport& report);

}  // namespace ensnc
