#include "ensnc/scenarios.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ensnc/errors.hpp"
#include "ensnc/mms.hpp"
#include "ensnc/vtk_writer.hpp"

namespace ensnc {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty entry in list '" + s + "'");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

ErrorNorms rates_between(const MmsLevelResult& a, const MmsLevelResult& b) {
  const auto r = [&](double ea, double eb) { return convergence_rate(ea, eb, a.dt, b.dt); };
  ErrorNorms out;
  out.u_linf_l2 = r(a.errors.u_linf_l2, b.errors.u_linf_l2);
  out.u_l2_grad = r(a.errors.u_l2_grad, b.errors.u_l2_grad);
  out.T_linf_l2 = r(a.errors.T_linf_l2, b.errors.T_linf_l2);
  out.T_l2_grad = r(a.errors.T_l2_grad, b.errors.T_l2_grad);
  out.p_l2_l2 = r(a.errors.p_l2_l2, b.errors.p_l2_l2);
  return out;
}

}  // namespace

ScenarioConfig ScenarioConfig::defaults(Scenario scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  if (scenario == Scenario::Mms) {
    c.prandtl = 1.0;
    c.rayleigh = 100.0;
    c.t_final = 1.0;
  }
  return c;
}

void ScenarioConfig::validate() const {
  if (!(prandtl > 0.0)) throw std::invalid_argument("config: pr must be positive");
  if (!(rayleigh >= 0.0)) throw std::invalid_argument("config: ra must be non-negative");
  if (members != 2) throw std::invalid_argument("config: only ensembles of size j = 2 are supported");
  if (!(cfl.c_dagger > 0.0)) throw std::invalid_argument("config: c_dagger must be positive");
  if (max_steps < 1) throw std::invalid_argument("config: max_steps must be >= 1");
  if (scenario == Scenario::DoublePaneWindow) {
    if (m < 1) throw std::invalid_argument("config: m must be >= 1");
    if (!(dt0 > 0.0)) throw std::invalid_argument("config: dt must be positive");
    if (!(steady_tol > 0.0)) throw std::invalid_argument("config: steady_tol must be positive");
    bred.validate(dt0);
  } else {
    if (mms_levels.size() < 2) throw std::invalid_argument("config: mms_levels needs at least two entries");
    for (int level : mms_levels) {
      if (level < 1) throw std::invalid_argument("config: mms_levels entries must be >= 1");
    }
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw std::invalid_argument("config: t_final must be finite");
    if (!(eps_mms >= 0.0)) throw std::invalid_argument("config: eps_mms must be non-negative");
  }
}

void apply_key_values(ScenarioConfig& c, const KeyValues& values) {
  for (const auto& [key, value] : values) {
    if (key == "scenario") {
      if (value == "cavity") c.scenario = Scenario::DoublePaneWindow;
      else if (value == "mms") c.scenario = Scenario::Mms;
      else throw std::invalid_argument("config key 'scenario': expected cavity or mms");
    } else if (key == "ra") {
      c.rayleigh = parse_double(key, value);
    } else if (key == "pr") {
      c.prandtl = parse_double(key, value);
    } else if (key == "m") {
      c.m = static_cast<int>(parse_long(key, value));
    } else if (key == "dt") {
      c.dt0 = parse_double(key, value);
    } else if (key == "t_final") {
      c.t_final = parse_double(key, value);
    } else if (key == "steady_tol") {
      c.steady_tol = parse_double(key, value);
    } else if (key == "max_steps") {
      c.max_steps = parse_long(key, value);
    } else if (key == "j") {
      c.members = static_cast<int>(parse_long(key, value));
    } else if (key == "c_dagger") {
      c.cfl.c_dagger = parse_double(key, value);
    } else if (key == "cfl") {
      c.cfl.enabled = parse_bool(key, value);
    } else if (key == "seed") {
      c.bred.rng_seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "epsilon") {
      c.bred.epsilon.clear();
      for (const auto& e : split_list(value)) c.bred.epsilon.push_back(parse_double(key, e));
    } else if (key == "delta_t") {
      c.bred.delta_t = parse_double(key, value);
    } else if (key == "k_star") {
      c.bred.k_star = static_cast<int>(parse_long(key, value));
    } else if (key == "eps_mms") {
      c.eps_mms = parse_double(key, value);
    } else if (key == "mms_levels") {
      c.mms_levels.clear();
      for (const auto& e : split_list(value)) c.mms_levels.push_back(static_cast<int>(parse_long(key, e)));
    } else if (key == "out") {
      c.output_dir = value;
    } else if (key == "vtk") {
      c.write_vtk = parse_bool(key, value);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

MmsLevelResult run_mms_level(const ScenarioConfig& config, int m) {
  const MmsExact exact;
  const std::vector<double> eps{config.eps_mms, -config.eps_mms};
  const ProblemParams params = mms_problem(exact, config.prandtl, config.rayleigh, eps);
  const Discretization disc(make_cavity_mesh(m), TemperatureBoundary::AllDirichlet);
  const double dt = 1.0 / m;

  EnsembleState state;
  state.dt = dt;
  state.pressure_known = true;
  for (double e : eps) {
    const double s = 1.0 + e;
    MemberState member;
    member.u_curr = s * interpolate(VectorFunction([&](Point p) { return exact.u(p, 0.0); }), disc.velocity()).coeffs;
    member.T_curr = s * interpolate(ScalarFunction([&](Point p) { return exact.T(p, 0.0); }), disc.temperature()).coeffs;
    member.p_curr = s * interpolate(ScalarFunction([&](Point p) { return exact.p(p, 0.0); }), disc.pressure()).coeffs;
    member.u_prev = member.u_curr;
    member.T_prev = member.T_curr;
    state.members.push_back(std::move(member));
  }

  ErrorHistory history(dt);
  const auto record = [&](const EnsembleState& s) {
    const MemberState avg = ensemble_average(s);
    history.record(level_errors(disc, avg.u_curr, avg.T_curr, avg.p_curr, exact, s.t));
  };
  record(state);
  state = startup_step(state, params, disc);
  record(state);

  AdvanceConfig advance_config;
  advance_config.t_final = config.t_final;
  advance_config.max_steps = config.max_steps;
  advance_config.cfl = config.cfl;
  advance_config.observer = [&](const EnsembleState&, const EnsembleState& after) { record(after); };
  const AdvanceResult result = advance(std::move(state), params, disc, advance_config);

  MmsLevelResult out;
  out.m = m;
  out.dt = dt;
  out.errors = history.norms();
  out.steps = result.state.step_index;
  out.halvings = result.halvings;
  return out;
}

MmsReport run_mms(const ScenarioConfig& config) {
  config.validate();
  MmsReport report;
  for (int m : config.mms_levels) report.levels.push_back(run_mms_level(config, m));
  for (std::size_t i = 1; i < report.levels.size(); ++i) {
    const auto& a = report.levels[i - 1];
    const auto& b = report.levels[i];
    report.rates.push_back({a.m, b.m, rates_between(a, b)});
  }
  if (!config.output_dir.empty()) {
    auto out = open_output(config.output_dir, "mms_rates.csv");
    write_mms_rates_csv(out, report);
  }
  return report;
}

void write_mms_rates_csv(std::ostream& out, const MmsReport& report) {
  out << "m,dt,steps,halvings,u_linf_l2,u_linf_l2_rate,u_l2_grad,u_l2_grad_rate,T_linf_l2,T_linf_l2_rate,"
         "T_l2_grad,T_l2_grad_rate,p_l2_l2,p_l2_l2_rate\n";
  const auto old = out.precision(10);
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const auto& l = report.levels[i];
    const ErrorNorms* r = i > 0 ? &report.rates[i - 1].rates : nullptr;
    const auto rate = [&](double ErrorNorms::*field) {
      std::ostringstream s;
      if (r) s << r->*field;
      return s.str();
    };
    out << l.m << ',' << l.dt << ',' << l.steps << ',' << l.halvings << ',' << l.errors.u_linf_l2 << ','
        << rate(&ErrorNorms::u_linf_l2) << ',' << l.errors.u_l2_grad << ',' << rate(&ErrorNorms::u_l2_grad) << ','
        << l.errors.T_linf_l2 << ',' << rate(&ErrorNorms::T_linf_l2) << ',' << l.errors.T_l2_grad << ','
        << rate(&ErrorNorms::T_l2_grad) << ',' << l.errors.p_l2_l2 << ',' << rate(&ErrorNorms::p_l2_l2) << '\n';
  }
  out.precision(old);
}

BenchmarkReport run_benchmark(const ScenarioConfig& config,
                              const std::function<void(const EnsembleState&, const EnsembleState&)>& observer) {
  config.validate();
  if (config.scenario != Scenario::DoublePaneWindow) {
    throw std::invalid_argument("run_benchmark: configuration is not the cavity scenario");
  }
  ProblemParams params;
  params.prandtl = config.prandtl;
  params.rayleigh = config.rayleigh;
  params.members = config.members;
  params.validate();
  const Discretization disc(make_cavity_mesh(config.m));

  std::vector<BredVector> bred;
  EnsembleState state = benchmark_initial_conditions(params, disc, config.bred, config.dt0, &bred);

  double max_energy = 0.0;
  const auto track_energy = [&](const EnsembleState& s) {
    for (const auto& m : s.members) {
      const double e = discrete_energy(disc, m);
      if (!std::isfinite(e)) {
        throw StepFailure("run_benchmark: non-finite energy at step " + std::to_string(s.step_index), s.step_index);
      }
      max_energy = std::max(max_energy, e);
    }
  };
  state = startup_step(state, params, disc);
  track_energy(state);

  AdvanceConfig advance_config;
  advance_config.t_final = config.t_final;
  advance_config.steady_tol = config.steady_tol;
  advance_config.max_steps = config.max_steps;
  advance_config.cfl = config.cfl;
  advance_config.observer = [&](const EnsembleState& before, const EnsembleState& after) {
    track_energy(after);
    if (observer) observer(before, after);
  };
  AdvanceResult result = advance(std::move(state), params, disc, advance_config);

  BenchmarkReport report;
  report.rayleigh = config.rayleigh;
  report.m = config.m;
  const MemberState avg = ensemble_average(result.state);
  report.nu_avg = nusselt_avg(disc.temperature(), avg.T_curr);
  report.max_u1_vertical_centre = midline_max(disc.velocity(), avg.u_curr, 0, MidLine::VerticalCentre);
  report.max_u2_horizontal_centre = midline_max(disc.velocity(), avg.u_curr, 1, MidLine::HorizontalCentre);
  report.nusselt_hot = nusselt_local(disc.temperature(), avg.T_curr, BoundaryTag::HotWall);
  report.nusselt_cold = nusselt_local(disc.temperature(), avg.T_curr, BoundaryTag::ColdWall);
  report.steps = result.state.step_index;
  report.t = result.state.t;
  report.dt = result.state.dt;
  report.halvings = result.halvings;
  report.reached_steady = result.reached_steady;
  report.max_energy = max_energy;
  report.log = std::move(result.log);
  report.final_state = std::move(result.state);

  if (!config.output_dir.empty()) {
    const std::string& dir = config.output_dir;
    {
      auto out = open_output(dir, "benchmark_report.csv");
      write_benchmark_report_csv(out, report);
    }
    {
      auto out = open_output(dir, "nusselt_hot.csv");
      write_wall_profile_csv(out, report.nusselt_hot);
    }
    {
      auto out = open_output(dir, "nusselt_cold.csv");
      write_wall_profile_csv(out, report.nusselt_cold);
    }
    {
      auto out = open_output(dir, "step_log.csv");
      write_step_log_csv(out, report.log);
    }
    if (config.write_vtk) {
      auto fields = open_output(dir, "fields.vtk");
      write_state_vtk(fields, disc, avg, "ensemble average at stopping step");
      std::vector<PointScalarField> scalars;
      for (std::size_t i = 0; i < bred.size(); ++i) {
        const std::string sign = bred[i].epsilon > 0.0 ? "plus" : "minus";
        scalars.push_back({std::string("bv_") + to_string(bred[i].channel) + "_" + sign, bred[i].values});
      }
      auto bv = open_output(dir, "bred_vectors.vtk");
      write_p2_vtk(bv, FeSpace(disc.velocity().mesh_ptr(), SpaceKind::ScalarP2), scalars, {}, "bred vectors");
    }
  }
  return report;
}

void write_benchmark_report_csv(std::ostream& out, const BenchmarkReport& r) {
  out << "ra,nu_avg,max_u1_x05,max_u2_y05,y_at_max_u1,x_at_max_u2,m,steps,t,dt,halvings,reached_steady,"
         "max_energy\n";
  const auto old = out.precision(10);
  out << r.rayleigh << ',' << r.nu_avg << ',' << r.max_u1_vertical_centre.value << ','
      << r.max_u2_horizontal_centre.value << ',' << r.max_u1_vertical_centre.location.y << ','
      << r.max_u2_horizontal_centre.location.x << ',' << r.m << ',' << r.steps << ',' << r.t << ',' << r.dt
      << ',' << r.halvings << ',' << (r.reached_steady ? 1 : 0) << ',' << r.max_energy << '\n';
  out.precision(old);
}

}  // namespace ensnc
