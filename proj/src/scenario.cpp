#include "quditchain/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "quditchain/closedform.hpp"
#include "quditchain/dynamics.hpp"
#include "quditchain/linalg.hpp"

namespace quditchain {

namespace cf = closedform;

namespace {

// Dense RK4 beyond this dimension is too slow to be useful.
constexpr std::size_t kNumericMaxDim = 81;
// Tabulated decimal rows are rounded to three places.
constexpr double kTruncatedTolerance = 2e-3;

const std::vector<double> kPulseBreaks{17.0, 40.0, 57.0, 60.0};

// Heaviside reading theta(x) = 1 for x > 0 of
// theta((t-17)(t-60)) + theta((40-t)(57-t)(t-60)).
PiecewiseField pulse_field(double amplitude) {
  PiecewiseField p;
  p.breaks = kPulseBreaks;
  for (double level : {1.0, 0.0, 1.0, 0.0, 2.0}) p.values.push_back({0.0, 0.0, amplitude * level});
  return p;
}

struct System {
  ChainSpec chain;
  int d;
  std::size_t n;
};

struct Series {
  std::string name;
  std::size_t system;
  Measure measure;
  std::optional<cf::Formula> formula;
  std::optional<double> formula_Q;
};

struct Plan {
  std::vector<System> systems;
  std::vector<Series> series;
};

Field site_field(const ScenarioConfig& cfg, std::size_t site) {
  Field f;
  switch (cfg.field) {
    case FieldKind::Zero:
      f = ConstantField{};
      break;
    case FieldKind::Constant:
      f = ConstantField{cfg.h};
      break;
    case FieldKind::Consistent:
      f = ConsistentField{cfg.omega0, cfg.omega1, cfg.omega, cfg.k};
      break;
    case FieldKind::Pulse:
      f = pulse_field(cfg.pulse_amplitude);
      break;
  }
  if (cfg.opposite && site % 2 == 1) f = scaled(f, -1.0);
  return f;
}

System make_system(const ScenarioConfig& cfg, int d, std::size_t n, double J, AnisotropySpec a,
                   bool zero_field = false) {
  if (d < 3 || d > 5) throw ConfigError("chain.dim must be 3, 4 or 5");
  if (n < 2) throw ConfigError("the maximally entangled initial state needs at least 2 sites");
  System s{{}, d, n};
  s.chain.J = J;
  for (std::size_t i = 0; i < n; ++i)
    s.chain.sites.push_back(SiteSpec{SpinQuantum::from_dim(d),
                                     zero_field ? Field{ConstantField{}} : site_field(cfg, i), a});
  if (s.chain.dim() > kMaxChainDim)
    throw DimensionError("chain dimension " + std::to_string(s.chain.dim()) + " exceeds " +
                         std::to_string(kMaxChainDim));
  return s;
}

std::optional<cf::Formula> formula_for(Measure m, int d, std::size_t n) {
  using F = cf::Formula;
  if (n == 2) {
    switch (d) {
      case 3:
        switch (m) {
          case Measure::Negativity:
            return F::BiqutritMVW;
          case Measure::SchlienzMahler:
            return F::BiqutritMSM;
          case Measure::MeanEntropy:
            return F::BiqutritEta;
          case Measure::IConcurrence:
            return F::BiqutritMI;
          default:
            return std::nullopt;
        }
      case 4:
        switch (m) {
          case Measure::Negativity:
            return F::BiquartitMVW;
          case Measure::SchlienzMahler:
            return F::BiquartitMSM;
          case Measure::MeanEntropy:
            return F::BiquartitEta;
          case Measure::IConcurrence:
            return F::BiquartitMI;
          default:
            return std::nullopt;
        }
      case 5:
        switch (m) {
          case Measure::SchlienzMahler:
            return F::BipentitMSM;
          case Measure::MeanEntropy:
            return F::BipentitEta;
          case Measure::IConcurrence:
            return F::BipentitMI;
          default:
            return std::nullopt;
        }
      default:
        return std::nullopt;
    }
  }
  if (m != Measure::MeanEntropy) return std::nullopt;
  if (d == 3 && n >= 3 && n <= 6)
    return std::array{F::Chain3Eta, F::Chain4Eta, F::Chain5Eta, F::Chain6Eta}[n - 3];
  if (d == 4 && n == 3) return F::Quartit3Eta;
  return std::nullopt;
}

bool needs_two_sites(Measure m) {
  return m == Measure::Negativity || m == Measure::SchlienzMahler || m == Measure::IConcurrence;
}

void add_measure_series(Plan& plan, std::size_t system, const std::vector<Measure>& measures) {
  const System& sys = plan.systems[system];
  for (Measure m : measures) {
    if (needs_two_sites(m) && sys.n != 2)
      throw ConfigError(measure_name(m) + " is defined for two sites only");
    plan.series.push_back({measure_name(m), system, m, formula_for(m, sys.d, sys.n), {}});
  }
}

std::vector<Measure> default_measures(std::size_t n) {
  if (n == 2)
    return {Measure::Negativity, Measure::SchlienzMahler, Measure::MeanEntropy,
            Measure::IConcurrence};
  return {Measure::MeanEntropy};
}

Plan build_plan(const ScenarioConfig& cfg) {
  Plan plan;
  const AnisotropySpec aniso{cfg.Q, cfg.aniso_d};
  if (cfg.scenario == "fig1") {
    // Curves 1-2: zero field with equal anisotropy constants Q = d, J of both
    // signs. Curves 3-5: the configured field without anisotropy.
    const double Q = cfg.Q;
    if (Q == 0.0) throw ConfigError("fig1 needs chain.Q != 0 for curves 1 and 2");
    const double aJ = std::abs(cfg.J);
    plan.systems.push_back(make_system(cfg, 3, 2, -aJ, {Q, Q}, true));
    plan.systems.push_back(make_system(cfg, 3, 2, aJ, {Q, Q}, true));
    plan.systems.push_back(make_system(cfg, 3, 2, cfg.J, {}));
    plan.series.push_back(
        {"m_SM_Jneg", 0, Measure::SchlienzMahler, cf::Formula::BiqutritMSMAniso, Q});
    plan.series.push_back(
        {"m_SM_Jpos", 1, Measure::SchlienzMahler, cf::Formula::BiqutritMSMAniso, Q});
    plan.series.push_back({"m_VW", 2, Measure::Negativity, cf::Formula::BiqutritMVW, {}});
    plan.series.push_back({"m_SM", 2, Measure::SchlienzMahler, cf::Formula::BiqutritMSM, {}});
    plan.series.push_back({"eta_2", 2, Measure::MeanEntropy, cf::Formula::BiqutritEta, {}});
    plan.series.push_back({"m_I", 2, Measure::IConcurrence, cf::Formula::BiqutritMI, {}});
  } else if (cfg.scenario == "fig2") {
    for (std::size_t n = 2; n <= 6; ++n) {
      plan.systems.push_back(make_system(cfg, 3, n, cfg.J, aniso));
      plan.series.push_back({"eta_" + std::to_string(n), n - 2, Measure::MeanEntropy,
                             formula_for(Measure::MeanEntropy, 3, n), {}});
    }
  } else if (cfg.scenario == "fig3") {
    plan.systems.push_back(make_system(cfg, 4, 2, cfg.J, aniso));
    plan.systems.push_back(make_system(cfg, 4, 3, cfg.J, aniso));
    plan.series.push_back({"m_I", 0, Measure::IConcurrence, cf::Formula::BiquartitMI, {}});
    plan.series.push_back({"m_SM", 0, Measure::SchlienzMahler, cf::Formula::BiquartitMSM, {}});
    plan.series.push_back({"eta_2", 0, Measure::MeanEntropy, cf::Formula::BiquartitEta, {}});
    plan.series.push_back({"m_VW", 0, Measure::Negativity, cf::Formula::BiquartitMVW, {}});
    plan.series.push_back({"eta_3", 1, Measure::MeanEntropy, cf::Formula::Quartit3Eta, {}});
  } else if (cfg.scenario == "fig4") {
    plan.systems.push_back(make_system(cfg, 5, 2, cfg.J, aniso));
    plan.series.push_back({"m_I", 0, Measure::IConcurrence, cf::Formula::BipentitMI, {}});
    plan.series.push_back({"m_SM", 0, Measure::SchlienzMahler, cf::Formula::BipentitMSM, {}});
    plan.series.push_back({"eta_2", 0, Measure::MeanEntropy, cf::Formula::BipentitEta, {}});
  } else if (cfg.scenario == "pulse_block") {
    ScenarioConfig pulse = cfg;
    pulse.field = FieldKind::Pulse;
    pulse.opposite = true;
    plan.systems.push_back(make_system(pulse, cfg.dim, 2, cfg.J, aniso));
    add_measure_series(plan, 0, cfg.measures.empty() ? default_measures(2) : cfg.measures);
  } else {  // custom, and one sweep point
    plan.systems.push_back(make_system(cfg, cfg.dim, cfg.sites, cfg.J, aniso));
    add_measure_series(plan, 0, cfg.measures.empty() ? default_measures(cfg.sites) : cfg.measures);
  }
  return plan;
}

bool same_field(const Field& a, const Field& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<ConstantField>(&a)) return x->h == std::get<ConstantField>(b).h;
  if (const auto* x = std::get_if<ConsistentField>(&a)) {
    const auto& y = std::get<ConsistentField>(b);
    return x->omega0 == y.omega0 && x->omega1 == y.omega1 && x->omega == y.omega && x->k == y.k;
  }
  const auto& x = std::get<PiecewiseField>(a);
  const auto& y = std::get<PiecewiseField>(b);
  return x.breaks == y.breaks && x.values == y.values;
}

bool is_zero_field(const Field& f) {
  const auto* c = std::get_if<ConstantField>(&f);
  return c && c->h == Vec3{0.0, 0.0, 0.0};
}

// Closed forms hold for the maximally entangled start at t = 0 under a field
// shared by all sites: h(t).S_total commutes with the isotropic exchange, so
// it only adds local rotations.
std::optional<std::string> closedform_blocker(const Series& s, const System& sys, double t0) {
  if (!s.formula) return "no closed form for this measure and chain";
  if (t0 != 0.0) return "closed forms start at t = 0";
  const auto& sites = sys.chain.sites;
  for (const SiteSpec& site : sites)
    if (!same_field(site.field, sites.front().field)) return "fields differ between sites";
  if (cf::needs_anisotropy(*s.formula)) {
    for (const SiteSpec& site : sites) {
      if (!is_zero_field(site.field)) return "anisotropic closed form needs zero field";
      if (site.anisotropy.Q != *s.formula_Q || site.anisotropy.d != *s.formula_Q)
        return "anisotropic closed form needs Q = d on every site";
    }
  } else {
    for (const SiteSpec& site : sites)
      if (site.anisotropy.Q != 0.0 || site.anisotropy.d != 0.0)
        return "closed form assumes zero anisotropy";
  }
  return std::nullopt;
}

std::optional<std::string> numeric_blocker(const System& sys) {
  if (sys.chain.dim() > kNumericMaxDim)
    return "dimension " + std::to_string(sys.chain.dim()) + " above the RK4 limit " +
           std::to_string(kNumericMaxDim);
  return std::nullopt;
}

// Exact evolution: one eigendecomposition of a constant Hamiltonian, or of the
// gauge-transformed one for a resonant consistent field.
class AnalyticEvolver {
 public:
  AnalyticEvolver(const ChainSpec& c, double t0) : psi0_(initial(c)), t0_(t0) {
    ChainHamiltonian h(c);
    if (h.time_independent()) {
      constant_ = std::make_unique<Propagator>(h(0.0));
      return;
    }
    if (t0 != 0.0) throw InvalidArgument("resonance propagation starts at t = 0");
    resonance_ = std::make_unique<ResonancePropagator>(c);
  }

  StateVector operator()(double t) const {
    if (constant_) return constant_->apply(psi0_, t - t0_);
    return resonance_->evolve(psi0_, t);
  }
  const StateVector& initial_state() const noexcept { return psi0_; }

 private:
  static StateVector initial(const ChainSpec& c) {
    return maximally_entangled_vector(c.site_dims().front(), c.sites.size());
  }

  StateVector psi0_;
  double t0_;
  std::unique_ptr<Propagator> constant_;
  std::unique_ptr<ResonancePropagator> resonance_;
};

std::vector<DensityMatrix> numeric_states(const System& sys, const std::vector<double>& times,
                                          std::size_t substeps) {
  const ChainHamiltonian ham(sys.chain);
  HamiltonianFn h;
  if (ham.time_independent()) {
    h = [h0 = ham(0.0)](double) { return h0; };
  } else {
    h = [&ham](double t) { return ham(t); };
  }
  DensityMatrix rho = maximally_entangled_state(sys.d, sys.n);
  std::vector<DensityMatrix> out{rho};
  out.reserve(times.size());
  IntegratorOptions opts;
  opts.stride = substeps;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const TimeGrid grid(times[i], times[i + 1], substeps);
    Trajectory tr = integrate_lvn(h, rho, grid, opts);
    rho = std::move(tr.states.back());
    out.push_back(rho);
  }
  return out;
}

double measure_of(Measure m, const DensityMatrix& rho, const DensityMatrix& rho0) {
  switch (m) {
    case Measure::Negativity:
      return negativity(rho);
    case Measure::SchlienzMahler:
      return schlienz_mahler(rho);
    case Measure::MeanEntropy:
      return mean_entropy(rho);
    case Measure::IConcurrence:
      return i_concurrence(rho);
    case Measure::Distance:
      return frobenius_distance(rho.data(), rho0.data());
  }
  throw InvalidArgument("unknown measure");
}

double measure_of(Measure m, const StateVector& psi, const StateVector& psi0,
                  const std::vector<int>& dims) {
  switch (m) {
    case Measure::Negativity:
      return negativity(DensityMatrix::from_pure(psi, dims));
    case Measure::SchlienzMahler:
      return schlienz_mahler(DensityMatrix::from_pure(psi, dims));
    case Measure::MeanEntropy:
      return mean_entropy(psi, dims);
    case Measure::IConcurrence:
      return i_concurrence(psi, dims);
    case Measure::Distance: {
      // ||psi psi^H - psi0 psi0^H||_F for unit vectors.
      const double overlap = std::norm(psi0.dot(psi));
      return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
    }
  }
  throw InvalidArgument("unknown measure");
}

void record_integrity(IntegrityReport& r, const std::vector<DensityMatrix>& states) {
  const double p0 = states.front().purity();
  for (const DensityMatrix& s : states) {
    const Matrix& m = s.data();
    r.max_hermiticity_error = std::max(r.max_hermiticity_error, (m - m.adjoint()).norm());
    r.max_trace_error = std::max(r.max_trace_error, std::abs(m.trace() - Complex(1.0)));
    r.min_eigenvalue = std::min(r.min_eigenvalue, hermitian_eigenvalues(m).minCoeff());
    r.max_purity_drift = std::max(r.max_purity_drift, std::abs(s.purity() - p0));
    ++r.states;
  }
}

void record_integrity(IntegrityReport& r, const std::vector<StateVector>& states) {
  for (const StateVector& s : states) {
    r.max_norm_error = std::max(r.max_norm_error, std::abs(s.norm() - 1.0));
    ++r.states;
  }
}

struct Computed {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  double max_deviation = 0.0;
  std::string worst_series;
  std::vector<std::string> failures;
  IntegrityReport integrity;
  std::vector<std::string> notes;
};

std::vector<Engine> selected_engines(const ScenarioConfig& cfg) {
  if (cfg.engine != Engine::Crosscheck) return {cfg.engine};
  if (!cfg.crosscheck_engines.empty()) return cfg.crosscheck_engines;
  return {Engine::Numeric, Engine::Analytic, Engine::ClosedForm};
}

std::size_t substeps_for(const ScenarioConfig& cfg, const System& sys) {
  if (cfg.substeps > 0) return cfg.substeps;
  const double total = cfg.refine * static_cast<double>(default_steps(sys.chain, cfg.t0, cfg.t1));
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(total / static_cast<double>(cfg.samples))));
}

std::vector<double> sample_times(const ScenarioConfig& cfg, const Plan& plan) {
  std::vector<double> breaks;
  for (const System& s : plan.systems)
    for (const SiteSpec& site : s.chain.sites)
      for (double b : field_breakpoints(site.field)) breaks.push_back(b);
  return TimeGrid(cfg.t0, cfg.t1, cfg.samples, breaks).nodes();
}

Computed compute(const ScenarioConfig& cfg, const Plan& plan, const std::vector<double>& times) {
  const std::vector<Engine> engines = selected_engines(cfg);
  const bool crosscheck = cfg.engine == Engine::Crosscheck;
  Computed out;

  // Which engines run for each series.
  std::vector<std::vector<Engine>> runs(plan.series.size());
  std::vector<std::optional<std::string>> analytic_block(plan.systems.size());
  std::vector<std::unique_ptr<AnalyticEvolver>> evolvers(plan.systems.size());
  for (std::size_t s = 0; s < plan.systems.size(); ++s) {
    if (std::find(engines.begin(), engines.end(), Engine::Analytic) == engines.end()) continue;
    try {
      evolvers[s] = std::make_unique<AnalyticEvolver>(plan.systems[s].chain, cfg.t0);
    } catch (const InvalidArgument& e) {
      analytic_block[s] = e.what();
    }
  }
  std::size_t comparable = 0;
  std::size_t runnable = 0;
  for (std::size_t i = 0; i < plan.series.size(); ++i) {
    const Series& ser = plan.series[i];
    const System& sys = plan.systems[ser.system];
    for (Engine e : engines) {
      std::optional<std::string> why;
      if (e == Engine::Numeric) why = numeric_blocker(sys);
      if (e == Engine::Analytic) why = analytic_block[ser.system];
      if (e == Engine::ClosedForm) why = closedform_blocker(ser, sys, cfg.t0);
      if (why)
        out.notes.push_back(ser.name + ": " + engine_name(e) + " engine skipped (" + *why + ")");
      else
        runs[i].push_back(e);
    }
    if (runs[i].size() >= 2) ++comparable;
    if (!runs[i].empty()) ++runnable;
  }
  if (runnable == 0)
    throw ConfigError("no selected engine applies to scenario " + cfg.scenario);
  if (crosscheck && comparable == 0)
    throw ConfigError("crosscheck needs at least two applicable engines for some series");

  std::map<std::size_t, std::vector<DensityMatrix>> mixed;
  std::map<std::size_t, std::vector<StateVector>> pure;
  for (std::size_t i = 0; i < plan.series.size(); ++i) {
    const std::size_t s = plan.series[i].system;
    for (Engine e : runs[i]) {
      if (e == Engine::Numeric && !mixed.count(s)) {
        mixed[s] = numeric_states(plan.systems[s], times, substeps_for(cfg, plan.systems[s]));
        record_integrity(out.integrity, mixed[s]);
      }
      if (e == Engine::Analytic && !pure.count(s)) {
        std::vector<StateVector> states;
        states.reserve(times.size());
        for (double t : times) states.push_back((*evolvers[s])(t));
        record_integrity(out.integrity, states);
        pure[s] = std::move(states);
      }
    }
  }

  for (std::size_t i = 0; i < plan.series.size(); ++i) {
    const Series& ser = plan.series[i];
    const System& sys = plan.systems[ser.system];
    std::vector<std::pair<Engine, std::vector<double>>> values;
    for (Engine e : runs[i]) {
      std::vector<double> col;
      col.reserve(times.size());
      if (e == Engine::Numeric) {
        const auto& states = mixed.at(ser.system);
        for (const auto& rho : states) col.push_back(measure_of(ser.measure, rho, states.front()));
      } else if (e == Engine::Analytic) {
        const auto& states = pure.at(ser.system);
        const auto dims = sys.chain.site_dims();
        for (const auto& psi : states)
          col.push_back(measure_of(ser.measure, psi, evolvers[ser.system]->initial_state(), dims));
      } else {
        for (double t : times) col.push_back(cf::eval(*ser.formula, sys.chain.J, t, ser.formula_Q));
      }
      out.names.push_back(ser.name + "_" + engine_name(e));
      out.columns.push_back(col);
      values.emplace_back(e, std::move(col));
    }
    for (std::size_t a = 0; a < values.size(); ++a) {
      for (std::size_t b = a + 1; b < values.size(); ++b) {
        double dev = 0.0;
        for (std::size_t r = 0; r < times.size(); ++r)
          dev = std::max(dev, std::abs(values[a].second[r] - values[b].second[r]));
        const bool truncated = ser.formula && cf::is_truncated(*ser.formula) &&
                               (values[a].first == Engine::ClosedForm ||
                                values[b].first == Engine::ClosedForm);
        const double tol = truncated ? std::max(cfg.tolerance, kTruncatedTolerance) : cfg.tolerance;
        const std::string label =
            ser.name + " (" + engine_name(values[a].first) + " vs " + engine_name(values[b].first) + ")";
        if (dev >= out.max_deviation) {
          out.max_deviation = dev;
          out.worst_series = label;
        }
        if (dev > tol) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "%s deviates by %.3g > %.3g", label.c_str(), dev, tol);
          out.failures.emplace_back(buf);
        }
      }
    }
  }
  return out;
}

void pulse_notes(const Computed& c, const std::vector<double>& times, const ScenarioConfig& cfg,
                 std::vector<std::string>& notes) {
  struct Window {
    double a, b;
    bool on;
  };
  std::vector<Window> windows{{cfg.t0, 17.0, true},
                              {17.0, 40.0, false},
                              {40.0, 57.0, true},
                              {57.0, 60.0, false},
                              {60.0, cfg.t1, true}};
  for (const Window& w : windows) {
    if (w.b <= cfg.t0 || w.a >= cfg.t1) continue;
    for (std::size_t j = 0; j < c.names.size(); ++j) {
      std::optional<double> start;
      double change = 0.0;
      for (std::size_t r = 0; r < times.size(); ++r) {
        if (times[r] < w.a || times[r] > w.b) continue;
        if (!start) start = c.columns[j][r];
        change = std::max(change, std::abs(c.columns[j][r] - *start));
      }
      char buf[200];
      std::snprintf(buf, sizeof buf, "pulse %s [%g, %g]: max change of %s = %.3e",
                    w.on ? "on " : "off", std::max(w.a, cfg.t0), std::min(w.b, cfg.t1),
                    c.names[j].c_str(), change);
      notes.emplace_back(buf);
    }
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_outputs(const ScenarioConfig& cfg, ScenarioResult& result) {
  if (cfg.output.empty()) return;
  const std::filesystem::path csv = cfg.output + ".csv";
  if (csv.has_parent_path()) std::filesystem::create_directories(csv.parent_path());
  std::ofstream out(csv, std::ios::binary);
  if (!out) throw IoError("cannot write " + csv.string());
  write_csv(out, result.header, result.rows);
  out.close();
  result.csv_path = csv;
  result.plot_path = emit_plot_script(csv, cfg.scenario);
}

void finish(const ScenarioConfig& cfg, ScenarioResult& result,
            const std::vector<std::string>& failures) {
  write_outputs(cfg, result);
  result.integrity.check();
  if (!failures.empty()) {
    std::string msg = "crosscheck failed:";
    for (const auto& f : failures) msg += "\n  " + f;
    throw CrosscheckError(msg);
  }
}

ScenarioResult run_sweep(const ScenarioConfig& cfg) {
  struct Point {
    double J, Q, k, omega1;
  };
  const std::vector<double> Qs = cfg.sweep_Q.empty() ? std::vector{cfg.Q} : cfg.sweep_Q;
  const std::vector<double> ks = cfg.sweep_k.empty() ? std::vector{cfg.k} : cfg.sweep_k;
  const std::vector<double> w1s =
      cfg.sweep_omega1.empty() ? std::vector{cfg.omega1} : cfg.sweep_omega1;
  std::vector<Point> points;
  for (double J : cfg.sweep_J)
    for (double Q : Qs)
      for (double k : ks)
        for (double w1 : w1s) {
          if (k < 0.0 || k > 1.0) throw ConfigError("sweep.k values must lie in [0, 1]");
          points.push_back({J, Q, k, w1});
        }

  std::vector<ScenarioConfig> configs;
  for (const Point& p : points) {
    ScenarioConfig c = cfg;
    c.field = FieldKind::Consistent;
    c.J = p.J;
    c.Q = p.Q;
    c.k = p.k;
    c.omega1 = p.omega1;
    configs.push_back(c);
  }
  // Validate every point before starting any work.
  std::vector<Plan> plans;
  for (const auto& c : configs) plans.push_back(build_plan(c));

  std::vector<std::optional<Computed>> results(points.size());
  std::vector<std::vector<double>> times(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        times[i] = sample_times(configs[i], plans[i]);
        results[i] = compute(configs[i], plans[i], times[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_workers =
      std::min<unsigned>(worker_count(), static_cast<unsigned>(points.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScenarioResult result;
  result.header = {"J", "Q", "k", "omega1", "t"};
  const auto& first = *results.front();
  result.header.insert(result.header.end(), first.names.begin(), first.names.end());
  std::vector<std::string> failures;
  result.integrity.min_eigenvalue = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Computed& c = *results[i];
    if (c.names != first.names)
      throw ConfigError("sweep points disagree on applicable engines; split the sweep");
    const Point& p = points[i];
    for (std::size_t r = 0; r < times[i].size(); ++r) {
      std::vector<double> row{p.J, p.Q, p.k, p.omega1, times[i][r]};
      for (const auto& col : c.columns) row.push_back(col[r]);
      result.rows.push_back(std::move(row));
    }
    char tag[96];
    std::snprintf(tag, sizeof tag, "[J=%g Q=%g k=%g omega1=%g] ", p.J, p.Q, p.k, p.omega1);
    if (c.max_deviation >= result.max_deviation) {
      result.max_deviation = c.max_deviation;
      result.worst_series = tag + c.worst_series;
    }
    for (const auto& f : c.failures) failures.push_back(tag + f);
    if (i == 0)
      for (const auto& n : c.notes) result.notes.push_back(n);
    IntegrityReport& r = result.integrity;
    r.states += c.integrity.states;
    r.max_hermiticity_error = std::max(r.max_hermiticity_error, c.integrity.max_hermiticity_error);
    r.max_trace_error = std::max(r.max_trace_error, c.integrity.max_trace_error);
    r.min_eigenvalue = std::min(r.min_eigenvalue, c.integrity.min_eigenvalue);
    r.max_purity_drift = std::max(r.max_purity_drift, c.integrity.max_purity_drift);
    r.max_norm_error = std::max(r.max_norm_error, c.integrity.max_norm_error);
  }
  finish(cfg, result, failures);
  return result;
}

// Generated from configs/*.ini at build time.
#include "builtin_configs.inc"

}  // namespace

void IntegrityReport::check() const {
  char buf[160];
  auto fail = [&buf](const char* what, double v, double tol) {
    std::snprintf(buf, sizeof buf, "state integrity: %s %.3e beyond %.1e", what, v, tol);
    throw NumericQualityError(buf);
  };
  if (max_hermiticity_error > kHermiticityTol)
    fail("Hermiticity error", max_hermiticity_error, kHermiticityTol);
  if (max_trace_error > kTraceTol) fail("trace error", max_trace_error, kTraceTol);
  if (min_eigenvalue < kEigenvalueFloor) fail("negative eigenvalue", min_eigenvalue, kEigenvalueFloor);
  if (max_purity_drift > kPurityTol) fail("purity drift", max_purity_drift, kPurityTol);
  if (max_norm_error > kNormTol) fail("state norm error", max_norm_error, kNormTol);
}

std::vector<double> ScenarioResult::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidArgument("no column named " + name);
  const auto j = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[j]);
  return out;
}

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog{
      {"fig1", "bi-qutrit: anisotropic m_SM for J = -|J| and +|J|, field-driven m_VW, m_SM, eta_2, m_I"},
      {"fig2", "mean reduced entropy eta_2 .. eta_6 of 2..6 qutrit chains"},
      {"fig3", "bi-quartit m_I, m_SM, eta_2, m_VW and 3-quartit eta_3"},
      {"fig4", "bi-pentit m_I, m_SM, eta_2"},
      {"pulse_block", "bi-qudit in an opposing longitudinal pulse field, numeric engine only"},
      {"sweep", "bi-qudit measures over a (J, Q, k, omega1) grid, run on a worker pool"},
      {"custom", "any chain, field, anisotropy and measure list"},
  };
  return catalog;
}

std::vector<ScenarioConfig> builtin_scenarios() {
  std::vector<ScenarioConfig> out;
  for (const char* text : kBuiltinConfigs) {
    std::istringstream in(text);
    out.push_back(parse_config(in));
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QUDITCHAIN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ConfigError("QUDITCHAIN_THREADS must be a positive integer");
    n = static_cast<unsigned>(v);
  }
  return n;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  if (cfg.scenario == "sweep") return run_sweep(cfg);
  if (cfg.scenario == "pulse_block" && cfg.engine != Engine::Numeric)
    throw ConfigError("pulse_block runs on the numeric engine only");
  const Plan plan = build_plan(cfg);
  const std::vector<double> times = sample_times(cfg, plan);
  Computed c = compute(cfg, plan, times);

  ScenarioResult result;
  result.header.push_back("t");
  result.header.insert(result.header.end(), c.names.begin(), c.names.end());
  for (std::size_t r = 0; r < times.size(); ++r) {
    std::vector<double> row{times[r]};
    for (const auto& col : c.columns) row.push_back(col[r]);
    result.rows.push_back(std::move(row));
  }
  result.max_deviation = c.max_deviation;
  result.worst_series = c.worst_series;
  result.integrity = c.integrity;
  result.notes = std::move(c.notes);
  if (cfg.scenario == "pulse_block") pulse_notes(c, times, cfg, result.notes);
  finish(cfg, result, c.failures);
  return result;
}

}  // namespace quditchain
