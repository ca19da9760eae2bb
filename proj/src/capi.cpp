#include "quditchain/quditchain.h"

#include <cstdio>
#include <string>

#include "quditchain/closedform.hpp"
#include "quditchain/dynamics.hpp"
#include "quditchain/elliptic.hpp"
#include "quditchain/linalg.hpp"
#include "quditchain/measures.hpp"
#include "quditchain/scenario.hpp"

struct qc_chain {
  quditchain::ChainSpec spec;
};

struct qc_state {
  quditchain::DensityMatrix rho;
};

namespace {

using namespace quditchain;

thread_local std::string g_last_error;

qc_status fail(qc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
qc_status guarded(F&& body) {
  try {
    body();
    return QC_OK;
  } catch (const ConfigError& e) {
    return fail(QC_ERR_CONFIG, e.what());
  } catch (const DimensionError& e) {
    return fail(QC_ERR_DIMENSION, e.what());
  } catch (const InvalidArgument& e) {
    return fail(QC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const NumericQualityError& e) {
    return fail(QC_ERR_NUMERIC, e.what());
  } catch (const CrosscheckError& e) {
    return fail(QC_ERR_CROSSCHECK, e.what());
  } catch (const IoError& e) {
    return fail(QC_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(QC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QC_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

SiteSpec& site_at(qc_chain* chain, std::size_t site) {
  require(chain != nullptr, "null chain");
  if (site >= chain->spec.sites.size()) throw InvalidArgument("site index out of range");
  return chain->spec.sites[site];
}

void export_matrix(const Matrix& m, double* re, double* im, std::size_t len) {
  require(re && im, "null output array");
  const auto n = static_cast<std::size_t>(m.rows());
  if (len != n * n) throw InvalidArgument("output length must be dim*dim");
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Complex v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      re[r * n + c] = v.real();
      im[r * n + c] = v.imag();
    }
}

void emit(qc_log_fn log, void* user, const std::string& line) {
  if (log) log(line.c_str(), user);
}

void report(const ScenarioResult& r, qc_log_fn log, void* user) {
  for (const auto& n : r.notes) emit(log, user, n);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu rows, max engine deviation %.3e%s%s", r.rows.size(),
                r.max_deviation, r.worst_series.empty() ? "" : " at ",
                r.worst_series.c_str());
  emit(log, user, buf);
  std::snprintf(buf, sizeof buf,
                "integrity: %zu states, hermiticity %.1e, trace %.1e, min eigenvalue %.1e, "
                "purity drift %.1e, norm %.1e",
                r.integrity.states, r.integrity.max_hermiticity_error,
                r.integrity.max_trace_error, r.integrity.min_eigenvalue,
                r.integrity.max_purity_drift, r.integrity.max_norm_error);
  emit(log, user, buf);
  if (r.csv_path) emit(log, user, "wrote " + r.csv_path->string());
  if (r.plot_path) emit(log, user, "wrote " + r.plot_path->string());
}

}  // namespace

extern "C" {

QC_API const char* qc_version(void) { return "1.0.0"; }

QC_API const char* qc_last_error(void) { return g_last_error.c_str(); }

QC_API const char* qc_status_string(qc_status status) {
  switch (status) {
    case QC_OK:
      return "ok";
    case QC_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QC_ERR_CONFIG:
      return "config error";
    case QC_ERR_DIMENSION:
      return "dimension limit exceeded";
    case QC_ERR_NUMERIC:
      return "numeric quality failure";
    case QC_ERR_CROSSCHECK:
      return "crosscheck failure";
    case QC_ERR_IO:
      return "i/o error";
    case QC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

QC_API int qc_exit_code(qc_status status) {
  switch (status) {
    case QC_OK:
      return 0;
    case QC_ERR_CROSSCHECK:
      return 2;
    case QC_ERR_NUMERIC:
      return 3;
    default:
      return 1;
  }
}

QC_API qc_status qc_chain_create(int dim, size_t sites, double J, qc_chain** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = nullptr;
    require(sites >= 1, "a chain needs at least one site");
    const SpinQuantum spin = SpinQuantum::from_dim(dim);
    ChainSpec spec = ChainSpec::uniform(spin, sites, J);
    if (spec.dim() > kMaxChainDim) throw DimensionError("chain dimension exceeds the limit");
    *out = new qc_chain{std::move(spec)};
  });
}

QC_API void qc_chain_destroy(qc_chain* chain) { delete chain; }

QC_API qc_status qc_chain_dim(const qc_chain* chain, size_t* out) {
  return guarded([&] {
    require(chain && out, "null argument");
    *out = chain->spec.dim();
  });
}

QC_API qc_status qc_chain_set_constant_field(qc_chain* chain, size_t site, double hx, double hy,
                                             double hz) {
  return guarded([&] { site_at(chain, site).field = ConstantField{{hx, hy, hz}}; });
}

QC_API qc_status qc_chain_set_consistent_field(qc_chain* chain, size_t site, double omega0,
                                               double omega1, double omega, double k) {
  return guarded([&] {
    SiteSpec& s = site_at(chain, site);
    (void)EllipticModulus(k);
    s.field = ConsistentField{omega0, omega1, omega, k};
  });
}

QC_API qc_status qc_chain_set_anisotropy(qc_chain* chain, size_t site, double Q, double d) {
  return guarded([&] { site_at(chain, site).anisotropy = AnisotropySpec{Q, d}; });
}

QC_API qc_status qc_chain_hamiltonian(const qc_chain* chain, double t, double* re, double* im,
                                      size_t len) {
  return guarded([&] {
    require(chain != nullptr, "null chain");
    export_matrix(chain_hamiltonian(chain->spec, t), re, im, len);
  });
}

QC_API qc_status qc_chain_eigenvalues(const qc_chain* chain, double t, double* out, size_t len) {
  return guarded([&] {
    require(chain && out, "null argument");
    const RealVector ev = hermitian_eigenvalues(chain_hamiltonian(chain->spec, t));
    if (len != static_cast<std::size_t>(ev.size()))
      throw InvalidArgument("output length must equal the chain dimension");
    for (Eigen::Index i = 0; i < ev.size(); ++i) out[i] = ev(i);
  });
}

QC_API qc_status qc_state_max_entangled(int dim, size_t sites, qc_state** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = nullptr;
    *out = new qc_state{maximally_entangled_state(dim, sites)};
  });
}

QC_API qc_status qc_state_from_matrix(const double* re, const double* im, const int* site_dims,
                                      size_t n_sites, qc_state** out) {
  return guarded([&] {
    require(re && im && site_dims && out, "null argument");
    *out = nullptr;
    require(n_sites >= 1, "need at least one site");
    std::vector<int> dims(site_dims, site_dims + n_sites);
    for (int d : dims) require(d >= 2, "site dimensions must be at least 2");
    const std::size_t n = total_dim(dims);
    if (n > kMaxChainDim) throw DimensionError("state dimension exceeds the limit");
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(re[r * n + c], im[r * n + c]);
    *out = new qc_state{DensityMatrix(std::move(m), std::move(dims))};
  });
}

QC_API void qc_state_destroy(qc_state* state) { delete state; }

QC_API qc_status qc_state_dim(const qc_state* state, size_t* out) {
  return guarded([&] {
    require(state && out, "null argument");
    *out = state->rho.dim();
  });
}

QC_API qc_status qc_state_matrix(const qc_state* state, double* re, double* im, size_t len) {
  return guarded([&] {
    require(state != nullptr, "null state");
    export_matrix(state->rho.data(), re, im, len);
  });
}

QC_API qc_status qc_evolve_numeric(const qc_chain* chain, const qc_state* in, double t0, double t1,
                                   size_t steps, qc_state** out) {
  return guarded([&] {
    require(chain && in && out, "null argument");
    *out = nullptr;
    if (in->rho.site_dims() != chain->spec.site_dims())
      throw InvalidArgument("state dimensions do not match the chain");
    const std::size_t n = steps ? steps : default_steps(chain->spec, t0, t1);
    const ChainHamiltonian h(chain->spec);
    IntegratorOptions opts;
    opts.stride = n;
    Trajectory tr = integrate_lvn([&h](double t) { return h(t); }, in->rho, TimeGrid(t0, t1, n),
                                  opts);
    *out = new qc_state{std::move(tr.states.back())};
  });
}

QC_API qc_status qc_evolve_resonance(const qc_chain* chain, const qc_state* in, double t,
                                     qc_state** out) {
  return guarded([&] {
    require(chain && in && out, "null argument");
    *out = nullptr;
    *out = new qc_state{resonance_propagate(in->rho, chain->spec, t)};
  });
}

QC_API qc_status qc_measure(const qc_state* state, const char* name, double* out) {
  return guarded([&] {
    require(state && name && out, "null argument");
    switch (measure_from_name(name)) {
      case Measure::Negativity:
        *out = negativity(state->rho);
        break;
      case Measure::SchlienzMahler:
        *out = schlienz_mahler(state->rho);
        break;
      case Measure::MeanEntropy:
        *out = mean_entropy(state->rho);
        break;
      case Measure::IConcurrence:
        *out = i_concurrence(state->rho);
        break;
      case Measure::Distance:
        throw InvalidArgument("dist is a trajectory measure");
    }
  });
}

QC_API qc_status qc_closedform_eval(const char* id, double J, double t, const double* Q,
                                    double* out) {
  return guarded([&] {
    require(id && out, "null argument");
    const auto q = Q ? std::optional<double>(*Q) : std::nullopt;
    *out = closedform::eval(closedform::formula_from_name(id), J, t, q);
  });
}

QC_API qc_status qc_jacobi(double u, double k, double* sn, double* cn, double* dn, double* am) {
  return guarded([&] {
    const JacobiTriple j = jacobi_sn_cn_dn(u, EllipticModulus(k));
    if (sn) *sn = j.sn;
    if (cn) *cn = j.cn;
    if (dn) *dn = j.dn;
    if (am) *am = j.am;
  });
}

QC_API qc_status qc_complete_K(double k, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = complete_K(EllipticModulus(k));
  });
}

QC_API size_t qc_scenario_count(void) { return scenario_catalog().size(); }

QC_API const char* qc_scenario_name(size_t index) {
  const auto& c = scenario_catalog();
  return index < c.size() ? c[index].name.c_str() : nullptr;
}

QC_API const char* qc_scenario_description(size_t index) {
  const auto& c = scenario_catalog();
  return index < c.size() ? c[index].description.c_str() : nullptr;
}

QC_API qc_status qc_run_scenario_file(const char* path, const char* engine, const char* output,
                                      qc_log_fn log, void* user) {
  return guarded([&] {
    require(path != nullptr, "null config path");
    ScenarioConfig cfg = load_config(path);
    if (engine) {
      cfg.engine = engine_from_name(engine);
      if (cfg.engine != Engine::Crosscheck) cfg.crosscheck_engines.clear();
    }
    if (output) cfg.output = output;
    report(run_scenario(cfg), log, user);
  });
}

QC_API qc_status qc_check(qc_log_fn log, void* user) {
  qc_status worst = QC_OK;
  std::string first_error;
  for (ScenarioConfig cfg : builtin_scenarios()) {
    cfg.output.clear();
    const std::string name = cfg.scenario;
    ScenarioResult result;
    const qc_status s = guarded([&] { result = run_scenario(cfg); });
    char buf[256];
    if (s == QC_OK) {
      std::snprintf(buf, sizeof buf, "PASS %-12s max deviation %.3e", name.c_str(),
                    result.max_deviation);
    } else {
      std::snprintf(buf, sizeof buf, "FAIL %-12s %s", name.c_str(), g_last_error.c_str());
      if (worst == QC_OK) {
        worst = s;
        first_error = g_last_error;
      }
    }
    emit(log, user, buf);
  }
  if (worst != QC_OK) g_last_error = first_error;
  return worst;
}

}  // extern "C"
