#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quditchain/scenario.hpp"

using namespace quditchain;
namespace fs = std::filesystem;

namespace {

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

const std::string kCustom =
    "[scenario]\nname = custom\nengine = crosscheck\nengines = analytic, closedform\n"
    "tolerance = 1e-9\n"
    "[chain]\ndim = 3\nsites = 2\nJ = 0.1\n"
    "[field]\ntype = consistent\nomega0 = 1\nomega1 = 0.5\nk = 0.5\n"
    "[grid]\nt1 = 10\nsamples = 20\n"
    "[measures]\nlist = m_SM, eta_N, dist\n";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "quditchain_unit" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1))
    ++n;
  return n;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value)
      setenv("QUDITCHAIN_THREADS", value, 1);
    else
      unsetenv("QUDITCHAIN_THREADS");
  }
  ~EnvGuard() { unsetenv("QUDITCHAIN_THREADS"); }
};

}  // namespace

TEST_CASE("config defaults") {
  const ScenarioConfig fig = parse("[scenario]\nname = fig1\n");
  CHECK(fig.engine == Engine::ClosedForm);
  CHECK(fig.output.empty());
  CHECK(fig.refine == 1.0);
  CHECK(fig.substeps == 0);
  for (const char* name : {"custom", "pulse_block"}) {
    std::string text = std::string("[scenario]\nname = ") + name + "\n";
    if (std::string(name) == "custom")
      text += "[chain]\ndim = 3\nsites = 2\nJ = 0.1\n[measures]\nlist = m_SM\n";
    CHECK(parse(text).engine == Engine::Numeric);
  }
  const ScenarioConfig c = parse(kCustom);
  CHECK(c.engine == Engine::Crosscheck);
  CHECK(c.crosscheck_engines == std::vector<Engine>{Engine::Analytic, Engine::ClosedForm});
  CHECK(c.field == FieldKind::Consistent);
  CHECK(c.omega == 1.0);
  CHECK(c.k == 0.5);
  CHECK(c.measures ==
        std::vector<Measure>{Measure::SchlienzMahler, Measure::MeanEntropy, Measure::Distance});
  const ScenarioConfig drive = parse(
      "[scenario]\nname = fig1\n[field]\ntype = consistent\nomega0 = 1\nomega = 1.5\n");
  CHECK(drive.omega == 1.5);
}

TEST_CASE("config comments and lists") {
  const ScenarioConfig c = parse(
      "; leading comment\n[scenario]\nname = sweep\n[chain]\ndim = 3\n"
      "[field]\ntype = constant\nh = 0, 0, 0.5\nopposite = true\n"
      "[sweep]\nJ = 0.05, 0.1\nk = 0, 0.9\n");
  CHECK(c.sweep_J == std::vector<double>{0.05, 0.1});
  CHECK(c.sweep_k == std::vector<double>{0.0, 0.9});
  CHECK(c.h[2] == 0.5);
  CHECK(c.opposite);
}

TEST_CASE("config errors") {
  const std::vector<std::string> bad{
      "",
      "name = fig1\n",
      "[scenario]\nname = fig9\n",
      "[scenario]\nname = fig1\n[bogus]\nx = 1\n",
      "[scenario]\nname = fig1\ncolour = red\n",
      "[scenario]\nname = fig1\nengine = quantum\n",
      "[scenario]\nname = fig1\nengines = numeric\n",
      "[scenario]\nname = fig1\nengine = crosscheck\nengines = numeric, crosscheck\n",
      "[scenario]\nname = fig1\ntolerance = 0\n",
      "[scenario]\nname = fig1\ntolerance = abc\n",
      "[scenario]\nname = fig1\n[chain]\ndim = 1\n",
      "[scenario]\nname = fig1\n[chain]\ndim = -3\n",
      "[scenario]\nname = fig1\n[field]\nk = 1.5\n",
      "[scenario]\nname = fig1\n[field]\ntype = wobbly\n",
      "[scenario]\nname = fig1\n[field]\nh = 1, 2\n",
      "[scenario]\nname = fig1\n[field]\nopposite = maybe\n",
      "[scenario]\nname = fig1\n[grid]\nt0 = 5\nt1 = 5\n",
      "[scenario]\nname = fig1\n[grid]\nsamples = 0\n",
      "[scenario]\nname = fig1\n[grid]\nrefine = 0\n",
      "[scenario]\nname = fig1\n[measures]\nlist = m_SM\n",
      "[scenario]\nname = custom\n[chain]\ndim = 3\nsites = 2\nJ = 0.1\n[measures]\nlist = m_XY\n",
      "[scenario]\nname = custom\n[chain]\ndim = 3\nsites = 2\n[measures]\nlist = m_SM\n",
      "[scenario]\nname = custom\n[chain]\ndim = 3\nsites = 2\nJ = 0.1\n",
      "[scenario]\nname = sweep\n",
      "[scenario]\nname = sweep\n[chain]\nsites = 3\n[sweep]\nJ = 0.1\n",
      "[scenario]\nname = fig1\n[sweep]\nJ = 0.1\n",
      "[scenario]\nname = fig1\n[sweep]\nJ = 0.1,,0.2\n",
      "[scenario]\nname = pulse_block\nengine = analytic\n",
  };
  for (const std::string& text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse(text), ConfigError);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/quditchain.ini"), ConfigError);
}

TEST_CASE("shipped configs parse and match the embedded copies") {
  std::vector<std::string> on_disk;
  for (const auto& entry : fs::directory_iterator(QC_CONFIG_DIR))
    if (entry.path().extension() == ".ini") on_disk.push_back(load_config(entry.path()).scenario);
  std::sort(on_disk.begin(), on_disk.end());
  std::vector<std::string> embedded;
  for (const ScenarioConfig& c : builtin_scenarios()) embedded.push_back(c.scenario);
  std::sort(embedded.begin(), embedded.end());
  CHECK(on_disk == embedded);
  CHECK(embedded.size() == 7);
  CHECK(scenario_catalog().size() == 7);
}

TEST_CASE("engine names") {
  for (Engine e : {Engine::Numeric, Engine::Analytic, Engine::ClosedForm, Engine::Crosscheck})
    CHECK(engine_from_name(engine_name(e)) == e);
  CHECK_THROWS(engine_from_name("fast"));
}

TEST_CASE("csv formatting") {
  std::ostringstream out;
  write_csv(out, {"t", "x"}, {{0.0, 0.1}, {1.5, -2e-300}});
  CHECK(out.str() == "t,x\n0,0.10000000000000001\n1.5,-2.0000000000000001e-300\n");
}

TEST_CASE("custom crosscheck run writes deterministic output") {
  const fs::path dir = scratch("custom");
  ScenarioConfig cfg = parse(kCustom);
  cfg.output = (dir / "sub" / "run").string();
  const ScenarioResult r = run_scenario(cfg);
  CHECK(r.header == std::vector<std::string>{"t", "m_SM_analytic", "m_SM_closedform",
                                             "eta_N_analytic", "eta_N_closedform",
                                             "dist_analytic"});
  CHECK(r.rows.size() == 21);
  CHECK(r.max_deviation < 1e-9);
  CHECK(r.column("t").back() == 10.0);
  CHECK_THROWS_AS(r.column("nope"), InvalidArgument);
  REQUIRE(r.csv_path);
  REQUIRE(r.plot_path);
  const std::string first = slurp(*r.csv_path);
  const std::string script = slurp(*r.plot_path);
  CHECK(count(script, " title '") == 5);
  run_scenario(cfg);
  CHECK(slurp(*r.csv_path) == first);
  CHECK(slurp(*r.plot_path) == script);
  fs::remove_all(dir);
}

TEST_CASE("no output prefix writes nothing") {
  const ScenarioResult r = run_scenario(parse(kCustom));
  CHECK_FALSE(r.csv_path);
  CHECK_FALSE(r.plot_path);
}

TEST_CASE("crosscheck disagreement fails after writing the csv") {
  const fs::path dir = scratch("disagree");
  ScenarioConfig cfg = parse(kCustom);
  cfg.crosscheck_engines = {Engine::Numeric, Engine::Analytic};
  cfg.refine = 4.0;
  cfg.tolerance = 1e-13;
  cfg.output = (dir / "run").string();
  CHECK_THROWS_AS(run_scenario(cfg), CrosscheckError);
  CHECK(fs::exists(dir / "run.csv"));
  fs::remove_all(dir);
}

TEST_CASE("under-resolved numeric runs fail the integrity gate") {
  ScenarioConfig cfg = parse(kCustom);
  cfg.engine = Engine::Numeric;
  cfg.crosscheck_engines.clear();
  CHECK_THROWS_AS(run_scenario(cfg), NumericQualityError);
  cfg.refine = 4.0;
  CHECK_NOTHROW(run_scenario(cfg));
}

TEST_CASE("engine applicability") {
  ScenarioConfig cfg = parse(kCustom);
  cfg.engine = Engine::Numeric;
  cfg.crosscheck_engines.clear();
  cfg.sites = 5;
  CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
  cfg.engine = Engine::Crosscheck;
  cfg.crosscheck_engines = {Engine::Numeric, Engine::ClosedForm};
  cfg.sites = 2;
  cfg.opposite = true;
  CHECK_THROWS_AS(run_scenario(cfg), ConfigError);
}

TEST_CASE("plot script needs the csv") {
  const fs::path dir = scratch("plot");
  CHECK_THROWS_AS(emit_plot_script(dir / "missing.csv", "custom"), IoError);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "fig.csv");
    out << "t,eta_2_closedform,eta_3_closedform\n0,1,1\n";
  }
  CHECK_THROWS_AS(emit_plot_script(dir / "fig.csv", "fig2"), IoError);
  const fs::path script = emit_plot_script(dir / "fig.csv", "custom");
  CHECK(script.extension() == ".gp");
  CHECK(count(slurp(script), " title '") == 2);
  fs::remove_all(dir);
}

TEST_CASE("worker count") {
  {
    EnvGuard env("3");
    CHECK(worker_count() == 3);
  }
  {
    EnvGuard env("zero");
    CHECK_THROWS_AS(worker_count(), ConfigError);
  }
  {
    EnvGuard env("0");
    CHECK_THROWS_AS(worker_count(), ConfigError);
  }
  {
    EnvGuard env(nullptr);
    CHECK(worker_count() >= 1);
  }
}

TEST_CASE("sweep rows are independent of the worker count") {
  ScenarioConfig cfg = parse(
      "[scenario]\nname = sweep\nengine = crosscheck\nengines = analytic, closedform\n"
      "[chain]\ndim = 3\n[field]\ntype = consistent\nomega0 = 1\n"
      "[grid]\nt1 = 5\nsamples = 10\n"
      "[sweep]\nJ = 0.05, 0.1\nk = 0, 0.9\nomega1 = 0.5, 2\n");
  ScenarioResult one;
  {
    EnvGuard env("1");
    one = run_scenario(cfg);
  }
  ScenarioResult three;
  {
    EnvGuard env("3");
    three = run_scenario(cfg);
  }
  CHECK(one.rows == three.rows);
  CHECK(one.rows.size() == 8 * 11);
  REQUIRE(one.header.size() > 5);
  CHECK(std::vector<std::string>(one.header.begin(), one.header.begin() + 5) ==
        std::vector<std::string>{"J", "Q", "k", "omega1", "t"});
  // Parameter blocks come in grid order with J outermost.
  CHECK(one.rows.front()[0] == 0.05);
  CHECK(one.rows.back()[0] == 0.1);
  CHECK(one.rows.front()[3] == 0.5);
  CHECK(one.rows[11][3] == 2.0);
}

TEST_CASE("integrity thresholds") {
  IntegrityReport r;
  CHECK_NOTHROW(r.check());
  r.min_eigenvalue = -2e-9;
  CHECK_THROWS_AS(r.check(), NumericQualityError);
  r = IntegrityReport{};
  r.max_trace_error = 1e-11;
  CHECK_THROWS_AS(r.check(), NumericQualityError);
  r = IntegrityReport{};
  r.max_hermiticity_error = 1e-11;
  CHECK_THROWS_AS(r.check(), NumericQualityError);
  r = IntegrityReport{};
  r.max_purity_drift = 1e-5;
  CHECK_THROWS_AS(r.check(), NumericQualityError);
  r = IntegrityReport{};
  r.max_norm_error = 1e-9;
  CHECK_THROWS_AS(r.check(), NumericQualityError);
  r = IntegrityReport{};
  r.min_eigenvalue = -5e-10;
  r.max_purity_drift = 5e-7;
  CHECK_NOTHROW(r.check());
}

TEST_CASE("pulse block reports the pulse windows") {
  ScenarioConfig cfg = parse("[scenario]\nname = pulse_block\n[grid]\nt1 = 30\nsamples = 60\n"
                             "refine = 4\n");
  const ScenarioResult r = run_scenario(cfg);
  bool found = false;
  for (const std::string& n : r.notes) found = found || n.rfind("pulse ", 0) == 0;
  CHECK(found);
  CHECK(r.integrity.states > 0);
}
