#include <algorithm>
#include <fstream>
#include <sstream>

#include "quditchain/scenario.hpp"

namespace quditchain {

namespace {

struct Curve {
  std::string series;
  std::string title;
};

std::vector<Curve> figure_curves(const std::string& layout) {
  if (layout == "fig1")
    return {{"m_SM_Jneg", "1: m_SM, Q = d, J < 0"},
            {"m_SM_Jpos", "2: m_SM, Q = d, J > 0"},
            {"m_VW", "3: m_VW"},
            {"m_SM", "3: m_SM"},
            {"eta_2", "4: eta_2"},
            {"m_I", "5: m_I"}};
  if (layout == "fig2")
    return {{"eta_2", "eta_2"}, {"eta_3", "eta_3"}, {"eta_4", "eta_4"}, {"eta_5", "eta_5"},
            {"eta_6", "eta_6"}};
  if (layout == "fig3")
    return {{"m_I", "1: m_I"},
            {"m_SM", "2: m_SM"},
            {"eta_2", "3: eta_2"},
            {"m_VW", "4: m_VW"},
            {"eta_3", "5: eta_3 (3 quartits)"}};
  if (layout == "fig4") return {{"m_I", "1: m_I"}, {"m_SM", "2: m_SM"}, {"eta_2", "3: eta_2"}};
  return {};
}

std::vector<std::string> read_header(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw IoError("plot script: missing CSV " + csv.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("plot script: empty CSV " + csv.string());
  std::vector<std::string> cols;
  std::stringstream ss(line);
  for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
  return cols;
}

bool is_parameter(const std::string& c) {
  return c == "t" || c == "J" || c == "Q" || c == "k" || c == "omega1";
}

}  // namespace

std::filesystem::path emit_plot_script(const std::filesystem::path& csv,
                                       const std::string& layout) {
  const std::vector<std::string> cols = read_header(csv);
  const auto t_it = std::find(cols.begin(), cols.end(), "t");
  if (t_it == cols.end()) throw IoError("plot script: CSV has no t column");
  const std::size_t t_col = static_cast<std::size_t>(t_it - cols.begin()) + 1;

  // (1-based column, title)
  std::vector<std::pair<std::size_t, std::string>> plotted;
  const std::vector<Curve> curves = figure_curves(layout);
  if (!curves.empty()) {
    for (const Curve& c : curves) {
      std::size_t found = 0;
      for (const char* engine : {"closedform", "analytic", "numeric"}) {
        const auto it = std::find(cols.begin(), cols.end(), c.series + "_" + engine);
        if (it != cols.end()) {
          found = static_cast<std::size_t>(it - cols.begin()) + 1;
          break;
        }
      }
      if (found == 0) throw IoError("plot script: CSV lacks a column for " + c.series);
      plotted.emplace_back(found, c.title);
    }
  } else {
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!is_parameter(cols[j])) plotted.emplace_back(j + 1, cols[j]);
  }
  if (plotted.empty()) throw IoError("plot script: nothing to plot in " + csv.string());

  std::filesystem::path script = csv;
  script.replace_extension(".gp");
  std::filesystem::path image = csv.filename();
  image.replace_extension(".png");

  std::ofstream out(script, std::ios::binary);
  if (!out) throw IoError("cannot write " + script.string());
  out << "# " << layout << ": run `gnuplot " << script.filename().string()
      << "` in this directory\n";
  out << "set datafile separator ','\n";
  out << "set terminal pngcairo size 1000,640\n";
  out << "set output '" << image.string() << "'\n";
  out << "set xlabel 't'\n";
  out << "set key outside right\n";
  out << "set grid\n";
  const bool points = layout == "sweep";
  out << "plot ";
  for (std::size_t i = 0; i < plotted.size(); ++i) {
    if (i) out << ", \\\n     ";
    out << "'" << csv.filename().string() << "' every ::1 using " << t_col << ":" << plotted[i].first
        << (points ? " with points pt 7 ps 0.3" : " with lines") << " title '"
        << plotted[i].second << "'";
  }
  out << "\n";
  return script;
}

}  // namespace quditchain
