#include "oscspec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace oscspec {

namespace {

using nlohmann::json;

bool parse_number(std::string field, double& out) {
  // trim whitespace; strtod-free so the result cannot depend on locale
  const auto first = field.find_first_not_of(" \t\r");
  if (first == std::string::npos) return false;
  const auto last = field.find_last_not_of(" \t\r");
  field = field.substr(first, last - first + 1);
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Tabulated parse_tabulated_csv(std::istream& in, InterpOrder order) {
  std::vector<double> xs, vs;
  std::string line;
  std::size_t lineno = 0;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected two comma-separated columns", lineno);
    double x, v;
    const bool ok =
        parse_number(line.substr(0, comma), x) && parse_number(line.substr(comma + 1), v);
    if (!ok) {
      if (first_data) {
        first_data = false;  // header row
        continue;
      }
      throw ParseError("cannot parse numeric values", lineno);
    }
    first_data = false;
    if (!xs.empty() && !(x > xs.back()))
      throw ParseError("x samples must be strictly increasing", lineno);
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 2) throw ParseError("need at least 2 data rows", lineno);
  return Tabulated(std::move(xs), std::move(vs), order);
}

Tabulated load_tabulated_csv(const std::string& path, InterpOrder order) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_tabulated_csv(in, order);
}

std::string spectrum_to_json(const std::vector<Eigenpair>& levels,
                             const SolverSetup& setup) {
  json doc;
  doc["potential"] = potential_name(setup.potential);
  doc["constants"] = {{"hbar", setup.constants.hbar}, {"mass", setup.constants.mass}};
  doc["convention"] =
      setup.convention == Convention::Faithful ? "faithful" : "paper";
  doc["grid"] = {{"x_min", setup.grid.x_min},
                 {"x_max", setup.grid.x_max},
                 {"n_points", setup.grid.n_points}};
  doc["levels"] = json::array();
  for (const Eigenpair& p : levels) {
    doc["levels"].push_back({{"n", p.n},
                             {"energy", p.energy},
                             {"nodes", p.node_count},
                             {"norm_residual", p.norm_residual},
                             {"mismatch_residual", p.mismatch_residual}});
  }
  return doc.dump(2) + "\n";
}

SpectrumDocument parse_spectrum_json(const std::string& text) {
  const json doc = json::parse(text);
  SpectrumDocument out;
  out.potential = doc.at("potential").get<std::string>();
  out.hbar = doc.at("constants").at("hbar").get<double>();
  out.mass = doc.at("constants").at("mass").get<double>();
  out.convention = doc.at("convention").get<std::string>();
  out.x_min = doc.at("grid").at("x_min").get<double>();
  out.x_max = doc.at("grid").at("x_max").get<double>();
  out.n_points = doc.at("grid").at("n_points").get<std::size_t>();
  for (const auto& lvl : doc.at("levels")) {
    out.levels.push_back({lvl.at("n").get<std::size_t>(),
                          lvl.at("energy").get<double>(),
                          lvl.at("nodes").get<std::size_t>(),
                          lvl.at("norm_residual").get<double>(),
                          lvl.at("mismatch_residual").get<double>()});
  }
  return out;
}

void write_sweep_csv(const std::vector<ShootingReport>& reports, std::ostream& out) {
  out << "E,mismatch,node_count\n";
  for (const ShootingReport& r : reports) {
    out << format_double(r.energy) << ',';
    if (r.error)
      out << "error," << *r.error << '\n';
    else
      out << format_double(r.mismatch) << ',' << r.node_count << '\n';
  }
}

void write_verify_csv(const std::vector<ReverseDirectionReport>& reports,
                      std::ostream& out) {
  out << "n,energy,residual_faithful,residual_paper,turning_left,turning_right\n";
  for (const ReverseDirectionReport& r : reports) {
    out << r.n << ',' << format_double(r.energy) << ','
        << format_double(r.residual_faithful) << ',' << format_double(r.residual_paper)
        << ',' << format_double(r.turning_left) << ',' << format_double(r.turning_right)
        << '\n';
  }
}

}  // namespace oscspec
