#include "relaxarea/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace relaxarea {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to " + path + " failed");
}

void write_chain_csv(const SingularChain& chain, const std::string& path) {
  std::string s = "k";
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < chain.n; ++i) s += ",x" + std::to_string(e) + "_" + std::to_string(i);
  s += ",multiplicity\n";
  for (const auto& c : chain.cells) {
    s += std::to_string(chain.k);
    for (int i = 0; i < chain.n; ++i) s += "," + format_double(c.a(i));
    const Point& b = chain.k == 0 ? c.a : c.b;
    for (int i = 0; i < chain.n; ++i) s += "," + format_double(b(i));
    s += "," + std::to_string(c.multiplicity) + "\n";
  }
  write_text(path, s);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    if (first) {
      while (std::getline(ss, cell, ',')) t.header.push_back(cell);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw Error(ErrorCode::IoFailure, "non-numeric cell '" + cell + "' in " + path);
      row.push_back(v);
    }
    if (row.size() != t.header.size()) throw Error(ErrorCode::IoFailure, "ragged row in " + path);
    t.rows.push_back(std::move(row));
  }
  if (first) throw Error(ErrorCode::IoFailure, "missing header in " + path);
  return t;
}

SingularChain read_chain_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  if (t.header.size() < 4 || (t.header.size() - 2) % 2 != 0) throw Error(ErrorCode::IoFailure, "not a chain CSV");
  SingularChain chain;
  chain.n = static_cast<int>((t.header.size() - 2) / 2);
  for (const auto& row : t.rows) {
    chain.k = static_cast<int>(row[0]);
    ChainCell c;
    c.a = Point(chain.n);
    c.b = Point(chain.n);
    for (int i = 0; i < chain.n; ++i) {
      c.a(i) = row[1 + i];
      c.b(i) = row[1 + chain.n + i];
    }
    c.multiplicity = static_cast<int>(row.back());
    chain.cells.push_back(c);
  }
  return chain;
}

void write_report_csv(const ConvergenceReport& report, const std::string& path) {
  std::string s = "param,A,TV,M2,err_A,err_TV,err_M2\n";
  for (const auto& r : report.rows) {
    const auto& m = r.metrics;
    s += format_double(r.param) + "," + format_double(m.area.value) + "," + format_double(m.tv.value) + "," +
         format_double(m.minors.value) + "," + format_double(m.area.error_estimate) + "," +
         format_double(m.tv.error_estimate) + "," + format_double(m.minors.error_estimate) + "\n";
  }
  write_text(path, s);
}

void write_subadditivity_csv(const SubadditivityReport& report, const std::string& path) {
  std::string s = "radius,ball_bound,cylinder_bound,chosen,overlap_area\n";
  for (const auto& r : report.rows)
    s += format_double(r.radius) + "," + format_double(r.ball_bound) + "," + format_double(r.cylinder_bound) + "," +
         format_double(r.chosen) + "," + format_double(r.overlap_area) + "\n";
  write_text(path, s);
}

namespace {

nlohmann::json fit_json(const LimitFit& f) {
  nlohmann::json j;
  j["available"] = f.available;
  j["limit"] = f.limit;
  j["rate"] = f.rate ? nlohmann::json(*f.rate) : nlohmann::json(nullptr);
  j["coefficient"] = f.coefficient;
  j["residual"] = f.residual;
  j["rows_used"] = f.rows_used;
  return j;
}

}  // namespace

std::string report_summary_json(const ConvergenceReport& report, const std::map<std::string, std::string>& labels,
                                const std::map<std::string, double>& numbers) {
  nlohmann::json j;
  j["parameter"] = report.parameter_name;
  j["rows"] = report.rows.size();
  int converged = 0;
  for (const auto& r : report.rows) converged += r.converged ? 1 : 0;
  j["converged_rows"] = converged;
  j["limits"] = {{"A", fit_json(report.area)}, {"TV", fit_json(report.tv)}, {"M2", fit_json(report.minors)}};
  for (const auto& [k, v] : labels) j[k] = v;
  for (const auto& [k, v] : numbers) j[k] = v;
  return j.dump(2) + "\n";
}

std::string subadditivity_summary_json(const SubadditivityReport& report) {
  nlohmann::json j;
  j["violation_witnessed"] = report.violation_witnessed;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"radius", r.radius},
                    {"ball_bound", r.ball_bound},
                    {"cylinder_bound", r.cylinder_bound},
                    {"chosen", r.chosen},
                    {"overlap_area", r.overlap_area},
                    {"ball_fit", fit_json(r.ball_fit)},
                    {"cylinder_fit", fit_json(r.cylinder_fit)}});
  j["rows"] = rows;
  if (report.witness)
    j["witness"] = {{"r_small", report.witness->r_small},
                    {"r_big", report.witness->r_big},
                    {"lhs", report.witness->lhs},
                    {"rhs", report.witness->rhs}};
  return j.dump(2) + "\n";
}

}  // namespace relaxarea
