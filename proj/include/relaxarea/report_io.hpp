#pragma once

#include <map>
#include <string>
#include <vector>

#include "relaxarea/relaxation.hpp"
#include "relaxarea/topology.hpp"

namespace relaxarea {

/// Header `k,x0_0,..,x0_{n-1},x1_0,..,x1_{n-1},multiplicity`; point cells repeat their
/// coordinates. Doubles use 17 significant digits, lines end in LF. Throws IoFailure.
void write_chain_csv(const SingularChain& chain, const std::string& path);
SingularChain read_chain_csv(const std::string& path);

/// Header `param,A,TV,M2,err_A,err_TV,err_M2`, one row per study row.
void write_report_csv(const ConvergenceReport& report, const std::string& path);

/// Header `radius,ball_bound,cylinder_bound,chosen,overlap_area`.
void write_subadditivity_csv(const SubadditivityReport& report, const std::string& path);

/// Numeric CSV as (header, rows); used for round trips.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

/// JSON summary of a study: fitted limits, rates and residuals per metric, plus any extra
/// labelled strings and numbers (verdicts, reference values).
std::string report_summary_json(const ConvergenceReport& report, const std::map<std::string, std::string>& labels = {},
                                const std::map<std::string, double>& numbers = {});
std::string subadditivity_summary_json(const SubadditivityReport& report);

void write_text(const std::string& path, const std::string& text);

/// printf("%.17g").
std::string format_double(double v);

}  // namespace relaxarea
