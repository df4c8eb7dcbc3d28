#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "opuc/suite.hpp"

namespace opuc {

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(const std::string& name);

/// Complex numbers are written as [re, im].
nlohmann::json to_json(cplx c);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const SuiteReport& rep);

/// id,n,trial,z_re,z_im,w_re,w_im,residual,tol,verdict
void write_csv(std::ostream& os, const SuiteReport& rep);

/// One line per id with the worst residual, then every failing record.
void write_text(std::ostream& os, const SuiteReport& rep);

void write_report(std::ostream& os, const SuiteReport& rep, ReportFormat fmt);

/// %.17g
std::string fmt_double(double x);

}  // namespace opuc
