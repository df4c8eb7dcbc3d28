#include "opuc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

namespace opuc {

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw OpucError("unknown format '" + name + "' (json, csv, text)");
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// json cannot hold inf/nan; keep them as strings.
nlohmann::json num(double x) {
  if (std::isfinite(x)) return x;
  return fmt_double(x);
}

}  // namespace

nlohmann::json to_json(cplx c) { return nlohmann::json::array({num(c.real()), num(c.imag())}); }

nlohmann::json to_json(const ResidualReport& r) {
  nlohmann::json j{{"id", r.id},          {"n", r.n},           {"trial", r.trial},
                   {"z", to_json(r.z)},   {"w", to_json(r.w)},  {"lhs", to_json(r.lhs)},
                   {"rhs", to_json(r.rhs)}, {"scale", num(r.scale)}, {"residual", num(r.residual)},
                   {"tol", num(r.tol)},   {"pass", r.pass}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

nlohmann::json to_json(const SuiteReport& rep) {
  nlohmann::json j;
  j["config"] = {{"n_max", rep.config.n_max}, {"trials", rep.config.trials}, {"seed", rep.config.seed}};
  j["records"] = nlohmann::json::array();
  for (const auto& r : rep.records) j["records"].push_back(to_json(r));
  j["adjudications"] = nlohmann::json::array();
  for (const auto& a : rep.adjudications) {
    nlohmann::json ja{{"topic", a.topic}, {"selected", a.selected.empty() ? nlohmann::json() : nlohmann::json(a.selected)}};
    ja["variants"] = nlohmann::json::array();
    for (const auto& v : a.variants)
      ja["variants"].push_back(
          {{"label", v.label}, {"max_residual", num(v.max_residual)}, {"passed", v.passed}, {"trials", v.trials}});
    j["adjudications"].push_back(ja);
  }
  j["failures"] = rep.failures();
  j["all_pass"] = rep.all_pass();
  return j;
}

void write_csv(std::ostream& os, const SuiteReport& rep) {
  os << "id,n,trial,z_re,z_im,w_re,w_im,residual,tol,verdict\n";
  for (const auto& r : rep.records) {
    os << r.id << ',' << r.n << ',' << r.trial << ',' << fmt_double(r.z.real()) << ',' << fmt_double(r.z.imag())
       << ',' << fmt_double(r.w.real()) << ',' << fmt_double(r.w.imag()) << ',' << fmt_double(r.residual) << ','
       << fmt_double(r.tol) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

void write_text(std::ostream& os, const SuiteReport& rep) {
  struct Row {
    std::size_t count = 0, failed = 0;
    double worst = 0.0;
    double tol = 0.0;
  };
  std::vector<std::string> order;
  std::map<std::string, Row> rows;
  for (const auto& r : rep.records) {
    auto [it, fresh] = rows.try_emplace(r.id);
    if (fresh) order.push_back(r.id);
    Row& row = it->second;
    ++row.count;
    if (!r.pass) ++row.failed;
    row.worst = std::max(row.worst, r.residual);
    row.tol = r.tol;
  }
  for (const auto& id : order) {
    const Row& row = rows[id];
    os << (row.failed ? "FAIL " : "PASS ") << id << "  records=" << row.count << " failed=" << row.failed
       << " max_residual=" << fmt_double(row.worst) << " tol=" << fmt_double(row.tol) << '\n';
  }
  for (const auto& a : rep.adjudications) {
    os << "adjudication " << a.topic << ": " << (a.selected.empty() ? "UNDECIDED" : a.selected);
    for (const auto& v : a.variants)
      os << "  [" << v.label << " " << v.passed << "/" << v.trials << " max=" << fmt_double(v.max_residual) << "]";
    os << '\n';
  }
  const std::size_t fails = rep.failures();
  if (fails) {
    os << "failures:\n";
    for (const auto& r : rep.records) {
      if (r.pass) continue;
      os << "  " << r.id << " n=" << r.n << " trial=" << r.trial << " z=(" << fmt_double(r.z.real()) << ","
         << fmt_double(r.z.imag()) << ") w=(" << fmt_double(r.w.real()) << "," << fmt_double(r.w.imag())
         << ") residual=" << fmt_double(r.residual);
      if (!r.error.empty()) os << " error: " << r.error;
      os << '\n';
    }
  }
  os << (rep.all_pass() ? "ALL PASS" : "FAILED") << " (" << rep.records.size() << " records, " << fails
     << " failures)\n";
}

void write_report(std::ostream& os, const SuiteReport& rep, ReportFormat fmt) {
  switch (fmt) {
    case ReportFormat::Json: os << to_json(rep).dump(2) << '\n'; break;
    case ReportFormat::Csv: write_csv(os, rep); break;
    case ReportFormat::Text: write_text(os, rep); break;
  }
}

}  // namespace opuc
