#include "toeptrace/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "toeptrace/version.hpp"

namespace toeptrace {

using nlohmann::json;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// JSON has no inf/nan literals; encode them as strings for fidelity.
json num_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void write_sweep_header(std::ostream& out) {
  out << "n,nu,s_n_nu,m_nu,delta,engine,elapsed_s,status\n";
}

void write_sweep_row(std::ostream& out, const SweepRow& row) {
  const TraceRecord& r = row.record;
  out << r.n << ',' << r.nu << ',' << format_g17(r.s_n_nu) << ',' << format_g17(r.m_nu) << ','
      << format_g17(r.delta) << ',' << to_string(r.engine) << ',' << format_g17(r.elapsed) << ','
      << row.status << '\n';
  out.flush();
}

void write_coeffs_csv(std::ostream& out, const FourierTable& table) {
  out << "# symbol = " << table.symbol_id << "\n";
  out << "# n = " << table.n << ", err_est = " << format_g17(table.err_est) << "\n";
  out << "k,coeff\n";
  for (int k = 0; k < table.n; ++k) out << k << ',' << format_g17(table.coeffs[k]) << '\n';
}

void write_divergence_csv(std::ostream& out, const DivergenceReport& rep) {
  out << "s,partial_integral\n";
  for (size_t i = 0; i < rep.truncations.size(); ++i)
    out << format_g17(rep.truncations[i]) << ',' << format_g17(rep.partial_integrals[i]) << '\n';
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("n,", 0) == 0) continue;  // header row
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw ConfigError("sweep CSV: expected 8 columns, got line: " + line);
    SweepRow row;
    row.record.n = std::stoi(fields[0]);
    row.record.nu = std::stoi(fields[1]);
    row.record.s_n_nu = std::stod(fields[2]);
    row.record.m_nu = std::stod(fields[3]);
    row.record.delta = std::stod(fields[4]);
    row.record.engine = trace_engine_from_string(fields[5]);
    row.record.elapsed = std::stod(fields[6]);
    row.status = fields[7];
    rows.push_back(row);
  }
  return rows;
}

std::string record_json(const TraceRecord& rec, const std::string& f_id, const std::string& g_id,
                        const std::string& status) {
  json j;
  j["version"] = kVersion;
  j["f"] = f_id;
  j["g"] = g_id;
  j["n"] = rec.n;
  j["nu"] = rec.nu;
  j["s_n_nu"] = num_or_string(rec.s_n_nu);
  j["m_nu"] = num_or_string(rec.m_nu);
  j["delta"] = num_or_string(rec.delta);
  j["engine"] = to_string(rec.engine);
  j["elapsed_s"] = rec.elapsed;
  j["status"] = status;
  return j.dump(2) + "\n";
}

std::string rate_json(const RateFit& fit, std::optional<double> gamma_theory, double slack) {
  json j;
  j["version"] = kVersion;
  j["slope"] = num_or_string(fit.slope);
  j["intercept"] = num_or_string(fit.intercept);
  j["r_squared"] = num_or_string(fit.r_squared);
  j["n_min"] = fit.n_min;
  j["n_max"] = fit.n_max;
  j["verdict"] = to_string(fit.verdict);
  if (!fit.note.empty()) j["note"] = fit.note;
  if (gamma_theory)
    j["gamma_theory"] = *gamma_theory;
  else
    j["gamma_theory"] = nullptr;
  j["slack"] = slack;
  return j.dump(2) + "\n";
}

std::string verify_json(const VerifyReport& report) {
  json j;
  j["version"] = kVersion;
  j["all_pass"] = report.all_pass;
  j["checks"] = json::array();
  for (const auto& c : report.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  return j.dump(2) + "\n";
}

}  // namespace toeptrace
