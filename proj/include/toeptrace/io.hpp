#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toeptrace/analysis.hpp"
#include "toeptrace/harness.hpp"
#include "toeptrace/spectral.hpp"

namespace toeptrace {

/// 17 significant digits, '.' decimal, no grouping: round-trips any double.
std::string format_g17(double v);

/// CSV surfaces (headers are part of the CLI contract).
void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, const SweepRow& row);
void write_coeffs_csv(std::ostream& out, const FourierTable& table);
void write_divergence_csv(std::ostream& out, const DivergenceReport& rep);

std::vector<SweepRow> read_sweep_csv(std::istream& in);

/// JSON surfaces (all include the library version; none include timestamps).
std::string record_json(const TraceRecord& rec, const std::string& f_id, const std::string& g_id,
                        const std::string& status = "ok");
std::string rate_json(const RateFit& fit, std::optional<double> gamma_theory, double slack);
std::string verify_json(const VerifyReport& report);

}  // namespace toeptrace
