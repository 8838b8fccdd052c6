#pragma once

#include <istream>
#include <map>
#include <string>

#include "toeptrace/harness.hpp"

namespace toeptrace {

/// Parses the tagged-record symbol syntax used in config files and on the
/// command line, e.g.:
///   { kind = "farima", sigma2 = 1.0, alpha = 0.3 }
///   { kind = "powerlaw", alpha = 0.2 }
///   { kind = "trigpoly", coeffs = [0, 1] }
///   { kind = "constant", value = 1 }
///   { kind = "abssine" }
///   { kind = "scaled", factor = 2, base = { ... } }
///   { kind = "sum", left = { ... }, right = { ... } }
/// Shorthand: a bare kind name ("abssine", "cos") is also accepted.
Symbol parse_symbol_record(const std::string& text);

/// Line-oriented `key = value` file with # comments. Values may be numbers,
/// quoted strings, [..] integer lists, or { .. } symbol records.
std::map<std::string, std::string> parse_config_file(std::istream& in);

/// Applies file keys onto a config. Recognized keys: f, g, nu, n_grid,
/// dense_threshold, abs_tol, panels_per_unit, grading_exponent,
/// max_refinements, theoretical_rate, rate_provenance, drop_head, slack,
/// workers, preset.
ExperimentConfig config_from_map(const std::map<std::string, std::string>& kv);

std::vector<int> parse_int_list(const std::string& text);

}  // namespace toeptrace
