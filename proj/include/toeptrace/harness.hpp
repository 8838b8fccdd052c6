#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toeptrace/trace.hpp"

namespace toeptrace {

/// log-log regression of Δ_{n,ν} vs n with a verdict against a theoretical
/// rate γ (Δ = O(n^{-γ+ε}); the slack mirrors the arbitrary ε > 0).
struct RateFit {
  enum class Verdict { consistent, faster_than_bound, violation, inconclusive };

  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  int n_min = 0;
  int n_max = 0;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

const char* to_string(RateFit::Verdict v);

/// Fits log delta vs log n after dropping the first drop_head pre-asymptotic
/// points. Throws DegenerateFit with fewer than 3 usable points; zero deltas
/// short-circuit to a `consistent` verdict (exact agreement beats any rate).
RateFit fit_rate(std::span<const TraceRecord> records, int drop_head,
                 std::optional<double> gamma_theory, double slack = 0.1);

/// One experiment: a symbol pair, an n grid, the engine policy and the
/// theoretical rate to judge the fit against.
struct ExperimentConfig {
  Symbol f = Symbol::constant(1.0);
  Symbol g = Symbol::constant(1.0);
  int nu = 2;
  std::vector<int> n_grid = {64, 128, 256, 512, 1024, 2048, 4096};
  int dense_threshold = 512;  // dense strictly below, matfree at and above
  QuadratureSpec quadrature;  // abs_tol 1e-10 for coefficients; M_nu of singular
                              // products is relaxed to 1e-8 inside delta()
  std::optional<double> theoretical_rate;
  std::string rate_provenance;  // e.g. "theorem3", "theoremB1"
  int drop_head = 2;
  double slack = 0.1;
  int workers = 1;

  void validate() const;
  TraceEngine engine_for(int n) const;
};

/// Sweep row: the record plus a status ("ok" or the error tag). Failed points
/// keep the sweep going.
struct SweepRow {
  TraceRecord record;
  std::string status = "ok";
};

/// Runs the n grid (concurrently up to cfg.workers), invoking on_row in
/// n-order as soon as each row and all its predecessors are done, so partial
/// output is recoverable and byte-identical across worker counts.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg,
                                const std::function<void(const SweepRow&)>& on_row = {});

struct PresetOverrides {
  std::optional<double> alpha1, alpha2, sigma2_1, sigma2_2;
  std::optional<int> nu;
  std::optional<std::vector<int>> n_grid;
};

/// Named experiment families: a1_smooth, example1, example2, theorem2.
ExperimentConfig preset(const std::string& name, const PresetOverrides& over = {});
std::vector<std::pair<std::string, std::string>> preset_list();

/// Verification suite: lemma checks, the truncated-product lower-bound inequality, the divergence
/// demo, engine equivalence and the exact identity cases.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};
struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass = true;
};
struct VerifyOptions {
  bool quick = false;                // trims the engine-equivalence grid
  double dirichlet_constant = 0;     // 0 = the lemma's π; tests inject smaller
  int dirichlet_samples = 100000;
};
VerifyReport verify_all(const VerifyOptions& opts = {});

}  // namespace toeptrace
