#include "toeptrace/harness.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace toeptrace {

const char* to_string(RateFit::Verdict v) {
  switch (v) {
    case RateFit::Verdict::consistent:
      return "consistent";
    case RateFit::Verdict::faster_than_bound:
      return "faster_than_bound";
    case RateFit::Verdict::violation:
      return "violation";
    case RateFit::Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

RateFit fit_rate(std::span<const TraceRecord> records, int drop_head,
                 std::optional<double> gamma_theory, double slack) {
  if (drop_head < 0) throw ConfigError("fit_rate: drop_head must be >= 0");
  if (records.size() <= static_cast<size_t>(drop_head) ||
      records.size() - static_cast<size_t>(drop_head) < 3)
    throw DegenerateFit("fit_rate: need at least 3 points after drop_head");
  auto used = records.subspan(static_cast<size_t>(drop_head));

  RateFit fit;
  fit.n_min = used.front().n;
  fit.n_max = used.back().n;

  bool any_zero = false;
  for (const auto& r : used)
    if (r.delta == 0) any_zero = true;
  if (any_zero) {
    // Exact agreement beats any rate; a log fit is impossible but harmless.
    fit.slope = -std::numeric_limits<double>::infinity();
    fit.intercept = 0;
    fit.r_squared = 1;
    fit.verdict = RateFit::Verdict::consistent;
    fit.note = "degenerate: zero delta encountered (exact agreement)";
    return fit;
  }

  std::vector<double> lx, ly;
  for (const auto& r : used) {
    lx.push_back(std::log(static_cast<double>(r.n)));
    ly.push_back(std::log(r.delta));
  }
  LinearFit lf = linear_fit(lx, ly);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;

  if (!gamma_theory) {
    fit.verdict = RateFit::Verdict::inconclusive;
    fit.note = "no theoretical rate provided";
    return fit;
  }
  const double g = *gamma_theory;
  if (fit.slope > -g + slack) {
    fit.verdict = fit.r_squared >= 0.9 ? RateFit::Verdict::violation : RateFit::Verdict::inconclusive;
    if (fit.verdict == RateFit::Verdict::inconclusive) fit.note = "decay too slow but fit quality poor";
  } else if (fit.slope <= -g - slack) {
    fit.verdict = RateFit::Verdict::faster_than_bound;
  } else {
    fit.verdict = RateFit::Verdict::consistent;
  }
  return fit;
}

void ExperimentConfig::validate() const {
  quadrature.validate();
  if (nu != 1 && nu != 2)
    throw ConfigError("nu must be 1 or 2 (rate guarantees only exist for these powers)");
  if (n_grid.empty()) throw ConfigError("n_grid must not be empty");
  for (size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw ConfigError("n_grid entries must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw ConfigError("n_grid must be strictly increasing");
  }
  if (drop_head < 0) throw ConfigError("drop_head must be >= 0");
  if (slack < 0) throw ConfigError("slack must be >= 0");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (dense_threshold < 1) throw ConfigError("dense_threshold must be >= 1");
  if (rate_provenance == "theorem3") {
    if (!theoretical_rate) throw ConfigError("theorem3 provenance requires theoretical_rate");
    const double a1 = f.singularity_alpha(), a2 = g.singularity_alpha();
    if (!(a1 + a2 < 0.5))
      throw ConfigError("theorem3 provenance requires alpha1 + alpha2 < 1/2");
    if (std::abs(*theoretical_rate - theorem3_gamma(a1, a2)) > 1e-12)
      throw ConfigError("theorem3 provenance requires gamma = 1/4 - (alpha1+alpha2)/2");
  }
}

TraceEngine ExperimentConfig::engine_for(int n) const {
  return n < dense_threshold ? TraceEngine::dense : TraceEngine::matfree;
}

namespace {

SweepRow run_point(const ExperimentConfig& cfg, int n) {
  SweepRow row;
  row.record.n = n;
  row.record.nu = cfg.nu;
  row.record.engine = cfg.engine_for(n);
  try {
    row.record = delta(cfg.f, cfg.g, n, cfg.nu, cfg.engine_for(n), cfg.quadrature);
  } catch (const QuadratureNoConverge&) {
    row.status = "noconverge";
  } catch (const NonIntegrableProduct&) {
    row.status = "nonintegrable";
  } catch (...) {
    row.status = "error";
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg,
                                const std::function<void(const SweepRow&)>& on_row) {
  cfg.validate();
  const size_t count = cfg.n_grid.size();
  std::vector<SweepRow> rows(count);

  if (cfg.workers == 1) {
    for (size_t i = 0; i < count; ++i) {
      rows[i] = run_point(cfg, cfg.n_grid[i]);
      if (on_row) on_row(rows[i]);
    }
    return rows;
  }

  std::atomic<size_t> next{0};
  std::vector<char> done(count, 0);
  std::mutex mu;
  std::condition_variable cv;
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      SweepRow row = run_point(cfg, cfg.n_grid[i]);
      {
        std::lock_guard<std::mutex> lock(mu);
        rows[i] = std::move(row);
        done[i] = 1;
      }
      cv.notify_all();
    }
  };
  const size_t nthreads = std::min<size_t>(cfg.workers, count);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  // Emit rows in n-order as they (and their predecessors) complete, so partial
  // output files are always a prefix of the full result.
  for (size_t i = 0; i < count; ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return done[i] != 0; });
    if (on_row) on_row(rows[i]);
  }
  for (auto& t : pool) t.join();
  return rows;
}

ExperimentConfig preset(const std::string& name, const PresetOverrides& over) {
  ExperimentConfig cfg;
  cfg.nu = over.nu.value_or(2);
  if (name == "a1_smooth") {
    cfg.f = Symbol::cosine();
    cfg.g = Symbol::cosine();
    cfg.theoretical_rate = 1.0;
    cfg.rate_provenance = "theoremB1";
    cfg.n_grid = over.n_grid.value_or(std::vector<int>{64, 128, 256, 512, 1024, 2048, 4096});
  } else if (name == "example1" || name == "example2" || name == "theorem2") {
    double a1 = over.alpha1.value_or(name == "theorem2" ? 0.125 : 0.1);
    double a2 = over.alpha2.value_or(name == "theorem2" ? 0.125 : 0.1);
    if (name == "example2") {
      cfg.f = Symbol::farima(over.sigma2_1.value_or(1.0), a1);
      cfg.g = Symbol::farima(over.sigma2_2.value_or(1.0), a2);
    } else {
      cfg.f = Symbol::power_law(a1);
      cfg.g = Symbol::power_law(a2);
    }
    cfg.theoretical_rate = theorem3_gamma(a1, a2);
    cfg.rate_provenance = name == "theorem2" ? "theorem2" : "theorem3";
    cfg.n_grid = over.n_grid.value_or(std::vector<int>{256, 512, 1024, 2048, 4096});
  } else {
    throw UnknownPreset("unknown preset: \"" + name + "\" (see `preset list`)");
  }
  cfg.validate();
  return cfg;
}

std::vector<std::pair<std::string, std::string>> preset_list() {
  return {
      {"a1_smooth", "f = g = cos λ; smooth pair, expected rate O(1/n)"},
      {"example1", "f_i = |λ|^{-α_i} power laws (defaults α=0.1); rate 1/4-(α1+α2)/2"},
      {"example2", "f_i = (σ²/2π)|1-e^{iλ}|^{-α_i} long-memory densities; rate 1/4-(α1+α2)/2"},
      {"theorem2", "Lip(p,γ) pair via |λ|^{-1/8} with p=q=4; rate 1/8"},
  };
}

}  // namespace toeptrace
