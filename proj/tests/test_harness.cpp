#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "toeptrace/config.hpp"
#include "toeptrace/io.hpp"

using namespace toeptrace;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<TraceRecord> synthetic(const std::vector<int>& ns,
                                   const std::function<double(int)>& delta_of) {
  std::vector<TraceRecord> recs;
  for (int n : ns) {
    TraceRecord r;
    r.n = n;
    r.nu = 2;
    r.delta = delta_of(n);
    recs.push_back(r);
  }
  return recs;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("fit_rate on an exact power law") {
    auto recs = synthetic({8, 16, 32, 64, 128}, [](int n) { return std::pow(n, -0.5); });
    RateFit fit = fit_rate(recs, 0, 0.45, 0.1);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.n_min == 8);
    CHECK(fit.n_max == 128);
    CHECK(fit.verdict == RateFit::Verdict::consistent);
    // much faster decay than the bound
    RateFit fast = fit_rate(recs, 0, 0.2, 0.1);
    CHECK(fast.verdict == RateFit::Verdict::faster_than_bound);
  }

  TEST_CASE("fit_rate flags stagnation as violation") {
    auto recs = synthetic({8, 16, 32, 64}, [](int) { return 0.5; });
    RateFit fit = fit_rate(recs, 0, 0.5, 0.1);
    CHECK(fit.slope == doctest::Approx(0.0));
    CHECK(fit.verdict == RateFit::Verdict::violation);
  }

  TEST_CASE("fit_rate degenerate inputs") {
    auto zero = synthetic({8, 16, 32}, [](int) { return 0.0; });
    RateFit fit = fit_rate(zero, 0, 0.5, 0.1);
    CHECK(fit.verdict == RateFit::Verdict::consistent);
    CHECK(!fit.note.empty());
    CHECK(std::isinf(fit.slope));

    auto two = synthetic({8, 16}, [](int n) { return 1.0 / n; });
    CHECK_THROWS_AS(fit_rate(two, 0, 0.5, 0.1), DegenerateFit);
    auto five = synthetic({8, 16, 32, 64, 128}, [](int n) { return 1.0 / n; });
    CHECK_THROWS_AS(fit_rate(five, 3, 0.5, 0.1), DegenerateFit);
  }

  TEST_CASE("verdict slack monotonicity") {
    // increasing slack can only move verdicts away from violation
    auto recs = synthetic({8, 16, 32, 64}, [](int n) { return std::pow(n, -0.45); });
    RateFit tight = fit_rate(recs, 0, 0.6, 0.05);
    RateFit loose = fit_rate(recs, 0, 0.6, 0.3);
    CHECK(tight.verdict == RateFit::Verdict::violation);
    CHECK(loose.verdict == RateFit::Verdict::consistent);
  }

  TEST_CASE("fit without a theoretical rate is inconclusive") {
    auto recs = synthetic({8, 16, 32}, [](int n) { return 1.0 / n; });
    RateFit fit = fit_rate(recs, 0, std::nullopt, 0.1);
    CHECK(fit.verdict == RateFit::Verdict::inconclusive);
  }

  TEST_CASE("presets") {
    ExperimentConfig e1 = preset("example1");
    CHECK(e1.theoretical_rate.value() == doctest::Approx(0.15));
    CHECK(e1.rate_provenance == "theorem3");
    CHECK(e1.f.singularity_alpha() == doctest::Approx(0.1));

    PresetOverrides over;
    over.alpha1 = 0.2;
    over.alpha2 = 0.2;
    ExperimentConfig e2 = preset("example2", over);
    CHECK(e2.theoretical_rate.value() == doctest::Approx(0.05));
    CHECK(e2.f.kind() == SymbolKind::farima);

    ExperimentConfig a1 = preset("a1_smooth");
    CHECK(a1.theoretical_rate.value() == doctest::Approx(1.0));
    CHECK(a1.n_grid.front() == 64);
    CHECK(a1.n_grid.back() == 4096);

    ExperimentConfig t2 = preset("theorem2");
    CHECK(t2.theoretical_rate.value() == doctest::Approx(0.125));

    CHECK_THROWS_AS(preset("nope"), UnknownPreset);
    CHECK(preset_list().size() == 4);
  }

  TEST_CASE("config validation") {
    ExperimentConfig cfg = preset("a1_smooth");
    cfg.n_grid = {8, 8, 16};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = preset("a1_smooth");
    cfg.nu = 3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = preset("example1");
    cfg.theoretical_rate = 0.2;  // must equal theorem3_gamma(0.1, 0.1) = 0.15
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = preset("a1_smooth");
    CHECK(cfg.engine_for(16) == TraceEngine::dense);
    CHECK(cfg.engine_for(512) == TraceEngine::matfree);
  }

  TEST_CASE("run_sweep emits ordered rows and survives bad points") {
    ExperimentConfig cfg;
    cfg.f = Symbol::constant(1.0);
    cfg.g = Symbol::constant(1.0);
    cfg.nu = 2;
    cfg.n_grid = {2, 4, 8};
    std::vector<int> seen;
    auto rows = run_sweep(cfg, [&](const SweepRow& r) { seen.push_back(r.record.n); });
    CHECK(seen == std::vector<int>{2, 4, 8});
    for (const auto& r : rows) {
      CHECK(r.status == "ok");
      CHECK(r.record.delta <= 1e-8);
    }

    // A failing grid point is recorded with an error status; the rest of the
    // sweep still runs (n=9000 trips the dense guard under a forced-dense
    // policy).
    cfg.f = Symbol::cosine();
    cfg.g = Symbol::cosine();
    cfg.n_grid = {4, 8, 9000};
    cfg.dense_threshold = 1 << 20;
    auto mixed = run_sweep(cfg);
    CHECK(mixed[0].status == "ok");
    CHECK(mixed[1].status == "ok");
    CHECK(mixed[2].status == "error");
  }

  TEST_CASE("engine policy transparency: forcing dense moves deltas < 1e-8") {
    ExperimentConfig cfg = preset("example1");
    cfg.n_grid = {4, 8, 16, 32};
    cfg.dense_threshold = 1;  // everything matfree
    auto matfree_rows = run_sweep(cfg);
    cfg.dense_threshold = 1 << 20;  // everything dense
    auto dense_rows = run_sweep(cfg);
    for (size_t i = 0; i < matfree_rows.size(); ++i) {
      double a = matfree_rows[i].record.delta, b = dense_rows[i].record.delta;
      CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b)));
    }
  }

  TEST_CASE("run_sweep is deterministic across worker counts") {
    ExperimentConfig cfg = preset("example1");
    cfg.n_grid = {4, 8, 16, 32};
    std::ostringstream one, four;
    cfg.workers = 1;
    write_sweep_header(one);
    run_sweep(cfg, [&](const SweepRow& r) {
      SweepRow scrubbed = r;
      scrubbed.record.elapsed = 0;  // wall time is the one nondeterministic field
      write_sweep_row(one, scrubbed);
    });
    cfg.workers = 4;
    write_sweep_header(four);
    run_sweep(cfg, [&](const SweepRow& r) {
      SweepRow scrubbed = r;
      scrubbed.record.elapsed = 0;
      write_sweep_row(four, scrubbed);
    });
    CHECK(one.str() == four.str());
  }

  TEST_CASE("symbol record parsing") {
    Symbol s = parse_symbol_record("{ kind = \"farima\", sigma2 = 1.0, alpha = 0.3 }");
    CHECK(s.kind() == SymbolKind::farima);
    CHECK(s.describe() == "{ kind = \"farima\", sigma2 = 1, alpha = 0.3 }");
    // describe() output parses back to an identical symbol
    for (const Symbol& orig :
         {Symbol::cosine(), Symbol::power_law(0.2), Symbol::abs_sine(),
          Symbol::scaled(Symbol::farima(2.0, 0.1), 0.5),
          Symbol::sum(Symbol::constant(1.0), Symbol::power_law(0.3))}) {
      CHECK(parse_symbol_record(orig.describe()) == orig);
    }
    CHECK(parse_symbol_record("abssine").kind() == SymbolKind::abs_sine);
    CHECK(parse_symbol_record("cos").kind() == SymbolKind::trig_polynomial);
    CHECK_THROWS_AS(parse_symbol_record("{ kind = \"nope\" }"), ConfigError);
    CHECK_THROWS_AS(parse_symbol_record("{ kind = \"farima\", sigma2 = 1 }"), ConfigError);
    CHECK_THROWS_AS(parse_symbol_record("{ alpha = 0.3 }"), ConfigError);
    CHECK_THROWS_AS(parse_symbol_record("{ kind = \"cos\" } trailing"), ConfigError);
  }

  TEST_CASE("config file parsing") {
    std::istringstream in(
        "# experiment\n"
        "f = { kind = \"farima\", sigma2 = 1.0, alpha = 0.1 }\n"
        "g = { kind = \"farima\", sigma2 = 1.0, alpha = 0.1 }\n"
        "nu = 2\n"
        "n_grid = [4, 8, 16]\n"
        "workers = 2\n"
        "abs_tol = 1e-9\n");
    auto kv = parse_config_file(in);
    ExperimentConfig cfg = config_from_map(kv);
    CHECK(cfg.f.kind() == SymbolKind::farima);
    CHECK(cfg.nu == 2);
    CHECK(cfg.n_grid == std::vector<int>{4, 8, 16});
    CHECK(cfg.workers == 2);
    CHECK(cfg.quadrature.abs_tol == doctest::Approx(1e-9));

    std::istringstream bad("mystery = 1\n");
    CHECK_THROWS_AS(config_from_map(parse_config_file(bad)), ConfigError);
    std::istringstream noeq("just some words\n");
    CHECK_THROWS_AS(parse_config_file(noeq), ConfigError);
    CHECK(parse_int_list("{64, 128}") == std::vector<int>{64, 128});
    CHECK_THROWS_AS(parse_int_list("[a]"), ConfigError);
  }

  TEST_CASE("csv round trip at 17 significant digits") {
    CHECK(format_g17(kPi) == "3.1415926535897931");
    CHECK(std::stod(format_g17(5 * std::pow(kPi, 4))) == 5 * std::pow(kPi, 4));

    SweepRow row;
    row.record = {128, 2, 1.25e-3, 6.0 * std::pow(kPi, 4), 4.0e-5, TraceEngine::matfree, 0.25};
    row.status = "ok";
    std::ostringstream out;
    write_sweep_header(out);
    write_sweep_row(out, row);
    std::istringstream in(out.str());
    auto rows = read_sweep_csv(in);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].record.n == 128);
    CHECK(rows[0].record.s_n_nu == row.record.s_n_nu);  // bit-exact round trip
    CHECK(rows[0].record.m_nu == row.record.m_nu);
    CHECK(rows[0].record.engine == TraceEngine::matfree);
  }

  TEST_CASE("json reports parse and carry the version") {
    TraceRecord rec{2, 2, 1.0, 2.0, 1.0, TraceEngine::dense, 0.0};
    auto j = nlohmann::json::parse(record_json(rec, "f", "g"));
    CHECK(j["version"] == "0.1.0");
    CHECK(j["nu"] == 2);

    RateFit fit;
    fit.slope = -1.0;
    fit.verdict = RateFit::Verdict::consistent;
    auto jf = nlohmann::json::parse(rate_json(fit, 1.0, 0.1));
    CHECK(jf["verdict"] == "consistent");
    CHECK(jf["gamma_theory"] == 1.0);

    // non-finite slopes serialize as strings, not nulls
    fit.slope = -std::numeric_limits<double>::infinity();
    auto ji = nlohmann::json::parse(rate_json(fit, std::nullopt, 0.1));
    CHECK(ji["slope"] == "-inf");
  }

  TEST_CASE("verify mutation: a weakened dirichlet constant must fail") {
    VerifyOptions opts;
    opts.quick = true;
    opts.dirichlet_samples = 5000;
    opts.dirichlet_constant = 1.0;  // lemma says π; this must be caught
    VerifyReport rep = verify_all(opts);
    bool dirichlet_failed = false;
    for (const auto& c : rep.checks)
      if (c.name == "dirichlet_bound" && !c.pass) dirichlet_failed = true;
    CHECK(dirichlet_failed);
    CHECK(!rep.all_pass);
  }
}
