// toeptrace command-line harness.
//
// Subcommands: coeffs, delta, sweep, fit, preset, verify, demo-divergence.
// Exit codes: 0 success, 1 check failure, 2 invalid config, 3 numerical
// non-convergence.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "toeptrace/config.hpp"
#include "toeptrace/io.hpp"
#include "toeptrace/version.hpp"

namespace {

using namespace toeptrace;

std::unique_ptr<std::ostream> open_out(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;  // nullptr = stdout
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw ConfigError("cannot open output file: " + path);
  return f;
}

std::ostream& out_or_stdout(const std::unique_ptr<std::ostream>& f) {
  return f ? *f : std::cout;
}

struct CommonOpts {
  std::string config_path;
  std::map<std::string, std::string> file_kv;

  void load() {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    file_kv = parse_config_file(in);
  }
};

void apply_flag(std::map<std::string, std::string>& kv, const std::string& key,
                const std::string& value) {
  if (!value.empty()) kv[key] = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace approximations of products of Toeplitz matrices"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--config", common.config_path, "key = value config file (CLI flags override)");

  // --- coeffs ---------------------------------------------------------
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Emit a FourierTable as CSV");
  std::string co_f = "{ kind = \"constant\", value = 1 }";
  int co_n = 8;
  double co_tol = 1e-10;
  std::string co_out;
  coeffs_cmd->add_option("--f", co_f, "symbol record");
  coeffs_cmd->add_option("--n", co_n, "number of lags (k = 0..n-1)");
  coeffs_cmd->add_option("--abs-tol", co_tol, "per-coefficient tolerance");
  coeffs_cmd->add_option("--out", co_out, "output path (default stdout)");

  // --- delta ----------------------------------------------------------
  auto* delta_cmd = app.add_subcommand("delta", "Single TraceRecord as JSON");
  std::string de_f, de_g, de_engine = "auto", de_out;
  int de_n = 64, de_nu = 2;
  delta_cmd->add_option("--f", de_f, "symbol record for f");
  delta_cmd->add_option("--g", de_g, "symbol record for g (default: f)");
  delta_cmd->add_option("--n", de_n, "matrix size");
  delta_cmd->add_option("--nu", de_nu, "trace power (1 or 2)");
  delta_cmd->add_option("--engine", de_engine, "dense|matfree|closed|auto");
  delta_cmd->add_option("--out", de_out, "output path (default stdout)");

  // --- sweep ----------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an n grid, emit CSV records");
  std::string sw_preset, sw_f, sw_g, sw_ngrid, sw_out;
  int sw_nu = 0, sw_workers = 0;
  double sw_a1 = 0, sw_a2 = 0;
  sweep_cmd->add_option("--preset", sw_preset, "preset name (see `preset list`)");
  sweep_cmd->add_option("--alpha1", sw_a1, "preset override: first exponent");
  sweep_cmd->add_option("--alpha2", sw_a2, "preset override: second exponent");
  sweep_cmd->add_option("--f", sw_f, "symbol record for f");
  sweep_cmd->add_option("--g", sw_g, "symbol record for g");
  sweep_cmd->add_option("--n-grid", sw_ngrid, "comma-separated n values");
  sweep_cmd->add_option("--nu", sw_nu, "trace power");
  sweep_cmd->add_option("--workers", sw_workers, "concurrent sweep points");
  sweep_cmd->add_option("--out", sw_out, "CSV path (default stdout)");

  // --- fit ------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand("fit", "Fit a rate to a sweep CSV, emit JSON");
  std::string fi_in, fi_out;
  int fi_drop = 2;
  double fi_gamma = -1, fi_slack = 0.1;
  fit_cmd->add_option("--input", fi_in, "sweep CSV path")->required();
  fit_cmd->add_option("--gamma", fi_gamma, "theoretical rate to judge against");
  fit_cmd->add_option("--slack", fi_slack, "finite-n slack on the exponent");
  fit_cmd->add_option("--drop-head", fi_drop, "pre-asymptotic points to drop");
  fit_cmd->add_option("--out", fi_out, "output path (default stdout)");

  // --- preset ---------------------------------------------------------
  auto* preset_cmd = app.add_subcommand("preset", "Preset utilities");
  auto* preset_list_cmd = preset_cmd->add_subcommand("list", "List available presets");

  // --- verify ---------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite, emit JSON report");
  std::string ve_out;
  bool ve_quick = false;
  verify_cmd->add_option("--out", ve_out, "report path (default stdout)");
  verify_cmd->add_flag("--quick", ve_quick, "trim the engine-equivalence grid");

  // --- demo-divergence --------------------------------------------------
  auto* demo_cmd = app.add_subcommand("demo-divergence", "Truncated divergent integral as CSV");
  int dd_nu = 2;
  double dd_eta = 0.2, dd_ab = 0.3;
  std::string dd_s = "1e-1,1e-2,1e-3,1e-4,1e-5", dd_out;
  demo_cmd->add_option("--nu", dd_nu, "trace power");
  demo_cmd->add_option("--eta", dd_eta, "eta parameter, (alpha+beta)/2 < eta < 1/(2 nu)");
  demo_cmd->add_option("--alpha-plus-beta", dd_ab, "alpha + beta");
  demo_cmd->add_option("--truncations", dd_s, "decreasing truncation radii");
  demo_cmd->add_option("--out", dd_out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    common.load();

    if (coeffs_cmd->parsed()) {
      Symbol s = parse_symbol_record(co_f);
      QuadratureSpec q;
      q.abs_tol = co_tol;
      FourierTable table = fourier_table(s, co_n, q);
      auto f = open_out(co_out);
      write_coeffs_csv(out_or_stdout(f), table);
      return 0;
    }

    if (delta_cmd->parsed()) {
      if (de_f.empty()) throw ConfigError("delta: --f is required");
      Symbol f = parse_symbol_record(de_f);
      Symbol g = de_g.empty() ? f : parse_symbol_record(de_g);
      QuadratureSpec q;
      TraceEngine engine;
      if (de_engine == "auto")
        engine = de_n < 512 ? TraceEngine::dense : TraceEngine::matfree;
      else
        engine = trace_engine_from_string(de_engine);
      TraceRecord rec = delta(f, g, de_n, de_nu, engine, q);
      auto fo = open_out(de_out);
      out_or_stdout(fo) << record_json(rec, f.describe(), g.describe());
      return 0;
    }

    if (sweep_cmd->parsed()) {
      ExperimentConfig cfg;
      if (!sw_preset.empty()) {
        PresetOverrides over;
        if (sw_a1 > 0) over.alpha1 = sw_a1;
        if (sw_a2 > 0) over.alpha2 = sw_a2;
        if (sw_nu > 0) over.nu = sw_nu;
        if (!sw_ngrid.empty()) over.n_grid = parse_int_list(sw_ngrid);
        cfg = preset(sw_preset, over);
        if (sw_workers > 0) cfg.workers = sw_workers;
      } else {
        std::map<std::string, std::string> kv = common.file_kv;
        apply_flag(kv, "f", sw_f);
        apply_flag(kv, "g", sw_g);
        apply_flag(kv, "n_grid", sw_ngrid);
        if (sw_nu > 0) kv["nu"] = std::to_string(sw_nu);
        if (sw_workers > 0) kv["workers"] = std::to_string(sw_workers);
        cfg = config_from_map(kv);
      }
      cfg.validate();
      auto fo = open_out(sw_out);
      std::ostream& os = out_or_stdout(fo);
      write_sweep_header(os);
      run_sweep(cfg, [&](const SweepRow& row) { write_sweep_row(os, row); });
      return 0;
    }

    if (fit_cmd->parsed()) {
      std::ifstream in(fi_in);
      if (!in) throw ConfigError("cannot open sweep CSV: " + fi_in);
      std::vector<SweepRow> rows = read_sweep_csv(in);
      std::vector<TraceRecord> records;
      for (const auto& r : rows)
        if (r.status == "ok") records.push_back(r.record);
      std::optional<double> gamma;
      if (fi_gamma > 0) gamma = fi_gamma;
      RateFit fit = fit_rate(records, fi_drop, gamma, fi_slack);
      auto fo = open_out(fi_out);
      out_or_stdout(fo) << rate_json(fit, gamma, fi_slack);
      return 0;
    }

    if (preset_cmd->parsed()) {
      if (preset_list_cmd->parsed()) {
        for (const auto& [name, desc] : preset_list()) std::cout << name << "\t" << desc << "\n";
        return 0;
      }
      throw ConfigError("preset: expected `preset list`");
    }

    if (verify_cmd->parsed()) {
      VerifyOptions opts;
      opts.quick = ve_quick;
      VerifyReport report = verify_all(opts);
      auto fo = open_out(ve_out);
      out_or_stdout(fo) << verify_json(report);
      for (const auto& c : report.checks)
        std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "\n";
      return report.all_pass ? 0 : 1;
    }

    if (demo_cmd->parsed()) {
      QuadratureSpec q;
      std::vector<double> s;
      {
        std::stringstream ss(dd_s);
        std::string item;
        while (std::getline(ss, item, ',')) s.push_back(std::stod(item));
      }
      DivergenceReport rep = divergence_demo(dd_nu, dd_eta, dd_ab, s, q);
      auto fo = open_out(dd_out);
      write_divergence_csv(out_or_stdout(fo), rep);
      std::cerr << "fitted blow-up exponent: " << rep.fitted_blowup_exponent
                << " (2-nu-dim region MC sample at smallest truncation: " << rep.mc_region_estimate
                << ")\n";
      return 0;
    }
  } catch (const QuadratureNoConverge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownPreset& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RegimeViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OutOfRegime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DenseGuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
