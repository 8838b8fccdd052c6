#include "toeptrace/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include <unsupported/Eigen/FFT>

namespace toeptrace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Breakpoints of s folded onto [0, π] (s is even, so the mesh only sees the
// right half-torus).
std::vector<SingularPoint> half_torus_singularities(const Symbol& s) {
  std::vector<SingularPoint> pts;
  for (const auto& bp : s.breakpoints()) {
    double loc = std::abs(bp.location);
    if (loc <= kPi + 1e-12) pts.push_back({loc, bp.strength});
  }
  return pts;
}

double coeff_by_panels(const Symbol& s, long k, const QuadratureSpec& q) {
  QuadratureSpec half = q;
  half.abs_tol = 0.5 * q.abs_tol;
  auto pts = half_torus_singularities(s);
  auto integrand = [&](double lam) { return s.eval(lam) * std::cos(static_cast<double>(k) * lam); };
  QuadratureResult r =
      integrate(integrand, 0.0, kPi, pts, half, static_cast<double>(std::abs(k)));
  return 2.0 * r.value;
}

// Uniform-grid DFT table for symbols that are analytic on the whole torus.
// Exact for trig polynomials once the grid resolves every harmonic; the
// refinement loop certifies abs_tol for the rest.
FourierTable table_by_fft(const Symbol& s, int n, const QuadratureSpec& q) {
  FourierTable table;
  table.symbol_id = s.describe();
  table.n = n;

  long m = 64;
  while (m < 4L * n) m *= 2;

  Eigen::FFT<double> fft;
  std::vector<double> prev;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= q.max_refinements; ++level, m *= 2) {
    std::vector<std::complex<double>> in(m), out(m);
    for (long j = 0; j < m; ++j) in[j] = s.eval(kTwoPi * static_cast<double>(j) / static_cast<double>(m));
    fft.fwd(out, in);
    std::vector<double> cur(n);
    for (int k = 0; k < n; ++k) cur[k] = kTwoPi / static_cast<double>(m) * out[k].real();
    if (!prev.empty()) {
      err = 0;
      for (int k = 0; k < n; ++k) err = std::max(err, std::abs(cur[k] - prev[k]));
      if (err <= q.abs_tol) {
        table.coeffs = std::move(cur);
        table.err_est = err;
        return table;
      }
    }
    prev = std::move(cur);
  }
  std::ostringstream msg;
  msg << "fourier_table (FFT path) did not converge: err_est=" << err;
  throw QuadratureNoConverge(msg.str(), err);
}

}  // namespace

double FourierTable::coeff(long k) const {
  long a = std::labs(k);
  if (a >= n) throw DimensionMismatch("FourierTable::coeff: |k| must be < n");
  return coeffs[static_cast<size_t>(a)];
}

double fourier_coeff(const Symbol& s, long k, const QuadratureSpec& q) {
  q.validate();
  if (!(s.singularity_alpha() < 1)) throw NonIntegrableProduct("symbol is not integrable");
  return coeff_by_panels(s, k, q);
}

namespace {

// Batched panel path. The coefficients share the bulk mesh on [c, π] (built
// once for the table's largest wavenumber, so every per-k cap is satisfied)
// with symbol values evaluated a single time; only the graded tip [0, c]
// around the singularity is integrated per k. cos(kλ) runs on a Chebyshev
// recurrence re-anchored with std::cos every 64 lags. Each coefficient keeps
// its own fine/coarse error estimate and falls back to the independent
// integrate() path when the estimate misses abs_tol.
FourierTable table_by_panels(const Symbol& s, int n, const QuadratureSpec& q) {
  FourierTable table;
  table.symbol_id = s.describe();
  table.n = n;
  table.coeffs.resize(n);

  const double c = kPi / 64.0;
  std::vector<SingularPoint> tip_pts, bulk_pts;
  for (const auto& bp : half_torus_singularities(s))
    (bp.location < c ? tip_pts : bulk_pts).push_back(bp);
  bulk_pts.push_back({0.0, s.singularity_alpha()});  // grades the bulk toward c

  const double kmax = std::max(1, n - 1);
  const int bulk_order = n >= 256 ? 8 : 16;
  QuadratureRule coarse = build_rule(c, kPi, bulk_pts, q, kmax, 0, bulk_order);
  QuadratureRule fine = build_rule(c, kPi, bulk_pts, q, kmax, 1, bulk_order);

  std::vector<double> bulk_fine(n, 0.0), bulk_coarse(n, 0.0);
  for (int pass = 0; pass < 2; ++pass) {
    const QuadratureRule& rule = pass == 0 ? fine : coarse;
    std::vector<double>& acc = pass == 0 ? bulk_fine : bulk_coarse;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
      const double lam = rule.nodes[j];
      const double wsv = rule.weights[j] * s.eval(lam);
      const double step = std::cos(lam);
      double ck = 1.0, ckm1 = std::cos(-lam);
      for (int k = 0; k < n; ++k) {
        if (k % 64 == 0) {
          ck = std::cos(k * lam);
          ckm1 = std::cos((k - 1) * lam);
        }
        acc[k] += wsv * ck;
        const double next = 2.0 * step * ck - ckm1;
        ckm1 = ck;
        ck = next;
      }
    }
  }

  QuadratureSpec tip_spec = q;
  tip_spec.abs_tol = 0.25 * q.abs_tol;
  for (int k = 0; k < n; ++k) {
    auto integrand = [&](double lam) { return s.eval(lam) * std::cos(static_cast<double>(k) * lam); };
    try {
      QuadratureResult tip = integrate(integrand, 0.0, c, tip_pts, tip_spec, static_cast<double>(k));
      double err = 2.0 * (tip.err_est + std::abs(bulk_fine[k] - bulk_coarse[k]));
      if (err <= q.abs_tol) {
        table.coeffs[k] = 2.0 * (tip.value + bulk_fine[k]);
        table.err_est = std::max(table.err_est, err);
        continue;
      }
      table.coeffs[k] = coeff_by_panels(s, k, q);  // shared-mesh estimate too loose
      table.err_est = std::max(table.err_est, q.abs_tol);
    } catch (const QuadratureNoConverge& e) {
      std::ostringstream msg;
      msg << "fourier_table: coefficient k=" << k << " did not converge (" << e.what() << ")";
      throw QuadratureNoConverge(msg.str(), e.err_est);
    }
  }
  return table;
}

}  // namespace

FourierTable fourier_table(const Symbol& s, int n, const QuadratureSpec& q) {
  q.validate();
  if (n < 1) throw DimensionMismatch("fourier_table: n must be >= 1");
  if (!(s.singularity_alpha() < 1)) throw NonIntegrableProduct("symbol is not integrable");
  if (s.breakpoints().empty()) return table_by_fft(s, n, q);
  return table_by_panels(s, n, q);
}

double limit_integral(const Symbol& f, const Symbol& g, int nu, const QuadratureSpec& q) {
  q.validate();
  if (nu < 1) throw ConfigError("limit_integral: nu must be >= 1");
  const double alpha_total = nu * (f.singularity_alpha() + g.singularity_alpha());
  if (alpha_total >= 1.0)
    throw NonIntegrableProduct("limit_integral: nu*(alpha_f + alpha_g) >= 1, [fg]^nu not integrable");

  const double scale = std::pow(kTwoPi, 2 * nu - 1);
  std::vector<SingularPoint> pts;
  for (const auto& bp : half_torus_singularities(f)) pts.push_back(bp);
  for (const auto& bp : half_torus_singularities(g)) pts.push_back(bp);
  for (auto& sp : pts) sp.strength = sp.strength > 0 ? std::min(0.999, alpha_total) : 0.0;

  QuadratureSpec inner = q;
  inner.abs_tol = 0.5 * q.abs_tol / scale;
  auto integrand = [&](double lam) { return std::pow(f.eval(lam) * g.eval(lam), nu); };
  QuadratureResult r = integrate(integrand, 0.0, kPi, pts, inner, 0.0);
  return scale * 2.0 * r.value;
}

double phi(const Symbol& f, const Symbol& g, double u1, double u2, double u3,
           const QuadratureSpec& q) {
  q.validate();

  // Singular collision points of the four shifted factors, with 2π images so
  // grading also engages across the ±π seam.
  struct Shift {
    const Symbol* s;
    double u;
  };
  const Shift shifts[4] = {{&f, 0.0}, {&g, u1}, {&f, u2}, {&g, u3}};
  std::vector<SingularPoint> pts;
  for (const auto& sh : shifts) {
    for (const auto& bp : sh.s->breakpoints()) {
      double loc = std::remainder(bp.location + sh.u, kTwoPi);
      for (double image : {loc - kTwoPi, loc, loc + kTwoPi})
        if (image > -kPi - 1.5 && image < kPi + 1.5) pts.push_back({image, bp.strength});
    }
  }
  // Coinciding singularities multiply, so their exponents add.
  std::sort(pts.begin(), pts.end(),
            [](const SingularPoint& l, const SingularPoint& r) { return l.location < r.location; });
  std::vector<SingularPoint> merged;
  for (const auto& sp : pts) {
    if (!merged.empty() && std::abs(sp.location - merged.back().location) < 1e-12)
      merged.back().strength += sp.strength;
    else
      merged.push_back(sp);
  }
  // Singular mass within one ulp of a nonzero collision point is not
  // resolvable through rounded coordinates; floor the tolerance accordingly.
  double tol_floor = 0;
  for (const auto& sp : merged) {
    if (sp.strength >= 1.0)
      throw NonIntegrableProduct("phi: colliding singularities make the integrand non-integrable");
    if (sp.strength > 0 && std::abs(sp.location) > 1e-12)
      tol_floor = std::max(tol_floor, 10.0 * std::pow(2.2e-16, 1.0 - sp.strength));
  }

  auto integrand = [&](double lam) -> double {
    try {
      return f.eval(lam) * g.eval(lam - u1) * f.eval(lam - u2) * g.eval(lam - u3);
    } catch (const EvalAtSingularity&) {
      return 0.0;  // exact hit on a shifted singularity: sub-ulp mass, drop it
    }
  };
  QuadratureSpec sp = q;
  sp.abs_tol = std::max(q.abs_tol, tol_floor);
  return integrate(integrand, -kPi, kPi, merged, sp, 0.0).value;
}

HolderEstimate phi_holder_estimate(const Symbol& f, const Symbol& g, std::span<const double> radii,
                                   const QuadratureSpec& q) {
  if (radii.size() < 2) throw DegenerateFit("phi_holder_estimate: need at least 2 radii");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw ConfigError("phi_holder_estimate: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1]))
      throw ConfigError("phi_holder_estimate: radii must be decreasing");
  }

  const double phi0 = phi(f, g, 0, 0, 0, q);
  std::mt19937_64 rng(0x746f6570u);  // fixed seed: estimates are reproducible
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  constexpr int kDirections = 8;

  HolderEstimate est;
  est.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    double worst = 0;
    for (int d = 0; d < kDirections; ++d) {
      double v[3] = {unif(rng), unif(rng), unif(rng)};
      double l1 = std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]);
      if (l1 < 1e-12) {
        v[0] = 1;
        l1 = 1;
      }
      double u1 = r * v[0] / l1, u2 = r * v[1] / l1, u3 = r * v[2] / l1;
      worst = std::max(worst, std::abs(phi(f, g, u1, u2, u3, q) - phi0));
    }
    est.max_diffs.push_back(worst);
  }

  const double floor = 1e-13 * (1.0 + std::abs(phi0));
  if (std::all_of(est.max_diffs.begin(), est.max_diffs.end(),
                  [&](double d) { return d <= floor; })) {
    est.gamma_hat = std::numeric_limits<double>::infinity();
    est.c_hat = 0;
    return est;
  }

  std::vector<double> lx, ly;
  for (size_t i = 0; i < est.radii.size(); ++i) {
    if (est.max_diffs[i] > floor) {
      lx.push_back(std::log(est.radii[i]));
      ly.push_back(std::log(est.max_diffs[i]));
    }
  }
  LinearFit fit = linear_fit(lx, ly);
  est.gamma_hat = fit.slope;
  est.c_hat = std::exp(fit.intercept);
  return est;
}

}  // namespace toeptrace
