#include "toeptrace/trace.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "toeptrace/analysis.hpp"

namespace toeptrace {

namespace {

constexpr double kPi = std::numbers::pi;

double safe_eval(const Symbol& s, double x) {
  try {
    return s.eval(x);
  } catch (const EvalAtSingularity&) {
    return s.eval(x + 1e-12);  // quadrature node collided with a singularity
  }
}

}  // namespace

const char* to_string(TraceEngine e) {
  switch (e) {
    case TraceEngine::dense:
      return "dense";
    case TraceEngine::matfree:
      return "matfree";
    case TraceEngine::closed_nu1:
      return "closed_nu1";
  }
  return "?";
}

TraceEngine trace_engine_from_string(const std::string& name) {
  if (name == "dense") return TraceEngine::dense;
  if (name == "matfree") return TraceEngine::matfree;
  if (name == "closed_nu1" || name == "closed") return TraceEngine::closed_nu1;
  throw ConfigError("unknown trace engine: " + name);
}

double trace_product_dense(const FourierTable& f, const FourierTable& g, int nu) {
  if (f.n != g.n) throw DimensionMismatch("trace_product_dense: tables must share n");
  if (nu < 1) throw ConfigError("trace_product_dense: nu must be >= 1");
  Eigen::MatrixXd a = build_dense(f).entries;
  Eigen::MatrixXd b = build_dense(g).entries;
  Eigen::MatrixXd p = a * b;
  Eigen::MatrixXd q = p;
  for (int i = 1; i < nu; ++i) q = q * p;
  return q.trace() / static_cast<double>(f.n);
}

double trace_product_matfree(const ToeplitzOperator& f, const ToeplitzOperator& g, int nu) {
  if (f.size() != g.size()) throw DimensionMismatch("trace_product_matfree: operators must share n");
  if (nu < 1) throw ConfigError("trace_product_matfree: nu must be >= 1");
  const int n = f.size();
  std::vector<double> diag(n);
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) {
    v.setZero();
    v[j] = 1.0;
    for (int l = 0; l < nu; ++l) v = f.apply(g.apply(v));
    diag[j] = v[j];
  }
  return pairwise_sum(diag) / static_cast<double>(n);
}

double trace_nu1_closed(const FourierTable& f, const FourierTable& g) {
  if (f.n != g.n) throw DimensionMismatch("trace_nu1_closed: tables must share n");
  const int n = f.n;
  std::vector<double> terms(n);
  terms[0] = static_cast<double>(n) * f.coeffs[0] * g.coeffs[0];
  for (int m = 1; m < n; ++m)
    terms[m] = 2.0 * static_cast<double>(n - m) * f.coeffs[m] * g.coeffs[m];
  return pairwise_sum(terms) / static_cast<double>(n);
}

TraceRecord delta(const Symbol& f, const Symbol& g, int n, int nu, TraceEngine engine,
                  const QuadratureSpec& q) {
  if (n < 1) throw DimensionMismatch("delta: n must be >= 1");
  if (nu < 1) throw ConfigError("delta: nu must be >= 1");
  if (engine == TraceEngine::closed_nu1 && nu != 1)
    throw ConfigError("delta: engine closed_nu1 is only valid for nu = 1");
  const double alpha_total = f.singularity_alpha() + g.singularity_alpha();
  if (nu * alpha_total >= 1.0)
    throw NonIntegrableProduct("delta: limit integral does not exist, nu*(alpha_f+alpha_g) >= 1");

  TraceRecord rec;
  rec.n = n;
  rec.nu = nu;
  rec.engine = engine;

  const auto t0 = std::chrono::steady_clock::now();
  const bool same = f.describe() == g.describe();
  FourierTable ft = fourier_table(f, n, q);
  FourierTable gt = same ? ft : fourier_table(g, n, q);
  switch (engine) {
    case TraceEngine::dense:
      rec.s_n_nu = trace_product_dense(ft, gt, nu);
      break;
    case TraceEngine::matfree: {
      ToeplitzOperator fo(ft), go(gt);
      rec.s_n_nu = trace_product_matfree(fo, go, nu);
      break;
    }
    case TraceEngine::closed_nu1:
      rec.s_n_nu = trace_nu1_closed(ft, gt);
      break;
  }
  rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  QuadratureSpec mspec = q;
  if (alpha_total > 0) mspec.abs_tol = std::max(q.abs_tol, 1e-8);
  rec.m_nu = limit_integral(f, g, nu, mspec);
  rec.delta = std::abs(rec.s_n_nu - rec.m_nu);
  return rec;
}

double delta_integral_representation(const Symbol& f, const Symbol& g, int n,
                                     const QuadratureSpec& q) {
  if (n < 1 || n > 8)
    throw ConfigError("delta_integral_representation: supported for 1 <= n <= 8 only");
  q.validate();

  std::vector<SingularPoint> sym_pts;
  for (const auto& bp : f.breakpoints()) sym_pts.push_back(bp);
  for (const auto& bp : g.breakpoints()) sym_pts.push_back(bp);

  auto level_value = [&](int level) {
    QuadratureRule vr = build_rule(-kPi, kPi, {}, q, static_cast<double>(n), level);
    QuadratureRule lr = build_rule(-kPi, kPi, sym_pts, q, 0.0, level);
    const int nv = static_cast<int>(vr.nodes.size());
    const int nl = static_cast<int>(lr.nodes.size());

    Eigen::VectorXd dv(nv);
    for (int i = 0; i < nv; ++i) dv[i] = dirichlet(n, vr.nodes[i]);
    Eigen::MatrixXd dpair(nv, nv);
    for (int i = 0; i < nv; ++i) {
      dpair(i, i) = static_cast<double>(n);
      for (int j = 0; j < i; ++j) {
        double val = dirichlet(n, vr.nodes[i] - vr.nodes[j]);
        dpair(i, j) = val;
        dpair(j, i) = val;
      }
    }
    Eigen::Map<const Eigen::VectorXd> wv(vr.weights.data(), nv);

    // Kernel mass Σ w_i w_j w_k Dv_i Dpair_ij Dpair_jk Dv_k (equals 8π³n).
    Eigen::VectorXd a0 = wv.cwiseProduct(dv);
    Eigen::VectorXd t0 = dpair * a0;
    double mass = (wv.array() * t0.array().square()).sum();

    // φ collapsed on the λ rule: φ(v) = Σ_q wλ_q f(λ_q) Π shifted factors.
    double total = 0;
    double phi0 = 0;
    Eigen::VectorXd aq(nv), bq(nv), tq(nv);
    for (int qi = 0; qi < nl; ++qi) {
      const double lam = lr.nodes[qi];
      const double cf = lr.weights[qi] * safe_eval(f, lam);
      const double g0 = safe_eval(g, lam);
      phi0 += cf * g0 * safe_eval(f, lam) * g0;
      for (int i = 0; i < nv; ++i) {
        aq[i] = wv[i] * dv[i] * safe_eval(g, lam - vr.nodes[i]);
        bq[i] = wv[i] * safe_eval(f, lam - vr.nodes[i]);
      }
      tq.noalias() = dpair * aq;
      total += cf * (bq.array() * tq.array().square()).sum();
    }
    return std::abs(total - phi0 * mass) / static_cast<double>(n);
  };

  const int max_level = std::min(q.max_refinements, 2);
  double prev = level_value(0);
  for (int level = 1; level <= max_level; ++level) {
    double cur = level_value(level);
    double err = std::abs(cur - prev);
    if (err <= std::max(q.abs_tol, 1e-4 * std::abs(cur))) return cur;
    prev = cur;
  }
  throw QuadratureNoConverge("delta_integral_representation did not settle within the level budget",
                             prev);
}

}  // namespace toeptrace
