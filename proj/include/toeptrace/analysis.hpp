#pragma once

#include <span>
#include <string>
#include <vector>

#include "toeptrace/quadrature.hpp"
#include "toeptrace/symbol.hpp"

namespace toeptrace {

/// Dirichlet kernel D_n(u) = sin(nu/2)/sin(u/2), with the removable
/// singularities at u ≡ 0 (mod 2π) filled by the limit continuation
/// (value ±n, sign (-1)^{j(n-1)} at u = 2πj).
double dirichlet(int n, double u);

/// Worst sampled value of |D_n(u)| / (c n^δ |u|^{δ-1}) over u in T\{0};
/// the kernel bound |D_n(u)| <= π n^δ |u|^{δ-1} (c = π) makes this <= 1.
double check_dirichlet_bound(int n, double delta, int samples);
double check_dirichlet_bound(int n, double delta, int samples, double bound_constant);

/// ∫_R |x|^{-α}|x+y|^{-β} dx, which equals M(α,β)/|y|^{α+β-1}.
/// `scaled` is value·|y|^{α+β-1}, constant over y when the identity holds.
struct Lemma2Result {
  double value = 0;
  double scaled = 0;
};
Lemma2Result lemma2_identity(double alpha, double beta, double y, const QuadratureSpec& q);

/// B_i = ∫_{T³} |u_i|^α / |u1 u2 u3 (u1+u2+u3)|^β du by nested graded
/// quadrature at a fixed refinement level (panel counts scale with 2^level).
double lemma3_Bi(double alpha, double beta, int i, const QuadratureSpec& q, int level = 1);

/// ω_p(ψ, δ) = sup_{0<h<=δ} ||ψ(·+h) - ψ(·)||_p, the sup approximated from
/// below on a grid of `grid_size` h values. p may be infinity; then the norm
/// is a max over an evaluation grid excluding 1e-8 neighborhoods of the
/// singular points. Throws NonIntegrablePower when α·p >= 1.
double modulus_continuity(const Symbol& s, double p, double delta, int grid_size,
                          const QuadratureSpec& q);

/// log ω_p vs log δ fit over a decreasing δ sequence. The h grids are nested
/// across deltas so the reported curve is exactly nondecreasing in δ.
/// fitted_gamma is +inf when ω vanishes identically (constant symbols).
struct ModulusCurve {
  std::string symbol_id;
  double p = 2;
  std::vector<double> deltas;
  std::vector<double> omegas;
  double fitted_gamma = 0;
  double fitted_c = 0;
};
ModulusCurve lipschitz_fit(const Symbol& s, double p, std::span<const double> deltas,
                           int grid_size, const QuadratureSpec& q);

/// min over y_grid of [∫_1^2 (xy-1)^{-θ}(x-1)^{-γ} dx] / (y-1)^{1-γ-θ}.
/// Positive and bounded below by 3^{-θ}/(1-γ) on 1 < y <= 2.
double lp_inequality_check(double gamma, double theta, double y0, std::span<const double> y_grid,
                           const QuadratureSpec& q);

/// The reduced 1-D divergent integral behind the flawed published rate proof:
/// P(s) = ∫_{1+s}^{2} (z-1)^{2νη-2} dz over shrinking truncations s, plus the
/// blow-up exponent 2νη-1 fitted on the first differences of P (cancels the
/// additive constant of the antiderivative). Throws RegimeViolation unless
/// (α+β)/2 < η < 1/(2ν) and 0 < ν(α+β) < 1.
struct DivergenceReport {
  int nu = 0;
  double eta = 0;
  double alpha_plus_beta = 0;
  std::vector<double> truncations;
  std::vector<double> partial_integrals;
  double fitted_blowup_exponent = 0;
  // Monte-Carlo sample of the full 2ν-dimensional product region
  // {0 < z1 < 1/2^ν, 1+s < z_i < 2}, truncated at the smallest s.
  // Reported for context only; the asserted result is the 1-D reduction.
  double mc_region_estimate = 0;
};
DivergenceReport divergence_demo(int nu, double eta, double alpha_plus_beta,
                                 std::span<const double> truncations, const QuadratureSpec& q);

}  // namespace toeptrace
