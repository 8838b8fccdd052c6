#pragma once

#include <span>
#include <string>
#include <vector>

#include "toeptrace/quadrature.hpp"
#include "toeptrace/symbol.hpp"

namespace toeptrace {

/// Fourier coefficients ĥ(k) = ∫_T e^{iλk} u(λ) dλ for k = 0..n-1 (no 1/2π
/// factor). ĥ is real and even because u is, so only k >= 0 is stored and
/// coeff() folds negative lags.
struct FourierTable {
  std::string symbol_id;
  int n = 0;
  std::vector<double> coeffs;
  double err_est = 0;

  double coeff(long k) const;
};

/// ĥ(k) = ∫_{-π}^{π} cos(kλ) u(λ) dλ (the sine part vanishes by evenness),
/// singularity-graded mesh at the symbol's breakpoints, panels capped at
/// π/(4k) to resolve the oscillation.
double fourier_coeff(const Symbol& s, long k, const QuadratureSpec& q);

/// Batch of fourier_coeff for k = 0..n-1. Symbols with no breakpoints take a
/// uniform-grid FFT fast path (refined until the tabulated values move by less
/// than abs_tol); singular symbols are integrated independently per k.
FourierTable fourier_table(const Symbol& s, int n, const QuadratureSpec& q);

/// M_ν = (2π)^{2ν-1} ∫_{-π}^{π} [f(λ)g(λ)]^ν dλ.
/// Throws NonIntegrableProduct when ν(α_f + α_g) >= 1.
double limit_integral(const Symbol& f, const Symbol& g, int nu, const QuadratureSpec& q);

/// φ(u) = ∫_T f(λ) g(λ-u1) f(λ-u2) g(λ-u3) dλ, graded at each of the shifted
/// singular collision points.
double phi(const Symbol& f, const Symbol& g, double u1, double u2, double u3,
           const QuadratureSpec& q);

/// Samples |φ(u) - φ(0)| on random L1-sphere directions at each radius and
/// fits the log-log slope. gamma_hat is +inf when all differences vanish
/// (constant φ).
struct HolderEstimate {
  double gamma_hat = 0;
  double c_hat = 0;
  std::vector<double> radii;
  std::vector<double> max_diffs;
};
HolderEstimate phi_holder_estimate(const Symbol& f, const Symbol& g, std::span<const double> radii,
                                   const QuadratureSpec& q);

}  // namespace toeptrace
