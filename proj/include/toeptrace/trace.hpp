#pragma once

#include <string>

#include "toeptrace/toeplitz.hpp"

namespace toeptrace {

enum class TraceEngine { dense, matfree, closed_nu1 };

const char* to_string(TraceEngine e);
TraceEngine trace_engine_from_string(const std::string& name);

/// One (n, ν) measurement: S_{n,ν}, its integral limit M_ν and Δ = |S - M|.
struct TraceRecord {
  int n = 0;
  int nu = 0;
  double s_n_nu = 0;
  double m_nu = 0;
  double delta = 0;
  TraceEngine engine = TraceEngine::dense;
  double elapsed = 0;  // seconds spent on the S_{n,ν} side (tables + trace)
};

/// S_{n,ν} = (1/n) tr[T_n(f) T_n(g)]^ν with explicit matrices and repeated
/// multiplication. Exact up to rounding; guarded at n <= 8192.
double trace_product_dense(const FourierTable& f, const FourierTable& g, int nu);

/// Exact matrix-free trace: (1/n) Σ_j e_jᵀ (T_f T_g)^ν e_j, each probe by 2ν
/// FFT matvecs, pairwise-summed so the reduction order is deterministic.
double trace_product_matfree(const ToeplitzOperator& f, const ToeplitzOperator& g, int nu);

/// ν = 1 closed form: tr[T_n(f)T_n(g)] = Σ_{|m|<n} (n-|m|) ĥ_f(m) ĥ_g(m).
double trace_nu1_closed(const FourierTable& f, const FourierTable& g);

/// Assembles the full record for one (n, ν): S from the chosen engine, M_ν
/// from limit_integral, delta = |S - M|.
TraceRecord delta(const Symbol& f, const Symbol& g, int n, int nu, TraceEngine engine,
                  const QuadratureSpec& q);

/// Independent route to Δ_{n,2} through the kernel representation
///   Δ_{n,2} = (1/n) |∫_{T³} [φ(v) - φ(0)] D_n(v1)D_n(v1-v2)D_n(v2-v3)D_n(v3) dv|,
/// evaluated by tensor quadrature with φ collapsed onto a shared λ rule.
/// Intended for small n (<= 8) and bounded or mildly singular symbols.
double delta_integral_representation(const Symbol& f, const Symbol& g, int n,
                                     const QuadratureSpec& q);

}  // namespace toeptrace
