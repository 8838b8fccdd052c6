#pragma once

#include <stdexcept>
#include <string>

namespace toeptrace {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// eval() was called at a point where the symbol is unbounded (λ ≡ 0 mod 2π
/// with a positive singularity exponent). Callers must use singularity-aware
/// quadrature instead of pointwise evaluation there.
class EvalAtSingularity : public Error {
 public:
  using Error::Error;
};

/// A single (α, M1, M2) envelope cannot represent the symbol exactly.
/// Carries the conservative fallback (max α, summed envelopes).
class ProfileUnavailable : public Error {
 public:
  ProfileUnavailable(const std::string& msg, double alpha, double m1, double m2)
      : Error(msg), conservative_alpha(alpha), conservative_m1(m1), conservative_m2(m2) {}
  double conservative_alpha;
  double conservative_m1;
  double conservative_m2;
};

/// Parameters outside the regime of the theorem or lemma being exercised.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

/// Refinement budget exhausted with the error estimate still above tolerance.
class QuadratureNoConverge : public Error {
 public:
  QuadratureNoConverge(const std::string& msg, double err)
      : Error(msg), err_est(err) {}
  double err_est;
};

/// The product [f g]^ν is not integrable: ν(α_f + α_g) ≥ 1.
class NonIntegrableProduct : public Error {
 public:
  using Error::Error;
};

/// |ψ|^p is not integrable: α p ≥ 1.
class NonIntegrablePower : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Dense materialization refused above the guard size (8192).
class DenseGuardExceeded : public Error {
 public:
  using Error::Error;
};

/// divergence_demo parameters violate (α+β)/2 < η < 1/(2ν).
class RegimeViolation : public Error {
 public:
  using Error::Error;
};

/// Rate fit impossible: fewer than 3 usable points.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace toeptrace
