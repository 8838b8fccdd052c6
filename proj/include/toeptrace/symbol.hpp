#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toeptrace/errors.hpp"
#include "toeptrace/quadrature.hpp"

namespace toeptrace {

enum class SymbolKind { constant, trig_polynomial, power_law, farima, abs_sine, scaled, sum };

/// Envelope (α, M1, M2): |f(λ)| <= M1 |λ|^{-α} and |f'(λ)| <= M2 |λ|^{-(α+1)}
/// away from 0.
struct SingularityProfile {
  double alpha = 0;
  double m1 = 0;
  std::optional<double> m2;
};

/// An immutable, real, even, 2π-periodic generating function. Arguments are
/// reduced mod 2π into [-π, π] before evaluation.
///
/// Catalog:
///   constant(c)               c
///   trig_polynomial(a0..am)   a0 + Σ a_j cos(jλ)
///   power_law(α)              |λ|^{-α},           0 <= α < 1
///   farima(σ², α)             (σ²/2π)|1-e^{iλ}|^{-α} = (σ²/2π)(2 sin|λ/2|)^{-α}
///   abs_sine()                |sin λ|
///   scaled(base, factor), sum(lhs, rhs)
class Symbol {
 public:
  static Symbol constant(double value);
  static Symbol trig_polynomial(std::vector<double> cos_coeffs);
  static Symbol cosine();  // cos λ, the workhorse smooth test symbol
  static Symbol power_law(double alpha);
  static Symbol farima(double sigma2, double alpha);
  static Symbol abs_sine();
  static Symbol scaled(const Symbol& base, double factor);
  static Symbol sum(const Symbol& lhs, const Symbol& rhs);

  SymbolKind kind() const;

  /// Pointwise value; throws EvalAtSingularity at λ ≡ 0 (mod 2π) when the
  /// symbol is unbounded there.
  double eval(double lambda) const;
  double operator()(double lambda) const { return eval(lambda); }

  /// Exponent α at 0 (0 for bounded symbols). For composites, the
  /// conservative max over operands.
  double singularity_alpha() const;

  /// Conservative M2 envelope; always available for catalog symbols.
  std::optional<double> derivative_envelope() const;

  /// Declared (α, M1, M2). Throws ProfileUnavailable for sums whose operands
  /// have different α (the exception carries the conservative fallback).
  SingularityProfile profile() const;

  /// Points in (-π, π] where the symbol is not analytic, with the local
  /// envelope exponent as strength (0 for a mere kink).
  std::vector<SingularPoint> breakpoints() const;

  /// True when the symbol is known to be >= 0 everywhere (conservative).
  bool known_nonnegative() const;

  /// Canonical tagged-record form, e.g. { kind = "farima", sigma2 = 1, alpha = 0.3 }.
  /// Round-trips through parse_symbol_record(); used as the symbol id.
  std::string describe() const;

  bool operator==(const Symbol& other) const { return describe() == other.describe(); }

  struct Node;  // opaque; defined in symbol.cpp

 private:
  explicit Symbol(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// γ = 1/4 - (α1+α2)/2, the rate exponent for power-law-bounded symbol pairs.
/// Throws OutOfRegime unless α1, α2 > 0 and α1 + α2 < 1/2.
double theorem3_gamma(double alpha1, double alpha2);

}  // namespace toeptrace
