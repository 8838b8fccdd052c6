#include "toeptrace/symbol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace toeptrace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

struct Symbol::Node {
  SymbolKind kind;
  double c = 0;      // constant value / scale factor / sigma2
  double alpha = 0;  // power-law exponent
  std::vector<double> coeffs;
  std::shared_ptr<const Node> left, right;
};

Symbol Symbol::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::constant;
  n->c = value;
  return Symbol(std::move(n));
}

Symbol Symbol::trig_polynomial(std::vector<double> cos_coeffs) {
  if (cos_coeffs.empty()) throw ConfigError("trig_polynomial needs at least a0");
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::trig_polynomial;
  n->coeffs = std::move(cos_coeffs);
  return Symbol(std::move(n));
}

Symbol Symbol::cosine() { return trig_polynomial({0.0, 1.0}); }

Symbol Symbol::power_law(double alpha) {
  if (!(alpha >= 0 && alpha < 1)) throw ConfigError("power_law: alpha must be in [0, 1)");
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::power_law;
  n->alpha = alpha;
  return Symbol(std::move(n));
}

Symbol Symbol::farima(double sigma2, double alpha) {
  if (!(sigma2 > 0)) throw ConfigError("farima: sigma2 must be > 0");
  if (!(alpha >= 0 && alpha < 1)) throw ConfigError("farima: alpha must be in [0, 1)");
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::farima;
  n->c = sigma2;
  n->alpha = alpha;
  return Symbol(std::move(n));
}

Symbol Symbol::abs_sine() {
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::abs_sine;
  return Symbol(std::move(n));
}

Symbol Symbol::scaled(const Symbol& base, double factor) {
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::scaled;
  n->c = factor;
  n->left = base.node_;
  return Symbol(std::move(n));
}

Symbol Symbol::sum(const Symbol& lhs, const Symbol& rhs) {
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::sum;
  n->left = lhs.node_;
  n->right = rhs.node_;
  return Symbol(std::move(n));
}

SymbolKind Symbol::kind() const { return node_->kind; }

namespace {

double eval_node(const Symbol::Node&, double);

double eval_reduced(const Symbol::Node& n, double lam) {
  switch (n.kind) {
    case SymbolKind::constant:
      return n.c;
    case SymbolKind::trig_polynomial: {
      double v = n.coeffs[0];
      for (size_t j = 1; j < n.coeffs.size(); ++j) v += n.coeffs[j] * std::cos(j * lam);
      return v;
    }
    case SymbolKind::power_law:
      if (lam == 0.0 && n.alpha > 0)
        throw EvalAtSingularity("power_law symbol evaluated at its singularity (λ ≡ 0 mod 2π)");
      return n.alpha == 0 ? 1.0 : std::pow(std::abs(lam), -n.alpha);
    case SymbolKind::farima: {
      if (lam == 0.0 && n.alpha > 0)
        throw EvalAtSingularity("farima symbol evaluated at its singularity (λ ≡ 0 mod 2π)");
      double base = 2.0 * std::abs(std::sin(0.5 * lam));  // |1 - e^{iλ}|
      return n.c / kTwoPi * (n.alpha == 0 ? 1.0 : std::pow(base, -n.alpha));
    }
    case SymbolKind::abs_sine:
      return std::abs(std::sin(lam));
    case SymbolKind::scaled:
      return n.c * eval_reduced(*n.left, lam);
    case SymbolKind::sum:
      return eval_reduced(*n.left, lam) + eval_reduced(*n.right, lam);
  }
  throw Error("unreachable symbol kind");
}

double node_alpha(const Symbol::Node& n) {
  switch (n.kind) {
    case SymbolKind::power_law:
    case SymbolKind::farima:
      return n.alpha;
    case SymbolKind::scaled:
      return node_alpha(*n.left);
    case SymbolKind::sum:
      return std::max(node_alpha(*n.left), node_alpha(*n.right));
    default:
      return 0.0;
  }
}

// (α, M1, M2) per kind; `strict` controls the mixed-α sum behavior.
SingularityProfile node_profile(const Symbol::Node& n, bool strict) {
  switch (n.kind) {
    case SymbolKind::constant:
      return {0.0, std::abs(n.c), 0.0};
    case SymbolKind::trig_polynomial: {
      double m1 = 0, d = 0;
      for (size_t j = 0; j < n.coeffs.size(); ++j) {
        m1 += std::abs(n.coeffs[j]);
        d += static_cast<double>(j) * std::abs(n.coeffs[j]);
      }
      return {0.0, m1, kPi * d};  // |f'| <= Σ j|a_j| <= M2 |λ|^{-1} with M2 = π Σ j|a_j|
    }
    case SymbolKind::power_law:
      return {n.alpha, 1.0, n.alpha};
    case SymbolKind::farima:
      return {n.alpha, n.c, n.c};  // M1 = M2 = σ²
    case SymbolKind::abs_sine:
      return {0.0, 1.0, kPi};
    case SymbolKind::scaled: {
      SingularityProfile p = node_profile(*n.left, strict);
      p.m1 *= std::abs(n.c);
      if (p.m2) p.m2 = *p.m2 * std::abs(n.c);
      return p;
    }
    case SymbolKind::sum: {
      SingularityProfile l = node_profile(*n.left, strict);
      SingularityProfile r = node_profile(*n.right, strict);
      double amax = std::max(l.alpha, r.alpha);
      // |λ|^{-αi} <= π^{αmax-αi} |λ|^{-αmax} on the torus.
      double m1 = l.m1 * std::pow(kPi, amax - l.alpha) + r.m1 * std::pow(kPi, amax - r.alpha);
      double m2 = l.m2.value_or(0.0) * std::pow(kPi, amax - l.alpha) +
                  r.m2.value_or(0.0) * std::pow(kPi, amax - r.alpha);
      if (strict && std::abs(l.alpha - r.alpha) > 1e-12) {
        std::ostringstream msg;
        msg << "sum operands have different singularity exponents (" << l.alpha << " vs " << r.alpha
            << "); conservative profile: alpha=" << amax << ", M1=" << m1 << ", M2=" << m2;
        throw ProfileUnavailable(msg.str(), amax, m1, m2);
      }
      return {amax, m1, m2};
    }
  }
  throw Error("unreachable symbol kind");
}

void collect_breakpoints(const Symbol::Node& n, std::vector<SingularPoint>& out) {
  switch (n.kind) {
    case SymbolKind::power_law:
    case SymbolKind::farima:
      if (n.alpha > 0) out.push_back({0.0, n.alpha});
      return;
    case SymbolKind::abs_sine:
      out.push_back({0.0, 0.0});
      out.push_back({kPi, 0.0});
      return;
    case SymbolKind::scaled:
      collect_breakpoints(*n.left, out);
      return;
    case SymbolKind::sum:
      collect_breakpoints(*n.left, out);
      collect_breakpoints(*n.right, out);
      return;
    default:
      return;
  }
}

bool node_nonnegative(const Symbol::Node& n) {
  switch (n.kind) {
    case SymbolKind::constant:
      return n.c >= 0;
    case SymbolKind::trig_polynomial:
      return false;  // not decidable from coefficients alone; stay conservative
    case SymbolKind::power_law:
    case SymbolKind::farima:
    case SymbolKind::abs_sine:
      return true;
    case SymbolKind::scaled:
      return n.c >= 0 && node_nonnegative(*n.left);
    case SymbolKind::sum:
      return node_nonnegative(*n.left) && node_nonnegative(*n.right);
  }
  return false;
}

std::string node_describe(const Symbol::Node& n) {
  switch (n.kind) {
    case SymbolKind::constant:
      return "{ kind = \"constant\", value = " + num(n.c) + " }";
    case SymbolKind::trig_polynomial: {
      std::string s = "{ kind = \"trigpoly\", coeffs = [";
      for (size_t j = 0; j < n.coeffs.size(); ++j) {
        if (j) s += ", ";
        s += num(n.coeffs[j]);
      }
      return s + "] }";
    }
    case SymbolKind::power_law:
      return "{ kind = \"powerlaw\", alpha = " + num(n.alpha) + " }";
    case SymbolKind::farima:
      return "{ kind = \"farima\", sigma2 = " + num(n.c) + ", alpha = " + num(n.alpha) + " }";
    case SymbolKind::abs_sine:
      return "{ kind = \"abssine\" }";
    case SymbolKind::scaled:
      return "{ kind = \"scaled\", factor = " + num(n.c) + ", base = " + node_describe(*n.left) + " }";
    case SymbolKind::sum:
      return "{ kind = \"sum\", left = " + node_describe(*n.left) +
             ", right = " + node_describe(*n.right) + " }";
  }
  throw Error("unreachable symbol kind");
}

}  // namespace

double Symbol::eval(double lambda) const {
  if (!std::isfinite(lambda)) throw Error("eval: argument must be finite");
  double lam = std::remainder(lambda, kTwoPi);  // lands in [-π, π]
  return eval_reduced(*node_, lam);
}

double Symbol::singularity_alpha() const { return node_alpha(*node_); }

std::optional<double> Symbol::derivative_envelope() const {
  return node_profile(*node_, /*strict=*/false).m2;
}

SingularityProfile Symbol::profile() const { return node_profile(*node_, /*strict=*/true); }

std::vector<SingularPoint> Symbol::breakpoints() const {
  std::vector<SingularPoint> pts;
  collect_breakpoints(*node_, pts);
  std::sort(pts.begin(), pts.end(),
            [](const SingularPoint& l, const SingularPoint& r) { return l.location < r.location; });
  std::vector<SingularPoint> merged;
  for (const auto& sp : pts) {
    if (!merged.empty() && std::abs(sp.location - merged.back().location) < 1e-13)
      merged.back().strength = std::max(merged.back().strength, sp.strength);
    else
      merged.push_back(sp);
  }
  return merged;
}

bool Symbol::known_nonnegative() const { return node_nonnegative(*node_); }

std::string Symbol::describe() const { return node_describe(*node_); }

double theorem3_gamma(double alpha1, double alpha2) {
  if (!(alpha1 > 0) || !(alpha2 > 0))
    throw OutOfRegime("theorem3_gamma: both exponents must be positive");
  if (!(alpha1 + alpha2 < 0.5))
    throw OutOfRegime("theorem3_gamma: requires alpha1 + alpha2 < 1/2");
  return 0.25 - 0.5 * (alpha1 + alpha2);
}

}  // namespace toeptrace
