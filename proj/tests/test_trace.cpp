#include <cmath>
#include <numbers>

#include <doctest.h>

#include "toeptrace/trace.hpp"

using namespace toeptrace;

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi4 = std::pow(kPi, 4);

}  // namespace

TEST_SUITE("trace") {
  TEST_CASE("hand-computed cos values, all engines") {
    QuadratureSpec q;
    FourierTable ct = fourier_table(Symbol::cosine(), 2, q);
    CHECK(trace_product_dense(ct, ct, 2) == doctest::Approx(kPi4).epsilon(1e-12));
    CHECK(trace_product_dense(ct, ct, 1) == doctest::Approx(kPi * kPi).epsilon(1e-12));
    CHECK(trace_nu1_closed(ct, ct) == doctest::Approx(kPi * kPi).epsilon(1e-12));
    ToeplitzOperator op(ct);
    CHECK(trace_product_matfree(op, op, 2) == doctest::Approx(kPi4).epsilon(1e-12));
  }

  TEST_CASE("constant symbol: S equals M exactly") {
    QuadratureSpec q;
    FourierTable t = fourier_table(Symbol::constant(1.0), 1, q);
    CHECK(trace_product_dense(t, t, 2) == doctest::Approx(16 * kPi4).epsilon(1e-12));
    for (int n : {1, 4, 7}) {
      TraceRecord rec = delta(Symbol::constant(1.0), Symbol::constant(1.0), n, 2,
                              TraceEngine::dense, q);
      CHECK(rec.delta <= 1e-8);
    }
  }

  TEST_CASE("closed form for the exact cos trace at any n") {
    // S_{n,1} = 2π²(1-1/n) and S_{n,2} = 6π⁴ - 10π⁴/n, engine-independent.
    QuadratureSpec q;
    for (int n : {2, 16, 64}) {
      FourierTable ct = fourier_table(Symbol::cosine(), n, q);
      CHECK(trace_nu1_closed(ct, ct) ==
            doctest::Approx(2 * kPi * kPi * (1.0 - 1.0 / n)).epsilon(1e-12));
      CHECK(trace_product_dense(ct, ct, 2) ==
            doctest::Approx(6 * kPi4 - 10 * kPi4 / n).epsilon(1e-12));
    }
  }

  TEST_CASE("engine equivalence on a small grid") {
    QuadratureSpec q;
    for (const Symbol& s : {Symbol::farima(1.0, 0.2), Symbol::abs_sine(), Symbol::cosine()}) {
      for (int n : {1, 2, 5, 16, 64}) {
        FourierTable t = fourier_table(s, n, q);
        ToeplitzOperator op(t);
        for (int nu : {1, 2}) {
          double dense = trace_product_dense(t, t, nu);
          double mf = trace_product_matfree(op, op, nu);
          CHECK(std::abs(dense - mf) <= 1e-9 * std::max(1.0, std::abs(dense)));
        }
        CHECK(std::abs(trace_product_dense(t, t, 1) - trace_nu1_closed(t, t)) <=
              1e-12 * std::max(1.0, std::abs(trace_nu1_closed(t, t))));
      }
    }
  }

  TEST_CASE("trace symmetry and scaling covariance") {
    QuadratureSpec q;
    FourierTable f = fourier_table(Symbol::farima(1.0, 0.2), 16, q);
    FourierTable g = fourier_table(Symbol::cosine(), 16, q);
    for (int nu : {1, 2}) {
      double fg = trace_product_dense(f, g, nu);
      double gf = trace_product_dense(g, f, nu);
      CHECK(std::abs(fg - gf) <= 1e-12 * std::abs(fg));
    }
    // S(c f, g) = c^ν S(f, g)
    const double c = 2.5;
    FourierTable fs = fourier_table(Symbol::scaled(Symbol::farima(1.0, 0.2), c), 16, q);
    for (int nu : {1, 2}) {
      double lhs = trace_product_dense(fs, g, nu);
      double rhs = std::pow(c, nu) * trace_product_dense(f, g, nu);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
    double m_lhs = limit_integral(Symbol::scaled(Symbol::farima(1.0, 0.2), c), Symbol::cosine(), 2, q);
    double m_rhs = std::pow(c, 2) * limit_integral(Symbol::farima(1.0, 0.2), Symbol::cosine(), 2, q);
    CHECK(m_lhs == doctest::Approx(m_rhs).epsilon(1e-9));
  }

  TEST_CASE("positivity for nonnegative symbols and even nu") {
    QuadratureSpec q;
    for (const Symbol& s :
         {Symbol::constant(0.7), Symbol::power_law(0.2), Symbol::farima(1.0, 0.3), Symbol::abs_sine()}) {
      FourierTable t = fourier_table(s, 12, q);
      CHECK(trace_product_dense(t, t, 2) >= 0.0);
    }
  }

  TEST_CASE("delta record assembly") {
    QuadratureSpec q;
    TraceRecord rec = delta(Symbol::cosine(), Symbol::cosine(), 2, 2, TraceEngine::dense, q);
    CHECK(rec.s_n_nu == doctest::Approx(kPi4).epsilon(1e-10));
    CHECK(rec.m_nu == doctest::Approx(6 * kPi4).epsilon(1e-10));
    CHECK(rec.delta == doctest::Approx(5 * kPi4).epsilon(1e-10));
    CHECK(rec.delta == std::abs(rec.s_n_nu - rec.m_nu));  // exactly as stored
    CHECK(rec.engine == TraceEngine::dense);
    CHECK(rec.elapsed >= 0.0);

    // summable-coefficient decay: finitely many coefficients, delta shrinks like 1/n
    TraceRecord far = delta(Symbol::cosine(), Symbol::cosine(), 256, 2, TraceEngine::matfree, q);
    CHECK(far.delta == doctest::Approx(10 * kPi4 / 256).epsilon(1e-8));
  }

  TEST_CASE("delta validation") {
    QuadratureSpec q;
    CHECK_THROWS_AS(delta(Symbol::cosine(), Symbol::cosine(), 2, 2, TraceEngine::closed_nu1, q),
                    ConfigError);
    CHECK_THROWS_AS(
        delta(Symbol::power_law(0.3), Symbol::power_law(0.3), 4, 2, TraceEngine::dense, q),
        NonIntegrableProduct);
  }

  TEST_CASE("integral representation matches the trace route") {
    QuadratureSpec q;
    CHECK(delta_integral_representation(Symbol::constant(1), Symbol::constant(1), 3, q) <= 1e-8);
    for (int n : {2, 4}) {
      TraceRecord rec = delta(Symbol::cosine(), Symbol::cosine(), n, 2, TraceEngine::dense, q);
      double rep = delta_integral_representation(Symbol::cosine(), Symbol::cosine(), n, q);
      CHECK(rep == doctest::Approx(rec.delta).epsilon(1e-3));
    }
    CHECK_THROWS_AS(delta_integral_representation(Symbol::cosine(), Symbol::cosine(), 9, q),
                    ConfigError);
  }

  TEST_CASE("engine names round-trip") {
    CHECK(trace_engine_from_string("dense") == TraceEngine::dense);
    CHECK(trace_engine_from_string("matfree") == TraceEngine::matfree);
    CHECK(trace_engine_from_string("closed") == TraceEngine::closed_nu1);
    CHECK(std::string(to_string(TraceEngine::closed_nu1)) == "closed_nu1");
    CHECK_THROWS_AS(trace_engine_from_string("gpu"), ConfigError);
  }
}
