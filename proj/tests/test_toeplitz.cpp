#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "toeptrace/toeplitz.hpp"

using namespace toeptrace;

namespace {

constexpr double kPi = std::numbers::pi;

FourierTable table_of(std::vector<double> coeffs) {
  FourierTable t;
  t.symbol_id = "test";
  t.n = static_cast<int>(coeffs.size());
  t.coeffs = std::move(coeffs);
  return t;
}

}  // namespace

TEST_SUITE("toeplitz") {
  TEST_CASE("build_dense layout") {
    auto d1 = build_dense(table_of({2 * kPi}));
    CHECK(d1.entries(0, 0) == doctest::Approx(2 * kPi));

    auto d2 = build_dense(table_of({0.0, kPi}));
    CHECK(d2.entries(0, 0) == 0.0);
    CHECK(d2.entries(0, 1) == doctest::Approx(kPi));
    CHECK(d2.entries(1, 0) == doctest::Approx(kPi));

    auto d3 = build_dense(table_of({1.0, 2.0, 3.0}));
    // [[a,b,c],[b,a,b],[c,b,a]] with exact (bitwise) diagonal constancy
    CHECK(d3.entries(0, 2) == 3.0);
    for (int k = 0; k + 1 < 3; ++k)
      for (int j = 0; j + 1 < 3; ++j) CHECK(d3.entries(k, j) == d3.entries(k + 1, j + 1));
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) CHECK(d3.entries(k, j) == d3.entries(j, k));
  }

  TEST_CASE("dense guard") {
    FourierTable big;
    big.n = kDenseGuard + 1;
    big.coeffs.assign(big.n, 0.0);
    CHECK_THROWS_AS(build_dense(big), DenseGuardExceeded);
  }

  TEST_CASE("embedding size and spectrum") {
    ToeplitzOperator one(table_of({5.0}));
    CHECK(one.embedding_size() == 1);
    CHECK(one.circ_spectrum() == std::vector<double>{5.0});

    // n=2 cos table embeds into [0, π, 0, π]; DFT = [2π, 0, -2π, 0]
    ToeplitzOperator two(table_of({0.0, kPi}));
    CHECK(two.embedding_size() == 4);
    REQUIRE(two.circ_spectrum().size() == 4);
    CHECK(two.circ_spectrum()[0] == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(std::abs(two.circ_spectrum()[1]) < 1e-13);
    CHECK(two.circ_spectrum()[2] == doctest::Approx(-2 * kPi).epsilon(1e-14));

    CHECK(next_pow2(1) == 1);
    CHECK(next_pow2(3) == 4);
    CHECK(next_pow2(129) == 256);
  }

  TEST_CASE("matvec basics") {
    ToeplitzOperator ident(table_of({2 * kPi}));
    Eigen::VectorXd e1 = Eigen::VectorXd::Unit(1, 0);
    CHECK(ident.apply(e1)[0] == doctest::Approx(2 * kPi));

    ToeplitzOperator two(table_of({0.0, kPi}));
    Eigen::VectorXd x(2);
    x << 1, 0;
    Eigen::VectorXd y = two.apply(x);
    CHECK(std::abs(y[0]) < 1e-13);
    CHECK(y[1] == doctest::Approx(kPi).epsilon(1e-13));

    Eigen::VectorXd bad(3);
    CHECK_THROWS_AS(two.apply(bad), DimensionMismatch);
  }

  TEST_CASE("matvec agrees with the dense matrix on random tables") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int n : {1, 2, 3, 5, 8, 16, 33, 64}) {
      std::vector<double> coeffs(n);
      for (auto& c : coeffs) c = unif(rng);
      FourierTable t = table_of(coeffs);
      DenseToeplitz d = build_dense(t);
      ToeplitzOperator op(t);
      for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = unif(rng);
        Eigen::VectorXd want = d.entries * x;
        Eigen::VectorXd got = op.apply(x);
        double scale = want.cwiseAbs().maxCoeff() + 1e-30;
        CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-12 * scale);
      }
    }
  }

  TEST_CASE("matvec agrees with dense for every catalog symbol, n = 1..64") {
    QuadratureSpec q;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Symbol> catalog{Symbol::constant(1.0),   Symbol::cosine(),
                                Symbol::abs_sine(),      Symbol::power_law(0.1),
                                Symbol::power_law(0.2),  Symbol::farima(1.0, 0.2)};
    for (const Symbol& s : catalog) {
      for (int n = 1; n <= 64; ++n) {
        FourierTable t = fourier_table(s, n, q);
        DenseToeplitz d = build_dense(t);
        ToeplitzOperator op(t);
        Eigen::VectorXd x(n);
        for (int rep = 0; rep < 4; ++rep) {
          for (int i = 0; i < n; ++i) x[i] = unif(rng);
          Eigen::VectorXd want = d.entries * x;
          Eigen::VectorXd got = op.apply(x);
          double scale = want.cwiseAbs().maxCoeff() + 1e-30;
          CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        }
      }
    }
  }

  TEST_CASE("rayleigh quotients stay inside the symbol range") {
    // f = 1 + cos λ is nonnegative with max 2, so eigenvalues lie in [0, 4π].
    FourierTable t = table_of(std::vector<double>(32, 0.0));
    t.coeffs[0] = 2 * kPi;  // h(0) = 2π·a0·... : direct coefficients of 1+cos
    t.coeffs[1] = kPi;
    DenseToeplitz d = build_dense(t);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
      Eigen::VectorXd x(32);
      for (int i = 0; i < 32; ++i) x[i] = unif(rng);
      double r = x.dot(d.entries * x) / x.squaredNorm();
      CHECK(r >= -1e-10);
      CHECK(r <= 4 * kPi + 1e-10);
    }
  }
}
