#include "toeptrace/toeplitz.hpp"

#include <complex>

#include <unsupported/Eigen/FFT>

namespace toeptrace {

namespace {

Eigen::FFT<double>& tls_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

DenseToeplitz build_dense(const FourierTable& t) {
  if (t.n < 1) throw DimensionMismatch("build_dense: empty table");
  if (t.n > kDenseGuard) throw DenseGuardExceeded("build_dense: n exceeds the dense guard (8192)");
  DenseToeplitz d;
  d.n = t.n;
  d.entries.resize(t.n, t.n);
  for (int k = 0; k < t.n; ++k)
    for (int j = 0; j < t.n; ++j) d.entries(k, j) = t.coeffs[static_cast<size_t>(std::abs(k - j))];
  return d;
}

int next_pow2(int n) {
  int m = 1;
  while (m < n) m *= 2;
  return m;
}

ToeplitzOperator::ToeplitzOperator(FourierTable table) : table_(std::move(table)) {
  const int n = table_.n;
  if (n < 1) throw DimensionMismatch("embed_circulant: empty table");
  m_ = next_pow2(2 * n - 1);
  // First circulant column: [h0, h1, .., h_{n-1}, 0.., h_{n-1}, .., h1].
  std::vector<std::complex<double>> col(m_, 0.0);
  col[0] = table_.coeffs[0];
  for (int j = 1; j < n; ++j) {
    col[j] = table_.coeffs[j];
    col[m_ - j] = table_.coeffs[j];
  }
  spectrum_.resize(m_);
  if (m_ == 1) {
    spectrum_[0] = table_.coeffs[0];
    return;
  }
  std::vector<std::complex<double>> spec(m_);
  tls_fft().fwd(spec, col);
  // The column is even, so its DFT is real up to rounding.
  for (int i = 0; i < m_; ++i) spectrum_[i] = spec[i].real();
}

Eigen::VectorXd ToeplitzOperator::apply(const Eigen::VectorXd& x) const {
  const int n = table_.n;
  if (x.size() != n) throw DimensionMismatch("matvec: vector length does not match operator size");
  if (m_ == 1) return Eigen::VectorXd::Constant(1, spectrum_[0] * x[0]);
  std::vector<std::complex<double>> in(m_, 0.0), freq(m_), out(m_);
  for (int i = 0; i < n; ++i) in[i] = x[i];
  auto& fft = tls_fft();
  fft.fwd(freq, in);
  for (int i = 0; i < m_; ++i) freq[i] *= spectrum_[i];
  fft.inv(out, freq);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = out[i].real();
  return y;
}

}  // namespace toeptrace
