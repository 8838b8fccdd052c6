#pragma once

#include <Eigen/Dense>

#include "toeptrace/spectral.hpp"

namespace toeptrace {

/// Largest n for which dense materialization is allowed.
inline constexpr int kDenseGuard = 8192;

/// Explicit n×n matrix T_n(u) with entries[k][j] = ĥ(k-j).
struct DenseToeplitz {
  int n = 0;
  Eigen::MatrixXd entries;
};

DenseToeplitz build_dense(const FourierTable& t);

int next_pow2(int n);

/// Matrix-free T_n(u): the first column is embedded into a circulant of size
/// m = next power of two >= 2n-1 whose (real) spectrum is cached, so matvec
/// costs O(m log m).
class ToeplitzOperator {
 public:
  explicit ToeplitzOperator(FourierTable table);

  int size() const { return table_.n; }
  int embedding_size() const { return m_; }
  const std::vector<double>& circ_spectrum() const { return spectrum_; }
  const FourierTable& table() const { return table_; }

  /// T_n(u) · x. Throws DimensionMismatch unless x.size() == n.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

 private:
  FourierTable table_;
  int m_ = 0;
  std::vector<double> spectrum_;
};

inline ToeplitzOperator embed_circulant(const FourierTable& t) { return ToeplitzOperator(t); }

inline Eigen::VectorXd matvec(const ToeplitzOperator& op, const Eigen::VectorXd& x) {
  return op.apply(x);
}

}  // namespace toeptrace
