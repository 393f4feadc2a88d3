#ifndef MOQA_LINALG_HPP
#define MOQA_LINALG_HPP

#include <cstddef>
#include <vector>

namespace moqa {

/// Dense square matrix, row-major. Small sizes only (problem dimensions
/// here are a few dozen at most), so no blocking or external BLAS.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool is_symmetric(double tol = 0.0) const;
  double max_abs() const;
  double trace() const;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenResult {
  double value = 0.0;     ///< converged eigenvalue estimate
  double residual = 0.0;  ///< ||S v - value * v||_2 with ||v||_2 = 1
  int iterations = 0;
};

/// Smallest eigenvalue of a symmetric matrix.
///
/// Bisection on eigenvalue counts (inertia of LDL^T factorizations of
/// S - sigma*I) brackets lambda_min between its Gershgorin bounds, then
/// shifted inverse iteration polishes an eigenpair until the residual
/// drops below `tol * max(1, max|S|)`. Deflation-free and robust to
/// clustered spectra. Throws ConvergenceError if the residual tolerance
/// is not met within `max_iterations` combined steps (default
/// 10 * n^2 as per the solver contract).
EigenResult smallest_eigenvalue(const Matrix& S, double tol = 1e-10,
                                int max_iterations = 0);

} // namespace moqa

#endif
