#include "moqa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "moqa/errors.hpp"

namespace moqa {

bool Matrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

// Number of eigenvalues of S strictly below sigma, by counting negative
// pivots of the (unpivoted) LDL^T factorization of S - sigma*I. Zero
// pivots are nudged to keep the elimination alive; the bisection outer
// loop tolerates the resulting off-by-epsilon counts.
int count_below(const Matrix& S, double sigma, double scale) {
  const std::size_t n = S.size();
  Matrix w = S;
  for (std::size_t i = 0; i < n; ++i) w(i, i) -= sigma;
  int negatives = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double pivot = w(k, k);
    if (pivot == 0.0) pivot = 1e-300 * std::max(scale, 1.0);
    if (pivot < 0.0) ++negatives;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = w(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) w(i, j) -= factor * w(k, j);
    }
  }
  return negatives;
}

// Solve (S - sigma*I) x = b in place via LU with partial pivoting.
// Near-singular systems are exactly what inverse iteration feeds us;
// tiny pivots get clamped instead of failing.
void solve_shifted(const Matrix& S, double sigma, std::vector<double>& x,
                   double scale) {
  const std::size_t n = S.size();
  Matrix lu = S;
  for (std::size_t i = 0; i < n; ++i) lu(i, i) -= sigma;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(best, k))) best = i;
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(best, j));
      std::swap(perm[k], perm[best]);
    }
    double pivot = lu(k, k);
    if (std::abs(pivot) < 1e-280 * std::max(scale, 1.0)) {
      pivot = (pivot < 0.0 ? -1.0 : 1.0) * 1e-280 * std::max(scale, 1.0);
      lu(k, k) = pivot;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= pivot;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
    }
  }

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
    y[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x[j];
    x[ii] = s / lu(ii, ii);
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

} // namespace

EigenResult smallest_eigenvalue(const Matrix& S, double tol, int max_iterations) {
  const std::size_t n = S.size();
  if (n == 0) throw ValidationError("smallest_eigenvalue: empty matrix");
  if (!S.is_symmetric(0.0))
    throw ValidationError("smallest_eigenvalue: matrix is not symmetric");
  if (max_iterations <= 0) max_iterations = 10 * static_cast<int>(n * n);

  const double scale = std::max(S.max_abs(), 1.0);
  if (S.max_abs() == 0.0) return {0.0, 0.0, 0};

  // Gershgorin bracket.
  double lo = S(0, 0), hi = S(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) radius += std::abs(S(i, j));
    lo = std::min(lo, S(i, i) - radius);
    hi = std::max(hi, S(i, i) + radius);
  }

  int iterations = 0;

  // Bisect until the bracket around lambda_min is tight.
  double a = lo - 1e-12 * scale, b = hi + 1e-12 * scale;
  while (b - a > 1e-14 * scale && iterations < max_iterations) {
    const double mid = 0.5 * (a + b);
    ++iterations;
    if (count_below(S, mid, scale) >= 1)
      b = mid;
    else
      a = mid;
  }
  double lambda = 0.5 * (a + b);

  // Inverse iteration with the bisected shift; Rayleigh quotient updates.
  std::vector<double> v(n), sv(n);
  const auto reseed = [&v, n]() {
    for (std::size_t i = 0; i < n; ++i)
      v[i] = 1.0 + 1e-3 * static_cast<double>((i * 2654435761u) % 97);
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
  };
  reseed();

  double residual = 0.0;
  double shift = lambda;
  while (iterations < max_iterations) {
    ++iterations;
    solve_shifted(S, shift, v, scale);
    const double nv = norm2(v);
    if (!std::isfinite(nv) || nv == 0.0) {
      // Shift was numerically exact; perturb and restart from a fresh vector.
      shift += 1e-12 * scale;
      reseed();
      continue;
    }
    for (double& x : v) x /= nv;
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += S(i, j) * v[j];
      sv[i] = s;
      rayleigh += v[i] * s;
    }
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = sv[i] - rayleigh * v[i];
      residual += r * r;
    }
    residual = std::sqrt(residual);
    lambda = rayleigh;
    if (residual <= tol * scale) return {lambda, residual, iterations};
  }
  throw ConvergenceError("smallest_eigenvalue: residual " + std::to_string(residual) +
                             " above tolerance after " + std::to_string(iterations) +
                             " iterations",
                         residual);
}

} // namespace moqa
