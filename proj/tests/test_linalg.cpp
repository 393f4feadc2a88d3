#include <doctest.h>

#include <cmath>
#include <vector>

#include "moqa/errors.hpp"
#include "moqa/linalg.hpp"
#include "moqa/rng.hpp"

using namespace moqa;

namespace {

// Independent oracle: full spectrum by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(Matrix s) {
  const std::size_t n = s.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += s(i, j) * s(i, j);
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (s(p, q) == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = s(i, i);
  return eig;
}

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double w = rng.gaussian();
      m(i, j) = w;
      m(j, i) = w;
    }
  return m;
}

} // namespace

TEST_CASE("smallest_eigenvalue on the 2x2 off-diagonal matrix") {
  Matrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  const EigenResult r = smallest_eigenvalue(m);
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.residual <= 1e-10 * 1.0);
}

TEST_CASE("smallest_eigenvalue of a diagonal matrix is the smallest entry") {
  Matrix m(4);
  m(0, 0) = 3.0;
  m(1, 1) = -7.5;
  m(2, 2) = 0.25;
  m(3, 3) = 11.0;
  CHECK(smallest_eigenvalue(m).value == doctest::Approx(-7.5).epsilon(1e-12));
}

TEST_CASE("smallest_eigenvalue of a 1x1 matrix") {
  Matrix m(1);
  m(0, 0) = -4.25;
  CHECK(smallest_eigenvalue(m).value == doctest::Approx(-4.25));
}

TEST_CASE("smallest_eigenvalue matches a Jacobi sweep on random matrices") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const Matrix m = random_symmetric(n, seed);
    const std::vector<double> eig = jacobi_eigenvalues(m);
    const double expected = *std::min_element(eig.begin(), eig.end());
    const EigenResult got = smallest_eigenvalue(m);
    CAPTURE(seed);
    CHECK(got.value == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("smallest_eigenvalue handles repeated extremes") {
  Matrix m(3);
  m(0, 0) = -2.0;
  m(1, 1) = -2.0;
  m(2, 2) = 5.0;
  CHECK(smallest_eigenvalue(m).value == doctest::Approx(-2.0));
}

TEST_CASE("smallest_eigenvalue rejects asymmetric input") {
  Matrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(smallest_eigenvalue(m), ValidationError);
}

TEST_CASE("zero matrix has zero eigenvalue") {
  CHECK(smallest_eigenvalue(Matrix(3)).value == 0.0);
}
