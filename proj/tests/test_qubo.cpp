#include <doctest.h>

#include <cmath>

#include "moqa/errors.hpp"
#include "moqa/generators.hpp"
#include "moqa/qubo.hpp"
#include "moqa/rng.hpp"

using namespace moqa;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

} // namespace

TEST_CASE("bit/spin round trips are the identity") {
  for (std::uint64_t idx = 0; idx < 32; ++idx) {
    const BitVector b = bits_from_index(idx, 5);
    CHECK(index_from_bits(b) == idx);
    CHECK(bits_from_spins(spins_from_bits(b)) == b);
    CHECK(spins_from_index(idx, 5) == spins_from_bits(b));
  }
}

TEST_CASE("qubo_to_ising on the single-variable identity cost") {
  const QuboMatrix q(from_rows({{1.0}}));
  const IsingObjective o = qubo_to_ising(q);
  CHECK(o.coupling()(0, 0) == 0.0);
  CHECK(o.field()[0] == doctest::Approx(-0.5));
  CHECK(o.shift() == doctest::Approx(0.5));
  CHECK(o.evaluate({+1}) == doctest::Approx(0.0)); // b = 0
  CHECK(o.evaluate({-1}) == doctest::Approx(1.0)); // b = 1
}

TEST_CASE("qubo_to_ising maps the zero matrix to the zero objective") {
  const IsingObjective o = qubo_to_ising(QuboMatrix(Matrix(3)));
  CHECK(o.shift() == 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(o.field()[i] == 0.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(o.coupling()(i, j) == 0.0);
  }
}

TEST_CASE("qubo_to_ising agrees with b^T M b on a 2x2 coupling matrix") {
  const QuboMatrix q(from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  const IsingObjective o = qubo_to_ising(q);
  for (std::uint64_t idx = 0; idx < 4; ++idx) {
    const BitVector b = bits_from_index(idx, 2);
    CHECK(o.evaluate(spins_from_bits(b)) == doctest::Approx(q.evaluate(b)));
  }
}

TEST_CASE("conversion soundness on random symmetric matrices") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 1 + seed % 8;
    SplitMix64 rng(seed);
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double w = rng.gaussian();
        m(i, j) = w;
        m(j, i) = w;
      }
    const QuboMatrix q(m);
    const IsingObjective o = qubo_to_ising(q);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      const BitVector b = bits_from_index(idx, n);
      const double want = q.evaluate(b);
      const double got = o.evaluate(spins_from_bits(b));
      CHECK(std::abs(want - got) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("asymmetric QUBO matrices are rejected") {
  Matrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(QuboMatrix{m}, ValidationError);
}

TEST_CASE("IsingObjective folds the diagonal into the shift") {
  const IsingObjective o(from_rows({{2.0, 1.0}, {1.0, -3.0}}), {0.0, 0.0}, 1.0);
  CHECK(o.coupling()(0, 0) == 0.0);
  CHECK(o.coupling()(1, 1) == 0.0);
  CHECK(o.shift() == doctest::Approx(0.0)); // 1 + 2 - 3
  CHECK(o.pair_coefficient(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("evaluate: constant objective") {
  const IsingObjective o(Matrix(2), {0.0, 0.0}, 7.0);
  CHECK(o.evaluate({+1, -1}) == 7.0);
  CHECK(o.evaluate({-1, -1}) == 7.0);
}

TEST_CASE("evaluate: linear objective by hand") {
  const IsingObjective o(Matrix(1), {1.0}, 2.0);
  CHECK(o.evaluate({+1}) == doctest::Approx(3.0));
  CHECK(o.evaluate({-1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(o.evaluate({+1, -1}), ValidationError);
}

TEST_CASE("partition objective at the all-ones spin matches the set sum") {
  const PartitionGraph g = random_partition_graph(5, 99);
  const MultiObjectiveProblem p = partition_problem(g);
  const SpinVector all_plus(5, +1);
  // T_+(S = all) equals T_-(S^c = all), the set-sum with everything outside S.
  const SpinVector all_minus(5, -1);
  CHECK(p.objectives[0].evaluate(all_plus) ==
        doctest::Approx(partition_cut_cost(g, all_minus)).epsilon(1e-12));
  CHECK(p.objectives[1].evaluate(all_plus) ==
        doctest::Approx(partition_cut_cost(g, all_plus)).epsilon(1e-12));
}

TEST_CASE("augmented_matrix pads with zeros when the field vanishes") {
  Matrix a(2);
  a(0, 1) = 0.5;
  a(1, 0) = 0.5;
  const IsingObjective o(a, {0.0, 0.0}, 0.0);
  const Matrix aug = augmented_matrix(o);
  CHECK(aug.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(aug(2, k) == 0.0);
    CHECK(aug(k, 2) == 0.0);
  }
}

TEST_CASE("augmented_matrix of a pure field has known eigenvalues") {
  const IsingObjective o(Matrix(1), {2.0}, 0.0);
  const Matrix aug = augmented_matrix(o);
  CHECK(aug(0, 1) == doctest::Approx(1.0));
  CHECK(aug(1, 0) == doctest::Approx(1.0));
  CHECK(smallest_eigenvalue(aug).value == doctest::Approx(-1.0));
}

TEST_CASE("augmented quadratic form reproduces the objective") {
  const MultiObjectiveProblem p = random_multiobjective(4, 1, 7);
  const IsingObjective& o = p.objectives[0];
  const Matrix aug = augmented_matrix(o);
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    const SpinVector s = spins_from_index(idx, 4);
    std::vector<double> ext(5, 1.0);
    for (std::size_t i = 0; i < 4; ++i) ext[i] = s[i];
    double quad = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) quad += ext[i] * aug(i, j) * ext[j];
    CHECK(std::abs(quad + o.shift() - o.evaluate(s)) <= 1e-12);
  }
}

TEST_CASE("compute_shift: non-negative landscape needs no exact shift") {
  // h(s) = 1 + s has values {2, 0}.
  MultiObjectiveProblem p;
  p.n = 1;
  p.objectives.emplace_back(Matrix(1), std::vector<double>{1.0}, 1.0);
  CHECK(compute_shift(p, ShiftMode::exact) == doctest::Approx(0.0));
}

TEST_CASE("compute_shift on h(s) = s: both modes give 1") {
  MultiObjectiveProblem p;
  p.n = 1;
  p.objectives.emplace_back(Matrix(1), std::vector<double>{1.0}, 0.0);
  CHECK(compute_shift(p, ShiftMode::spectral) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(compute_shift(p, ShiftMode::exact) == doctest::Approx(1.0));
}

TEST_CASE("spectral shift dominates the exact shift") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 2 + seed % 8;
    const MultiObjectiveProblem p = random_multiobjective(n, 1 + seed % 3, seed);
    const double spectral = compute_shift(p, ShiftMode::spectral);
    const double exact = compute_shift(p, ShiftMode::exact);
    CAPTURE(seed);
    CHECK(spectral >= exact - 1e-9);
  }
}

TEST_CASE("shift validity: spectral shift makes the landscape non-negative") {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 11;
    MultiObjectiveProblem p = random_multiobjective(n, 2, seed);
    p = apply_shift(p, compute_shift(p, ShiftMode::spectral));
    double low = 1e300;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      const SpinVector s = spins_from_index(idx, n);
      for (const auto& o : p.objectives) low = std::min(low, o.evaluate(s));
    }
    CHECK(low >= -1e-9);
  }
}

TEST_CASE("apply_shift is additive and records shift_c") {
  MultiObjectiveProblem p = random_multiobjective(3, 2, 5);
  const MultiObjectiveProblem same = apply_shift(p, 0.0);
  CHECK(same.objectives[0] == p.objectives[0]);
  CHECK(same.shift_c == 0.0);

  const MultiObjectiveProblem once = apply_shift(p, 1.0);
  const MultiObjectiveProblem twice = apply_shift(apply_shift(p, 0.5), 0.5);
  CHECK(once.shift_c == doctest::Approx(1.0));
  CHECK(twice.shift_c == doctest::Approx(1.0));
  CHECK(once.objectives[1].shift() == doctest::Approx(twice.objectives[1].shift()));
}

TEST_CASE("apply_shift moves the minimum to zero on the hand example") {
  MultiObjectiveProblem p;
  p.n = 1;
  p.objectives.emplace_back(Matrix(1), std::vector<double>{1.0}, 0.0);
  const MultiObjectiveProblem shifted = apply_shift(p, 1.0);
  CHECK(shifted.objectives[0].evaluate({-1}) == doctest::Approx(0.0));
  CHECK(shifted.objectives[0].evaluate({+1}) == doctest::Approx(2.0));
}

TEST_CASE("exact shift above the brute-force cap is refused") {
  MultiObjectiveProblem p = random_multiobjective(6, 1, 3);
  ShiftOptions opts;
  opts.exact_cap = 4;
  CHECK_THROWS_AS(compute_shift(p, ShiftMode::exact, opts), BudgetError);
}
