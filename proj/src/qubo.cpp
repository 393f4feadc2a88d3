#include "moqa/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moqa/errors.hpp"

namespace moqa {

SpinVector spins_from_bits(const BitVector& b) {
  SpinVector s(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) s[i] = b[i] ? -1 : +1;
  return s;
}

BitVector bits_from_spins(const SpinVector& s) {
  BitVector b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) b[i] = s[i] < 0 ? 1 : 0;
  return b;
}

BitVector bits_from_index(std::uint64_t index, std::size_t n) {
  BitVector b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = (index >> k) & 1u;
  return b;
}

std::uint64_t index_from_bits(const BitVector& b) {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < b.size(); ++k)
    if (b[k]) idx |= (std::uint64_t{1} << k);
  return idx;
}

SpinVector spins_from_index(std::uint64_t index, std::size_t n) {
  SpinVector s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = ((index >> k) & 1u) ? -1 : +1;
  return s;
}

QuboMatrix::QuboMatrix(Matrix m_in) : n(m_in.size()), m(std::move(m_in)) {
  if (n == 0) throw ValidationError("QuboMatrix: n must be >= 1");
  if (!m.is_symmetric(0.0))
    throw ValidationError("QuboMatrix: matrix is not symmetric");
}

double QuboMatrix::evaluate(const BitVector& b) const {
  if (b.size() != n) throw ValidationError("QuboMatrix::evaluate: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!b[i]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (b[j]) total += m(i, j);
  }
  return total;
}

IsingObjective::IsingObjective(Matrix coupling, std::vector<double> field, double shift)
    : n_(coupling.size()), coupling_(std::move(coupling)), field_(std::move(field)),
      shift_(shift) {
  if (n_ == 0) throw ValidationError("IsingObjective: n must be >= 1");
  if (field_.size() != n_)
    throw ValidationError("IsingObjective: field length does not match coupling size");
  if (!coupling_.is_symmetric(0.0))
    throw ValidationError("IsingObjective: coupling matrix is not symmetric");
  // s_i^2 = 1: the diagonal is a constant, absorb it.
  for (std::size_t i = 0; i < n_; ++i) {
    shift_ += coupling_(i, i);
    coupling_(i, i) = 0.0;
  }
}

double IsingObjective::evaluate(const SpinVector& s) const {
  if (s.size() != n_)
    throw ValidationError("IsingObjective::evaluate: dimension mismatch");
  double quad = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += coupling_(i, j) * s[j];
    quad += s[i] * row;
  }
  double lin = 0.0;
  for (std::size_t i = 0; i < n_; ++i) lin += field_[i] * s[i];
  return quad + lin + shift_;
}

IsingObjective IsingObjective::shifted(double c) const {
  IsingObjective out = *this;
  out.shift_ += c;
  return out;
}

bool IsingObjective::operator==(const IsingObjective& other) const {
  return n_ == other.n_ && shift_ == other.shift_ && field_ == other.field_ &&
         coupling_.data() == other.coupling_.data();
}

double MultiObjectiveProblem::evaluate_max(const SpinVector& s) const {
  validate();
  double best = objectives.front().evaluate(s);
  for (std::size_t m = 1; m < objectives.size(); ++m)
    best = std::max(best, objectives[m].evaluate(s));
  return best;
}

void MultiObjectiveProblem::validate() const {
  if (objectives.empty())
    throw ValidationError("MultiObjectiveProblem: at least one objective required");
  for (const auto& o : objectives)
    if (o.n() != n)
      throw ValidationError("MultiObjectiveProblem: objective dimension mismatch");
}

IsingObjective qubo_to_ising(const QuboMatrix& q) {
  const std::size_t n = q.n;
  Matrix coupling(n);
  std::vector<double> field(n, 0.0);
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      coupling(i, j) = q.m(i, j) / 4.0;
      row_sum += q.m(i, j);
      shift += q.m(i, j) / 4.0;
    }
    field[i] = -row_sum / 2.0;
  }
  // Constructor folds diag(M)/4 into the shift.
  return IsingObjective(std::move(coupling), std::move(field), shift);
}

Matrix augmented_matrix(const IsingObjective& o) {
  const std::size_t n = o.n();
  Matrix aug(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = o.coupling()(i, j);
    aug(i, n) = o.field()[i] / 2.0;
    aug(n, i) = o.field()[i] / 2.0;
  }
  return aug;
}

double compute_shift(const MultiObjectiveProblem& p, ShiftMode mode,
                     const ShiftOptions& opts) {
  p.validate();
  if (mode == ShiftMode::spectral) {
    double c = -std::numeric_limits<double>::infinity();
    for (const auto& o : p.objectives) {
      const EigenResult eig = smallest_eigenvalue(augmented_matrix(o), opts.eigen_tol);
      const double nn = static_cast<double>(o.n() + 1);
      c = std::max(c, -nn * eig.value - o.shift());
    }
    return c;
  }
  if (p.n > static_cast<std::size_t>(opts.exact_cap))
    throw BudgetError("compute_shift: exact mode capped at n <= " +
                      std::to_string(opts.exact_cap) + ", got n = " +
                      std::to_string(p.n));
  double lowest = std::numeric_limits<double>::infinity();
  const std::uint64_t count = std::uint64_t{1} << p.n;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const SpinVector s = spins_from_index(idx, p.n);
    for (const auto& o : p.objectives) lowest = std::min(lowest, o.evaluate(s));
  }
  return -lowest;
}

MultiObjectiveProblem apply_shift(const MultiObjectiveProblem& p, double c) {
  MultiObjectiveProblem out = p;
  for (auto& o : out.objectives) o = o.shifted(c);
  out.shift_c += c;
  return out;
}

ShiftMode shift_mode_from_string(const std::string& name) {
  if (name == "spectral") return ShiftMode::spectral;
  if (name == "exact") return ShiftMode::exact;
  throw ValidationError("unknown shift mode '" + name + "' (expected spectral|exact)");
}

std::string to_string(ShiftMode mode) {
  return mode == ShiftMode::spectral ? "spectral" : "exact";
}

} // namespace moqa
