#ifndef MOQA_QUBO_HPP
#define MOQA_QUBO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "moqa/linalg.hpp"

namespace moqa {

/// Spin configurations live in {-1,+1}^n, binary ones in {0,1}^n,
/// related by b = (1 - s) / 2.
using SpinVector = std::vector<std::int8_t>;
using BitVector = std::vector<std::uint8_t>;

SpinVector spins_from_bits(const BitVector& b);
BitVector bits_from_spins(const SpinVector& s);

/// Bits of the integer index, little-endian: bit k of `index` is variable k.
BitVector bits_from_index(std::uint64_t index, std::size_t n);
std::uint64_t index_from_bits(const BitVector& b);
SpinVector spins_from_index(std::uint64_t index, std::size_t n);

/// minimize b^T M b over b in {0,1}^n, M symmetric.
struct QuboMatrix {
  std::size_t n = 0;
  Matrix m;

  QuboMatrix() = default;
  /// Throws ValidationError unless m is symmetric and n >= 1.
  explicit QuboMatrix(Matrix m);

  double evaluate(const BitVector& b) const;
};

/// One objective in spin form: s^T A s + a^T s + alpha.
///
/// A is kept symmetric with a zero diagonal; any diagonal handed to the
/// constructor is folded into alpha (s_i^2 = 1), so the stored triple is
/// canonical and the multinomial expansion indexing stays unambiguous.
class IsingObjective {
public:
  IsingObjective() = default;
  /// Throws ValidationError unless coupling is symmetric and sizes agree.
  IsingObjective(Matrix coupling, std::vector<double> field, double shift);

  std::size_t n() const { return n_; }
  const Matrix& coupling() const { return coupling_; }
  const std::vector<double>& field() const { return field_; }
  double shift() const { return shift_; }

  double evaluate(const SpinVector& s) const;

  /// Coefficient of the s_i s_j monomial (i != j) when the quadratic sum
  /// runs over ordered pairs j < i only: A_ij + A_ji = 2 A_ij.
  double pair_coefficient(std::size_t i, std::size_t j) const {
    return coupling_(i, j) + coupling_(j, i);
  }

  /// This objective with `c` added to the scalar shift.
  IsingObjective shifted(double c) const;

  bool operator==(const IsingObjective& other) const;

private:
  std::size_t n_ = 0;
  Matrix coupling_;            // symmetric, zero diagonal
  std::vector<double> field_;
  double shift_ = 0.0;
};

/// M objectives over shared variables plus the common positivity shift
/// already applied (sum of all apply_shift calls so far).
struct MultiObjectiveProblem {
  std::size_t n = 0;
  std::vector<IsingObjective> objectives;
  double shift_c = 0.0;
  std::map<std::string, std::string> metadata;

  std::size_t objective_count() const { return objectives.size(); }
  /// max_m h_m(s)
  double evaluate_max(const SpinVector& s) const;
  /// Throws ValidationError unless all objectives share n and M >= 1.
  void validate() const;
};

/// Spin-space image of a QUBO: A = M/4, a = -(M 1)/2, alpha = 1^T M 1 / 4,
/// diagonal of A folded into alpha. Agrees with b^T M b at every bitstring.
IsingObjective qubo_to_ising(const QuboMatrix& q);

/// Border the coupling matrix with the half-field so the whole objective
/// (minus the shift) becomes one quadratic form:
/// (s,1)^T Atilde (s,1) + alpha == evaluate(s).
Matrix augmented_matrix(const IsingObjective& o);

enum class ShiftMode {
  spectral, ///< max_m { -(n+1) lambda_min(Atilde_m) - alpha_m }
  exact     ///< -min_{m,b} h_m(b), brute force (n capped)
};

struct ShiftOptions {
  double eigen_tol = 1e-10;   // residual tolerance for lambda_min
  int exact_cap = 24;         // largest n enumerated in exact mode
};

/// Common shift c making every shifted objective non-negative. The
/// spectral bound may be loose (and negative for already-positive
/// landscapes); exact mode returns the tightest valid value.
double compute_shift(const MultiObjectiveProblem& p, ShiftMode mode,
                     const ShiftOptions& opts = {});

/// Same problem with alpha_m += c for every m; shift_c accumulates c.
MultiObjectiveProblem apply_shift(const MultiObjectiveProblem& p, double c);

ShiftMode shift_mode_from_string(const std::string& name);
std::string to_string(ShiftMode mode);

} // namespace moqa

#endif
