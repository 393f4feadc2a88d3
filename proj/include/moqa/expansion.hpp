#ifndef MOQA_EXPANSION_HPP
#define MOQA_EXPANSION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "moqa/qubo.hpp"

namespace moqa {

/// Bit k set means a Z factor acts on variable/qubit k (little-endian).
using PauliMask = std::uint64_t;

struct PauliTerm {
  PauliMask mask = 0;
  double coefficient = 0.0;
};

enum class ExpansionKind { dense, sparse, thresholded };

/// Diagonal Hamiltonian as a weighted sum of Pauli-Z strings:
/// H = sum_x C(x) * prod_{k: x_k = 1} Z_k.
/// Terms are stored sorted by (Hamming weight, mask value), zero
/// coefficients pruned; no stored mask has weight above 2 * level.
class SparsePauliHamiltonian {
public:
  SparsePauliHamiltonian() = default;
  SparsePauliHamiltonian(std::size_t n, int level, ExpansionKind kind,
                         std::vector<PauliTerm> terms, double threshold_value = 0.0);

  std::size_t n() const { return n_; }
  int level() const { return level_; }
  ExpansionKind kind() const { return kind_; }
  double threshold_value() const { return threshold_value_; }
  std::string provenance() const;

  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  /// 0.0 for masks not stored.
  double coefficient(PauliMask mask) const;
  std::size_t max_weight() const;
  double max_abs_coefficient() const;

  double evaluate(const SpinVector& s) const;
  /// Same with s encoded as a bit index (bit k set <=> s_k = -1).
  double evaluate_index(std::uint64_t b) const;

  bool same_terms(const SparsePauliHamiltonian& other, double rel_tol) const;

private:
  std::size_t n_ = 0;
  int level_ = 0;
  ExpansionKind kind_ = ExpansionKind::sparse;
  double threshold_value_ = 0.0;
  std::vector<PauliTerm> terms_;
};

/// One summand of the multinomial expansion: how the p powers are split
/// across the constant, the n linear terms, and the n(n-1)/2 pair terms.
/// Sparse layout; positions are ascending and powers sum to the level.
/// Position 0 is the constant, 1..n the fields, n+1+pair_index(i,j) the
/// pairs in lexicographic (i, j), i < j order.
struct AllocationPart {
  std::uint32_t position = 0;
  std::uint32_t power = 0;
};
using Allocation = std::vector<AllocationPart>;

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
std::pair<std::size_t, std::size_t> pair_from_index(std::size_t t, std::size_t n);

/// Dense length-d view (d = n(n+1)/2 + 1) of a sparse allocation.
std::vector<std::uint32_t> allocation_dense(const Allocation& alloc, std::size_t n);

/// Number of allocations for the full term set: binom(p + n(n+1)/2, p).
double allocation_count(std::size_t n, int level);

/// Visit every allocation exactly once, in the lexicographically
/// descending order (p,0,...,0), (p-1,1,0,...), ..., (0,...,0,p).
/// Refuses upfront (BudgetError) if the count exceeds `budget`.
void for_each_allocation(std::size_t n, int level,
                         const std::function<void(const Allocation&)>& visit,
                         double budget = 1e9);

/// Pauli mask of an allocation: bit i set iff the total power touching
/// variable i (field power plus all pair powers containing i) is odd.
PauliMask mask_of(const Allocation& alloc, std::size_t n);

struct ExpandOptions {
  double allocation_budget = 1e9; ///< refuse larger enumerations upfront
  int dense_variable_cap = 24;    ///< dense mode allocates 2^n slots
  unsigned chunks = 1;            ///< split the allocation range; merged in order
  unsigned threads = 1;           ///< workers for chunk processing
};

struct ExpandStats {
  std::uint64_t allocations_visited = 0;
  std::uint64_t allocations_contributing = 0;
};

/// Canonical form for expansion: symmetric zero-diagonal couplings (any
/// diagonal already folded into the shift at construction), so the pair
/// sum can run over j < i with doubled entries. Idempotent; evaluation
/// is unchanged at every spin vector.
MultiObjectiveProblem normalize_for_expansion(const MultiObjectiveProblem& p);

/// Multinomial expansion of sum_m h_m^level with a full 2^n coefficient
/// array as accumulator (reference implementation; n capped).
SparsePauliHamiltonian expand_dense(const MultiObjectiveProblem& p, int level,
                                    const ExpandOptions& opts = {},
                                    ExpandStats* stats = nullptr);

/// Same coefficient map, accumulated sparsely: storage proportional to
/// the number of touched masks (weight <= 2 * level), not 2^n.
SparsePauliHamiltonian expand_sparse(const MultiObjectiveProblem& p, int level,
                                     const ExpandOptions& opts = {},
                                     ExpandStats* stats = nullptr);

/// Expansion specialized to a pair of objectives that differ only in the
/// sign of the field (partitioning-type problems): allocations with an
/// odd total field power cancel and are skipped, halving the work.
/// Refuses (ValidationError) unless the problem is an exact such pair.
SparsePauliHamiltonian symmetry_reduced_expand(const MultiObjectiveProblem& p,
                                               int level,
                                               const ExpandOptions& opts = {},
                                               ExpandStats* stats = nullptr);

struct ThresholdResult {
  SparsePauliHamiltonian hamiltonian;
  std::size_t removed = 0;
  /// Bound on the pointwise evaluation change: sum of removed |C(x)|
  /// (itself at most theta * removed).
  double error_bound = 0.0;
};

/// Drop terms with |C(x)| < theta.
ThresholdResult threshold(const SparsePauliHamiltonian& h, double theta);

/// Closed-form resource bounds for building and storing an expansion.
struct ResourceReport {
  double classical_steps = 0.0;     ///< (M+3) n^2 binom(p + (n^2+n)/2, p)
  std::uint64_t max_terms = 0;      ///< sum_{k=1}^{2p} binom(n, k), saturating
  double dense_slots = 0.0;         ///< 2^n
  double brute_force_steps = 0.0;   ///< M n^2 2^n
};

ResourceReport resource_report(std::size_t n, int level, std::size_t objectives);

} // namespace moqa

#endif
