#ifndef MOQA_ORACLE_HPP
#define MOQA_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "moqa/expansion.hpp"
#include "moqa/qubo.hpp"

namespace moqa {

struct OracleOptions {
  int variable_cap = 24;   ///< refuse landscapes above 2^cap entries
  double tie_tol = 1e-9;   ///< absolute tolerance for energy ties
  double gap_tol = 1e-12;  ///< ground energy must exceed this for the gap ratio
  double shift_tol = 1e-9; ///< slack allowed when checking non-negativity
};

/// Full 2^n table of max_m h_m(b); entry index encodes b little-endian.
std::vector<double> landscape_max(const MultiObjectiveProblem& p,
                                  const OracleOptions& opts = {});

/// Full 2^n table of one objective.
std::vector<double> landscape_objective(const IsingObjective& o,
                                        const OracleOptions& opts = {});

/// Full 2^n table of a Pauli Hamiltonian, via a fast Walsh-Hadamard
/// transform of the coefficient vector.
std::vector<double> landscape_p(const SparsePauliHamiltonian& h,
                                const OracleOptions& opts = {});

/// sum_m h_m(b)^level pointwise; the value the expansion must reproduce.
std::vector<double> landscape_power_sum(const MultiObjectiveProblem& p, int level,
                                        const OracleOptions& opts = {});

struct SpectrumReport {
  double ground = 0.0;              ///< lambda_g
  double first_excited = 0.0;       ///< lambda_e, meaningful unless degenerate
  bool degenerate = false;          ///< no value above ground + tie_tol
  double gap_ratio = 0.0;           ///< r = (lambda_e - lambda_g) / lambda_g
  bool gap_ratio_defined = false;   ///< false when degenerate or ground <= gap_tol
  std::vector<std::uint64_t> argmin_set; ///< all b within tie_tol of ground
  /// Deterministic single minimizer: smallest index in argmin_set.
  std::uint64_t argmin() const { return argmin_set.front(); }
};

SpectrumReport spectrum(const std::vector<double>& landscape,
                        const OracleOptions& opts = {});

/// Index of the smallest landscape entry, ties broken by smallest index.
std::uint64_t argmin_index(const std::vector<double>& landscape);

/// Approximation level above which minima of the power sum and of the
/// max are guaranteed to align: log(M) / log(r + 1). Zero for M = 1.
/// Throws ValidationError for r <= 0.
double threshold_p(double gap_ratio, std::size_t objectives);

/// Gap ratio above which a given level p already guarantees alignment:
/// M^(1/p) - 1.
double threshold_gap_ratio(std::size_t objectives, int level);

struct SandwichReport {
  double max_lower_violation = 0.0; ///< max over b of M^{-1/p} h_(p)^{1/p} - h_max
  double max_upper_violation = 0.0; ///< max over b of h_max - h_(p)^{1/p}
  double max_violation = 0.0;
};

/// Pointwise check of M^{-1/p} h_(p)(b)^{1/p} <= h_max(b) <= h_(p)(b)^{1/p}
/// on the full landscape. Requires a shifted (non-negative) problem;
/// throws ValidationError if the landscape dips below -shift_tol.
SandwichReport check_sandwich(const MultiObjectiveProblem& p,
                              const SparsePauliHamiltonian& h,
                              const OracleOptions& opts = {});

struct GuaranteeReport {
  bool applicable = false;   ///< gap ratio defined and level >= threshold
  bool holds = false;        ///< h_max at the surrogate argmin equals ground
  double gap_ratio = 0.0;
  double threshold = 0.0;    ///< log(M)/log(r+1), NaN when r undefined
};

/// Checks the alignment guarantee on one instance: when the level clears
/// the threshold, the minimizer of the expanded power sum must attain the
/// ground value of h_max (within tie_tol).
GuaranteeReport guarantee_holds(const MultiObjectiveProblem& p, int level,
                                const OracleOptions& opts = {},
                                const ExpandOptions& expand_opts = {});

} // namespace moqa

#endif
