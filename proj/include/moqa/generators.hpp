#ifndef MOQA_GENERATORS_HPP
#define MOQA_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "moqa/qubo.hpp"

namespace moqa {

/// Weighted undirected graph for partitioning tasks: edge weights W
/// (symmetric, zero diagonal) and vertex weights v.
struct PartitionGraph {
  std::size_t n = 0;
  Matrix weights;
  std::vector<double> vertex_weights;

  PartitionGraph() = default;
  PartitionGraph(Matrix w, std::vector<double> v);
};

/// Linear inequality constraint on bits: g(b) = g^T b + g0 >= 0.
struct LinearConstraint {
  std::vector<double> g;
  double g0 = 0.0;

  double evaluate(const BitVector& b) const;
  bool satisfied(const BitVector& b) const { return evaluate(b) >= 0.0; }
};

/// Objective plus inequality constraints and the penalty strength used to
/// regularize them away.
struct ConstrainedProblem {
  IsingObjective base;
  std::vector<LinearConstraint> constraints;
  double gamma = 0.0;

  bool feasible(const BitVector& b) const;
  /// True if some bitstring satisfies every constraint (brute force).
  bool has_feasible_point() const;
};

/// M objectives with all couplings and fields drawn i.i.d. standard
/// normal (shifts start at zero). Deterministic per seed; objective m
/// draws from substream m of the seed.
MultiObjectiveProblem random_multiobjective(std::size_t n, std::size_t objectives,
                                            std::uint64_t seed);

/// The two partition cost functions T_+/T_- of a weighted graph as a
/// +/- field pair: A = W/4, a = (W 1 + v)/2, alpha = (1^T W 1 + 2 1^T v)/4,
/// with T_- carrying -a. max{T_+, T_-} over sign vectors is the
/// partitioning objective.
MultiObjectiveProblem partition_problem(const PartitionGraph& g);

/// Number-partitioning special case (no edges): the pair +/- v^T s, so
/// the maximum is |v^T s|. Entries must be positive.
MultiObjectiveProblem spp_problem(const std::vector<double>& v);

/// Set-sum value of a cut for a partition graph: sum of edge weights with
/// both endpoints outside S plus vertex weights outside S, where s_i=+1
/// means i in S. Test oracle for partition_problem.
double partition_cut_cost(const PartitionGraph& g, const SpinVector& s);

/// Penalty regularization of the constrained problem into a maximum of
/// (M+1) unconstrained objectives: h and h - gamma * g_m for each m, all
/// in spin form.
MultiObjectiveProblem constrained_to_multiobjective(const ConstrainedProblem& c);

/// Random graph for partition studies: |N(0,1)| edge and vertex weights.
PartitionGraph random_partition_graph(std::size_t n, std::uint64_t seed);

/// Random constrained instance: standard-normal base objective (spin
/// form) and constraint coefficients. Infeasible draws are rejected and
/// redrawn (brute-force check), up to `max_attempts`.
struct RandomConstrainedResult {
  ConstrainedProblem problem;
  int resamples = 0;
};
RandomConstrainedResult random_constrained(std::size_t n, std::size_t constraints,
                                           double gamma, std::uint64_t seed,
                                           int max_attempts = 100);

} // namespace moqa

#endif
