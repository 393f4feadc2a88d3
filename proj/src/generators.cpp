#include "moqa/generators.hpp"

#include <cmath>
#include <string>

#include "moqa/errors.hpp"
#include "moqa/rng.hpp"

namespace moqa {

PartitionGraph::PartitionGraph(Matrix w, std::vector<double> v)
    : n(w.size()), weights(std::move(w)), vertex_weights(std::move(v)) {
  if (n == 0) throw ValidationError("PartitionGraph: n must be >= 1");
  if (!weights.is_symmetric(0.0))
    throw ValidationError("PartitionGraph: weight matrix is not symmetric");
  if (vertex_weights.size() != n)
    throw ValidationError("PartitionGraph: vertex weight length mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (weights(i, i) != 0.0)
      throw ValidationError("PartitionGraph: diagonal weights must be zero");
}

double LinearConstraint::evaluate(const BitVector& b) const {
  if (b.size() != g.size())
    throw ValidationError("LinearConstraint::evaluate: dimension mismatch");
  double value = g0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (b[i]) value += g[i];
  return value;
}

bool ConstrainedProblem::feasible(const BitVector& b) const {
  for (const auto& c : constraints)
    if (!c.satisfied(b)) return false;
  return true;
}

bool ConstrainedProblem::has_feasible_point() const {
  const std::size_t n = base.n();
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx)
    if (feasible(bits_from_index(idx, n))) return true;
  return false;
}

MultiObjectiveProblem random_multiobjective(std::size_t n, std::size_t objectives,
                                            std::uint64_t seed) {
  if (n < 1 || objectives < 1)
    throw ValidationError("random_multiobjective: n and objectives must be >= 1");
  MultiObjectiveProblem p;
  p.n = n;
  for (std::size_t m = 0; m < objectives; ++m) {
    SplitMix64 rng(derive_stream(seed, m));
    Matrix coupling(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double w = rng.gaussian();
        coupling(i, j) = w;
        coupling(j, i) = w;
      }
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = rng.gaussian();
    p.objectives.emplace_back(std::move(coupling), std::move(field), 0.0);
  }
  p.metadata["generator"] = "generic";
  p.metadata["seed"] = std::to_string(seed);
  return p;
}

MultiObjectiveProblem partition_problem(const PartitionGraph& g) {
  const std::size_t n = g.n;
  Matrix coupling(n, 0.0);
  std::vector<double> field(n, 0.0);
  double ones_w_ones = 0.0, ones_v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      coupling(i, j) = g.weights(i, j) / 4.0;
      row += g.weights(i, j);
      ones_w_ones += g.weights(i, j);
    }
    field[i] = (row + g.vertex_weights[i]) / 2.0;
    ones_v += g.vertex_weights[i];
  }
  const double alpha = (ones_w_ones + 2.0 * ones_v) / 4.0;

  std::vector<double> minus_field(n);
  for (std::size_t i = 0; i < n; ++i) minus_field[i] = -field[i];

  MultiObjectiveProblem p;
  p.n = n;
  p.objectives.emplace_back(coupling, field, alpha);        // T_+
  p.objectives.emplace_back(coupling, minus_field, alpha);  // T_-
  p.metadata["generator"] = "partition";
  return p;
}

MultiObjectiveProblem spp_problem(const std::vector<double>& v) {
  if (v.empty()) throw ValidationError("spp_problem: empty weight vector");
  for (const double x : v)
    if (!(x > 0.0))
      throw ValidationError("spp_problem: all weights must be positive");
  const std::size_t n = v.size();
  Matrix zero(n, 0.0);
  std::vector<double> minus(n);
  for (std::size_t i = 0; i < n; ++i) minus[i] = -v[i];
  MultiObjectiveProblem p;
  p.n = n;
  p.objectives.emplace_back(zero, v, 0.0);
  p.objectives.emplace_back(zero, minus, 0.0);
  p.metadata["generator"] = "spp";
  return p;
}

double partition_cut_cost(const PartitionGraph& g, const SpinVector& s) {
  if (s.size() != g.n)
    throw ValidationError("partition_cut_cost: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (s[i] > 0) continue; // i in S
    total += g.vertex_weights[i];
    for (std::size_t j = 0; j < g.n; ++j)
      if (s[j] < 0) total += g.weights(i, j);
  }
  return total;
}

MultiObjectiveProblem constrained_to_multiobjective(const ConstrainedProblem& c) {
  if (!(c.gamma > 0.0))
    throw ValidationError("constrained_to_multiobjective: gamma must be positive");
  const std::size_t n = c.base.n();
  MultiObjectiveProblem p;
  p.n = n;
  p.objectives.push_back(c.base);
  for (const auto& constraint : c.constraints) {
    if (constraint.g.size() != n)
      throw ValidationError("constrained_to_multiobjective: constraint length mismatch");
    // g(b) = g^T b + g0 with b = (1 - s)/2 becomes
    // (sum g)/2 + g0 - (g/2)^T s, so h - gamma*g adds gamma*g/2 to the
    // field and subtracts gamma*((sum g)/2 + g0) from the shift.
    std::vector<double> field = c.base.field();
    double g_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      field[i] += c.gamma * constraint.g[i] / 2.0;
      g_sum += constraint.g[i];
    }
    const double shift = c.base.shift() - c.gamma * (g_sum / 2.0 + constraint.g0);
    p.objectives.emplace_back(c.base.coupling(), std::move(field), shift);
  }
  p.metadata["generator"] = "constrained";
  p.metadata["gamma"] = std::to_string(c.gamma);
  return p;
}

PartitionGraph random_partition_graph(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_partition_graph: n must be >= 1");
  SplitMix64 rng(seed);
  Matrix w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double weight = std::abs(rng.gaussian());
      w(i, j) = weight;
      w(j, i) = weight;
    }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::abs(rng.gaussian());
  return PartitionGraph(std::move(w), std::move(v));
}

RandomConstrainedResult random_constrained(std::size_t n, std::size_t constraints,
                                           double gamma, std::uint64_t seed,
                                           int max_attempts) {
  if (n < 1) throw ValidationError("random_constrained: n must be >= 1");
  RandomConstrainedResult out;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(attempt)));
    Matrix coupling(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double w = rng.gaussian();
        coupling(i, j) = w;
        coupling(j, i) = w;
      }
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) field[i] = rng.gaussian();

    ConstrainedProblem problem;
    problem.base = IsingObjective(std::move(coupling), std::move(field), 0.0);
    problem.gamma = gamma;
    for (std::size_t m = 0; m < constraints; ++m) {
      LinearConstraint c;
      c.g.resize(n);
      for (std::size_t i = 0; i < n; ++i) c.g[i] = rng.gaussian();
      c.g0 = rng.gaussian();
      problem.constraints.push_back(std::move(c));
    }
    if (problem.has_feasible_point()) {
      out.problem = std::move(problem);
      out.resamples = attempt;
      return out;
    }
  }
  throw BudgetError("random_constrained: no feasible instance after " +
                    std::to_string(max_attempts) + " attempts");
}

} // namespace moqa
