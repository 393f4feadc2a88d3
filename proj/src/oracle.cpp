#include "moqa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moqa/errors.hpp"

namespace moqa {

namespace {

void check_cap(std::size_t n, const OracleOptions& opts, const char* who) {
  if (n > static_cast<std::size_t>(opts.variable_cap))
    throw BudgetError(std::string(who) + ": n = " + std::to_string(n) +
                      " exceeds the brute-force cap " +
                      std::to_string(opts.variable_cap));
}

// In-place Walsh-Hadamard transform: out[b] = sum_x in[x] * (-1)^popcount(b & x).
void walsh_hadamard(std::vector<double>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t block = 0; block < v.size(); block += len << 1)
      for (std::size_t k = block; k < block + len; ++k) {
        const double u = v[k];
        const double w = v[k + len];
        v[k] = u + w;
        v[k + len] = u - w;
      }
}

} // namespace

std::vector<double> landscape_objective(const IsingObjective& o,
                                        const OracleOptions& opts) {
  check_cap(o.n(), opts, "landscape_objective");
  const std::size_t n = o.n();
  std::vector<double> v(std::size_t{1} << n, 0.0);
  v[0] = o.shift();
  for (std::size_t i = 0; i < n; ++i) {
    v[std::size_t{1} << i] += o.field()[i];
    for (std::size_t j = i + 1; j < n; ++j)
      v[(std::size_t{1} << i) | (std::size_t{1} << j)] += o.pair_coefficient(i, j);
  }
  walsh_hadamard(v);
  return v;
}

std::vector<double> landscape_max(const MultiObjectiveProblem& p,
                                  const OracleOptions& opts) {
  p.validate();
  check_cap(p.n, opts, "landscape_max");
  std::vector<double> best = landscape_objective(p.objectives.front(), opts);
  for (std::size_t m = 1; m < p.objectives.size(); ++m) {
    const std::vector<double> cur = landscape_objective(p.objectives[m], opts);
    for (std::size_t b = 0; b < best.size(); ++b) best[b] = std::max(best[b], cur[b]);
  }
  return best;
}

std::vector<double> landscape_p(const SparsePauliHamiltonian& h,
                                const OracleOptions& opts) {
  check_cap(h.n(), opts, "landscape_p");
  std::vector<double> v(std::size_t{1} << h.n(), 0.0);
  for (const auto& t : h.terms()) v[t.mask] += t.coefficient;
  walsh_hadamard(v);
  return v;
}

std::vector<double> landscape_power_sum(const MultiObjectiveProblem& p, int level,
                                        const OracleOptions& opts) {
  p.validate();
  check_cap(p.n, opts, "landscape_power_sum");
  std::vector<double> total(std::size_t{1} << p.n, 0.0);
  for (const auto& o : p.objectives) {
    const std::vector<double> cur = landscape_objective(o, opts);
    for (std::size_t b = 0; b < total.size(); ++b)
      total[b] += std::pow(cur[b], level);
  }
  return total;
}

SpectrumReport spectrum(const std::vector<double>& landscape,
                        const OracleOptions& opts) {
  if (landscape.empty()) throw ValidationError("spectrum: empty landscape");
  SpectrumReport rep;
  rep.ground = *std::min_element(landscape.begin(), landscape.end());
  rep.first_excited = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < landscape.size(); ++b) {
    if (landscape[b] <= rep.ground + opts.tie_tol)
      rep.argmin_set.push_back(b);
    else
      rep.first_excited = std::min(rep.first_excited, landscape[b]);
  }
  rep.degenerate = !std::isfinite(rep.first_excited);
  if (!rep.degenerate && rep.ground > opts.gap_tol) {
    rep.gap_ratio = (rep.first_excited - rep.ground) / rep.ground;
    rep.gap_ratio_defined = true;
  }
  return rep;
}

std::uint64_t argmin_index(const std::vector<double>& landscape) {
  if (landscape.empty()) throw ValidationError("argmin_index: empty landscape");
  std::size_t best = 0;
  for (std::size_t b = 1; b < landscape.size(); ++b)
    if (landscape[b] < landscape[best]) best = b;
  return best;
}

double threshold_p(double gap_ratio, std::size_t objectives) {
  if (objectives < 1) throw ValidationError("threshold_p: objectives must be >= 1");
  if (objectives == 1) return 0.0;
  if (gap_ratio <= 0.0)
    throw ValidationError("threshold_p: gap ratio must be positive");
  return std::log(static_cast<double>(objectives)) / std::log(gap_ratio + 1.0);
}

double threshold_gap_ratio(std::size_t objectives, int level) {
  if (objectives < 1 || level < 1)
    throw ValidationError("threshold_gap_ratio: objectives and level must be >= 1");
  return std::pow(static_cast<double>(objectives), 1.0 / level) - 1.0;
}

SandwichReport check_sandwich(const MultiObjectiveProblem& p,
                              const SparsePauliHamiltonian& h,
                              const OracleOptions& opts) {
  const std::vector<double> hmax = landscape_max(p, opts);
  const double low = *std::min_element(hmax.begin(), hmax.end());
  if (low < -opts.shift_tol)
    throw ValidationError("check_sandwich: landscape is negative (min " +
                          std::to_string(low) + "); apply a positivity shift first");
  const std::vector<double> hp = landscape_p(h, opts);
  const double inv_p = 1.0 / h.level();
  const double lower_scale =
      std::pow(static_cast<double>(p.objectives.size()), -inv_p);
  SandwichReport rep;
  for (std::size_t b = 0; b < hmax.size(); ++b) {
    const double root = std::pow(std::max(hp[b], 0.0), inv_p);
    rep.max_lower_violation =
        std::max(rep.max_lower_violation, lower_scale * root - hmax[b]);
    rep.max_upper_violation =
        std::max(rep.max_upper_violation, hmax[b] - root);
  }
  rep.max_violation = std::max(rep.max_lower_violation, rep.max_upper_violation);
  return rep;
}

GuaranteeReport guarantee_holds(const MultiObjectiveProblem& p, int level,
                                const OracleOptions& opts,
                                const ExpandOptions& expand_opts) {
  GuaranteeReport rep;
  const std::vector<double> hmax = landscape_max(p, opts);
  const SpectrumReport spec = spectrum(hmax, opts);
  if (!spec.gap_ratio_defined) {
    rep.threshold = std::numeric_limits<double>::quiet_NaN();
    return rep; // degenerate or zero ground energy: premise not applicable
  }
  rep.gap_ratio = spec.gap_ratio;
  rep.threshold = threshold_p(spec.gap_ratio, p.objectives.size());
  if (level < rep.threshold) return rep;
  rep.applicable = true;
  const SparsePauliHamiltonian h = expand_sparse(p, level, expand_opts);
  const std::uint64_t surrogate_argmin = argmin_index(landscape_p(h, opts));
  rep.holds = std::abs(hmax[surrogate_argmin] - spec.ground) <= opts.tie_tol;
  return rep;
}

} // namespace moqa
