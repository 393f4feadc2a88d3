#ifndef MOQA_HARNESS_HPP
#define MOQA_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "moqa/expansion.hpp"
#include "moqa/generators.hpp"
#include "moqa/oracle.hpp"
#include "moqa/qubo.hpp"

namespace moqa {

struct ExperimentConfig {
  std::string study = "generic"; ///< generic | partition | constrained
  std::vector<int> n_list = {4, 8, 12};
  std::size_t objectives = 2;    ///< M (generic) or constraint count (constrained)
  std::vector<int> p_list = {1, 2, 3, 4, 5, 6};
  int samples = 500;             ///< N_s
  std::vector<double> gamma_list = {10.0, 40.0};
  std::uint64_t seed = 1;
  ShiftMode shift_mode = ShiftMode::spectral;
  std::string output_dir = ".";
  bool full_scale = false;       ///< paper-scale defaults; expect long runtimes
  unsigned threads = 0;          ///< 0 = hardware concurrency
  bool write_samples = true;     ///< also emit the per-sample table

  /// Samples route through the Pauli expansion while the allocation count
  /// stays under this; beyond it the surrogate landscape is evaluated
  /// directly as sum_m h_m^p (identical values, no coefficient build).
  double expansion_route_budget = 2e7;

  OracleOptions oracle;

  void validate() const;
  /// Desk-scale defaults swapped for the paper-scale grid.
  static ExperimentConfig full_scale_defaults();
};

/// One sample at one approximation level.
struct SamplePoint {
  double surrogate_value = 0.0; ///< h_max at the argmin of h_(p)
  int mismatch = 0;             ///< epsilon contribution
  double relative_error = 0.0;  ///< delta contribution
  bool relative_defined = true; ///< false when the ground energy is ~0
  bool premise = false;         ///< p >= log(M)/log(r+1)
  int violation = 0;            ///< nu contribution (constrained studies)
};

/// Per-sample data shared across levels.
struct SampleInfo {
  double ground = 0.0;
  double gap_ratio = 0.0;
  bool gap_defined = false;
  bool degenerate = false;
  double threshold = 0.0; ///< log(M)/log(r+1); NaN when gap undefined
  int resamples = 0;      ///< constrained generator rejections
};

struct MetricAggregate {
  double eps_mean = 0.0, eps_stderr = 0.0;
  double delta_mean = 0.0, delta_stderr = 0.0;
  double nu_mean = 0.0, nu_stderr = 0.0;
  int delta_excluded = 0; ///< samples without a defined relative error
  int premise_count = 0;  ///< samples meeting the threshold at this level
};

/// Results for one (study, n [, gamma]) configuration across all levels.
struct StudyCell {
  int n = 0;
  std::size_t objectives = 0; ///< M of the expanded problem
  double gamma = 0.0;         ///< 0 when not a constrained study
  bool constrained = false;
  std::vector<int> p_list;
  std::vector<SampleInfo> samples;
  std::vector<std::vector<SamplePoint>> points; ///< [p_index][sample]
  std::vector<MetricAggregate> aggregates;      ///< [p_index]
  std::string route;                            ///< expansion | direct | mixed
};

struct StudyReport {
  ExperimentConfig config;
  std::vector<StudyCell> cells;
};

StudyReport run_generic_study(const ExperimentConfig& cfg);
StudyReport run_partition_study(const ExperimentConfig& cfg);
StudyReport run_constrained_study(const ExperimentConfig& cfg);
/// Dispatch on cfg.study.
StudyReport run_study(const ExperimentConfig& cfg);

struct GapBin {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  double mean_eps = 0.0;
};

struct GapBinningTable {
  int level = 0;
  double r_star = 0.0; ///< M^(1/p) - 1; bins at or above must show eps 0
  std::vector<GapBin> bins;
  int undefined_excluded = 0;
};

/// Histogram of epsilon over the spectral gap ratio, one table per level.
std::vector<GapBinningTable> gap_binning(const StudyCell& cell,
                                         std::size_t bin_count = 20);

/// Fig-style landscape dump for one seeded generic instance: per-b curves
/// of each objective, their max, and the p-th roots of the surrogates,
/// plus argmin markers. Writes landscape.csv and argmins.csv.
void dump_landscapes(std::size_t n, std::size_t objectives,
                     const std::vector<int>& p_list, std::uint64_t seed,
                     ShiftMode mode, const std::string& output_dir);

/// Closed-form resource table over n: brute-force steps, expansion steps,
/// term bound, dense slots.
void dump_resources(const std::vector<int>& n_list, int level,
                    std::size_t objectives, std::ostream& out);

/// Write eps/delta/nu/gap-bin CSVs plus a manifest; returns written paths.
std::vector<std::string> write_study_outputs(const StudyReport& report);

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

} // namespace moqa

#endif
