#include "moqa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "moqa/errors.hpp"
#include "moqa/io.hpp"
#include "moqa/rng.hpp"
#include "moqa/version.hpp"

namespace moqa {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (study != "generic" && study != "partition" && study != "constrained")
    throw ValidationError("unknown study '" + study + "'");
  if (samples < 1) throw ValidationError("samples must be >= 1");
  if (n_list.empty()) throw ValidationError("n list must not be empty");
  for (const int n : n_list) {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (n > oracle.variable_cap)
      throw ValidationError("n = " + std::to_string(n) +
                            " exceeds the brute-force cap " +
                            std::to_string(oracle.variable_cap) +
                            " required for metric studies");
  }
  if (p_list.empty()) throw ValidationError("p list must not be empty");
  for (const int p : p_list)
    if (p < 1) throw ValidationError("p must be >= 1");
  if (objectives < 1 && study != "constrained")
    throw ValidationError("objective count must be >= 1");
  if (study == "constrained")
    for (const double g : gamma_list)
      if (!(g > 0.0)) throw ValidationError("gamma must be positive");
}

ExperimentConfig ExperimentConfig::full_scale_defaults() {
  ExperimentConfig cfg;
  cfg.n_list = {4, 8, 12, 16, 20};
  cfg.samples = 10000;
  cfg.p_list.clear();
  for (int p = 1; p <= 12; ++p) cfg.p_list.push_back(p);
  cfg.full_scale = true;
  return cfg;
}

namespace {

void for_each_sample(int count, unsigned threads,
                     const std::function<void(int)>& body) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t argmin_tied(const std::vector<double>& landscape, double tie_tol) {
  double low = landscape[0];
  for (const double v : landscape) low = std::min(low, v);
  for (std::size_t b = 0; b < landscape.size(); ++b)
    if (landscape[b] <= low + tie_tol) return b;
  return 0;
}

struct SampleTask {
  MultiObjectiveProblem problem; // unshifted
  std::vector<LinearConstraint> constraints;
  int resamples = 0;
  bool symmetry_pair = false;
};

struct SampleResult {
  SampleInfo info;
  std::vector<SamplePoint> points;
};

SampleResult evaluate_sample(const SampleTask& task, const std::vector<int>& p_list,
                             const ExperimentConfig& cfg) {
  SampleResult out;
  out.info.resamples = task.resamples;

  const double c = compute_shift(task.problem, cfg.shift_mode,
                                 {.exact_cap = cfg.oracle.variable_cap});
  const MultiObjectiveProblem shifted = apply_shift(task.problem, c);
  const std::size_t m_count = shifted.objectives.size();

  const std::vector<double> hmax = landscape_max(shifted, cfg.oracle);
  const SpectrumReport spec = spectrum(hmax, cfg.oracle);
  out.info.ground = spec.ground;
  out.info.gap_ratio = spec.gap_ratio;
  out.info.gap_defined = spec.gap_ratio_defined;
  out.info.degenerate = spec.degenerate;
  out.info.threshold = spec.gap_ratio_defined
                           ? threshold_p(spec.gap_ratio, m_count)
                           : std::numeric_limits<double>::quiet_NaN();

  ExpandOptions expand_opts;
  expand_opts.allocation_budget = cfg.expansion_route_budget;

  out.points.reserve(p_list.size());
  for (const int p : p_list) {
    SamplePoint pt;
    std::vector<double> hp;
    if (allocation_count(shifted.n, p) <= cfg.expansion_route_budget) {
      const SparsePauliHamiltonian h =
          task.symmetry_pair ? symmetry_reduced_expand(shifted, p, expand_opts)
                             : expand_sparse(shifted, p, expand_opts);
      hp = landscape_p(h, cfg.oracle);
    } else {
      hp = landscape_power_sum(shifted, p, cfg.oracle);
    }
    const std::uint64_t surrogate_argmin = argmin_tied(hp, cfg.oracle.tie_tol);
    pt.surrogate_value = hmax[surrogate_argmin];
    pt.mismatch =
        std::abs(pt.surrogate_value - spec.ground) > cfg.oracle.tie_tol ? 1 : 0;
    if (spec.ground > cfg.oracle.gap_tol) {
      pt.relative_error = (pt.surrogate_value - spec.ground) / spec.ground;
    } else {
      pt.relative_defined = false;
    }
    pt.premise = out.info.gap_defined && p >= out.info.threshold;
    if (!task.constraints.empty()) {
      const BitVector bits = bits_from_index(surrogate_argmin, shifted.n);
      for (const auto& constraint : task.constraints)
        if (!constraint.satisfied(bits)) {
          pt.violation = 1;
          break;
        }
    }
    out.points.push_back(pt);
  }
  return out;
}

MetricAggregate aggregate_points(const std::vector<SamplePoint>& pts) {
  MetricAggregate agg;
  const auto mean_stderr = [](const std::vector<double>& xs, double& mean,
                              double& stderr_out) {
    mean = 0.0;
    stderr_out = 0.0;
    if (xs.empty()) return;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return;
    double ss = 0.0;
    for (const double x : xs) ss += (x - mean) * (x - mean);
    stderr_out = std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
                 std::sqrt(static_cast<double>(xs.size()));
  };
  std::vector<double> eps, delta, nu;
  for (const auto& pt : pts) {
    eps.push_back(pt.mismatch);
    nu.push_back(pt.violation);
    if (pt.relative_defined)
      delta.push_back(pt.relative_error);
    else
      ++agg.delta_excluded;
    if (pt.premise) ++agg.premise_count;
  }
  mean_stderr(eps, agg.eps_mean, agg.eps_stderr);
  mean_stderr(delta, agg.delta_mean, agg.delta_stderr);
  mean_stderr(nu, agg.nu_mean, agg.nu_stderr);
  return agg;
}

std::vector<int> effective_p_list(const ExperimentConfig& cfg, int n) {
  if (!cfg.full_scale) return cfg.p_list;
  std::vector<int> out;
  for (const int p : cfg.p_list)
    if (p <= n) out.push_back(p);
  if (out.empty()) out.push_back(1);
  return out;
}

std::string route_label(const ExperimentConfig& cfg, int n,
                        const std::vector<int>& p_list) {
  bool any_expansion = false, any_direct = false;
  for (const int p : p_list)
    (allocation_count(static_cast<std::size_t>(n), p) <= cfg.expansion_route_budget
         ? any_expansion
         : any_direct) = true;
  if (any_expansion && any_direct) return "mixed";
  return any_direct ? "direct" : "expansion";
}

StudyCell run_cell(const ExperimentConfig& cfg, int n, double gamma,
                   bool constrained,
                   const std::function<SampleTask(int)>& make_task) {
  StudyCell cell;
  cell.n = n;
  cell.gamma = gamma;
  cell.constrained = constrained;
  cell.p_list = effective_p_list(cfg, n);
  cell.route = route_label(cfg, n, cell.p_list);

  std::vector<SampleResult> results(static_cast<std::size_t>(cfg.samples));
  for_each_sample(cfg.samples, cfg.threads, [&](int i) {
    results[static_cast<std::size_t>(i)] =
        evaluate_sample(make_task(i), cell.p_list, cfg);
  });

  cell.samples.reserve(results.size());
  cell.points.assign(cell.p_list.size(), {});
  for (auto& per_p : cell.points) per_p.reserve(results.size());
  for (const auto& res : results) {
    cell.samples.push_back(res.info);
    for (std::size_t pi = 0; pi < cell.p_list.size(); ++pi)
      cell.points[pi].push_back(res.points[pi]);
  }
  for (const auto& per_p : cell.points)
    cell.aggregates.push_back(aggregate_points(per_p));
  return cell;
}

} // namespace

StudyReport run_generic_study(const ExperimentConfig& cfg) {
  cfg.validate();
  StudyReport report;
  report.config = cfg;
  for (const int n : cfg.n_list) {
    const std::uint64_t root = derive_stream(cfg.seed, static_cast<std::uint64_t>(n));
    StudyCell cell = run_cell(cfg, n, 0.0, false, [&](int i) {
      SampleTask task;
      task.problem = random_multiobjective(static_cast<std::size_t>(n), cfg.objectives,
                                           derive_stream(root, static_cast<std::uint64_t>(i)));
      return task;
    });
    cell.objectives = cfg.objectives;
    report.cells.push_back(std::move(cell));
  }
  return report;
}

StudyReport run_partition_study(const ExperimentConfig& cfg) {
  cfg.validate();
  StudyReport report;
  report.config = cfg;
  for (const int n : cfg.n_list) {
    const std::uint64_t root = derive_stream(cfg.seed, static_cast<std::uint64_t>(n));
    StudyCell cell = run_cell(cfg, n, 0.0, false, [&](int i) {
      SampleTask task;
      task.problem = partition_problem(random_partition_graph(
          static_cast<std::size_t>(n), derive_stream(root, static_cast<std::uint64_t>(i))));
      task.symmetry_pair = true;
      return task;
    });
    cell.objectives = 2;
    report.cells.push_back(std::move(cell));
  }
  return report;
}

StudyReport run_constrained_study(const ExperimentConfig& cfg) {
  cfg.validate();
  StudyReport report;
  report.config = cfg;
  for (const int n : cfg.n_list) {
    // Instance seeds depend on (n, sample) only, so gamma values sweep a
    // paired batch of identical problems.
    const std::uint64_t root = derive_stream(cfg.seed, static_cast<std::uint64_t>(n));
    for (const double gamma : cfg.gamma_list) {
      StudyCell cell = run_cell(cfg, n, gamma, true, [&](int i) {
        const RandomConstrainedResult rc = random_constrained(
            static_cast<std::size_t>(n), cfg.objectives, gamma,
            derive_stream(root, static_cast<std::uint64_t>(i)));
        SampleTask task;
        task.problem = constrained_to_multiobjective(rc.problem);
        task.constraints = rc.problem.constraints;
        task.resamples = rc.resamples;
        return task;
      });
      cell.objectives = cfg.objectives + 1;
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

StudyReport run_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.study == "generic") return run_generic_study(cfg);
  if (cfg.study == "partition") return run_partition_study(cfg);
  return run_constrained_study(cfg);
}

std::vector<GapBinningTable> gap_binning(const StudyCell& cell,
                                         std::size_t bin_count) {
  if (bin_count < 1) throw ValidationError("gap_binning: bin_count must be >= 1");
  std::vector<GapBinningTable> tables;
  for (std::size_t pi = 0; pi < cell.p_list.size(); ++pi) {
    GapBinningTable table;
    table.level = cell.p_list[pi];
    table.r_star = threshold_gap_ratio(cell.objectives, table.level);

    std::vector<std::pair<double, int>> data; // (r, eps)
    for (std::size_t i = 0; i < cell.samples.size(); ++i) {
      if (!cell.samples[i].gap_defined) {
        ++table.undefined_excluded;
        continue;
      }
      data.emplace_back(cell.samples[i].gap_ratio, cell.points[pi][i].mismatch);
    }
    if (!data.empty()) {
      double lo = data.front().first, hi = lo;
      for (const auto& [r, eps] : data) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      if (hi <= lo) hi = lo + 1e-12;
      const double width = (hi - lo) / static_cast<double>(bin_count);
      table.bins.resize(bin_count);
      for (std::size_t b = 0; b < bin_count; ++b) {
        table.bins[b].lo = lo + width * static_cast<double>(b);
        table.bins[b].hi = table.bins[b].lo + width;
      }
      std::vector<int> hits(bin_count, 0);
      for (const auto& [r, eps] : data) {
        std::size_t b = static_cast<std::size_t>((r - lo) / width);
        if (b >= bin_count) b = bin_count - 1;
        ++hits[b];
        table.bins[b].mean_eps += eps;
      }
      for (std::size_t b = 0; b < bin_count; ++b) {
        table.bins[b].count = hits[b];
        if (hits[b] > 0) table.bins[b].mean_eps /= hits[b];
      }
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

void dump_landscapes(std::size_t n, std::size_t objectives,
                     const std::vector<int>& p_list, std::uint64_t seed,
                     ShiftMode mode, const std::string& output_dir) {
  ExperimentConfig cfg; // only used for the routing budget and oracle caps
  const MultiObjectiveProblem problem = random_multiobjective(n, objectives, seed);
  const double c = compute_shift(problem, mode, {.exact_cap = cfg.oracle.variable_cap});
  const MultiObjectiveProblem shifted = apply_shift(problem, c);

  std::vector<std::vector<double>> objective_curves;
  for (const auto& o : shifted.objectives)
    objective_curves.push_back(landscape_objective(o, cfg.oracle));
  const std::vector<double> hmax = landscape_max(shifted, cfg.oracle);

  std::vector<std::vector<double>> roots;
  for (const int p : p_list) {
    std::vector<double> hp;
    if (allocation_count(n, p) <= cfg.expansion_route_budget)
      hp = landscape_p(expand_sparse(shifted, p), cfg.oracle);
    else
      hp = landscape_power_sum(shifted, p, cfg.oracle);
    for (double& v : hp) v = std::pow(std::max(v, 0.0), 1.0 / p);
    roots.push_back(std::move(hp));
  }

  std::filesystem::create_directories(output_dir);
  const auto bits_of = [n](std::size_t b) {
    std::string bits(n, '0');
    for (std::size_t k = 0; k < n; ++k)
      if ((b >> k) & 1u) bits[k] = '1';
    return bits;
  };

  std::ofstream table(std::filesystem::path(output_dir) / "landscape.csv");
  table << std::setprecision(17) << "index,bits,h_max";
  for (std::size_t m = 0; m < objective_curves.size(); ++m) table << ",h_" << (m + 1);
  for (const int p : p_list) table << ",hp_root_p" << p;
  table << "\n";
  for (std::size_t b = 0; b < hmax.size(); ++b) {
    table << b << "," << bits_of(b) << "," << hmax[b];
    for (const auto& curve : objective_curves) table << "," << curve[b];
    for (const auto& curve : roots) table << "," << curve[b];
    table << "\n";
  }

  std::ofstream markers(std::filesystem::path(output_dir) / "argmins.csv");
  markers << std::setprecision(17) << "curve,index,value\n";
  const std::uint64_t bmax = argmin_index(hmax);
  markers << "h_max," << bmax << "," << hmax[bmax] << "\n";
  for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
    const std::uint64_t b = argmin_index(roots[pi]);
    markers << "hp_root_p" << p_list[pi] << "," << b << "," << roots[pi][b] << "\n";
  }
}

void dump_resources(const std::vector<int>& n_list, int level,
                    std::size_t objectives, std::ostream& out) {
  out << "n,brute_force_steps,classical_steps,max_terms,dense_slots\n"
      << std::setprecision(17);
  for (const int n : n_list) {
    const ResourceReport r =
        resource_report(static_cast<std::size_t>(n), level, objectives);
    out << n << "," << r.brute_force_steps << "," << r.classical_steps << ","
        << r.max_terms << "," << r.dense_slots << "\n";
  }
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace

std::vector<std::string> write_study_outputs(const StudyReport& report) {
  const auto& cfg = report.config;
  std::filesystem::create_directories(cfg.output_dir);
  std::vector<std::string> written;
  const auto open = [&](const std::string& name) {
    const auto path = std::filesystem::path(cfg.output_dir) / name;
    written.push_back(path.string());
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path.string());
    out << std::setprecision(12);
    return out;
  };

  {
    auto out = open(cfg.study + "_metrics.csv");
    out << "study,n,M,gamma,p,metric,value,stderr,samples,excluded\n";
    for (const auto& cell : report.cells)
      for (std::size_t pi = 0; pi < cell.p_list.size(); ++pi) {
        const auto& agg = cell.aggregates[pi];
        const auto row = [&](const char* metric, double value, double se,
                             int excluded) {
          out << cfg.study << "," << cell.n << "," << cell.objectives << ","
              << cell.gamma << "," << cell.p_list[pi] << "," << metric << ","
              << value << "," << se << "," << cell.samples.size() << ","
              << excluded << "\n";
        };
        row("eps", agg.eps_mean, agg.eps_stderr, 0);
        row("delta", agg.delta_mean, agg.delta_stderr, agg.delta_excluded);
        if (cell.constrained) row("nu", agg.nu_mean, agg.nu_stderr, 0);
      }
  }

  {
    auto out = open(cfg.study + "_gap_bins.csv");
    out << "study,n,M,gamma,p,r_star,bin_lo,bin_hi,count,mean_eps,excluded\n";
    for (const auto& cell : report.cells)
      for (const auto& table : gap_binning(cell))
        for (const auto& bin : table.bins)
          out << cfg.study << "," << cell.n << "," << cell.objectives << ","
              << cell.gamma << "," << table.level << "," << table.r_star << ","
              << bin.lo << "," << bin.hi << "," << bin.count << "," << bin.mean_eps
              << "," << table.undefined_excluded << "\n";
  }

  if (cfg.write_samples) {
    auto out = open(cfg.study + "_samples.csv");
    out << "study,n,M,gamma,p,sample,r,r_defined,ground,threshold,premise,eps,"
           "delta,delta_defined,violation,resamples\n";
    for (const auto& cell : report.cells)
      for (std::size_t pi = 0; pi < cell.p_list.size(); ++pi)
        for (std::size_t i = 0; i < cell.samples.size(); ++i) {
          const auto& info = cell.samples[i];
          const auto& pt = cell.points[pi][i];
          out << cfg.study << "," << cell.n << "," << cell.objectives << ","
              << cell.gamma << "," << cell.p_list[pi] << "," << i << ","
              << info.gap_ratio << "," << info.gap_defined << "," << info.ground
              << "," << info.threshold << "," << pt.premise << "," << pt.mismatch
              << "," << pt.relative_error << "," << pt.relative_defined << ","
              << pt.violation << "," << info.resamples << "\n";
        }
  }

  {
    const std::string cfg_json = config_to_json(cfg);
    json manifest;
    manifest["config"] = json::parse(cfg_json);
    manifest["config_hash"] = fnv1a(cfg_json);
    manifest["version"] = kVersion;
    manifest["cells"] = json::array();
    for (const auto& cell : report.cells)
      manifest["cells"].push_back({{"n", cell.n},
                                   {"M", cell.objectives},
                                   {"gamma", cell.gamma},
                                   {"route", cell.route}});
    auto out = open(cfg.study + "_manifest.json");
    out << manifest.dump(2) << "\n";
  }

  return written;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["study"] = cfg.study;
  doc["n"] = cfg.n_list;
  doc["m"] = cfg.objectives;
  doc["p"] = cfg.p_list;
  doc["ns"] = cfg.samples;
  doc["gamma"] = cfg.gamma_list;
  doc["seed"] = cfg.seed;
  doc["shift"] = to_string(cfg.shift_mode);
  doc["out"] = cfg.output_dir;
  doc["full_scale"] = cfg.full_scale;
  doc["threads"] = cfg.threads;
  doc["write_samples"] = cfg.write_samples;
  doc["expansion_route_budget"] = cfg.expansion_route_budget;
  return doc.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ValidationError("invalid JSON in config");
  ExperimentConfig cfg;
  try {
    if (doc.value("full_scale", false)) cfg = ExperimentConfig::full_scale_defaults();
    cfg.study = doc.value("study", cfg.study);
    if (doc.contains("n")) cfg.n_list = doc.at("n").get<std::vector<int>>();
    cfg.objectives = doc.value("m", cfg.objectives);
    if (doc.contains("p")) cfg.p_list = doc.at("p").get<std::vector<int>>();
    cfg.samples = doc.value("ns", cfg.samples);
    if (doc.contains("gamma"))
      cfg.gamma_list = doc.at("gamma").get<std::vector<double>>();
    cfg.seed = doc.value("seed", cfg.seed);
    if (doc.contains("shift"))
      cfg.shift_mode = shift_mode_from_string(doc.at("shift").get<std::string>());
    cfg.output_dir = doc.value("out", cfg.output_dir);
    cfg.threads = doc.value("threads", cfg.threads);
    cfg.write_samples = doc.value("write_samples", cfg.write_samples);
    cfg.expansion_route_budget =
        doc.value("expansion_route_budget", cfg.expansion_route_budget);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

} // namespace moqa
