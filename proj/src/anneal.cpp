#include "moqa/anneal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <vector>

#include "moqa/errors.hpp"
#include "moqa/rng.hpp"

namespace moqa {

void AnnealSchedule::validate() const {
  if (sweeps < 1) throw ValidationError("AnnealSchedule: sweeps must be >= 1");
  if (restarts < 1) throw ValidationError("AnnealSchedule: restarts must be >= 1");
  if (t_start < 0.0 || t_end < 0.0)
    throw ValidationError("AnnealSchedule: temperatures must be non-negative");
  if (t_start != 0.0 && t_end != 0.0 && t_start < t_end)
    throw ValidationError("AnnealSchedule: t_start must be >= t_end");
}

AnnealSchedule resolve_schedule(const SparsePauliHamiltonian& h, AnnealSchedule sched) {
  sched.validate();
  if (sched.t_start == 0.0 || sched.t_end == 0.0) {
    std::vector<double> mags;
    mags.reserve(h.term_count());
    for (const auto& t : h.terms())
      if (t.mask != 0) mags.push_back(std::abs(t.coefficient));
    double top = 1.0, median = 1.0;
    if (!mags.empty()) {
      top = *std::max_element(mags.begin(), mags.end());
      std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
      median = std::max(mags[mags.size() / 2], 1e-300);
    }
    if (sched.t_start == 0.0) sched.t_start = top;
    if (sched.t_end == 0.0) sched.t_end = std::min(1e-3 * median, sched.t_start);
  }
  sched.validate();
  return sched;
}

namespace {

// Terms grouped by incident variable, so a flip touches only its own terms.
struct Incidence {
  std::vector<std::vector<std::uint32_t>> by_variable;
};

Incidence build_incidence(const SparsePauliHamiltonian& h) {
  Incidence inc;
  inc.by_variable.assign(h.n(), {});
  const auto& terms = h.terms();
  for (std::uint32_t t = 0; t < terms.size(); ++t) {
    PauliMask m = terms[t].mask;
    while (m) {
      const int k = std::countr_zero(m);
      inc.by_variable[static_cast<std::size_t>(k)].push_back(t);
      m &= m - 1;
    }
  }
  return inc;
}

struct RunState {
  SpinVector spins;
  std::vector<double> term_value; // C(x) * prod_{k in x} s_k per term
  double energy = 0.0;
};

RunState initial_state(const SparsePauliHamiltonian& h, SplitMix64& rng) {
  RunState st;
  st.spins.resize(h.n());
  for (auto& s : st.spins) s = (rng.next_u64() & 1u) ? -1 : +1;
  const std::uint64_t neg = index_from_bits(bits_from_spins(st.spins));
  st.term_value.resize(h.term_count());
  for (std::size_t t = 0; t < h.term_count(); ++t) {
    const auto& term = h.terms()[t];
    st.term_value[t] = (std::popcount(term.mask & neg) & 1) ? -term.coefficient
                                                            : term.coefficient;
    st.energy += st.term_value[t];
  }
  return st;
}

AnnealResult run_single(const SparsePauliHamiltonian& h, const Incidence& inc,
                        const AnnealSchedule& sched, std::uint64_t seed) {
  SplitMix64 rng(seed);
  RunState st = initial_state(h, rng);
  AnnealResult best{st.spins, st.energy, 0};

  const double ratio = sched.t_end / sched.t_start;
  const double decay =
      sched.sweeps > 1 ? std::pow(ratio, 1.0 / (sched.sweeps - 1)) : 1.0;
  double temperature = sched.t_start;

  for (int sweep = 0; sweep < sched.sweeps; ++sweep) {
    for (std::size_t i = 0; i < h.n(); ++i) {
      double delta = 0.0;
      for (const std::uint32_t t : inc.by_variable[i]) delta -= 2.0 * st.term_value[t];
      const bool accept =
          delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature);
      if (!accept) continue;
      st.spins[i] = static_cast<std::int8_t>(-st.spins[i]);
      for (const std::uint32_t t : inc.by_variable[i]) st.term_value[t] = -st.term_value[t];
      st.energy += delta;
      ++best.accepted_moves;
      if (st.energy < best.energy) {
        best.energy = st.energy;
        best.spins = st.spins;
      }
    }
    temperature *= decay;
  }

  // Incremental bookkeeping must agree with a from-scratch evaluation.
  const double recomputed = h.evaluate(st.spins);
  const double scale = std::max({std::abs(recomputed), std::abs(st.energy), 1.0});
  if (std::abs(recomputed - st.energy) > 1e-8 * scale)
    throw NumericRangeError("anneal: incremental energy drifted by " +
                            std::to_string(recomputed - st.energy));
  return best;
}

} // namespace

double local_energy_delta(const SparsePauliHamiltonian& h, const SpinVector& s,
                          std::size_t i) {
  if (s.size() != h.n() || i >= h.n())
    throw ValidationError("local_energy_delta: index or dimension mismatch");
  const std::uint64_t neg = index_from_bits(bits_from_spins(s));
  const PauliMask bit = PauliMask{1} << i;
  double delta = 0.0;
  for (const auto& term : h.terms()) {
    if (!(term.mask & bit)) continue;
    const double value =
        (std::popcount(term.mask & neg) & 1) ? -term.coefficient : term.coefficient;
    delta -= 2.0 * value;
  }
  return delta;
}

AnnealResult anneal(const SparsePauliHamiltonian& h, AnnealSchedule sched) {
  sched = resolve_schedule(h, sched);
  if (h.n() == 0) throw ValidationError("anneal: empty Hamiltonian");
  const Incidence inc = build_incidence(h);

  std::vector<AnnealResult> results(static_cast<std::size_t>(sched.restarts));
  const unsigned workers =
      std::max(1u, std::min<unsigned>(sched.threads,
                                      static_cast<unsigned>(sched.restarts)));
  if (workers == 1) {
    for (int r = 0; r < sched.restarts; ++r)
      results[static_cast<std::size_t>(r)] =
          run_single(h, inc, sched, derive_stream(sched.seed, static_cast<std::uint64_t>(r)));
  } else {
    std::vector<std::future<AnnealResult>> futures;
    for (int r = 0; r < sched.restarts; ++r)
      futures.push_back(std::async(std::launch::async, [&, r]() {
        return run_single(h, inc, sched,
                          derive_stream(sched.seed, static_cast<std::uint64_t>(r)));
      }));
    for (int r = 0; r < sched.restarts; ++r)
      results[static_cast<std::size_t>(r)] = futures[static_cast<std::size_t>(r)].get();
  }

  // Best energy wins; exact ties go to the smallest bitstring index.
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    const bool better =
        results[r].energy < results[best].energy ||
        (results[r].energy == results[best].energy &&
         index_from_bits(bits_from_spins(results[r].spins)) <
             index_from_bits(bits_from_spins(results[best].spins)));
    if (better) best = r;
  }
  return results[best];
}

} // namespace moqa
