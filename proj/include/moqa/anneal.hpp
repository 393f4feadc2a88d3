#ifndef MOQA_ANNEAL_HPP
#define MOQA_ANNEAL_HPP

#include <cstdint>

#include "moqa/expansion.hpp"
#include "moqa/qubo.hpp"

namespace moqa {

struct AnnealSchedule {
  int sweeps = 5000;
  double t_start = 0.0;   ///< 0 picks the scale-aware default (max |C|)
  double t_end = 0.0;     ///< 0 picks 1e-3 * median |C|
  int restarts = 8;
  std::uint64_t seed = 1;
  unsigned threads = 1;   ///< restarts run in parallel with derived seeds

  void validate() const;
};

/// Schedule with the temperature defaults resolved against a Hamiltonian.
AnnealSchedule resolve_schedule(const SparsePauliHamiltonian& h,
                                AnnealSchedule sched = {});

/// Energy change of flipping spin i, from the terms containing i only:
/// delta = -2 * sum_{x: x_i = 1} C(x) * prod_{k in x} s_k.
double local_energy_delta(const SparsePauliHamiltonian& h, const SpinVector& s,
                          std::size_t i);

struct AnnealResult {
  SpinVector spins;
  double energy = 0.0;
  std::uint64_t accepted_moves = 0;
};

/// Metropolis annealing with geometric cooling and fixed-order sweeps.
/// Deterministic for a given seed; restarts use derived seeds and the
/// best energy wins (ties by smallest bitstring index).
AnnealResult anneal(const SparsePauliHamiltonian& h, AnnealSchedule sched = {});

} // namespace moqa

#endif
