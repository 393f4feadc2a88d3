#include "moqa/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <sstream>
#include <unordered_map>

#include "moqa/errors.hpp"

namespace moqa {

namespace {

constexpr int kFactorial128Cap = 33; // 33! still fits in unsigned __int128

unsigned __int128 factorial128(int k) {
  unsigned __int128 f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<unsigned>(i);
  return f;
}

// p! / prod(v_i!), exact in 128-bit integers for p <= 33, log-space above.
double multinomial_weight(int p, const Allocation& parts) {
  if (p <= kFactorial128Cap) {
    unsigned __int128 f = factorial128(p);
    for (const auto& part : parts) f /= factorial128(static_cast<int>(part.power));
    return static_cast<double>(f);
  }
  double lg = std::lgamma(static_cast<double>(p) + 1.0);
  for (const auto& part : parts)
    lg -= std::lgamma(static_cast<double>(part.power) + 1.0);
  return std::exp(lg);
}

double ipow(double base, std::uint32_t e) {
  double r = 1.0;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// binom(n, k) for small k; exact in double while the value (and the value
// times k) stays under 2^53.
double binom_double(double n, int k) {
  if (k < 0 || n < 0) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - static_cast<double>(k - i)) / i;
  return r;
}

// Number of compositions of `total` into `parts` ordered non-negative parts.
double composition_count_of(int total, std::uint32_t parts) {
  if (parts == 0) return total == 0 ? 1.0 : 0.0;
  return binom_double(static_cast<double>(total) + parts - 1, total);
}

// Advance a sparse composition (ascending positions, powers >= 1) to its
// lexicographically-descending successor over `d` positions. False at end.
bool next_composition(Allocation& a, std::uint32_t d) {
  const bool has_tail = a.back().position == d - 1;
  if (has_tail && a.size() == 1) return false;
  std::uint32_t tail_pow = 0;
  if (has_tail) {
    tail_pow = a.back().power;
    a.pop_back();
  }
  AllocationPart& last = a.back();
  const std::uint32_t next_pos = last.position + 1;
  if (last.power == 1)
    a.pop_back();
  else
    last.power -= 1;
  a.push_back({next_pos, tail_pow + 1});
  return true;
}

// Composition of given lex-descending rank; inverse of the enumeration.
Allocation unrank_composition(std::uint32_t d, int total, double rank) {
  Allocation a;
  int remaining = total;
  for (std::uint32_t pos = 0; pos < d && remaining > 0; ++pos) {
    if (pos == d - 1) {
      a.push_back({pos, static_cast<std::uint32_t>(remaining)});
      remaining = 0;
      break;
    }
    for (int t = remaining; t >= 0; --t) {
      const double cnt = composition_count_of(remaining - t, d - pos - 1);
      if (rank < cnt) {
        if (t > 0) a.push_back({pos, static_cast<std::uint32_t>(t)});
        remaining -= t;
        break;
      }
      rank -= cnt;
    }
  }
  return a;
}

// Visit composition ranks [begin, end).
template <class F>
void scan_range(std::uint32_t d, int total, std::uint64_t begin, std::uint64_t end,
                F&& visit) {
  if (begin >= end) return;
  Allocation a = unrank_composition(d, total, static_cast<double>(begin));
  if (a.empty()) return; // total == 0 has a single empty composition
  for (std::uint64_t r = begin; r < end; ++r) {
    visit(a);
    if (r + 1 < end && !next_composition(a, d)) break;
  }
}

// The per-position data the expansion loop needs: support-union positions
// only (a position that is zero in every objective never contributes, so
// it is dropped before enumerating, shrinking the composition space).
struct TermTable {
  std::size_t n = 0;
  std::uint32_t dim = 0;
  std::vector<std::uint32_t> real_position;   // table index -> layout position
  std::vector<PauliMask> toggle;              // mask flipped when the power is odd
  std::vector<std::uint8_t> is_field;         // linear (a_i) position?
  std::vector<std::vector<double>> coeff;     // [objective][table index]
};

TermTable build_table(const MultiObjectiveProblem& p, std::size_t objectives_used) {
  const std::size_t n = p.n;
  TermTable t;
  t.n = n;
  const std::size_t m_count = objectives_used;
  t.coeff.assign(m_count, {});

  auto consider = [&](std::uint32_t pos, PauliMask toggle, bool field,
                      auto&& coefficient_of) {
    bool any = false;
    for (std::size_t m = 0; m < m_count; ++m)
      if (coefficient_of(m) != 0.0) any = true;
    if (!any) return;
    t.real_position.push_back(pos);
    t.toggle.push_back(toggle);
    t.is_field.push_back(field ? 1 : 0);
    for (std::size_t m = 0; m < m_count; ++m)
      t.coeff[m].push_back(coefficient_of(m));
  };

  consider(0, 0, false, [&](std::size_t m) { return p.objectives[m].shift(); });
  for (std::size_t i = 0; i < n; ++i)
    consider(static_cast<std::uint32_t>(1 + i), PauliMask{1} << i, true,
             [&](std::size_t m) { return p.objectives[m].field()[i]; });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      consider(static_cast<std::uint32_t>(1 + n + pair_index(i, j, n)),
               (PauliMask{1} << i) | (PauliMask{1} << j), false,
               [&](std::size_t m) { return p.objectives[m].pair_coefficient(i, j); });

  t.dim = static_cast<std::uint32_t>(t.real_position.size());
  return t;
}

std::string describe_allocation(const TermTable& t, const Allocation& parts) {
  std::ostringstream os;
  os << "allocation";
  for (const auto& part : parts)
    os << " v[" << t.real_position[part.position] << "]=" << part.power;
  return os.str();
}

// Shared expansion driver. Emits (mask, contribution) pairs for one chunk
// of the allocation range into `emit`.
template <class Emit>
void expand_chunk(const TermTable& t, int level, bool symmetry,
                  std::uint64_t begin, std::uint64_t end, Emit&& emit,
                  ExpandStats& stats) {
  const std::size_t m_count = t.coeff.size();
  scan_range(t.dim, level, begin, end, [&](const Allocation& parts) {
    ++stats.allocations_visited;
    if (symmetry) {
      std::uint32_t field_power = 0;
      for (const auto& part : parts)
        if (t.is_field[part.position]) field_power += part.power;
      if (field_power & 1u) return; // the +/- pair cancels this term
    }
    PauliMask mask = 0;
    for (const auto& part : parts)
      if (part.power & 1u) mask ^= t.toggle[part.position];
    const double weight = multinomial_weight(level, parts);
    double sum = 0.0;
    if (symmetry) {
      double prod = 1.0;
      for (const auto& part : parts) prod *= ipow(t.coeff[0][part.position], part.power);
      sum = 2.0 * prod;
    } else {
      for (std::size_t m = 0; m < m_count; ++m) {
        double prod = 1.0;
        for (const auto& part : parts)
          prod *= ipow(t.coeff[m][part.position], part.power);
        sum += prod;
      }
    }
    const double value = weight * sum;
    if (!std::isfinite(value))
      throw NumericRangeError("expansion coefficient overflow at " +
                              describe_allocation(t, parts));
    ++stats.allocations_contributing;
    emit(mask, value);
  });
}

std::vector<PauliTerm> collect_nonzero(std::unordered_map<PauliMask, double>&& acc) {
  std::vector<PauliTerm> terms;
  terms.reserve(acc.size());
  for (const auto& [mask, value] : acc)
    if (value != 0.0) terms.push_back({mask, value});
  return terms;
}

enum class Variant { dense, sparse, symmetry };

SparsePauliHamiltonian run_expansion(const MultiObjectiveProblem& p, int level,
                                     const ExpandOptions& opts, ExpandStats* stats,
                                     Variant variant) {
  p.validate();
  if (level < 1) throw ValidationError("expansion level must be >= 1");
  if (p.n > 64) throw ValidationError("expansion masks support n <= 64");

  const bool symmetry = variant == Variant::symmetry;
  if (symmetry) {
    if (p.objectives.size() != 2)
      throw ValidationError("symmetry_reduced_expand: exactly two objectives required");
    const auto& first = p.objectives[0];
    const auto& second = p.objectives[1];
    bool pair = first.shift() == second.shift() &&
                first.coupling().data() == second.coupling().data();
    if (pair)
      for (std::size_t i = 0; i < p.n; ++i)
        if (first.field()[i] != -second.field()[i]) pair = false;
    if (!pair)
      throw ValidationError(
          "symmetry_reduced_expand: objectives are not an exact +/- field pair");
  }
  if (variant == Variant::dense &&
      p.n > static_cast<std::size_t>(opts.dense_variable_cap))
    throw BudgetError("expand_dense: n = " + std::to_string(p.n) +
                      " exceeds dense cap " + std::to_string(opts.dense_variable_cap));

  const TermTable table = build_table(p, symmetry ? 1 : p.objectives.size());
  const double total_allocations =
      composition_count_of(level, table.dim);
  if (total_allocations > opts.allocation_budget)
    throw BudgetError("expansion would visit " + std::to_string(total_allocations) +
                      " allocations, over the budget of " +
                      std::to_string(opts.allocation_budget));

  ExpandStats local{};
  std::vector<PauliTerm> terms;

  if (table.dim == 0) {
    // Identically-zero objectives: empty Hamiltonian.
  } else if (variant == Variant::dense) {
    std::vector<double> slots(std::size_t{1} << p.n, 0.0);
    expand_chunk(table, level, symmetry, 0,
                 static_cast<std::uint64_t>(total_allocations),
                 [&](PauliMask mask, double value) { slots[mask] += value; }, local);
    for (std::uint64_t mask = 0; mask < slots.size(); ++mask)
      if (slots[mask] != 0.0) terms.push_back({mask, slots[mask]});
  } else {
    const std::uint64_t count = static_cast<std::uint64_t>(total_allocations);
    const unsigned chunks = std::max(1u, std::min<unsigned>(
        opts.chunks, static_cast<unsigned>(std::min<std::uint64_t>(count, 1u << 16))));
    if (chunks == 1) {
      std::unordered_map<PauliMask, double> acc;
      expand_chunk(table, level, symmetry, 0, count,
                   [&](PauliMask mask, double value) { acc[mask] += value; }, local);
      terms = collect_nonzero(std::move(acc));
    } else {
      // Disjoint rank ranges; partial maps merged in chunk order, so the
      // result does not depend on scheduling.
      std::vector<std::future<std::pair<std::unordered_map<PauliMask, double>,
                                        ExpandStats>>> futures;
      const unsigned workers = std::max(1u, opts.threads);
      for (unsigned c = 0; c < chunks; ++c) {
        const std::uint64_t begin = count * c / chunks;
        const std::uint64_t end = count * (c + 1) / chunks;
        auto task = [&table, level, symmetry, begin, end]() {
          std::unordered_map<PauliMask, double> acc;
          ExpandStats st{};
          expand_chunk(table, level, symmetry, begin, end,
                       [&](PauliMask mask, double value) { acc[mask] += value; }, st);
          return std::make_pair(std::move(acc), st);
        };
        futures.push_back(std::async(
            workers > 1 ? std::launch::async : std::launch::deferred, task));
      }
      std::unordered_map<PauliMask, double> acc;
      for (auto& fut : futures) {
        auto [part, st] = fut.get();
        for (const auto& [mask, value] : part) acc[mask] += value;
        local.allocations_visited += st.allocations_visited;
        local.allocations_contributing += st.allocations_contributing;
      }
      terms = collect_nonzero(std::move(acc));
    }
  }

  if (stats) *stats = local;
  const ExpansionKind kind =
      variant == Variant::dense ? ExpansionKind::dense : ExpansionKind::sparse;
  return SparsePauliHamiltonian(p.n, level, kind, std::move(terms));
}

} // namespace

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> pair_from_index(std::size_t t, std::size_t n) {
  std::size_t i = 0;
  std::size_t row = n - 1;
  while (t >= row) {
    t -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + t};
}

std::vector<std::uint32_t> allocation_dense(const Allocation& alloc, std::size_t n) {
  std::vector<std::uint32_t> v(n * (n + 1) / 2 + 1, 0);
  for (const auto& part : alloc) v.at(part.position) = part.power;
  return v;
}

double allocation_count(std::size_t n, int level) {
  return binom_double(static_cast<double>(level) + static_cast<double>(n) * (n + 1) / 2,
                      level);
}

void for_each_allocation(std::size_t n, int level,
                         const std::function<void(const Allocation&)>& visit,
                         double budget) {
  if (n < 1 || level < 1)
    throw ValidationError("for_each_allocation requires n >= 1 and level >= 1");
  const double count = allocation_count(n, level);
  if (count > budget)
    throw BudgetError("allocation enumeration of " + std::to_string(count) +
                      " items exceeds the budget of " + std::to_string(budget));
  const std::uint32_t d = static_cast<std::uint32_t>(n * (n + 1) / 2 + 1);
  scan_range(d, level, 0, static_cast<std::uint64_t>(count),
             [&](const Allocation& a) { visit(a); });
}

PauliMask mask_of(const Allocation& alloc, std::size_t n) {
  PauliMask mask = 0;
  for (const auto& part : alloc) {
    if ((part.power & 1u) == 0 || part.position == 0) continue;
    if (part.position <= n) {
      mask ^= PauliMask{1} << (part.position - 1);
    } else {
      const auto [i, j] = pair_from_index(part.position - n - 1, n);
      mask ^= (PauliMask{1} << i) | (PauliMask{1} << j);
    }
  }
  return mask;
}

SparsePauliHamiltonian::SparsePauliHamiltonian(std::size_t n, int level,
                                               ExpansionKind kind,
                                               std::vector<PauliTerm> terms,
                                               double threshold_value)
    : n_(n), level_(level), kind_(kind), threshold_value_(threshold_value),
      terms_(std::move(terms)) {
  std::erase_if(terms_, [](const PauliTerm& t) { return t.coefficient == 0.0; });
  std::sort(terms_.begin(), terms_.end(), [](const PauliTerm& a, const PauliTerm& b) {
    const int wa = std::popcount(a.mask), wb = std::popcount(b.mask);
    return wa != wb ? wa < wb : a.mask < b.mask;
  });
  for (const auto& t : terms_) {
    if (n_ < 64 && (t.mask >> n_) != 0)
      throw ValidationError("Pauli term mask exceeds variable count");
    if (level_ >= 1 && std::popcount(t.mask) > 2 * level_)
      throw ValidationError("Pauli term weight exceeds 2 * level");
  }
}

std::string SparsePauliHamiltonian::provenance() const {
  switch (kind_) {
    case ExpansionKind::dense: return "dense";
    case ExpansionKind::sparse: return "sparse";
    case ExpansionKind::thresholded: {
      std::ostringstream os;
      os << "thresholded(" << threshold_value_ << ")";
      return os.str();
    }
  }
  return "unknown";
}

double SparsePauliHamiltonian::coefficient(PauliMask mask) const {
  const auto less = [](const PauliTerm& a, const PauliTerm& b) {
    const int wa = std::popcount(a.mask), wb = std::popcount(b.mask);
    return wa != wb ? wa < wb : a.mask < b.mask;
  };
  const PauliTerm probe{mask, 0.0};
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, less);
  if (it != terms_.end() && it->mask == mask) return it->coefficient;
  return 0.0;
}

std::size_t SparsePauliHamiltonian::max_weight() const {
  std::size_t w = 0;
  for (const auto& t : terms_)
    w = std::max<std::size_t>(w, static_cast<std::size_t>(std::popcount(t.mask)));
  return w;
}

double SparsePauliHamiltonian::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coefficient));
  return m;
}

double SparsePauliHamiltonian::evaluate(const SpinVector& s) const {
  if (s.size() != n_)
    throw ValidationError("SparsePauliHamiltonian::evaluate: dimension mismatch");
  return evaluate_index(index_from_bits(bits_from_spins(s)));
}

double SparsePauliHamiltonian::evaluate_index(std::uint64_t b) const {
  double total = 0.0;
  for (const auto& t : terms_)
    total += (std::popcount(t.mask & b) & 1) ? -t.coefficient : t.coefficient;
  return total;
}

bool SparsePauliHamiltonian::same_terms(const SparsePauliHamiltonian& other,
                                        double rel_tol) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& a = terms_[i];
    const auto& b = other.terms_[i];
    if (a.mask != b.mask) return false;
    const double scale = std::max(std::abs(a.coefficient), std::abs(b.coefficient));
    if (std::abs(a.coefficient - b.coefficient) > rel_tol * scale) return false;
  }
  return true;
}

MultiObjectiveProblem normalize_for_expansion(const MultiObjectiveProblem& p) {
  p.validate();
  MultiObjectiveProblem out = p;
  for (auto& o : out.objectives)
    o = IsingObjective(o.coupling(), o.field(), o.shift());
  return out;
}

SparsePauliHamiltonian expand_dense(const MultiObjectiveProblem& p, int level,
                                    const ExpandOptions& opts, ExpandStats* stats) {
  ExpandOptions serial = opts;
  serial.chunks = 1; // a single 2^n accumulator; chunking buys nothing here
  return run_expansion(p, level, serial, stats, Variant::dense);
}

SparsePauliHamiltonian expand_sparse(const MultiObjectiveProblem& p, int level,
                                     const ExpandOptions& opts, ExpandStats* stats) {
  return run_expansion(p, level, opts, stats, Variant::sparse);
}

SparsePauliHamiltonian symmetry_reduced_expand(const MultiObjectiveProblem& p,
                                               int level, const ExpandOptions& opts,
                                               ExpandStats* stats) {
  return run_expansion(p, level, opts, stats, Variant::symmetry);
}

ThresholdResult threshold(const SparsePauliHamiltonian& h, double theta) {
  if (theta < 0.0) throw ValidationError("threshold: theta must be >= 0");
  ThresholdResult out;
  std::vector<PauliTerm> kept;
  kept.reserve(h.term_count());
  for (const auto& t : h.terms()) {
    if (std::abs(t.coefficient) < theta) {
      ++out.removed;
      out.error_bound += std::abs(t.coefficient);
    } else {
      kept.push_back(t);
    }
  }
  out.hamiltonian = SparsePauliHamiltonian(h.n(), h.level(), ExpansionKind::thresholded,
                                           std::move(kept), theta);
  return out;
}

ResourceReport resource_report(std::size_t n, int level, std::size_t objectives) {
  if (n < 1 || level < 1 || objectives < 1)
    throw ValidationError("resource_report requires n, level, objectives >= 1");
  ResourceReport r;
  const double nn = static_cast<double>(n);
  r.classical_steps = (static_cast<double>(objectives) + 3.0) * nn * nn *
                      binom_double(static_cast<double>(level) + nn * (nn + 1) / 2, level);
  long double terms = 0.0L;
  const std::size_t kmax = std::min<std::size_t>(2 * static_cast<std::size_t>(level), n);
  for (std::size_t k = 1; k <= kmax; ++k) {
    long double b = 1.0L;
    for (std::size_t i = 1; i <= k; ++i)
      b = b * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    terms += b;
  }
  const long double u64_max = 18446744073709551615.0L;
  r.max_terms = terms >= u64_max ? UINT64_MAX
                                 : static_cast<std::uint64_t>(terms + 0.5L);
  r.dense_slots = std::pow(2.0, nn);
  r.brute_force_steps = static_cast<double>(objectives) * nn * nn * r.dense_slots;
  return r;
}

} // namespace moqa
