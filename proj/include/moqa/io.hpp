#ifndef MOQA_IO_HPP
#define MOQA_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "moqa/expansion.hpp"
#include "moqa/generators.hpp"
#include "moqa/qubo.hpp"

namespace moqa {

/// Problem document: {n, objectives: [{A, a, alpha}], shift_c, metadata},
/// with A the strict upper triangle row-major (readers restore symmetry).
std::string problem_to_json(const MultiObjectiveProblem& p);
MultiObjectiveProblem problem_from_json(const std::string& text);
void save_problem(const MultiObjectiveProblem& p, const std::string& path);
MultiObjectiveProblem load_problem(const std::string& path);

/// Hamiltonian hand-off format: one JSON object per line. The first line
/// is a header {n, p, M, shift_c, provenance}; each following line is a
/// term {mask_hex, mask_bits, weight, coefficient}, sorted by (weight,
/// mask). mask_bits lists variables 0..n-1 left to right.
void write_hamiltonian_jsonl(const SparsePauliHamiltonian& h, double shift_c,
                             std::size_t objectives, std::ostream& out);
void save_hamiltonian_jsonl(const SparsePauliHamiltonian& h, double shift_c,
                            std::size_t objectives, const std::string& path);

struct LoadedHamiltonian {
  SparsePauliHamiltonian hamiltonian;
  double shift_c = 0.0;
  std::size_t objectives = 0;
};
LoadedHamiltonian read_hamiltonian_jsonl(std::istream& in);
LoadedHamiltonian load_hamiltonian_jsonl(const std::string& path);

/// Partition graph document: {n, W_upper_triangle, v}.
std::string graph_to_json(const PartitionGraph& g);
PartitionGraph graph_from_json(const std::string& text);
PartitionGraph load_graph(const std::string& path);

/// Constraint set document: [{g, g0}, ...].
std::string constraints_to_json(const std::vector<LinearConstraint>& cs);
std::vector<LinearConstraint> constraints_from_json(const std::string& text);
std::vector<LinearConstraint> load_constraints(const std::string& path);

/// Landscape dump: CSV rows (index, bits, value).
void write_landscape_csv(const std::vector<double>& landscape, std::size_t n,
                         std::ostream& out);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace moqa

#endif
