#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "moqa/moqa.hpp"

namespace py = pybind11;
using namespace moqa;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw ValidationError("matrix rows must form a square matrix");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) rows[i][j] = m(i, j);
  return rows;
}

SpinVector spins_from_ints(const std::vector<int>& raw) {
  SpinVector s(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != 1 && raw[i] != -1)
      throw ValidationError("spin entries must be +1 or -1");
    s[i] = static_cast<std::int8_t>(raw[i]);
  }
  return s;
}

std::vector<int> spins_to_ints(const SpinVector& s) {
  return std::vector<int>(s.begin(), s.end());
}

} // namespace

PYBIND11_MODULE(_moqa, m) {
  m.doc() = "Multi-objective QUBO approximation: compile max{h_1..h_M} of "
            "quadratic binary objectives into sparse diagonal Pauli-Z "
            "Hamiltonians, with exact oracles and a simulated annealer.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<IsingObjective>(m, "IsingObjective")
      .def(py::init([](const std::vector<std::vector<double>>& coupling,
                       const std::vector<double>& field, double shift) {
             return IsingObjective(matrix_from_rows(coupling), field, shift);
           }),
           py::arg("coupling"), py::arg("field"), py::arg("shift") = 0.0)
      .def_property_readonly("n", &IsingObjective::n)
      .def_property_readonly("coupling",
                             [](const IsingObjective& o) { return matrix_to_rows(o.coupling()); })
      .def_property_readonly("field", &IsingObjective::field)
      .def_property_readonly("shift", &IsingObjective::shift)
      .def("evaluate",
           [](const IsingObjective& o, const std::vector<int>& s) {
             return o.evaluate(spins_from_ints(s));
           },
           py::arg("spins"))
      .def("pair_coefficient", &IsingObjective::pair_coefficient);

  py::class_<MultiObjectiveProblem>(m, "MultiObjectiveProblem")
      .def(py::init<>())
      .def_readwrite("n", &MultiObjectiveProblem::n)
      .def_readwrite("objectives", &MultiObjectiveProblem::objectives)
      .def_readwrite("shift_c", &MultiObjectiveProblem::shift_c)
      .def_readwrite("metadata", &MultiObjectiveProblem::metadata)
      .def("evaluate_max",
           [](const MultiObjectiveProblem& p, const std::vector<int>& s) {
             return p.evaluate_max(spins_from_ints(s));
           },
           py::arg("spins"))
      .def("to_json", &problem_to_json)
      .def_static("from_json", &problem_from_json);

  py::class_<PauliTerm>(m, "PauliTerm")
      .def_readonly("mask", &PauliTerm::mask)
      .def_readonly("coefficient", &PauliTerm::coefficient);

  py::class_<SparsePauliHamiltonian>(m, "SparsePauliHamiltonian")
      .def_property_readonly("n", &SparsePauliHamiltonian::n)
      .def_property_readonly("level", &SparsePauliHamiltonian::level)
      .def_property_readonly("provenance", &SparsePauliHamiltonian::provenance)
      .def("terms",
           [](const SparsePauliHamiltonian& h) {
             std::vector<std::pair<std::uint64_t, double>> out;
             for (const auto& t : h.terms()) out.emplace_back(t.mask, t.coefficient);
             return out;
           })
      .def("term_count", &SparsePauliHamiltonian::term_count)
      .def("coefficient", &SparsePauliHamiltonian::coefficient, py::arg("mask"))
      .def("max_weight", &SparsePauliHamiltonian::max_weight)
      .def("evaluate",
           [](const SparsePauliHamiltonian& h, const std::vector<int>& s) {
             return h.evaluate(spins_from_ints(s));
           },
           py::arg("spins"))
      .def("evaluate_index", &SparsePauliHamiltonian::evaluate_index, py::arg("b"))
      .def("to_jsonl",
           [](const SparsePauliHamiltonian& h, double shift_c, std::size_t m_count) {
             std::ostringstream os;
             write_hamiltonian_jsonl(h, shift_c, m_count, os);
             return os.str();
           },
           py::arg("shift_c") = 0.0, py::arg("objectives") = 1);

  py::class_<PartitionGraph>(m, "PartitionGraph")
      .def(py::init([](const std::vector<std::vector<double>>& w,
                       const std::vector<double>& v) {
             return PartitionGraph(matrix_from_rows(w), v);
           }),
           py::arg("weights"), py::arg("vertex_weights"))
      .def_readonly("n", &PartitionGraph::n);

  py::class_<LinearConstraint>(m, "LinearConstraint")
      .def(py::init([](const std::vector<double>& g, double g0) {
             LinearConstraint c;
             c.g = g;
             c.g0 = g0;
             return c;
           }),
           py::arg("g"), py::arg("g0"))
      .def("evaluate",
           [](const LinearConstraint& c, const std::vector<int>& bits) {
             BitVector b;
             for (const int x : bits) b.push_back(x ? 1 : 0);
             return c.evaluate(b);
           })
      .def_readwrite("g", &LinearConstraint::g)
      .def_readwrite("g0", &LinearConstraint::g0);

  py::class_<ConstrainedProblem>(m, "ConstrainedProblem")
      .def(py::init([](const IsingObjective& base,
                       const std::vector<LinearConstraint>& constraints, double gamma) {
             ConstrainedProblem c;
             c.base = base;
             c.constraints = constraints;
             c.gamma = gamma;
             return c;
           }),
           py::arg("base"), py::arg("constraints"), py::arg("gamma"))
      .def_readwrite("gamma", &ConstrainedProblem::gamma)
      .def_readwrite("constraints", &ConstrainedProblem::constraints);

  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("ground", &SpectrumReport::ground)
      .def_readonly("first_excited", &SpectrumReport::first_excited)
      .def_readonly("degenerate", &SpectrumReport::degenerate)
      .def_readonly("gap_ratio", &SpectrumReport::gap_ratio)
      .def_readonly("gap_ratio_defined", &SpectrumReport::gap_ratio_defined)
      .def_readonly("argmin_set", &SpectrumReport::argmin_set)
      .def("argmin", &SpectrumReport::argmin);

  py::class_<SandwichReport>(m, "SandwichReport")
      .def_readonly("max_lower_violation", &SandwichReport::max_lower_violation)
      .def_readonly("max_upper_violation", &SandwichReport::max_upper_violation)
      .def_readonly("max_violation", &SandwichReport::max_violation);

  py::class_<GuaranteeReport>(m, "GuaranteeReport")
      .def_readonly("applicable", &GuaranteeReport::applicable)
      .def_readonly("holds", &GuaranteeReport::holds)
      .def_readonly("gap_ratio", &GuaranteeReport::gap_ratio)
      .def_readonly("threshold", &GuaranteeReport::threshold);

  py::class_<AnnealSchedule>(m, "AnnealSchedule")
      .def(py::init<>())
      .def_readwrite("sweeps", &AnnealSchedule::sweeps)
      .def_readwrite("t_start", &AnnealSchedule::t_start)
      .def_readwrite("t_end", &AnnealSchedule::t_end)
      .def_readwrite("restarts", &AnnealSchedule::restarts)
      .def_readwrite("seed", &AnnealSchedule::seed)
      .def_readwrite("threads", &AnnealSchedule::threads);

  py::class_<AnnealResult>(m, "AnnealResult")
      .def_property_readonly("spins",
                             [](const AnnealResult& r) { return spins_to_ints(r.spins); })
      .def_readonly("energy", &AnnealResult::energy);

  py::class_<ResourceReport>(m, "ResourceReport")
      .def_readonly("classical_steps", &ResourceReport::classical_steps)
      .def_readonly("max_terms", &ResourceReport::max_terms)
      .def_readonly("dense_slots", &ResourceReport::dense_slots)
      .def_readonly("brute_force_steps", &ResourceReport::brute_force_steps);

  m.def("qubo_to_ising",
        [](const std::vector<std::vector<double>>& rows) {
          return qubo_to_ising(QuboMatrix(matrix_from_rows(rows)));
        },
        py::arg("matrix"));
  m.def("compute_shift",
        [](const MultiObjectiveProblem& p, const std::string& mode) {
          return compute_shift(p, shift_mode_from_string(mode));
        },
        py::arg("problem"), py::arg("mode") = "spectral");
  m.def("apply_shift", &apply_shift, py::arg("problem"), py::arg("c"));
  m.def("normalize_for_expansion", &normalize_for_expansion);

  m.def("expand_dense",
        [](const MultiObjectiveProblem& p, int level) { return expand_dense(p, level); },
        py::arg("problem"), py::arg("level"));
  m.def("expand_sparse",
        [](const MultiObjectiveProblem& p, int level) { return expand_sparse(p, level); },
        py::arg("problem"), py::arg("level"));
  m.def("symmetry_reduced_expand",
        [](const MultiObjectiveProblem& p, int level) {
          return symmetry_reduced_expand(p, level);
        },
        py::arg("problem"), py::arg("level"));
  m.def("threshold",
        [](const SparsePauliHamiltonian& h, double theta) {
          const ThresholdResult r = threshold(h, theta);
          return py::make_tuple(r.hamiltonian, r.removed, r.error_bound);
        },
        py::arg("hamiltonian"), py::arg("theta"));
  m.def("resource_report", &resource_report, py::arg("n"), py::arg("level"),
        py::arg("objectives"));
  m.def("allocation_count", &allocation_count, py::arg("n"), py::arg("level"));

  m.def("landscape_max",
        [](const MultiObjectiveProblem& p) { return landscape_max(p); });
  m.def("landscape_p",
        [](const SparsePauliHamiltonian& h) { return landscape_p(h); });
  m.def("landscape_power_sum",
        [](const MultiObjectiveProblem& p, int level) {
          return landscape_power_sum(p, level);
        });
  m.def("spectrum",
        [](const std::vector<double>& landscape) { return spectrum(landscape); });
  m.def("threshold_p", &threshold_p, py::arg("gap_ratio"), py::arg("objectives"));
  m.def("threshold_gap_ratio", &threshold_gap_ratio, py::arg("objectives"),
        py::arg("level"));
  m.def("check_sandwich",
        [](const MultiObjectiveProblem& p, const SparsePauliHamiltonian& h) {
          return check_sandwich(p, h);
        });
  m.def("guarantee_holds",
        [](const MultiObjectiveProblem& p, int level) {
          return guarantee_holds(p, level);
        });

  m.def("anneal",
        [](const SparsePauliHamiltonian& h, const AnnealSchedule& sched) {
          return anneal(h, sched);
        },
        py::arg("hamiltonian"), py::arg("schedule") = AnnealSchedule{});
  m.def("local_energy_delta",
        [](const SparsePauliHamiltonian& h, const std::vector<int>& s, std::size_t i) {
          return local_energy_delta(h, spins_from_ints(s), i);
        });

  m.def("random_multiobjective", &random_multiobjective, py::arg("n"),
        py::arg("objectives"), py::arg("seed"));
  m.def("partition_problem", &partition_problem, py::arg("graph"));
  m.def("spp_problem", &spp_problem, py::arg("weights"));
  m.def("random_partition_graph", &random_partition_graph, py::arg("n"), py::arg("seed"));
  m.def("constrained_to_multiobjective", &constrained_to_multiobjective,
        py::arg("problem"));

  m.attr("__version__") = kVersion;
}
