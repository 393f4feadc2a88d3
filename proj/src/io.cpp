#include "moqa/io.hpp"

#include <bit>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "moqa/errors.hpp"

namespace moqa {

using nlohmann::json;

namespace {

std::vector<double> upper_triangle(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<double> ut;
  ut.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ut.push_back(m(i, j));
  return ut;
}

Matrix matrix_from_upper(std::size_t n, const std::vector<double>& ut) {
  if (ut.size() != n * (n - 1) / 2)
    throw ValidationError("upper triangle length does not match n");
  Matrix m(n, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = ut[k];
      m(j, i) = ut[k];
      ++k;
    }
  return m;
}

json parse(const std::string& text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw ValidationError(std::string("invalid JSON in ") + what);
  return doc;
}

std::string mask_bits_string(PauliMask mask, std::size_t n) {
  std::string bits(n, '0');
  for (std::size_t k = 0; k < n; ++k)
    if ((mask >> k) & 1u) bits[k] = '1';
  return bits;
}

std::string mask_hex_string(PauliMask mask) {
  std::ostringstream os;
  os << "0x" << std::hex << mask;
  return os.str();
}

} // namespace

std::string problem_to_json(const MultiObjectiveProblem& p) {
  p.validate();
  json doc;
  doc["n"] = p.n;
  doc["shift_c"] = p.shift_c;
  doc["metadata"] = p.metadata;
  doc["objectives"] = json::array();
  for (const auto& o : p.objectives) {
    json obj;
    obj["A"] = upper_triangle(o.coupling());
    obj["a"] = o.field();
    obj["alpha"] = o.shift();
    doc["objectives"].push_back(std::move(obj));
  }
  return doc.dump(2);
}

MultiObjectiveProblem problem_from_json(const std::string& text) {
  const json doc = parse(text, "problem document");
  MultiObjectiveProblem p;
  try {
    p.n = doc.at("n").get<std::size_t>();
    p.shift_c = doc.value("shift_c", 0.0);
    if (doc.contains("metadata"))
      p.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& obj : doc.at("objectives")) {
      const auto ut = obj.at("A").get<std::vector<double>>();
      auto field = obj.at("a").get<std::vector<double>>();
      const double alpha = obj.at("alpha").get<double>();
      p.objectives.emplace_back(matrix_from_upper(p.n, ut), std::move(field), alpha);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("problem document: ") + e.what());
  }
  p.validate();
  return p;
}

void save_problem(const MultiObjectiveProblem& p, const std::string& path) {
  write_text_file(path, problem_to_json(p) + "\n");
}

MultiObjectiveProblem load_problem(const std::string& path) {
  return problem_from_json(read_text_file(path));
}

void write_hamiltonian_jsonl(const SparsePauliHamiltonian& h, double shift_c,
                             std::size_t objectives, std::ostream& out) {
  json header;
  header["n"] = h.n();
  header["p"] = h.level();
  header["M"] = objectives;
  header["shift_c"] = shift_c;
  header["provenance"] = h.provenance();
  out << header.dump() << "\n";
  out << std::setprecision(17);
  for (const auto& t : h.terms()) {
    json line;
    line["mask_hex"] = mask_hex_string(t.mask);
    line["mask_bits"] = mask_bits_string(t.mask, h.n());
    line["weight"] = std::popcount(t.mask);
    line["coefficient"] = t.coefficient;
    out << line.dump() << "\n";
  }
}

void save_hamiltonian_jsonl(const SparsePauliHamiltonian& h, double shift_c,
                            std::size_t objectives, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  write_hamiltonian_jsonl(h, shift_c, objectives, out);
}

LoadedHamiltonian read_hamiltonian_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("Hamiltonian file is empty");
  const json header = parse(line, "Hamiltonian header");
  LoadedHamiltonian out;
  std::size_t n = 0;
  int level = 0;
  std::string provenance;
  try {
    n = header.at("n").get<std::size_t>();
    level = header.at("p").get<int>();
    out.objectives = header.at("M").get<std::size_t>();
    out.shift_c = header.value("shift_c", 0.0);
    provenance = header.value("provenance", "sparse");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("Hamiltonian header: ") + e.what());
  }
  std::vector<PauliTerm> terms;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = parse(line, "Hamiltonian term");
    try {
      const std::string hex = rec.at("mask_hex").get<std::string>();
      PauliTerm t;
      t.mask = std::stoull(hex, nullptr, 16);
      t.coefficient = rec.at("coefficient").get<double>();
      terms.push_back(t);
    } catch (const std::exception& e) {
      throw ValidationError(std::string("Hamiltonian term: ") + e.what());
    }
  }
  const ExpansionKind kind = provenance == "dense" ? ExpansionKind::dense
                             : provenance.rfind("thresholded", 0) == 0
                                 ? ExpansionKind::thresholded
                                 : ExpansionKind::sparse;
  out.hamiltonian = SparsePauliHamiltonian(n, level, kind, std::move(terms));
  return out;
}

LoadedHamiltonian load_hamiltonian_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open: " + path);
  return read_hamiltonian_jsonl(in);
}

std::string graph_to_json(const PartitionGraph& g) {
  json doc;
  doc["n"] = g.n;
  doc["W_upper_triangle"] = upper_triangle(g.weights);
  doc["v"] = g.vertex_weights;
  return doc.dump(2);
}

PartitionGraph graph_from_json(const std::string& text) {
  const json doc = parse(text, "graph document");
  try {
    const std::size_t n = doc.at("n").get<std::size_t>();
    const auto ut = doc.at("W_upper_triangle").get<std::vector<double>>();
    auto v = doc.at("v").get<std::vector<double>>();
    return PartitionGraph(matrix_from_upper(n, ut), std::move(v));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("graph document: ") + e.what());
  }
}

PartitionGraph load_graph(const std::string& path) {
  return graph_from_json(read_text_file(path));
}

std::string constraints_to_json(const std::vector<LinearConstraint>& cs) {
  json doc = json::array();
  for (const auto& c : cs) doc.push_back({{"g", c.g}, {"g0", c.g0}});
  return doc.dump(2);
}

std::vector<LinearConstraint> constraints_from_json(const std::string& text) {
  const json doc = parse(text, "constraint document");
  std::vector<LinearConstraint> cs;
  try {
    for (const auto& rec : doc) {
      LinearConstraint c;
      c.g = rec.at("g").get<std::vector<double>>();
      c.g0 = rec.at("g0").get<double>();
      cs.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("constraint document: ") + e.what());
  }
  return cs;
}

std::vector<LinearConstraint> load_constraints(const std::string& path) {
  return constraints_from_json(read_text_file(path));
}

void write_landscape_csv(const std::vector<double>& landscape, std::size_t n,
                         std::ostream& out) {
  out << "index,bits,value\n" << std::setprecision(17);
  for (std::size_t b = 0; b < landscape.size(); ++b)
    out << b << "," << mask_bits_string(b, n) << "," << landscape[b] << "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out << text;
}

} // namespace moqa
