#ifndef GRAPHLIM_IO_HPP
#define GRAPHLIM_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphlim/algebra.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim::io {

/// Edge list: header "n m", then m lines "u v" (0-based). Blank lines and
/// lines starting with '#' are skipped.
SimpleGraph read_edge_list(std::istream& in);
SimpleGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const SimpleGraph& G);
void write_edge_list_file(const std::string& path, const SimpleGraph& G);

/// {"n": q, "alpha": [...], "beta": [[...], ...]}; alpha defaults to ones.
WeightedGraph weighted_graph_from_json(const std::string& text);
std::string weighted_graph_to_json(const WeightedGraph& H);

/// {"p": [...], "B": [[...], ...]}.
StepGraphon step_graphon_from_json(const std::string& text);
std::string step_graphon_to_json(const StepGraphon& W);

/// A bare nested array, or an object holding one under "beta" or "J".
Eigen::MatrixXd matrix_from_json(const std::string& text);

/// Rational as "p/q" or an integer.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

/// Quantum graph: {"k": k, "terms": [{"coefficient": "p/q", "n": n,
/// "edges": [[u, v], ...], "labels": [...]}]}. Repeated edges add
/// multiplicity.
RationalQuantumGraph quantum_graph_from_json(const std::string& text);
std::string quantum_graph_to_json(const RationalQuantumGraph& q);

struct Certificate {
  std::vector<SquareTerm> squares;
  RationalQuantumGraph target;
};

/// {"squares": [{"weight": "2", "y": <quantum graph>}], "target":
/// <0-labeled quantum graph>}.
Certificate certificate_from_json(const std::string& text);
std::string certificate_to_json(const Certificate& c);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest round-trip decimal form, so identical runs print identical
/// bytes.
std::string format_double(double x);

/// Joins fields with commas; fields are not quoted.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace graphlim::io

#endif  // GRAPHLIM_IO_HPP
