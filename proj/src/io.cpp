#include "graphlim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace graphlim::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

Eigen::MatrixXd matrix_of(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + ": nonempty array required");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw std::invalid_argument(std::string(what) + ": ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_of(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": array required");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    out.push_back(row);
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Rational rational_of(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw std::invalid_argument("coefficient must be an integer or a \"p/q\" string");
}

RationalQuantumGraph quantum_of(const json& j) {
  const int k = j.value("k", 0);
  RationalQuantumGraph q(k);
  for (const auto& t : j.at("terms")) {
    const int n = t.at("n").get<int>();
    Multigraph g(n, true);
    for (const auto& e : t.value("edges", json::array())) {
      const int u = e.at(0).get<int>();
      const int v = e.at(1).get<int>();
      if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
      g.add_edge(u, v);
    }
    const auto labels = t.value("labels", std::vector<Node>{});
    q.add(LabeledGraph(std::move(g), labels), rational_of(t.at("coefficient")));
  }
  return q;
}

json quantum_json(const RationalQuantumGraph& q) {
  json terms = json::array();
  for (const auto& [code, t] : q.terms()) {
    json edges = json::array();
    for (const auto& e : t.graph.base.edges()) {
      for (int m = 0; m < e.multiplicity; ++m) edges.push_back({e.u, e.v});
    }
    terms.push_back({{"coefficient", rational_to_string(t.coefficient)},
                     {"n", t.graph.num_nodes()},
                     {"edges", edges},
                     {"labels", t.graph.labels}});
  }
  return {{"k", q.k()}, {"terms", terms}};
}

}  // namespace

SimpleGraph read_edge_list(std::istream& in) {
  std::string line;
  long long n = -1;
  long long m = -1;
  std::vector<std::pair<Node, Node>> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long a = 0;
    long long b = 0;
    std::string extra;
    if (!(ss >> a >> b) || (ss >> extra)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": expected two integers");
    }
    if (n < 0) {
      if (a < 0 || b < 0 || a > std::numeric_limits<int>::max()) {
        throw std::invalid_argument("edge list header: invalid n or m");
      }
      n = a;
      m = b;
      continue;
    }
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": invalid edge");
    }
    edges.emplace_back(static_cast<Node>(a), static_cast<Node>(b));
  }
  if (n < 0) throw std::invalid_argument("edge list: missing header");
  if (static_cast<long long>(edges.size()) != m) {
    throw std::invalid_argument("edge list: header announces " + std::to_string(m) + " edges, found " +
                                std::to_string(edges.size()));
  }
  SimpleGraph g(static_cast<int>(n));
  for (auto [u, v] : edges) {
    if (g.adjacent(u, v)) throw std::invalid_argument("edge list: repeated edge");
    g.add_edge(u, v);
  }
  return g;
}

SimpleGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const SimpleGraph& G) {
  out << G.num_nodes() << ' ' << G.num_edges() << '\n';
  for (auto [u, v] : G.edge_list()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const SimpleGraph& G) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  write_edge_list(out, G);
}

WeightedGraph weighted_graph_from_json(const std::string& text) {
  const json j = parse(text);
  Eigen::MatrixXd beta = matrix_of(j.at("beta"), "beta");
  Eigen::VectorXd alpha = j.contains("alpha") ? vector_of(j["alpha"], "alpha")
                                              : Eigen::VectorXd::Ones(beta.rows());
  if (j.contains("n") && j["n"].get<Eigen::Index>() != beta.rows()) {
    throw std::invalid_argument("weighted graph: n does not match beta");
  }
  return {alpha, beta};
}

std::string weighted_graph_to_json(const WeightedGraph& H) {
  json j{{"n", H.num_nodes()}, {"alpha", vector_json(H.alpha)}, {"beta", matrix_json(H.beta)}};
  return j.dump();
}

StepGraphon step_graphon_from_json(const std::string& text) {
  const json j = parse(text);
  return {vector_of(j.at("p"), "p"), matrix_of(j.at("B"), "B")};
}

std::string step_graphon_to_json(const StepGraphon& W) {
  json j{{"p", vector_json(W.p)}, {"B", matrix_json(W.B)}};
  return j.dump();
}

Eigen::MatrixXd matrix_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.is_array()) return matrix_of(j, "matrix");
  if (j.contains("beta")) return matrix_of(j["beta"], "beta");
  if (j.contains("J")) return matrix_of(j["J"], "J");
  throw std::invalid_argument("matrix JSON: expected an array or a \"beta\"/\"J\" field");
}

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  auto parse_ll = [&](std::string_view part) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw std::invalid_argument("invalid rational: " + s);
    }
    return v;
  };
  const std::string_view sv(s);
  if (slash == std::string::npos) return Rational(parse_ll(sv));
  const long long den = parse_ll(sv.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("invalid rational: zero denominator");
  return Rational(parse_ll(sv.substr(0, slash)), den);
}

std::string rational_to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

RationalQuantumGraph quantum_graph_from_json(const std::string& text) { return quantum_of(parse(text)); }

std::string quantum_graph_to_json(const RationalQuantumGraph& q) { return quantum_json(q).dump(); }

Certificate certificate_from_json(const std::string& text) {
  const json j = parse(text);
  Certificate c;
  for (const auto& s : j.at("squares")) {
    c.squares.push_back({rational_of(s.value("weight", json(1))), quantum_of(s.at("y"))});
  }
  c.target = quantum_of(j.at("target"));
  return c;
}

std::string certificate_to_json(const Certificate& c) {
  json squares = json::array();
  for (const auto& s : c.squares) {
    squares.push_back({{"weight", rational_to_string(s.weight)}, {"y", quantum_json(s.y)}});
  }
  json j{{"squares", squares}, {"target", quantum_json(c.target)}};
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  return out;
}

}  // namespace graphlim::io
