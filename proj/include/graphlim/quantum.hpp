#ifndef GRAPHLIM_QUANTUM_HPP
#define GRAPHLIM_QUANTUM_HPP

#include <map>
#include <stdexcept>
#include <utility>

#include <boost/rational.hpp>

#include "graphlim/canonical.hpp"
#include "graphlim/graph.hpp"

namespace graphlim {

using Rational = boost::rational<long long>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return boost::rational_cast<double>(x); }

/// Finite linear combination of k-labeled multigraphs, with terms merged by
/// labeled isomorphism class.
template <class Scalar>
class QuantumGraph {
 public:
  struct Term {
    LabeledGraph graph;
    Scalar coefficient;
  };

  explicit QuantumGraph(int k = 0) : k_(k) {}

  static QuantumGraph single(const LabeledGraph& g, Scalar c = Scalar(1)) {
    QuantumGraph q(g.k());
    q.add(g, c);
    return q;
  }

  int k() const { return k_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<CanonicalCode, Term>& terms() const { return terms_; }

  void add(const LabeledGraph& g, Scalar c) {
    if (g.k() != k_) throw std::invalid_argument("QuantumGraph: label count mismatch");
    if (c == Scalar(0)) return;
    auto code = canonical_form(g);
    auto it = terms_.find(code);
    if (it == terms_.end()) {
      terms_.emplace(std::move(code), Term{canonical_representative(g), c});
      return;
    }
    it->second.coefficient += c;
    if (it->second.coefficient == Scalar(0)) terms_.erase(it);
  }

  /// Coefficient of the class of g (0 when absent).
  Scalar coefficient(const LabeledGraph& g) const {
    auto it = terms_.find(canonical_form(g));
    return it == terms_.end() ? Scalar(0) : it->second.coefficient;
  }

  QuantumGraph& operator+=(const QuantumGraph& o) {
    check_k(o);
    for (const auto& [code, t] : o.terms_) add(t.graph, t.coefficient);
    return *this;
  }
  QuantumGraph& operator-=(const QuantumGraph& o) {
    check_k(o);
    for (const auto& [code, t] : o.terms_) add(t.graph, -t.coefficient);
    return *this;
  }
  friend QuantumGraph operator+(QuantumGraph a, const QuantumGraph& b) { return a += b; }
  friend QuantumGraph operator-(QuantumGraph a, const QuantumGraph& b) { return a -= b; }
  friend QuantumGraph operator*(Scalar c, const QuantumGraph& a) {
    QuantumGraph out(a.k_);
    for (const auto& [code, t] : a.terms_) out.add(t.graph, c * t.coefficient);
    return out;
  }

  /// Bilinear extension of gluing. With `simple`, every product is
  /// simplified (parallel edges merged, loops dropped).
  QuantumGraph glue(const QuantumGraph& o, bool simple = false) const {
    check_k(o);
    QuantumGraph out(k_);
    for (const auto& [ca, a] : terms_) {
      for (const auto& [cb, b] : o.terms_) {
        LabeledGraph g = graphlim::glue(a.graph, b.graph);
        if (simple) g.base = simplify(g.base);
        out.add(g, a.coefficient * b.coefficient);
      }
    }
    return out;
  }

  /// 0-labeled quantum graph obtained by forgetting the labels.
  QuantumGraph unlabel(bool drop_isolated) const {
    QuantumGraph out(0);
    for (const auto& [code, t] : terms_) {
      out.add(LabeledGraph(graphlim::unlabel(t.graph, drop_isolated), {}), t.coefficient);
    }
    return out;
  }

  QuantumGraph simplified() const {
    QuantumGraph out(k_);
    for (const auto& [code, t] : terms_) out.add(LabeledGraph(simplify(t.graph.base), t.graph.labels), t.coefficient);
    return out;
  }

  /// sum of coefficient * f(graph).
  template <class F>
  double evaluate(F&& f) const {
    double s = 0.0;
    for (const auto& [code, t] : terms_) s += to_double(t.coefficient) * f(t.graph);
    return s;
  }

  friend bool operator==(const QuantumGraph& a, const QuantumGraph& b) {
    if (a.k_ != b.k_ || a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [code, t] : a.terms_) {
      auto it = b.terms_.find(code);
      if (it == b.terms_.end() || !(it->second.coefficient == t.coefficient)) return false;
    }
    return true;
  }

 private:
  void check_k(const QuantumGraph& o) const {
    if (o.k_ != k_) throw std::invalid_argument("QuantumGraph: label count mismatch");
  }

  int k_ = 0;
  std::map<CanonicalCode, Term> terms_;
};

}  // namespace graphlim

#endif  // GRAPHLIM_QUANTUM_HPP
