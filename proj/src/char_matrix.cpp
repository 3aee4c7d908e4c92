#include "qgraph/char_matrix.hpp"

#include <algorithm>
#include <string>

#include "qgraph/edge_solutions.hpp"
#include "qgraph/linalg.hpp"

namespace qgraph {

namespace {

enum class Rule { Boundary, GeneralizedNeumann, GeneralizedDirichlet };

// Coefficients of a linear functional of one edge's (B, A).
struct EndForm {
  double b = 0.0;
  double a = 0.0;
};

class RowWriter {
 public:
  RowWriter(CharMatrix& m, const ValidatedGraph& graph, std::span<const FundamentalPaird> pairs)
      : m_(m), graph_(graph), pairs_(pairs) {}

  EndForm value(const EdgeEnd& e) const {
    if (e.end == End::Tail) return {1.0, 0.0};
    const FundamentalPaird& p = pairs_[e.edge];
    return {p.c, p.s};
  }

  // y' in the edge's own coordinate.
  EndForm local_derivative(const EdgeEnd& e) const {
    if (e.end == End::Tail) return {0.0, 1.0};
    const FundamentalPaird& p = pairs_[e.edge];
    return {p.c_prime, p.s_prime};
  }

  // Derivative along the edge pointing away from the vertex.
  EndForm inward_derivative(const EdgeEnd& e) const {
    const EndForm d = local_derivative(e);
    return e.end == End::Tail ? d : EndForm{-d.b, -d.a};
  }

  void add(Eigen::Index row, const EdgeEnd& e, EndForm f, double scale = 1.0) {
    m_.entries(row, CharMatrix::column_b(static_cast<Eigen::Index>(e.edge))) += scale * f.b;
    m_.entries(row, m_.column_a(static_cast<Eigen::Index>(e.edge))) += scale * f.a;
  }

  void vertex_rows(Eigen::Index& row, VertexId v, Rule rule, const VertexCondition& own) {
    const std::vector<EdgeEnd>& ends = graph_.ends(v);
    if (ends.size() == 1) {
      const EdgeEnd& e = ends.front();
      VertexCondition c = own;
      if (rule == Rule::GeneralizedDirichlet) c = Dirichlet{};
      if (rule == Rule::GeneralizedNeumann) c = Neumann{};
      if (std::holds_alternative<Dirichlet>(c)) {
        add(row, e, value(e));
      } else {
        // y' + beta y at a tail, y' - beta y at a head: the inward form of Robin,
        // written so that Neumann keeps the plain y'(local) row.
        const double beta = std::holds_alternative<Robin>(c) ? std::get<Robin>(c).beta : 0.0;
        add(row, e, local_derivative(e));
        add(row, e, value(e), e.end == End::Tail ? beta : -beta);
      }
      push_label(row++, v, RowKind::Boundary, 0);
      return;
    }
    for (std::size_t i = 1; i < ends.size(); ++i) {
      add(row, ends[i], value(ends[i]));
      add(row, ends[i - 1], value(ends[i - 1]), -1.0);
      push_label(row++, v, RowKind::Continuity, static_cast<int>(i - 1));
    }
    if (rule == Rule::GeneralizedDirichlet) {
      add(row, ends.front(), value(ends.front()));
      push_label(row++, v, RowKind::Dirichlet, 0);
    } else {
      for (const EdgeEnd& e : ends) add(row, e, inward_derivative(e));
      push_label(row++, v, RowKind::Kirchhoff, 0);
    }
  }

 private:
  void push_label(Eigen::Index, VertexId v, RowKind kind, int index) {
    m_.rows.push_back({v, kind, index});
  }

  CharMatrix& m_;
  const ValidatedGraph& graph_;
  std::span<const FundamentalPaird> pairs_;
};

Rule rule_for(const ValidatedGraph& graph, VertexId v, const VertexCondition& c) {
  if (graph.is_pendant(v)) return Rule::Boundary;
  if (std::holds_alternative<Dirichlet>(c)) return Rule::GeneralizedDirichlet;
  if (std::holds_alternative<Robin>(c) && std::get<Robin>(c).beta != 0.0)
    throw Error(ErrorCode::InvalidCondition,
                "Robin condition at interior vertex " + std::to_string(v) + " is not supported");
  return Rule::GeneralizedNeumann;
}

}  // namespace

double CharMatrix::determinant() const { return qgraph::determinant(entries); }

std::vector<FundamentalPaird> edge_pairs(const ValidatedGraph& graph, double z, double tol) {
  std::vector<FundamentalPaird> pairs;
  pairs.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) pairs.push_back(fundamental_pair(e.potential, e.length, z, tol));
  return pairs;
}

CharMatrix assemble_with(const ValidatedGraph& graph, std::span<const ConditionOverride> overrides,
                         std::optional<VertexId> first, double z, double tol) {
  const std::vector<FundamentalPaird> pairs = edge_pairs(graph, z, tol);
  return assemble_with(graph, overrides, first, pairs);
}

CharMatrix assemble_with(const ValidatedGraph& graph, std::span<const ConditionOverride> overrides,
                         std::optional<VertexId> first, std::span<const FundamentalPaird> pairs) {
  const std::size_t g = graph.edge_count();
  if (pairs.size() != g) throw Error(ErrorCode::InvalidArgument, "one fundamental pair per edge expected");

  for (const ConditionOverride& o : overrides) (void)graph.vertex(o.vertex);
  if (first) (void)graph.vertex(*first);

  std::vector<VertexId> order;
  if (first) order.push_back(*first);
  for (const Vertex& v : graph.vertices())
    if (!first || v.id != *first) order.push_back(v.id);

  CharMatrix m;
  const auto n = static_cast<Eigen::Index>(2 * g);
  m.entries = Eigen::MatrixXd::Zero(n, n);
  m.rows.reserve(2 * g);
  RowWriter writer(m, graph, pairs);
  Eigen::Index row = 0;
  for (VertexId v : order) {
    VertexCondition c = graph.condition(v);
    const auto it = std::find_if(overrides.begin(), overrides.end(),
                                 [v](const ConditionOverride& o) { return o.vertex == v; });
    if (it != overrides.end()) c = it->condition;
    Rule rule = rule_for(graph, v, c);
    if (graph.is_pendant(v) && std::holds_alternative<GeneralizedNeumann>(c))
      rule = Rule::GeneralizedNeumann;
    writer.vertex_rows(row, v, rule, c);
  }
  if (row != n) throw std::logic_error("row count differs from 2g");
  for (Eigen::Index r = 0; r < n; ++r) {
    if (m.entries.row(r).isZero(0.0))
      throw std::logic_error("zero row for vertex " + std::to_string(m.rows[static_cast<std::size_t>(r)].vertex));
  }
  return m;
}

CharacteristicFunction::CharacteristicFunction(const ValidatedGraph& graph, VertexId root, RootKind kind,
                                               double tol)
    : graph_(validate_graph(normalize_root_orientation(graph.graph(), root))),
      root_(root),
      kind_(kind),
      tol_(tol) {}

CharMatrix CharacteristicFunction::matrix(double z) const {
  const ConditionOverride root_rule{
      root_, kind_ == RootKind::GeneralizedDirichlet ? VertexCondition{Dirichlet{}}
                                                     : VertexCondition{GeneralizedNeumann{}}};
  return assemble_with(graph_, std::span(&root_rule, 1), root_, z, tol_);
}

CharMatrix assemble(const ValidatedGraph& graph, VertexId root, RootKind kind, double z, double tol) {
  return CharacteristicFunction(graph, root, kind, tol).matrix(z);
}

double phi(const ValidatedGraph& graph, VertexId root, RootKind kind, double z, double tol) {
  return CharacteristicFunction(graph, root, kind, tol)(z);
}

}  // namespace qgraph
