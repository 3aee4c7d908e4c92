#ifndef QGRAPH_CHAR_MATRIX_HPP
#define QGRAPH_CHAR_MATRIX_HPP

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "qgraph/edge_solutions.hpp"
#include "qgraph/graph.hpp"

namespace qgraph {

enum class RootKind { GeneralizedNeumann, GeneralizedDirichlet };

enum class RowKind {
  Continuity,  // value at one incident end minus value at the previous end
  Kirchhoff,   // sum of derivatives pointing into the edges
  Dirichlet,   // vanishing common value at an interior vertex
  Boundary,    // Dirichlet / Neumann / Robin at a pendant vertex
};

struct RowLabel {
  VertexId vertex = 0;
  RowKind kind = RowKind::Boundary;
  int index = 0;
};

/// The 2g x 2g system of vertex conditions in the unknowns (B_1..B_g, A_1..A_g),
/// where y_j = B_j c_j + A_j s_j on edge j.
struct CharMatrix {
  Eigen::MatrixXd entries;
  std::vector<RowLabel> rows;

  Eigen::Index edge_count() const { return entries.cols() / 2; }
  static Eigen::Index column_b(Eigen::Index edge_index) { return edge_index; }
  Eigen::Index column_a(Eigen::Index edge_index) const { return edge_count() + edge_index; }

  double determinant() const;
};

/// Replaces the condition used at one vertex.  At an interior vertex, Dirichlet
/// means the generalized Dirichlet condition (continuity plus zero value) and
/// Neumann / GeneralizedNeumann mean continuity plus Kirchhoff.  At a pendant
/// vertex the ordinary boundary row is used (GeneralizedNeumann reads as Neumann).
struct ConditionOverride {
  VertexId vertex = 0;
  VertexCondition condition;
};

/// Fundamental pairs of every edge, indexed like graph.edges().
std::vector<FundamentalPaird> edge_pairs(const ValidatedGraph& graph, double z, double tol = 1e-10);

/// Assemble from precomputed edge pairs.
CharMatrix assemble_with(const ValidatedGraph& graph, std::span<const ConditionOverride> overrides,
                         std::optional<VertexId> first, std::span<const FundamentalPaird> pairs);

/// Assemble with the graph's own orientation.  Rows are grouped by vertex:
/// `first` (when given) leads, the rest follow in ascending id.
CharMatrix assemble_with(const ValidatedGraph& graph, std::span<const ConditionOverride> overrides,
                         std::optional<VertexId> first, double z, double tol = 1e-10);

/// Characteristic function of the problem with a generalized Neumann or
/// Dirichlet condition at `root`, evaluated repeatedly over z.  The graph is
/// reoriented once so that every edge at the root leaves it.
class CharacteristicFunction {
 public:
  CharacteristicFunction(const ValidatedGraph& graph, VertexId root, RootKind kind, double tol = 1e-10);

  CharMatrix matrix(double z) const;
  double operator()(double z) const { return matrix(z).determinant(); }

  const ValidatedGraph& graph() const noexcept { return graph_; }
  VertexId root() const noexcept { return root_; }

 private:
  ValidatedGraph graph_;
  VertexId root_;
  RootKind kind_;
  double tol_;
};

CharMatrix assemble(const ValidatedGraph& graph, VertexId root, RootKind kind, double z,
                    double tol = 1e-10);

double phi(const ValidatedGraph& graph, VertexId root, RootKind kind, double z, double tol = 1e-10);

}  // namespace qgraph

#endif  // QGRAPH_CHAR_MATRIX_HPP
