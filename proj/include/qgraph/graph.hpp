#ifndef QGRAPH_GRAPH_HPP
#define QGRAPH_GRAPH_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qgraph/error.hpp"

namespace qgraph {

using VertexId = int;
using EdgeId = int;

// Vertex conditions.  Robin(beta) means  dy/dn_in + beta * y = 0, where
// dy/dn_in is the derivative taken along the edge pointing away from the
// vertex.  At the tail of an edge this is y'(0) + beta*y(0) = 0; at the head
// it reads -y'(l) + beta*y(l) = 0, so the condition does not depend on the
// edge orientation.
struct Dirichlet {};
struct Neumann {};
struct Robin {
  double beta = 0.0;
};
struct GeneralizedNeumann {};

using VertexCondition = std::variant<Dirichlet, Neumann, Robin, GeneralizedNeumann>;

/// Neumann and Robin{0} compare equal.
bool equivalent(const VertexCondition& a, const VertexCondition& b) noexcept;
bool is_boundary_condition(const VertexCondition& c) noexcept;

struct ZeroPotential {};
struct ConstantPotential {
  double q0 = 0.0;
};
/// values.size() == breakpoints.size() + 1; cell k spans
/// [breakpoints[k-1], breakpoints[k]] with 0 and l as outer bounds.
struct PiecewiseConstantPotential {
  std::vector<double> breakpoints;
  std::vector<double> values;
};
/// Linear interpolation of values on grid; the grid runs from 0 to l.
struct SampledPotential {
  std::vector<double> grid;
  std::vector<double> values;
};

using PotentialSpec =
    std::variant<ZeroPotential, ConstantPotential, PiecewiseConstantPotential, SampledPotential>;

/// Throws InvalidPotential when the data is inconsistent with an edge of this length.
void check_potential(const PotentialSpec& potential, double length);

/// q(l - x).
PotentialSpec reflect(const PotentialSpec& potential, double length);

double evaluate(const PotentialSpec& potential, double x);

bool operator==(const PotentialSpec& a, const PotentialSpec& b);

struct Vertex {
  VertexId id = 0;
  // Interior vertices may leave this empty (generalized Neumann is implied).
  std::optional<VertexCondition> condition;
};

struct Edge {
  EdgeId id = 0;
  VertexId from = 0;
  VertexId to = 0;
  double length = 1.0;
  PotentialSpec potential = ZeroPotential{};
};

struct MetricGraph {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

/// Exact comparison; Neumann equals Robin(0) and a missing condition equals GeneralizedNeumann.
bool operator==(const MetricGraph& a, const MetricGraph& b);

enum class End { Tail, Head };

struct EdgeEnd {
  std::size_t edge = 0;  // index into ValidatedGraph::edges()
  End end = End::Tail;
};

/// A MetricGraph that satisfied every invariant, stored in canonical order
/// (vertices and edges sorted by id) with cached incidence data.
class ValidatedGraph {
 public:
  const MetricGraph& graph() const noexcept { return graph_; }
  std::span<const Edge> edges() const noexcept { return graph_.edges; }
  std::span<const Vertex> vertices() const noexcept { return graph_.vertices; }

  std::size_t edge_count() const noexcept { return graph_.edges.size(); }
  std::size_t vertex_count() const noexcept { return graph_.vertices.size(); }

  const Edge& edge(EdgeId id) const;
  const Vertex& vertex(VertexId id) const;
  bool has_vertex(VertexId id) const noexcept { return vertex_index_.contains(id); }

  int degree(VertexId id) const;
  bool is_pendant(VertexId id) const { return degree(id) == 1; }
  const std::vector<VertexId>& pendant_vertices() const noexcept { return pendants_; }

  /// Incident edge ends sorted by (edge id, tail before head).
  const std::vector<EdgeEnd>& ends(VertexId id) const;

  /// Condition in force at a vertex; interior vertices resolve to GeneralizedNeumann.
  VertexCondition condition(VertexId id) const;

  double total_length() const noexcept { return total_length_; }

 private:
  friend ValidatedGraph validate_graph(MetricGraph graph);

  MetricGraph graph_;
  std::map<VertexId, std::size_t> vertex_index_;
  std::vector<std::vector<EdgeEnd>> ends_;
  std::vector<VertexId> pendants_;
  double total_length_ = 0.0;
};

ValidatedGraph validate_graph(MetricGraph graph);

/// Swap the endpoints of one edge and reflect its potential.
MetricGraph reverse_edge(const MetricGraph& graph, EdgeId edge_id);

/// Orient every edge at root away from it.
MetricGraph normalize_root_orientation(const MetricGraph& graph, VertexId root);

}  // namespace qgraph

#endif  // QGRAPH_GRAPH_HPP
