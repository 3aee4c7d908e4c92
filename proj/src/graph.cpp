#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace qgraph {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NonpositiveLength: return "NonpositiveLength";
    case ErrorCode::MissingBoundaryCondition: return "MissingBoundaryCondition";
    case ErrorCode::InteriorConditionOnPendant: return "InteriorConditionOnPendant";
    case ErrorCode::BoundaryConditionOnInterior: return "BoundaryConditionOnInterior";
    case ErrorCode::InvalidCondition: return "InvalidCondition";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EdgeIdsNotContiguous: return "EdgeIdsNotContiguous";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InvalidPotential: return "InvalidPotential";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::PortNotPendant: return "PortNotPendant";
    case ErrorCode::DeltaZero: return "DeltaZero";
    case ErrorCode::MNotAtLeastTwo: return "MNotAtLeastTwo";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

// Neumann is Robin with beta 0; fold it so comparisons see one representation.
VertexCondition canonical(const VertexCondition& c) {
  if (std::holds_alternative<Neumann>(c)) return Robin{0.0};
  return c;
}

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(a < b); }) ==
         v.end();
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::vector<double> reflect_points(const std::vector<double>& pts, double length) {
  std::vector<double> out(pts.rbegin(), pts.rend());
  for (double& x : out) x = length - x;
  return out;
}

}  // namespace

bool equivalent(const VertexCondition& a, const VertexCondition& b) noexcept {
  const VertexCondition ca = canonical(a);
  const VertexCondition cb = canonical(b);
  if (ca.index() != cb.index()) return false;
  if (const auto* ra = std::get_if<Robin>(&ca)) return ra->beta == std::get<Robin>(cb).beta;
  return true;
}

bool is_boundary_condition(const VertexCondition& c) noexcept {
  return !std::holds_alternative<GeneralizedNeumann>(c);
}

void check_potential(const PotentialSpec& potential, double length) {
  std::visit(
      [length](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantPotential>) {
          if (!std::isfinite(p.q0)) throw Error(ErrorCode::InvalidPotential, "non-finite constant");
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          if (p.values.size() != p.breakpoints.size() + 1)
            throw Error(ErrorCode::InvalidPotential,
                        "piecewise potential needs one more value than breakpoints");
          if (!strictly_increasing(p.breakpoints) || !all_finite(p.breakpoints) ||
              !all_finite(p.values))
            throw Error(ErrorCode::InvalidPotential, "breakpoints must be finite and increasing");
          if (!p.breakpoints.empty() && (p.breakpoints.front() < 0.0 || p.breakpoints.back() > length))
            throw Error(ErrorCode::InvalidPotential, "breakpoint outside [0, l]");
        } else if constexpr (std::is_same_v<T, SampledPotential>) {
          if (p.grid.size() < 2 || p.grid.size() != p.values.size())
            throw Error(ErrorCode::InvalidPotential, "sampled potential needs >= 2 matching points");
          if (!strictly_increasing(p.grid) || !all_finite(p.grid) || !all_finite(p.values))
            throw Error(ErrorCode::InvalidPotential, "grid must be finite and increasing");
          const double slack = 1e-12 * std::max(1.0, length);
          if (std::abs(p.grid.front()) > slack || std::abs(p.grid.back() - length) > slack)
            throw Error(ErrorCode::InvalidPotential, "sampled grid must span exactly [0, l]");
        }
      },
      potential);
}

PotentialSpec reflect(const PotentialSpec& potential, double length) {
  return std::visit(
      [length](const auto& p) -> PotentialSpec {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          return PiecewiseConstantPotential{reflect_points(p.breakpoints, length),
                                            {p.values.rbegin(), p.values.rend()}};
        } else if constexpr (std::is_same_v<T, SampledPotential>) {
          return SampledPotential{reflect_points(p.grid, length), {p.values.rbegin(), p.values.rend()}};
        } else {
          return p;
        }
      },
      potential);
}

double evaluate(const PotentialSpec& potential, double x) {
  return std::visit(
      [x](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZeroPotential>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ConstantPotential>) {
          return p.q0;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          const auto it = std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), x);
          return p.values[static_cast<std::size_t>(it - p.breakpoints.begin())];
        } else {
          if (x <= p.grid.front()) return p.values.front();
          if (x >= p.grid.back()) return p.values.back();
          const auto it = std::upper_bound(p.grid.begin(), p.grid.end(), x);
          const auto k = static_cast<std::size_t>(it - p.grid.begin());
          const double t = (x - p.grid[k - 1]) / (p.grid[k] - p.grid[k - 1]);
          return (1.0 - t) * p.values[k - 1] + t * p.values[k];
        }
      },
      potential);
}

bool operator==(const PotentialSpec& a, const PotentialSpec& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        const auto& q = std::get<T>(b);
        if constexpr (std::is_same_v<T, ZeroPotential>) {
          return true;
        } else if constexpr (std::is_same_v<T, ConstantPotential>) {
          return p.q0 == q.q0;
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          return p.breakpoints == q.breakpoints && p.values == q.values;
        } else {
          return p.grid == q.grid && p.values == q.values;
        }
      },
      a);
}

bool operator==(const MetricGraph& a, const MetricGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    const Vertex& va = a.vertices[i];
    const Vertex& vb = b.vertices[i];
    // a missing condition reads as generalized Neumann
    if (va.id != vb.id) return false;
    if (!equivalent(va.condition.value_or(GeneralizedNeumann{}), vb.condition.value_or(GeneralizedNeumann{})))
      return false;
  }
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const Edge& ea = a.edges[i];
    const Edge& eb = b.edges[i];
    if (ea.id != eb.id || ea.from != eb.from || ea.to != eb.to || ea.length != eb.length ||
        !(ea.potential == eb.potential))
      return false;
  }
  return true;
}

const Edge& ValidatedGraph::edge(EdgeId id) const {
  if (id < 1 || static_cast<std::size_t>(id) > graph_.edges.size())
    throw Error(ErrorCode::UnknownEdge, "edge " + std::to_string(id));
  return graph_.edges[static_cast<std::size_t>(id - 1)];
}

const Vertex& ValidatedGraph::vertex(VertexId id) const {
  const auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(id));
  return graph_.vertices[it->second];
}

int ValidatedGraph::degree(VertexId id) const { return static_cast<int>(ends(id).size()); }

const std::vector<EdgeEnd>& ValidatedGraph::ends(VertexId id) const {
  const auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(id));
  return ends_[it->second];
}

VertexCondition ValidatedGraph::condition(VertexId id) const {
  const Vertex& v = vertex(id);
  if (v.condition) return *v.condition;
  return GeneralizedNeumann{};
}

ValidatedGraph validate_graph(MetricGraph graph) {
  if (graph.edges.empty()) throw Error(ErrorCode::Disconnected, "graph has no edges");

  std::sort(graph.vertices.begin(), graph.vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });

  ValidatedGraph out;
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    if (!out.vertex_index_.emplace(graph.vertices[i].id, i).second)
      throw Error(ErrorCode::DuplicateId, "vertex " + std::to_string(graph.vertices[i].id));
  }
  for (std::size_t i = 0; i + 1 < graph.edges.size(); ++i) {
    if (graph.edges[i].id == graph.edges[i + 1].id)
      throw Error(ErrorCode::DuplicateId, "edge " + std::to_string(graph.edges[i].id));
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    if (graph.edges[i].id != static_cast<EdgeId>(i + 1))
      throw Error(ErrorCode::EdgeIdsNotContiguous, "edge ids must be 1..g");
  }

  out.ends_.assign(graph.vertices.size(), {});
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const Edge& e = graph.edges[i];
    const std::string tag = "edge " + std::to_string(e.id);
    if (!(e.length > 0.0) || !std::isfinite(e.length)) throw Error(ErrorCode::NonpositiveLength, tag);
    if (e.from == e.to) throw Error(ErrorCode::SelfLoop, tag + " (subdivide loops)");
    const auto from = out.vertex_index_.find(e.from);
    const auto to = out.vertex_index_.find(e.to);
    if (from == out.vertex_index_.end() || to == out.vertex_index_.end())
      throw Error(ErrorCode::UnknownVertex, tag + " references a missing vertex");
    check_potential(e.potential, e.length);
    out.ends_[from->second].push_back({i, End::Tail});
    out.ends_[to->second].push_back({i, End::Head});
    out.total_length_ += e.length;
  }

  // Connectivity by union-find over vertex indices.
  std::vector<std::size_t> parent(graph.vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : graph.edges)
    parent[find(out.vertex_index_[e.from])] = find(out.vertex_index_[e.to]);
  for (std::size_t i = 1; i < parent.size(); ++i) {
    if (find(i) != find(0)) throw Error(ErrorCode::Disconnected, "graph is not connected");
  }

  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    const Vertex& v = graph.vertices[i];
    const std::string tag = "vertex " + std::to_string(v.id);
    const bool pendant = out.ends_[i].size() == 1;
    if (pendant) {
      out.pendants_.push_back(v.id);
      if (!v.condition) throw Error(ErrorCode::MissingBoundaryCondition, tag);
      if (!is_boundary_condition(*v.condition))
        throw Error(ErrorCode::InteriorConditionOnPendant, tag);
    } else if (v.condition && is_boundary_condition(*v.condition)) {
      throw Error(ErrorCode::BoundaryConditionOnInterior, tag);
    }
    if (v.condition) {
      if (const auto* r = std::get_if<Robin>(&*v.condition); r && !std::isfinite(r->beta))
        throw Error(ErrorCode::InvalidCondition, tag + ": Robin beta must be finite");
    }
  }

  out.graph_ = std::move(graph);
  return out;
}

MetricGraph reverse_edge(const MetricGraph& graph, EdgeId edge_id) {
  MetricGraph out = graph;
  const auto it = std::find_if(out.edges.begin(), out.edges.end(),
                               [edge_id](const Edge& e) { return e.id == edge_id; });
  if (it == out.edges.end()) throw Error(ErrorCode::UnknownEdge, "edge " + std::to_string(edge_id));
  std::swap(it->from, it->to);
  it->potential = reflect(it->potential, it->length);
  return out;
}

MetricGraph normalize_root_orientation(const MetricGraph& graph, VertexId root) {
  const bool known = std::any_of(graph.vertices.begin(), graph.vertices.end(),
                                 [root](const Vertex& v) { return v.id == root; });
  if (!known) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(root));
  MetricGraph out = graph;
  for (Edge& e : out.edges) {
    if (e.to != root) continue;
    if (e.from == root) throw Error(ErrorCode::SelfLoop, "edge " + std::to_string(e.id));
    std::swap(e.from, e.to);
    e.potential = reflect(e.potential, e.length);
  }
  return out;
}

}  // namespace qgraph
