#ifndef QGRAPH_GRAPH_IO_HPP
#define QGRAPH_GRAPH_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qgraph/graph.hpp"

namespace qgraph {

struct Ports {
  VertexId v_in = 0;
  VertexId v_out = 0;
};

struct GraphDocument {
  ValidatedGraph graph;
  std::optional<Ports> ports;
};

/// Parse a JSON graph document:
///   {"version": 1,
///    "vertices": [{"id": 1, "condition": {"type": "robin", "beta": 2.0}}, ...],
///    "edges": [{"id": 1, "from": 1, "to": 2, "length": 1.0,
///               "potential": {"type": "constant", "q": -1.5}}, ...],
///    "ports": {"v_in": 1, "v_out": 2}}
/// Condition types: dirichlet, neumann, robin (beta), internal.  Potential
/// types: zero, constant (q), piecewise (breakpoints, values), sampled (grid, values).
/// Throws SyntaxError (with line), SchemaError (with JSON path) or a validation error.
GraphDocument parse_graph_document(std::string_view text);

GraphDocument load_graph_document(const std::filesystem::path& path);

/// Canonical JSON text; parse_graph_document(dump(g)) reproduces g.
std::string dump_graph_document(const MetricGraph& graph, const std::optional<Ports>& ports = std::nullopt);

}  // namespace qgraph

#endif  // QGRAPH_GRAPH_IO_HPP
