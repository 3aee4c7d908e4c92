#ifndef QGRAPH_TWO_PORT_HPP
#define QGRAPH_TWO_PORT_HPP

#include <optional>
#include <vector>

#include "qgraph/char_matrix.hpp"
#include "qgraph/edge_solutions.hpp"
#include "qgraph/graph.hpp"

namespace qgraph {

/// A validated graph with two pendant ports, stored in port normal form:
/// the edge leaving v_in is e_1, the edge entering v_out is e_g, and every
/// other edge at w (the tail of e_g) leaves w.
class PortedGraph {
 public:
  PortedGraph(const ValidatedGraph& graph, VertexId v_in, VertexId v_out, double tol = 1e-10);

  const ValidatedGraph& graph() const noexcept { return graph_; }
  VertexId v_in() const noexcept { return v_in_; }
  VertexId v_out() const noexcept { return v_out_; }
  /// Tail of the last edge e_g.
  VertexId w() const noexcept { return w_; }
  /// Head of the first edge e_1.
  VertexId w_in() const noexcept { return w_in_; }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }
  double tol() const noexcept { return tol_; }

  /// Original id of the edge now labelled `id`.
  EdgeId original_edge_id(EdgeId id) const { return original_ids_.at(static_cast<std::size_t>(id - 1)); }

  /// Sign relating the out-side interior determinant to defect / delta.
  int out_side_sign() const noexcept { return out_sign_; }
  /// -1 when bringing the edges at w into normal form reversed an odd number
  /// of edges other than e_1 and e_g.  Port values and interior determinants
  /// are multiplied by it, so they refer to the graph as given.
  int orientation_sign() const noexcept { return orientation_sign_; }

 private:
  ValidatedGraph graph_;
  VertexId v_in_;
  VertexId v_out_;
  VertexId w_;
  VertexId w_in_;
  double tol_;
  std::vector<EdgeId> original_ids_;
  int out_sign_ = 1;
  int orientation_sign_ = 1;
};

/// Two-port characteristic functions at one spectral point.
///
/// Normalization: phi_xy equals delta times the actual endpoint data of the
/// solution started at v_in, so phi_dd / delta = y(v_out) for y(v_in) = 0,
/// y'(v_in) = 1.  A single edge gives exactly (s, s', c, c') with delta = 1.
/// delta_out is the interior determinant seen from v_out, normalized so that
/// phi_nd*phi_dn - phi_nn*phi_dd = delta * delta_out.
template <typename Scalar>
struct TwoPortValues {
  Scalar phi_dd{};
  Scalar phi_dn{};
  Scalar phi_nd{};
  Scalar phi_nn{};
  std::optional<Scalar> delta;
  std::optional<Scalar> delta_out;
};

using TwoPortValuesd = TwoPortValues<double>;

/// phi_nd*phi_dn - phi_nn*phi_dd.
template <typename Scalar>
Scalar lagrange_defect(const TwoPortValues<Scalar>& tp) {
  return tp.phi_nd * tp.phi_dn - tp.phi_nn * tp.phi_dd;
}

TwoPortValuesd two_port(const PortedGraph& pg, double z);

/// Characteristic function with optional condition overrides at the ports
/// (nullopt keeps the graph's own condition), in two-port normalization.
double port_phi(const PortedGraph& pg, const std::optional<VertexCondition>& in,
                const std::optional<VertexCondition>& out, double z);

/// Determinant of the reduced system: all condition rows except the one at
/// v_in, the last continuity row at w, the Kirchhoff row at w and the one at
/// v_out, over the unknowns of edges 2..g-1.  Equals 1 for g <= 2.  The
/// condition at v_in does not enter; `in` only selects which assembly the
/// rows are read from.
double interior_determinant(const PortedGraph& pg, double z,
                            const VertexCondition& in = Dirichlet{});

/// Cramer numerators of the reduced system for the solution started at v_in
/// (Dirichlet start: y = 0, y' = 1; Neumann start: y = 1, y' = 0).
/// value = delta * y(w) and flux = delta * (sum of derivatives into the
/// edges at w other than e_g), so that
///   phi_{x,D} = c_g * value - s_g * flux,   phi_{x,N} = c'_g * value - s'_g * flux.
struct PortCofactors {
  double delta = 1.0;
  double value = 0.0;
  double flux = 0.0;
};

PortCofactors port_cofactors(const PortedGraph& pg, const VertexCondition& in, double z);

}  // namespace qgraph

#endif  // QGRAPH_TWO_PORT_HPP
