#ifndef QGRAPH_COMPOSITION_HPP
#define QGRAPH_COMPOSITION_HPP

#include <map>
#include <span>
#include <vector>

#include "qgraph/two_port.hpp"

namespace qgraph {

/// Two readings of the series rule for phi_dn.  Corrected is the one that
/// matches direct assembly; Printed is kept for the comparison test.
enum class SeriesDnForm { Corrected, Printed };

/// Two-port values of the series connection (v_out of the first joined to
/// v_in of the second).  No interior determinant is produced.
template <typename Scalar>
TwoPortValues<Scalar> series_compose(const TwoPortValues<Scalar>& a, const TwoPortValues<Scalar>& b,
                                     SeriesDnForm form = SeriesDnForm::Corrected) {
  TwoPortValues<Scalar> out;
  out.phi_nn = a.phi_nn * b.phi_dn + a.phi_nd * b.phi_nn;
  out.phi_nd = a.phi_nn * b.phi_dd + a.phi_nd * b.phi_nd;
  out.phi_dn = form == SeriesDnForm::Corrected ? a.phi_dn * b.phi_dn + a.phi_dd * b.phi_nn
                                               : a.phi_dn * b.phi_dd + a.phi_dd * b.phi_nn;
  out.phi_dd = a.phi_dn * b.phi_dd + a.phi_dd * b.phi_nd;
  return out;
}

template <typename Scalar>
struct LagrangeCheck {
  Scalar lhs{};
  Scalar rhs{};
};

/// lhs: defect of the series composition; rhs: product of the two defects.
template <typename Scalar>
LagrangeCheck<Scalar> series_lagrange_check(const TwoPortValues<Scalar>& a, const TwoPortValues<Scalar>& b,
                                            SeriesDnForm form = SeriesDnForm::Corrected) {
  return {lagrange_defect(series_compose(a, b, form)), lagrange_defect(a) * lagrange_defect(b)};
}

/// Same check with both sides evaluated in 113-bit floating point from the
/// double inputs.  Far below the spectrum the defect is a small difference of
/// products near exp(2 kappa L), which double precision cannot resolve.
LagrangeCheck<double> series_lagrange_check_wide(const TwoPortValuesd& a, const TwoPortValuesd& b,
                                                 SeriesDnForm form = SeriesDnForm::Corrected);

template <typename Scalar>
struct DirichletFamily {
  Scalar phi_dd{};
  Scalar phi_dn{};
  Scalar phi_nd{};
};

template <typename Scalar>
DirichletFamily<Scalar> parallel_dirichlet_family(const TwoPortValues<Scalar>& a,
                                                  const TwoPortValues<Scalar>& b) {
  return {a.phi_dd * b.phi_dd, a.phi_dn * b.phi_dd + a.phi_dd * b.phi_dn,
          a.phi_nd * b.phi_dd + a.phi_dd * b.phi_nd};
}

/// Determinant of the parallel port system in the normalized unknowns:
/// (DD1/D1 + DD2/D2)(NN1/D1 + NN2/D2) - (DN1/D1 - DN2/D2)(ND1/D1 - ND2/D2).
/// Throws DeltaZero when either interior determinant vanishes (below 1e-13 of the
/// largest port value); missing deltas read as 1.
double parallel_D(const TwoPortValuesd& a, const TwoPortValuesd& b, double z = 0.0);

/// Delta1 * Delta2 * D without any division:
///   -delta_out1*Delta2 - delta_out2*Delta1 + DD1 NN2 + NN1 DD2 + ND1 DN2 + DN1 ND2,
/// using delta * delta_out = ND*DN - NN*DD.  Needs delta and delta_out on both
/// operands (missing ones are recovered when the other is 1).
double parallel_phi_NN(const TwoPortValuesd& a, const TwoPortValuesd& b);

/// Generalized Kirchhoff characteristic function of m >= 2 subgraphs joined at
/// both ports, times the product of their interior determinants.  Agrees with
/// parallel_phi_NN for m = 2.
double parallel_m_phi_NN(std::span<const TwoPortValuesd> parts);

/// A graph built by identifying ports of several ported graphs.
struct JoinedGraph {
  ValidatedGraph graph;
  /// Ports of the joined graph.  For a series connection these stay pendant;
  /// for a parallel connection they are the merged (interior) vertices.
  VertexId v_in = 0;
  VertexId v_out = 0;
  /// Vertices created by identification.
  std::vector<VertexId> joints;
  /// Per part: vertex id in the part's normal form -> vertex id in the joined graph.
  std::vector<std::map<VertexId, VertexId>> vertex_maps;
  /// Per part: edge id in the joined graph of the part's edge 1.
  std::vector<EdgeId> edge_offsets;
};

/// Identify v_out of the first with v_in of the second; the cut vertex is interior.
JoinedGraph join_series(const PortedGraph& first, const PortedGraph& second);

/// Identify all v_in ports with each other and all v_out ports with each other.
JoinedGraph join_parallel(std::span<const PortedGraph> parts);
JoinedGraph join_parallel(const PortedGraph& first, const PortedGraph& second);

/// Direct-assembly characteristic function of a joined graph with the given
/// conditions at its two port vertices (Dirichlet at a merged vertex is the
/// generalized Dirichlet condition, Neumann the Kirchhoff condition).
double joined_phi(const JoinedGraph& joined, const VertexCondition& in, const VertexCondition& out,
                  double z, double tol = 1e-10);

}  // namespace qgraph

#endif  // QGRAPH_COMPOSITION_HPP
