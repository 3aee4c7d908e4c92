#include "qgraph/two_port.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "qgraph/linalg.hpp"

namespace qgraph {

namespace {

std::size_t find_row(const CharMatrix& m, VertexId v, RowKind kind, int index) {
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const RowLabel& l = m.rows[r];
    if (l.vertex == v && l.kind == kind && l.index == index) return r;
  }
  throw std::logic_error("missing row for vertex " + std::to_string(v));
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> removed) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) out.push_back(i);
  return out;
}

bool derivative_type(const VertexCondition& c) { return !std::holds_alternative<Dirichlet>(c); }

// Row and column bookkeeping of the port normal form for one assembly.
struct Layout {
  std::vector<std::size_t> special_rows;  // in, last continuity at w, Kirchhoff at w, out
  std::vector<std::size_t> special_cols;  // B1, A1, Bg, Ag
  std::vector<std::size_t> kept_rows;
  std::vector<std::size_t> kept_cols;
  int sign = 1;
};

Layout layout(const PortedGraph& pg, const CharMatrix& m) {
  const std::size_t g = pg.edge_count();
  Layout out;
  const std::size_t in_row = find_row(m, pg.v_in(), RowKind::Boundary, 0);
  const std::size_t out_row = find_row(m, pg.v_out(), RowKind::Boundary, 0);
  if (g == 1) {
    out.special_rows = {in_row, out_row};
    out.special_cols = {0, 1};
  } else {
    const int dw = pg.graph().degree(pg.w());
    out.special_rows = {in_row, find_row(m, pg.w(), RowKind::Continuity, dw - 2),
                        find_row(m, pg.w(), RowKind::Kirchhoff, 0), out_row};
    out.special_cols = {0, g, g - 1, 2 * g - 1};
  }
  out.kept_rows = complement(2 * g, out.special_rows);
  out.kept_cols = complement(2 * g, out.special_cols);

  std::vector<std::size_t> row_order = out.kept_rows, col_order = out.kept_cols;
  row_order.insert(row_order.end(), out.special_rows.begin(), out.special_rows.end());
  col_order.insert(col_order.end(), out.special_cols.begin(), out.special_cols.end());
  out.sign = permutation_sign(row_order) * permutation_sign(col_order);
  return out;
}

CharMatrix port_matrix(const PortedGraph& pg, const VertexCondition& in, const VertexCondition& out,
                       std::span<const FundamentalPaird> pairs) {
  const std::array<ConditionOverride, 2> overrides{ConditionOverride{pg.v_in(), in},
                                                   ConditionOverride{pg.v_out(), out}};
  return assemble_with(pg.graph(), overrides, pg.v_in(), pairs);
}

double normalized_det(const CharMatrix& m, const Layout& lay, const VertexCondition& in) {
  const double d = lay.sign * m.determinant();
  return derivative_type(in) ? -d : d;
}

double reduced_det(const CharMatrix& m, const Layout& lay) {
  return determinant(submatrix(m.entries, lay.kept_rows, lay.kept_cols));
}

// Interior determinant seen from v_out, before the sign calibration.
double raw_delta_out(const PortedGraph& pg, const CharMatrix& m, const Layout& lay) {
  const std::size_t g = pg.edge_count();
  if (g <= 2) return 1.0;
  const std::array<std::size_t, 4> removed{lay.special_rows.front(), lay.special_rows.back(),
                                           find_row(m, pg.w_in(), RowKind::Continuity, 0),
                                           find_row(m, pg.w_in(), RowKind::Kirchhoff, 0)};
  const std::vector<std::size_t> rows = complement(2 * g, removed);
  return determinant(submatrix(m.entries, rows, lay.kept_cols));
}

TwoPortValuesd evaluate_two_port(const PortedGraph& pg, double z, int out_sign) {
  const double o = pg.orientation_sign();
  const std::vector<FundamentalPaird> pairs = edge_pairs(pg.graph(), z, pg.tol());
  const VertexCondition D = Dirichlet{}, N = Neumann{};
  const CharMatrix dd = port_matrix(pg, D, D, pairs);
  const CharMatrix dn = port_matrix(pg, D, N, pairs);
  const CharMatrix nd = port_matrix(pg, N, D, pairs);
  const CharMatrix nn = port_matrix(pg, N, N, pairs);
  // The layout only depends on row labels, which agree across the four assemblies.
  const Layout lay = layout(pg, dd);
  TwoPortValuesd tp;
  tp.phi_dd = o * normalized_det(dd, lay, D);
  tp.phi_dn = o * normalized_det(dn, lay, D);
  tp.phi_nd = o * normalized_det(nd, lay, N);
  tp.phi_nn = o * normalized_det(nn, lay, N);
  tp.delta = o * reduced_det(dd, lay);
  tp.delta_out = out_sign * raw_delta_out(pg, dd, lay);
  return tp;
}

}  // namespace

PortedGraph::PortedGraph(const ValidatedGraph& graph, VertexId v_in, VertexId v_out, double tol)
    : v_in_(v_in), v_out_(v_out), tol_(tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  for (VertexId v : {v_in, v_out}) {
    if (!graph.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "port vertex " + std::to_string(v));
    if (!graph.is_pendant(v))
      throw Error(ErrorCode::PortNotPendant, "port vertex " + std::to_string(v) + " has degree " +
                                                 std::to_string(graph.degree(v)));
  }
  if (v_in == v_out) throw Error(ErrorCode::InvalidArgument, "v_in and v_out coincide");

  MetricGraph m = graph.graph();
  const EdgeId id_in = graph.edges()[graph.ends(v_in).front().edge].id;
  const EdgeId id_out = graph.edges()[graph.ends(v_out).front().edge].id;
  auto find = [&m](EdgeId id) -> Edge& {
    return *std::find_if(m.edges.begin(), m.edges.end(), [id](const Edge& e) { return e.id == id; });
  };
  auto orient = [](Edge& e, VertexId from) {
    if (e.from == from) return;
    std::swap(e.from, e.to);
    e.potential = reflect(e.potential, e.length);
  };
  orient(find(id_in), v_in);
  if (id_out != id_in) {
    Edge& eo = find(id_out);
    if (eo.to != v_out) orient(eo, eo.to);
  }
  w_ = find(id_out).from;
  for (Edge& e : m.edges) {
    if (e.id == id_in || e.id == id_out) continue;
    if (e.to != w_) continue;
    orient(e, w_);
    orientation_sign_ = -orientation_sign_;
  }

  // Relabel: e_in first, e_out last, the rest keep their relative order.
  const std::size_t g = m.edges.size();
  std::vector<EdgeId> order{id_in};
  for (const Edge& e : graph.edges())
    if (e.id != id_in && e.id != id_out) order.push_back(e.id);
  if (id_out != id_in) order.push_back(id_out);
  original_ids_ = order;
  for (Edge& e : m.edges) {
    const auto pos = std::find(order.begin(), order.end(), e.id) - order.begin();
    e.id = static_cast<EdgeId>(pos + 1);
  }
  graph_ = validate_graph(std::move(m));
  w_in_ = graph_.edge(1).to;

  if (g <= 2) return;
  // delta * delta_out equals the Lagrange defect up to a sign fixed by the labelling;
  // read the sign off the best conditioned of a few reference points.
  double best_quality = -1.0, best_defect = 0.0, best_product = 0.0;
  for (double z : {0.37, 2.71, 7.9, 15.3, -0.83, 31.4}) {
    TwoPortValuesd tp;
    try {
      tp = evaluate_two_port(*this, z, 1);
    } catch (const Error&) {
      continue;
    }
    const double defect = lagrange_defect(tp);
    const double scale = std::abs(tp.phi_dd * tp.phi_nn) + std::abs(tp.phi_nd * tp.phi_dn);
    if (!(scale > 0.0) || !std::isfinite(defect)) continue;
    const double quality = std::abs(defect) / scale;
    if (quality > best_quality) {
      best_quality = quality;
      best_defect = defect;
      best_product = *tp.delta * *tp.delta_out;
    }
  }
  if (!(best_quality > 0.0)) throw Error(ErrorCode::ToleranceNotMet, "cannot calibrate the out-side determinant");
  if (std::abs(std::abs(best_defect) - std::abs(best_product)) > 1e-6 * std::abs(best_defect))
    throw std::logic_error("out-side determinant does not factor the Lagrange defect");
  out_sign_ = (best_defect > 0.0) == (best_product > 0.0) ? 1 : -1;
}

TwoPortValuesd two_port(const PortedGraph& pg, double z) { return evaluate_two_port(pg, z, pg.out_side_sign()); }

double port_phi(const PortedGraph& pg, const std::optional<VertexCondition>& in,
                const std::optional<VertexCondition>& out, double z) {
  const VertexCondition cin = in ? *in : pg.graph().condition(pg.v_in());
  const VertexCondition cout = out ? *out : pg.graph().condition(pg.v_out());
  const std::vector<FundamentalPaird> pairs = edge_pairs(pg.graph(), z, pg.tol());
  const CharMatrix m = port_matrix(pg, cin, cout, pairs);
  return pg.orientation_sign() * normalized_det(m, layout(pg, m), cin);
}

double interior_determinant(const PortedGraph& pg, double z, const VertexCondition& in) {
  const std::vector<FundamentalPaird> pairs = edge_pairs(pg.graph(), z, pg.tol());
  const CharMatrix m = port_matrix(pg, in, Dirichlet{}, pairs);
  return pg.orientation_sign() * reduced_det(m, layout(pg, m));
}

PortCofactors port_cofactors(const PortedGraph& pg, const VertexCondition& in, double z) {
  const std::size_t g = pg.edge_count();
  const std::vector<FundamentalPaird> pairs = edge_pairs(pg.graph(), z, pg.tol());
  if (g == 1) {
    // w is v_in itself: the start data are the value and flux.
    return derivative_type(in) ? PortCofactors{1.0, 1.0, 0.0} : PortCofactors{1.0, 0.0, -1.0};
  }
  const CharMatrix m = port_matrix(pg, in, Dirichlet{}, pairs);
  const Layout lay = layout(pg, m);
  const Eigen::MatrixXd K = submatrix(m.entries, lay.kept_rows, lay.kept_cols);
  const double delta = determinant(K);
  const double o = pg.orientation_sign();

  // Start data on e_1: Dirichlet start A1 = 1, otherwise B1 = 1.
  const std::size_t start_col = derivative_type(in) ? 0 : g;
  const std::array<std::size_t, 1> start{start_col};
  const Eigen::VectorXd rhs = -submatrix(m.entries, lay.kept_rows, start).col(0);

  // Full unknown vector scaled by delta, by Cramer's rule.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * g));
  x(static_cast<Eigen::Index>(start_col)) = delta;
  for (std::size_t j = 0; j < lay.kept_cols.size(); ++j) {
    Eigen::MatrixXd Kj = K;
    Kj.col(static_cast<Eigen::Index>(j)) = rhs;
    x(static_cast<Eigen::Index>(lay.kept_cols[j])) = determinant(Kj);
  }

  auto value_at = [&](const EdgeEnd& e) {
    const auto i = static_cast<Eigen::Index>(e.edge);
    const Eigen::Index gi = static_cast<Eigen::Index>(g);
    if (e.end == End::Tail) return x(i);
    return pairs[e.edge].c * x(i) + pairs[e.edge].s * x(gi + i);
  };
  auto inward_at = [&](const EdgeEnd& e) {
    const auto i = static_cast<Eigen::Index>(e.edge);
    const Eigen::Index gi = static_cast<Eigen::Index>(g);
    if (e.end == End::Tail) return x(gi + i);
    return -(pairs[e.edge].c_prime * x(i) + pairs[e.edge].s_prime * x(gi + i));
  };

  const std::vector<EdgeEnd>& ends = pg.graph().ends(pg.w());
  PortCofactors out;
  out.delta = o * delta;
  out.value = o * value_at(ends.front());
  for (const EdgeEnd& e : ends)
    if (e.edge != g - 1) out.flux += o * inward_at(e);
  return out;
}

}  // namespace qgraph
