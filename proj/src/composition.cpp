#include "qgraph/composition.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <string>

#include "qgraph/linalg.hpp"

namespace qgraph {

namespace {

struct Deltas {
  double delta;
  double delta_out;
};

Deltas resolve(const TwoPortValuesd& tp) {
  const double delta = tp.delta.value_or(1.0);
  if (tp.delta_out) return {delta, *tp.delta_out};
  if (delta == 1.0) return {delta, lagrange_defect(tp)};
  throw Error(ErrorCode::InvalidArgument, "two-port values carry no out-side interior determinant");
}

// coef * (u ^ v): one term of a subgraph's column pair.
struct Wedge {
  double coef;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

}  // namespace

LagrangeCheck<double> series_lagrange_check_wide(const TwoPortValuesd& a, const TwoPortValuesd& b,
                                                 SeriesDnForm form) {
  using Wide = boost::multiprecision::cpp_bin_float_quad;
  auto widen = [](const TwoPortValuesd& t) {
    TwoPortValues<Wide> w;
    w.phi_dd = t.phi_dd;
    w.phi_dn = t.phi_dn;
    w.phi_nd = t.phi_nd;
    w.phi_nn = t.phi_nn;
    return w;
  };
  const LagrangeCheck<Wide> c = series_lagrange_check(widen(a), widen(b), form);
  return {c.lhs.convert_to<double>(), c.rhs.convert_to<double>()};
}

double parallel_D(const TwoPortValuesd& a, const TwoPortValuesd& b, double z) {
  const double d1 = a.delta.value_or(1.0), d2 = b.delta.value_or(1.0);
  auto vanishes = [](const TwoPortValuesd& t, double d) {
    const double size = std::max({1.0, std::abs(t.phi_dd), std::abs(t.phi_dn), std::abs(t.phi_nd), std::abs(t.phi_nn)});
    return std::abs(d) <= 1e-13 * size;
  };
  if (vanishes(a, d1) || vanishes(b, d2))
    throw Error(ErrorCode::DeltaZero, "interior determinant vanishes at z = " + std::to_string(z));
  return (a.phi_dd / d1 + b.phi_dd / d2) * (a.phi_nn / d1 + b.phi_nn / d2) -
         (a.phi_dn / d1 - b.phi_dn / d2) * (a.phi_nd / d1 - b.phi_nd / d2);
}

double parallel_phi_NN(const TwoPortValuesd& a, const TwoPortValuesd& b) {
  const Deltas x = resolve(a), y = resolve(b);
  return -x.delta_out * y.delta - y.delta_out * x.delta + a.phi_dd * b.phi_nn + a.phi_nn * b.phi_dd +
         a.phi_nd * b.phi_dn + a.phi_dn * b.phi_nd;
}

double parallel_m_phi_NN(std::span<const TwoPortValuesd> parts) {
  const std::size_t m = parts.size();
  if (m < 2) throw Error(ErrorCode::MNotAtLeastTwo, "parallel connection needs at least two parts, got " +
                                                        std::to_string(m));
  if (m > 8) throw Error(ErrorCode::InvalidArgument, "at most 8 parallel parts are supported");
  const auto n = static_cast<Eigen::Index>(2 * m);
  const auto mi = static_cast<Eigen::Index>(m);

  // Rows: in-Kirchhoff, in-continuity (m-1), out-continuity (m-1), out-Kirchhoff.
  // Unknowns per part: derivative and value at v_in.  Each part's column pair,
  // scaled by its delta, expands into four wedges.
  std::vector<std::array<Wedge, 4>> wedges;
  for (std::size_t j = 0; j < m; ++j) {
    const auto ji = static_cast<Eigen::Index>(j);
    Eigen::VectorXd in_u = Eigen::VectorXd::Zero(n), in_y = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd e_v = Eigen::VectorXd::Zero(n), e_k = Eigen::VectorXd::Zero(n);
    in_u(0) = 1.0;
    if (j == 0) {
      in_y.segment(1, mi - 1).setOnes();
      e_v.segment(mi, mi - 1).setOnes();
    } else {
      in_y(ji) = -1.0;
      e_v(mi + ji - 1) = -1.0;
    }
    e_k(n - 1) = 1.0;
    const TwoPortValuesd& tp = parts[j];
    const Deltas d = resolve(tp);
    wedges.push_back({Wedge{d.delta, in_u, in_y}, Wedge{1.0, in_u, tp.phi_nd * e_v + tp.phi_nn * e_k},
                      Wedge{1.0, tp.phi_dd * e_v + tp.phi_dn * e_k, in_y},
                      Wedge{-d.delta_out, e_v, e_k}});
  }

  double total = 0.0;
  std::vector<int> pick(m, 0);
  Eigen::MatrixXd mat(n, n);
  for (;;) {
    double coef = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const Wedge& w = wedges[j][static_cast<std::size_t>(pick[j])];
      coef *= w.coef;
      mat.col(static_cast<Eigen::Index>(j)) = w.u;
      mat.col(mi + static_cast<Eigen::Index>(j)) = w.v;
    }
    if (coef != 0.0) total += coef * determinant(mat);
    std::size_t k = 0;
    while (k < m && ++pick[k] == 4) pick[k++] = 0;
    if (k == m) break;
  }
  return total;
}

namespace {

void append_part(MetricGraph& out, JoinedGraph& joined, const PortedGraph& part,
                 const std::map<VertexId, VertexId>& fixed, VertexId& next_id) {
  std::map<VertexId, VertexId> map = fixed;
  for (const Vertex& v : part.graph().vertices()) {
    if (map.contains(v.id)) continue;
    map[v.id] = next_id;
    out.vertices.push_back({next_id, v.condition});
    ++next_id;
  }
  const auto offset = static_cast<EdgeId>(out.edges.size());
  for (const Edge& e : part.graph().edges())
    out.edges.push_back({offset + e.id, map.at(e.from), map.at(e.to), e.length, e.potential});
  joined.vertex_maps.push_back(std::move(map));
  joined.edge_offsets.push_back(offset + 1);
}

}  // namespace

JoinedGraph join_series(const PortedGraph& first, const PortedGraph& second) {
  JoinedGraph joined;
  MetricGraph out;
  VertexId next_id = 1;
  append_part(out, joined, first, {}, next_id);
  const VertexId cut = joined.vertex_maps[0].at(first.v_out());
  for (Vertex& v : out.vertices)
    if (v.id == cut) v.condition.reset();
  append_part(out, joined, second, {{second.v_in(), cut}}, next_id);
  joined.v_in = joined.vertex_maps[0].at(first.v_in());
  joined.v_out = joined.vertex_maps[1].at(second.v_out());
  joined.joints = {cut};
  joined.graph = validate_graph(std::move(out));
  return joined;
}

JoinedGraph join_parallel(std::span<const PortedGraph> parts) {
  if (parts.size() < 2) throw Error(ErrorCode::MNotAtLeastTwo, "parallel connection needs at least two parts");
  JoinedGraph joined;
  MetricGraph out;
  const VertexId in = 1, outv = 2;
  out.vertices.push_back({in, std::nullopt});
  out.vertices.push_back({outv, std::nullopt});
  VertexId next_id = 3;
  for (const PortedGraph& p : parts) append_part(out, joined, p, {{p.v_in(), in}, {p.v_out(), outv}}, next_id);
  joined.v_in = in;
  joined.v_out = outv;
  joined.joints = {in, outv};
  joined.graph = validate_graph(std::move(out));
  return joined;
}

JoinedGraph join_parallel(const PortedGraph& first, const PortedGraph& second) {
  const std::array<PortedGraph, 2> parts{first, second};
  return join_parallel(parts);
}

double joined_phi(const JoinedGraph& joined, const VertexCondition& in, const VertexCondition& out, double z,
                  double tol) {
  const std::array<ConditionOverride, 2> overrides{ConditionOverride{joined.v_in, in},
                                                   ConditionOverride{joined.v_out, out}};
  return assemble_with(joined.graph, overrides, joined.v_in, z, tol).determinant();
}

}  // namespace qgraph
