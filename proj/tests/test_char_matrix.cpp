#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgraph/char_matrix.hpp"
#include "support.hpp"

using namespace qgraph;
using namespace qgraph::testing;

namespace {

// H-shaped tree: two interior vertices 5, 6 joined by edge 5, legs to 1..4.
MetricGraph h_graph() {
  MetricGraph m;
  m.vertices = {{1, Dirichlet{}}, {2, Robin{0.7}}, {3, Neumann{}}, {4, Dirichlet{}}, {5, std::nullopt}, {6, std::nullopt}};
  m.edges = {{1, 1, 5, 1.0, ConstantPotential{0.5}},
             {2, 5, 2, 0.7, ZeroPotential{}},
             {3, 6, 3, 1.3, PiecewiseConstantPotential{{0.4}, {1.0, -1.0}}},
             {4, 4, 6, 0.9, ZeroPotential{}},
             {5, 5, 6, 1.1, ConstantPotential{-2.0}}};
  return m;
}

}  // namespace

TEST_CASE("single edge matrices") {
  const ValidatedGraph g = validate_graph(interval(1.0, Dirichlet{}, Neumann{}));
  const double z = 2.3;
  const FundamentalPaird p = fundamental_pair(ZeroPotential{}, 1.0, z);
  const CharMatrix m = assemble(g, 1, RootKind::GeneralizedDirichlet, z);
  Eigen::Matrix2d expect;
  expect << 1, 0, p.c_prime, p.s_prime;
  CHECK((m.entries - expect).cwiseAbs().maxCoeff() < 1e-15);

  const ValidatedGraph h = validate_graph(interval(1.0, Neumann{}, Dirichlet{}));
  const CharMatrix n = assemble(h, 1, RootKind::GeneralizedNeumann, z);
  expect << 0, 1, p.c, p.s;
  CHECK((n.entries - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(n.rows[0].vertex == 1);
  CHECK(n.rows[1].vertex == 2);
}

TEST_CASE("two-edge star rooted at the center") {
  MetricGraph m{{{1, std::nullopt}, {2, Dirichlet{}}, {3, Robin{1.5}}},
                {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 3, 1, 2.0, ZeroPotential{}}}};
  const double z = 1.7;
  const CharMatrix cm = assemble(validate_graph(m), 1, RootKind::GeneralizedNeumann, z);
  // After normalization both edges leave the root, so its rows involve only B and A.
  Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
  expect.row(0) << -1, 1, 0, 0;  // continuity: B2 - B1
  expect.row(1) << 0, 0, 1, 1;   // Kirchhoff: A1 + A2
  const FundamentalPaird p1 = fundamental_pair(ZeroPotential{}, 1.0, z);
  const FundamentalPaird p2 = fundamental_pair(ZeroPotential{}, 2.0, z);
  expect.row(2) << p1.c, 0, p1.s, 0;  // Dirichlet at the head of edge 1
  // Robin at the head of edge 2: y'(l) - beta y(l)
  expect.row(3) << 0, p2.c_prime - 1.5 * p2.c, 0, p2.s_prime - 1.5 * p2.s;
  CHECK((cm.entries - expect).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(cm.rows[0].kind == RowKind::Continuity);
  CHECK(cm.rows[1].kind == RowKind::Kirchhoff);
  CHECK(cm.rows[2].kind == RowKind::Boundary);
}

TEST_CASE("phi on the unit interval") {
  const ValidatedGraph g = validate_graph(interval(1.0, Dirichlet{}, Dirichlet{}));
  CHECK(std::abs(phi(g, 1, RootKind::GeneralizedDirichlet, pi * pi)) < 1e-15);
  CHECK(phi(g, 1, RootKind::GeneralizedDirichlet, pi * pi / 4) == doctest::Approx(2.0 / pi).epsilon(1e-14));
}

TEST_CASE("two-cycle vanishes on the circle spectrum") {
  MetricGraph m{{{1, std::nullopt}, {2, std::nullopt}},
                {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 2, 1, 1.0, ZeroPotential{}}}};
  const CharacteristicFunction f(validate_graph(m), 1, RootKind::GeneralizedNeumann);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(f(k * k * pi * pi)) < 1e-12);
  CHECK(std::abs(f(2.0)) > 0.1);
}

TEST_CASE("row count and labels") {
  const ValidatedGraph g = validate_graph(h_graph());
  const CharMatrix cm = assemble(g, 5, RootKind::GeneralizedNeumann, 3.0);
  CHECK(cm.entries.rows() == 10);
  CHECK(cm.rows.front().vertex == 5);
  for (Eigen::Index r = 0; r < cm.entries.rows(); ++r) CHECK_FALSE(cm.entries.row(r).isZero(0.0));
  // remaining vertices ascend after the root
  std::vector<VertexId> order;
  for (const RowLabel& l : cm.rows)
    if (order.empty() || order.back() != l.vertex) order.push_back(l.vertex);
  CHECK(order == std::vector<VertexId>{5, 1, 2, 3, 4, 6});
}

TEST_CASE("interior roots give proportional characteristic functions") {
  const ValidatedGraph g = validate_graph(h_graph());
  const CharacteristicFunction f5(g, 5, RootKind::GeneralizedNeumann), f6(g, 6, RootKind::GeneralizedNeumann);
  std::vector<double> ratios;
  for (double z : linspace(-3.0, 40.0, 37)) {
    const double a = f5(z), b = f6(z);
    if (std::abs(b) > 1e-6) ratios.push_back(a / b);
  }
  double mean = 0.0, var = 0.0;
  for (double r : ratios) mean += r / static_cast<double>(ratios.size());
  for (double r : ratios) var += (r - mean) * (r - mean) / static_cast<double>(ratios.size());
  CHECK(std::sqrt(var) / std::abs(mean) < 1e-8);
}

TEST_CASE("generalized Dirichlet root") {
  // A star of three unit legs with Dirichlet ends and a generalized Dirichlet
  // center decouples into three Dirichlet intervals: phi ~ s^3.
  MetricGraph m{{{1, std::nullopt}, {2, Dirichlet{}}, {3, Dirichlet{}}, {4, Dirichlet{}}},
                {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 1, 3, 1.0, ZeroPotential{}}, {3, 1, 4, 1.0, ZeroPotential{}}}};
  const ValidatedGraph g = validate_graph(m);
  const double z1 = 2.0, z2 = 5.5;
  const double s1 = fundamental_pair(ZeroPotential{}, 1.0, z1).s, s2 = fundamental_pair(ZeroPotential{}, 1.0, z2).s;
  const double r = phi(g, 1, RootKind::GeneralizedDirichlet, z1) / phi(g, 1, RootKind::GeneralizedDirichlet, z2);
  CHECK(r == doctest::Approx(std::pow(s1 / s2, 3)).epsilon(1e-12));
}

TEST_CASE("orientation does not move the zeros") {
  const ValidatedGraph g = validate_graph(h_graph());
  ScanOptions o{-5.0, 30.0, 2000, 1e-13, 1e-8};
  const CharacteristicFunction f(g, 5, RootKind::GeneralizedNeumann);
  const auto base = find_roots([&](double z) { return f(z); }, o);
  REQUIRE(base.size() >= 3);
  for (EdgeId e : {1, 3, 4, 5}) {
    const CharacteristicFunction fr(validate_graph(reverse_edge(h_graph(), e)), 5, RootKind::GeneralizedNeumann);
    std::string why;
    CHECK_MESSAGE(same_roots(base, find_roots([&](double z) { return fr(z); }, o), 1e-8, &why), why);
  }
}

TEST_CASE("overrides") {
  const ValidatedGraph g = validate_graph(h_graph());
  const ConditionOverride bad{5, Robin{1.0}};
  CHECK_THROWS_AS(assemble_with(g, std::span(&bad, 1), std::nullopt, 1.0), Error);
  const ConditionOverride robin0{5, Robin{0.0}};
  const ConditionOverride gn{5, GeneralizedNeumann{}};
  CHECK(assemble_with(g, std::span(&robin0, 1), 5, 1.0).determinant() ==
        doctest::Approx(assemble_with(g, std::span(&gn, 1), 5, 1.0).determinant()).epsilon(1e-14));
  const ConditionOverride unknown{42, Dirichlet{}};
  CHECK_THROWS_AS(assemble_with(g, std::span(&unknown, 1), std::nullopt, 1.0), Error);
}
