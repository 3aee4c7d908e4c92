#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace qgraph;
using namespace qgraph::testing;

namespace {

ErrorCode code_of(const MetricGraph& g) {
  try {
    (void)validate_graph(g);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("graph unexpectedly valid");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("single Dirichlet edge is valid") {
  const ValidatedGraph g = validate_graph(interval(1.0, Dirichlet{}, Dirichlet{}));
  CHECK(g.total_length() == 1.0);
  CHECK(g.edge_count() == 1);
  CHECK(g.pendant_vertices().size() == 2);
}

TEST_CASE("two edges without a common vertex are disconnected") {
  MetricGraph m{{{1, Dirichlet{}}, {2, Dirichlet{}}, {3, Dirichlet{}}, {4, Dirichlet{}}},
                {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 3, 4, 1.0, ZeroPotential{}}}};
  CHECK(code_of(m) == ErrorCode::Disconnected);
}

TEST_CASE("three-edge path with Robin and Dirichlet ends") {
  MetricGraph m = unit_path(3);
  m.vertices[0].condition = Robin{2.0};
  m.vertices[1].condition = GeneralizedNeumann{};
  const ValidatedGraph g = validate_graph(m);
  CHECK(g.total_length() == doctest::Approx(3.0));
  CHECK(g.degree(2) == 2);
  CHECK(std::holds_alternative<GeneralizedNeumann>(g.condition(3)));
}

TEST_CASE("validation errors") {
  SUBCASE("nonpositive length") {
    CHECK(code_of(interval(0.0, Dirichlet{}, Dirichlet{})) == ErrorCode::NonpositiveLength);
    CHECK(code_of(interval(-1.0, Dirichlet{}, Dirichlet{})) == ErrorCode::NonpositiveLength);
  }
  SUBCASE("missing boundary condition") {
    MetricGraph m = interval(1.0, Dirichlet{}, Dirichlet{});
    m.vertices[1].condition.reset();
    CHECK(code_of(m) == ErrorCode::MissingBoundaryCondition);
  }
  SUBCASE("interior condition on a pendant vertex") {
    CHECK(code_of(interval(1.0, GeneralizedNeumann{}, Dirichlet{})) == ErrorCode::InteriorConditionOnPendant);
  }
  SUBCASE("boundary condition on an interior vertex") {
    MetricGraph m = unit_path(2);
    m.vertices[1].condition = Dirichlet{};
    CHECK(code_of(m) == ErrorCode::BoundaryConditionOnInterior);
  }
  SUBCASE("duplicate ids") {
    MetricGraph m = unit_path(2);
    m.vertices[2].id = 1;
    CHECK(code_of(m) == ErrorCode::DuplicateId);
    MetricGraph e = unit_path(2);
    e.edges[1].id = 1;
    CHECK(code_of(e) == ErrorCode::DuplicateId);
  }
  SUBCASE("edge ids must be 1..g") {
    MetricGraph m = unit_path(2);
    m.edges[1].id = 5;
    CHECK(code_of(m) == ErrorCode::EdgeIdsNotContiguous);
  }
  SUBCASE("self loop") {
    MetricGraph m = unit_path(2);
    m.edges.push_back({3, 2, 2, 1.0, ZeroPotential{}});
    CHECK(code_of(m) == ErrorCode::SelfLoop);
  }
  SUBCASE("unknown endpoint") {
    MetricGraph m = interval(1.0, Dirichlet{}, Dirichlet{});
    m.edges[0].to = 7;
    CHECK(code_of(m) == ErrorCode::UnknownVertex);
  }
  SUBCASE("bad potential") {
    CHECK(code_of(interval(1.0, Dirichlet{}, Dirichlet{}, PiecewiseConstantPotential{{1.5}, {0.0, 1.0}})) ==
          ErrorCode::InvalidPotential);
    CHECK(code_of(interval(1.0, Dirichlet{}, Dirichlet{}, SampledPotential{{0.0, 0.5}, {1.0, 2.0}})) ==
          ErrorCode::InvalidPotential);
  }
  SUBCASE("non-finite Robin coefficient") {
    CHECK(code_of(interval(1.0, Robin{INFINITY}, Dirichlet{})) == ErrorCode::InvalidCondition);
  }
}

TEST_CASE("multigraphs are allowed") {
  MetricGraph m{{{1, std::nullopt}, {2, std::nullopt}},
                {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 2, 1, 1.0, ZeroPotential{}}}};
  const ValidatedGraph g = validate_graph(m);
  CHECK(g.degree(1) == 2);
  CHECK(g.pendant_vertices().empty());
}

TEST_CASE("reverse_edge") {
  SUBCASE("zero potential keeps its potential") {
    const MetricGraph r = reverse_edge(interval(1.0, Dirichlet{}, Neumann{}), 1);
    CHECK(r.edges[0].from == 2);
    CHECK(r.edges[0].to == 1);
    CHECK(r.edges[0].potential == PotentialSpec{ZeroPotential{}});
  }
  SUBCASE("piecewise potential is reflected") {
    const MetricGraph m = interval(1.0, Dirichlet{}, Dirichlet{}, PiecewiseConstantPotential{{0.3}, {1.0, 5.0}});
    const MetricGraph r = reverse_edge(m, 1);
    const auto& p = std::get<PiecewiseConstantPotential>(r.edges[0].potential);
    REQUIRE(p.breakpoints.size() == 1);
    CHECK(p.breakpoints[0] == doctest::Approx(0.7));
    CHECK(p.values == std::vector<double>{5.0, 1.0});
  }
  SUBCASE("sampled potential is reflected") {
    const MetricGraph m = interval(2.0, Dirichlet{}, Dirichlet{}, SampledPotential{{0.0, 0.5, 2.0}, {1.0, 2.0, 3.0}});
    const PotentialSpec r = reverse_edge(m, 1).edges[0].potential;
    for (double x : {0.0, 0.3, 1.1, 2.0})
      CHECK(evaluate(r, x) == doctest::Approx(evaluate(m.edges[0].potential, 2.0 - x)));
  }
  SUBCASE("involution") {
    MetricGraph m = unit_path(3);
    m.edges[1].potential = PiecewiseConstantPotential{{0.25, 0.5}, {1.0, -2.0, 4.0}};
    CHECK(reverse_edge(reverse_edge(m, 2), 2) == m);
  }
  SUBCASE("unknown edge") {
    CHECK_THROWS_AS(reverse_edge(unit_path(2), 3), Error);
    try {
      (void)reverse_edge(unit_path(2), 3);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownEdge);
    }
  }
  SUBCASE("validity and total length are preserved") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
      const PortedGraph pg = random_ported(rng);
      const MetricGraph& m = pg.graph().graph();
      for (const Edge& e : m.edges) {
        const ValidatedGraph r = validate_graph(reverse_edge(m, e.id));
        CHECK(r.total_length() == doctest::Approx(pg.graph().total_length()).epsilon(1e-15));
      }
    }
    MetricGraph bad = unit_path(2);
    bad.edges[0].length = -1.0;
    CHECK_THROWS_AS(validate_graph(reverse_edge(bad, 2)), Error);
  }
}

TEST_CASE("normalize_root_orientation") {
  SUBCASE("single edge, root at head") {
    const MetricGraph r = normalize_root_orientation(interval(1.0, Dirichlet{}, Neumann{}), 2);
    CHECK(r.edges[0].from == 2);
    CHECK(r.edges[0].to == 1);
  }
  SUBCASE("outgoing star is unchanged") {
    MetricGraph m{{{1, std::nullopt}, {2, Dirichlet{}}, {3, Dirichlet{}}, {4, Dirichlet{}}},
                  {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 1, 3, 1.0, ZeroPotential{}}, {3, 1, 4, 1.0, ZeroPotential{}}}};
    CHECK(normalize_root_orientation(m, 1) == m);
  }
  SUBCASE("two-cycle") {
    MetricGraph m{{{1, std::nullopt}, {2, std::nullopt}},
                  {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 2, 1, 1.0, ZeroPotential{}}}};
    const MetricGraph r = normalize_root_orientation(m, 1);
    CHECK(r.edges[0].from == 1);
    CHECK(r.edges[1].from == 1);
    CHECK(r.edges[1].to == 2);
  }
  SUBCASE("unknown root") {
    try {
      (void)normalize_root_orientation(unit_path(2), 9);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownVertex);
    }
  }
}

TEST_CASE("Neumann and Robin(0) compare equal") {
  CHECK(equivalent(Neumann{}, Robin{0.0}));
  CHECK_FALSE(equivalent(Neumann{}, Robin{0.5}));
  CHECK(interval(1.0, Neumann{}, Dirichlet{}) == interval(1.0, Robin{0.0}, Dirichlet{}));
}
