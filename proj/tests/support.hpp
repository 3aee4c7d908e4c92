// Shared fixtures for the test programs: small graphs and random corpora.
#ifndef QGRAPH_TESTS_SUPPORT_HPP
#define QGRAPH_TESTS_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qgraph/composition.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/spectrum.hpp"
#include "qgraph/two_port.hpp"

namespace qgraph::testing {

inline constexpr double pi = std::numbers::pi;

inline std::string data_path(const std::string& name) { return std::string(QGRAPH_DATA_DIR) + "/" + name; }

inline MetricGraph interval(double length, VertexCondition a, VertexCondition b,
                            PotentialSpec q = ZeroPotential{}) {
  return MetricGraph{{{1, a}, {2, b}}, {{1, 1, 2, length, std::move(q)}}};
}

/// Path 1 - 2 - ... - (g+1) with unit zero-potential edges, Dirichlet ends.
inline MetricGraph unit_path(int g) {
  MetricGraph m;
  for (int v = 1; v <= g + 1; ++v)
    m.vertices.push_back({v, v == 1 || v == g + 1 ? std::optional<VertexCondition>(Dirichlet{}) : std::nullopt});
  for (int e = 1; e <= g; ++e) m.edges.push_back({e, e, e + 1, 1.0, ZeroPotential{}});
  return m;
}

inline PortedGraph ported_unit_edge() {
  return PortedGraph(validate_graph(interval(1.0, Dirichlet{}, Dirichlet{})), 1, 2);
}

inline VertexCondition random_boundary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> beta(-2.0, 2.0);
  switch (rng() % 3) {
    case 0: return Dirichlet{};
    case 1: return Neumann{};
    default: return Robin{beta(rng)};
  }
}

/// Random path or star with 1..max_edges edges, constant potentials in [-5, 5],
/// lengths in [0.5, 1.5], random orientations and shuffled edge ids.
inline PortedGraph random_ported(std::mt19937_64& rng, int max_edges = 5) {
  std::uniform_real_distribution<double> q(-5.0, 5.0), len(0.5, 1.5);
  const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_edges));
  const bool star = g >= 3 && rng() % 2 == 0;
  MetricGraph m;
  std::vector<std::pair<int, int>> links;
  if (star) {
    // center 1, legs 2..g+1
    for (int k = 2; k <= g + 1; ++k) links.push_back({1, k});
  } else {
    for (int k = 1; k <= g; ++k) links.push_back({k, k + 1});
  }
  std::vector<int> ids(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k) ids[static_cast<std::size_t>(k)] = k + 1;
  std::shuffle(ids.begin(), ids.end(), rng);
  for (int k = 0; k < g; ++k) {
    auto [a, b] = links[static_cast<std::size_t>(k)];
    if (rng() % 2) std::swap(a, b);
    m.edges.push_back({ids[static_cast<std::size_t>(k)], a, b, len(rng), ConstantPotential{q(rng)}});
  }
  std::vector<int> degree(static_cast<std::size_t>(g + 2), 0);
  for (const Edge& e : m.edges) {
    ++degree[static_cast<std::size_t>(e.from)];
    ++degree[static_cast<std::size_t>(e.to)];
  }
  for (int v = 1; v <= g + 1; ++v) {
    Vertex vx{v, std::nullopt};
    if (degree[static_cast<std::size_t>(v)] == 1) vx.condition = random_boundary(rng);
    m.vertices.push_back(vx);
  }
  VertexId v_in = 0, v_out = 0;
  if (star) {
    v_in = 2;
    v_out = 3;
  } else {
    v_in = 1;
    v_out = g + 1;
  }
  if (rng() % 2) std::swap(v_in, v_out);
  return PortedGraph(validate_graph(std::move(m)), v_in, v_out);
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
  return out;
}

/// Every root of a is within tol of a root of b and vice versa, with matching flags.
inline bool same_roots(const std::vector<Root>& a, const std::vector<Root>& b, double tol,
                       std::string* why = nullptr) {
  auto covered = [tol](const std::vector<Root>& x, const std::vector<Root>& y) {
    for (const Root& r : x) {
      const bool hit = std::any_of(y.begin(), y.end(), [&](const Root& s) {
        return std::abs(s.z - r.z) <= tol && s.multiplicity_flag == r.multiplicity_flag;
      });
      if (!hit) return r.z;
    }
    return std::nan("");
  };
  const double miss_a = covered(a, b), miss_b = covered(b, a);
  if (why && !std::isnan(miss_a)) *why = "root " + std::to_string(miss_a) + " only in first set";
  if (why && !std::isnan(miss_b)) *why = "root " + std::to_string(miss_b) + " only in second set";
  return std::isnan(miss_a) && std::isnan(miss_b);
}

/// Shooting oracle for the corpus graphs (constant potentials, every vertex off
/// the v_in..v_out path is a pendant leg).  Starts at v_in with (y, y') = start
/// and returns (y, y') at v_out, derivatives taken along the direction of travel.
inline std::array<double, 2> shoot(const PortedGraph& pg, double z, std::array<double, 2> start) {
  const ValidatedGraph& g = pg.graph();
  auto other = [&](const Edge& e, VertexId v) { return e.from == v ? e.to : e.from; };
  // parent pointers from v_in
  std::map<VertexId, std::pair<VertexId, std::size_t>> parent;
  std::vector<VertexId> queue{pg.v_in()};
  parent[pg.v_in()] = {0, 0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const EdgeEnd& end : g.ends(queue[i])) {
      const VertexId u = other(g.edges()[end.edge], queue[i]);
      if (!parent.contains(u)) {
        parent[u] = {queue[i], end.edge};
        queue.push_back(u);
      }
    }
  std::vector<std::size_t> path;
  for (VertexId v = pg.v_out(); v != pg.v_in(); v = parent[v].first) path.push_back(parent[v].second);
  std::reverse(path.begin(), path.end());

  double y = start[0], yp = start[1];
  VertexId at = pg.v_in();
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Edge& e = g.edges()[path[k]];
    const FundamentalPaird p = fundamental_pair(e.potential, e.length, z);
    const double y1 = p.c * y + p.s * yp, yp1 = p.c_prime * y + p.s_prime * yp;
    y = y1;
    yp = yp1;
    at = other(e, at);
    if (at == pg.v_out()) break;
    for (const EdgeEnd& end : g.ends(at)) {
      if (end.edge == path[k] || end.edge == path[k + 1]) continue;
      const Edge& leg = g.edges()[end.edge];
      const FundamentalPaird q = fundamental_pair(leg.potential, leg.length, z);
      const VertexCondition far = g.condition(other(leg, at));
      double a = 0.0;
      if (std::holds_alternative<Dirichlet>(far)) {
        a = -q.c / q.s * y;
      } else {
        const double beta = std::holds_alternative<Robin>(far) ? std::get<Robin>(far).beta : 0.0;
        a = -(q.c_prime - beta * q.c) / (q.s_prime - beta * q.s) * y;
      }
      yp -= a;
    }
  }
  return {y, yp};
}

}  // namespace qgraph::testing

#endif  // QGRAPH_TESTS_SUPPORT_HPP
