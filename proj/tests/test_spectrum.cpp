#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgraph/char_matrix.hpp"
#include "support.hpp"

using namespace qgraph;
using namespace qgraph::testing;

namespace {

double sinc_dd(double z) {
  if (z == 0.0) return 1.0;
  const double m = std::sqrt(std::abs(z));
  return z > 0 ? std::sin(m) / m : std::sinh(m) / m;
}

}  // namespace

TEST_CASE("Dirichlet interval zeros") {
  const auto roots = find_roots(sinc_dd, ScanOptions{0.5, 100.0, 2000, 1e-13, 1e-8});
  REQUIRE(roots.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(roots[k].z - (k + 1.0) * (k + 1.0) * pi * pi) < 1e-8);
    CHECK(roots[k].multiplicity_flag == Multiplicity::Simple);
    CHECK(roots[k].refined_by == RefinedBy::SignChangeBisection);
    CHECK(roots[k].residual <= 1e-8);
  }
  CHECK(find_roots(sinc_dd, ScanOptions{1.0, 2.0, 100, 1e-13, 1e-8}).empty());
}

TEST_CASE("double zeros are flagged") {
  auto f = [](double z) {
    const double m = std::sqrt(std::abs(z));
    return z >= 0 ? -4 * std::sin(m) * std::sin(m) : 4 * std::sinh(m) * std::sinh(m);
  };
  const auto roots = find_roots(f, ScanOptions{0.5, 50.0, 2000, 1e-13, 1e-8});
  REQUIRE(roots.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(roots[k].z == doctest::Approx((k + 1.0) * (k + 1.0) * pi * pi).epsilon(1e-8));
    CHECK(roots[k].multiplicity_flag == Multiplicity::EvenSuspected);
    CHECK(roots[k].refined_by == RefinedBy::MinimumRefinement);
  }
  CHECK(to_string(Multiplicity::EvenSuspected) == "even_suspected");
  CHECK(to_string(Multiplicity::Simple) == "simple");
}

TEST_CASE("zero on a grid point and at the ends") {
  auto f = [](double z) { return z - 2.0; };
  const auto roots = find_roots(f, ScanOptions{0.0, 4.0, 5, 1e-13, 1e-8});
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].z == 2.0);
  const auto edge = find_roots(f, ScanOptions{2.0, 3.0, 11, 1e-13, 1e-8});
  REQUIRE(edge.size() == 1);
  CHECK(edge[0].z == 2.0);
}

TEST_CASE("refining the grid keeps every simple root") {
  const ValidatedGraph g = validate_graph(unit_path(3));
  const CharacteristicFunction f(g, 2, RootKind::GeneralizedNeumann);
  auto fn = [&](double z) { return f(z); };
  for (int n : {300, 1000}) {
    const auto coarse = find_roots(fn, ScanOptions{-5.0, 60.0, n, 1e-13, 1e-8});
    const auto fine = find_roots(fn, ScanOptions{-5.0, 60.0, 2 * n, 1e-13, 1e-8});
    for (const Root& r : coarse) {
      if (r.multiplicity_flag != Multiplicity::Simple) continue;
      const bool kept = std::any_of(fine.begin(), fine.end(), [&](const Root& s) { return std::abs(s.z - r.z) < 1e-10; });
      CHECK(kept);
    }
  }
}

TEST_CASE("interval spectra") {
  const ValidatedGraph dd = validate_graph(interval(1.0, Dirichlet{}, Dirichlet{}));
  const ValidatedGraph nn = validate_graph(interval(1.0, Neumann{}, Neumann{}));
  const double hi = 10.5 * 10.5 * pi * pi;
  const ScanOptions o{default_negative_floor(1.0), hi, default_grid_points(1.0, -25.0, hi), 1e-13, 1e-8};
  const CharacteristicFunction fd(dd, 1, RootKind::GeneralizedDirichlet), fn(nn, 1, RootKind::GeneralizedNeumann);
  const auto rd = find_roots([&](double z) { return fd(z); }, o);
  const auto rn = find_roots([&](double z) { return fn(z); }, o);
  REQUIRE(rd.size() == 10);
  REQUIRE(rn.size() == 11);
  for (std::size_t k = 0; k < 10; ++k) CHECK(std::abs(rd[k].z - (k + 1.0) * (k + 1.0) * pi * pi) < 1e-8);
  for (std::size_t k = 0; k < 11; ++k) CHECK(std::abs(rn[k].z - 1.0 * k * k * pi * pi) < 1e-8);
}

TEST_CASE("Robin pushes an eigenvalue below zero") {
  // y'(0) + 3 y(0) = 0, y(1) = 0.  With z = -k^2, y = sinh(k (1 - x)) needs k coth k = 3.
  // root at the Dirichlet end so the Robin row stays in the matrix
  const ValidatedGraph g = validate_graph(interval(1.0, Robin{3.0}, Dirichlet{}));
  const CharacteristicFunction f(g, 2, RootKind::GeneralizedDirichlet);
  const auto roots = find_roots([&](double z) { return f(z); }, ScanOptions{-25.0, 0.0, 2000, 1e-13, 1e-8});
  REQUIRE(roots.size() == 1);
  const double k = std::sqrt(-roots[0].z);
  CHECK(std::tanh(k) == doctest::Approx(k / 3.0).epsilon(1e-10));
}

TEST_CASE("Weyl estimate") {
  CHECK(weyl_count_estimate(validate_graph(interval(1.0, Dirichlet{}, Dirichlet{})), 100 * pi * pi) ==
        doctest::Approx(10.0));
  MetricGraph cycle{{{1, std::nullopt}, {2, std::nullopt}},
                    {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 2, 1, 1.0, ZeroPotential{}}}};
  const ValidatedGraph c = validate_graph(cycle);
  CHECK(weyl_count_estimate(c, 25 * pi * pi) == doctest::Approx(10.0));
  MetricGraph star{{{1, std::nullopt}, {2, Dirichlet{}}, {3, Dirichlet{}}, {4, Dirichlet{}}},
                   {{1, 1, 2, 1.0, ZeroPotential{}}, {2, 1, 3, 1.0, ZeroPotential{}}, {3, 1, 4, 1.0, ZeroPotential{}}}};
  CHECK(weyl_count_estimate(validate_graph(star), 16 * pi * pi) == doctest::Approx(12.0));

  // circle of circumference 2 up to (5 pi)^2 + a bit: 0 and five double roots
  const CharacteristicFunction f(c, 1, RootKind::GeneralizedNeumann);
  const double hi = 25.5 * pi * pi;
  const auto roots = find_roots([&](double z) { return f(z); }, ScanOptions{-1.0, hi, 4000, 1e-13, 1e-8});
  REQUIRE(roots.size() == 6);
  CHECK(roots[0].multiplicity_flag == Multiplicity::Simple);
  CHECK_FALSE(weyl_warning(c, roots, hi));
  CHECK(weyl_warning(c, {}, hi));
}

TEST_CASE("grid density") {
  CHECK(default_grid_points(1.0, 0.0, 1.0) == 200);
  CHECK(default_grid_points(1.0, 0.0, 100 * pi * pi) == 4001);
  CHECK(default_negative_floor(2.0) == -6.25);
}
