#include "qgraph/edge_solutions.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "qgraph/ode.hpp"

namespace qgraph {

namespace {

using Matrix2 = Eigen::Matrix2d;
using State = Eigen::Vector4d;  // (c, c', s, s')

FundamentalPaird piecewise_pair(const PiecewiseConstantPotential& p, double length, double z) {
  Matrix2 total = Matrix2::Identity();
  double left = 0.0;
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    const double right = k < p.breakpoints.size() ? p.breakpoints[k] : length;
    if (right > left) total = constant_cell(z - p.values[k], right - left).transfer() * total;
    left = std::max(left, right);
  }
  if (!total.allFinite()) throw Error(ErrorCode::ToleranceNotMet, "transfer product overflowed");
  return FundamentalPaird::from_transfer(total);
}

// Points where q may fail to be smooth; the integrator restarts there.
std::vector<double> smooth_pieces(const PotentialSpec& potential, double length) {
  std::vector<double> nodes{0.0};
  if (const auto* pc = std::get_if<PiecewiseConstantPotential>(&potential)) {
    nodes.insert(nodes.end(), pc->breakpoints.begin(), pc->breakpoints.end());
  } else if (const auto* sp = std::get_if<SampledPotential>(&potential)) {
    nodes.insert(nodes.end(), sp->grid.begin() + 1, sp->grid.end() - 1);
  }
  nodes.push_back(length);
  std::vector<double> out;
  for (double x : nodes) {
    if (out.empty() || x > out.back()) out.push_back(std::min(x, length));
  }
  return out;
}

}  // namespace

FundamentalPaird integrate_fundamental_pair(const PotentialSpec& potential, double length, double z,
                                            double tol) {
  if (!(length > 0.0)) throw Error(ErrorCode::NonpositiveLength, "edge length must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  check_potential(potential, length);

  // Local tolerance is tighter than the contract so accumulated error stays within tol.
  const ode::Options opt{.rtol = 1e-2 * tol, .atol = 1e-2 * tol};
  const std::vector<double> nodes = smooth_pieces(potential, length);
  State y(1.0, 0.0, 0.0, 1.0);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    // Evaluate q strictly inside the piece so piecewise-constant jumps resolve to the right cell.
    const double a = nodes[k], b = nodes[k + 1];
    auto rhs = [&potential, z, a, b](double x, const State& u) {
      const double q = evaluate(potential, std::clamp(x, a + 1e-15 * (b - a), b - 1e-15 * (b - a)));
      return State(u(1), (q - z) * u(0), u(3), (q - z) * u(2));
    };
    y = ode::dopri5<double, 4>(rhs, a, b, y, opt);
  }
  FundamentalPaird out{y(2), y(3), y(0), y(1)};
  if (std::abs(wronskian(out) - 1.0) > 100.0 * tol * std::max(1.0, y.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::ToleranceNotMet,
                "Wronskian drifted to " + std::to_string(wronskian(out)));
  return out;
}

FundamentalPaird fundamental_pair(const PotentialSpec& potential, double length, double z, double tol) {
  if (!(length > 0.0)) throw Error(ErrorCode::NonpositiveLength, "edge length must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (!std::isfinite(z)) throw Error(ErrorCode::InvalidArgument, "z must be finite");
  check_potential(potential, length);
  return std::visit(
      [&](const auto& p) -> FundamentalPaird {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZeroPotential>) {
          return constant_cell(z, length);
        } else if constexpr (std::is_same_v<T, ConstantPotential>) {
          return constant_cell(z - p.q0, length);
        } else if constexpr (std::is_same_v<T, PiecewiseConstantPotential>) {
          return piecewise_pair(p, length, z);
        } else {
          return integrate_fundamental_pair(potential, length, z, tol);
        }
      },
      potential);
}

}  // namespace qgraph
