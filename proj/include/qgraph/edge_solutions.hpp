#ifndef QGRAPH_EDGE_SOLUTIONS_HPP
#define QGRAPH_EDGE_SOLUTIONS_HPP

#include <Eigen/Core>
#include <cmath>

#include "qgraph/error.hpp"
#include "qgraph/graph.hpp"

namespace qgraph {

/// End values of the fundamental solutions of -y'' + q y = z y on [0, l]:
/// s(0) = 0, s'(0) = 1 and c(0) = 1, c'(0) = 0, evaluated at x = l.
template <typename Scalar>
struct FundamentalPair {
  Scalar s{};
  Scalar s_prime{};
  Scalar c{};
  Scalar c_prime{};

  /// Transfer matrix [[c, s], [c', s']] acting on (y(0), y'(0)).
  Eigen::Matrix<Scalar, 2, 2> transfer() const {
    Eigen::Matrix<Scalar, 2, 2> m;
    m << c, s, c_prime, s_prime;
    return m;
  }

  static FundamentalPair from_transfer(const Eigen::Matrix<Scalar, 2, 2>& m) {
    return {m(0, 1), m(1, 1), m(0, 0), m(1, 0)};
  }
};

using FundamentalPaird = FundamentalPair<double>;

template <typename Scalar>
Scalar wronskian(const FundamentalPair<Scalar>& p) {
  return p.c * p.s_prime - p.c_prime * p.s;
}

/// Below this value of |mu^2| l^2 the closed forms switch to their Taylor series.
inline constexpr double kSeriesCrossover = 1e-6;
/// Largest admissible sqrt(-mu^2) * l on the hyperbolic branch.
inline constexpr double kMaxHyperbolicArgument = 700.0;

/// Closed form for a constant potential, written in the shifted parameter mu2 = z - q0.
template <typename Scalar>
FundamentalPair<Scalar> constant_cell(Scalar mu2, Scalar length) {
  using std::abs;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  const Scalar t = mu2 * length * length;
  if (abs(t) < Scalar(kSeriesCrossover)) {
    // sin(mu l)/(mu l) = sum (-t)^k/(2k+1)!,  cos(mu l) = sum (-t)^k/(2k)!
    Scalar odd = 0, even = 0, term = 1;
    for (int k = 0; k < 6; ++k) {
      even += term;
      term /= Scalar(2 * k + 1);
      odd += term;
      term *= -t / Scalar(2 * k + 2);
    }
    return {length * odd, even, even, -mu2 * length * odd};
  }
  if (mu2 > 0) {
    const Scalar mu = sqrt(mu2);
    const Scalar sn = sin(mu * length), cs = cos(mu * length);
    return {sn / mu, cs, cs, -mu * sn};
  }
  const Scalar kappa = sqrt(-mu2);
  if (kappa * length > Scalar(kMaxHyperbolicArgument))
    throw Error(ErrorCode::ToleranceNotMet, "hyperbolic argument exceeds the representable range");
  const Scalar sh = sinh(kappa * length), ch = cosh(kappa * length);
  return {sh / kappa, ch, ch, kappa * sh};
}

/// Evaluate the fundamental pair of one edge at spectral point z = lambda^2.
/// tol only matters for sampled potentials, which go through the adaptive integrator.
FundamentalPaird fundamental_pair(const PotentialSpec& potential, double length, double z,
                                  double tol = 1e-10);

/// Adaptive-integrator path for any potential; used for sampled data and as a
/// cross-check for the closed forms.
FundamentalPaird integrate_fundamental_pair(const PotentialSpec& potential, double length, double z,
                                            double tol);

}  // namespace qgraph

#endif  // QGRAPH_EDGE_SOLUTIONS_HPP
