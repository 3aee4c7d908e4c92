#ifndef QGRAPH_ODE_HPP
#define QGRAPH_ODE_HPP

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstddef>

#include "qgraph/error.hpp"

namespace qgraph::ode {

struct Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  std::size_t max_steps = 2'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace detail {

template <typename Vector>
double error_norm(const Vector& err, const Vector& y0, const Vector& y1, const Options& opt) {
  const Vector scale = opt.atol + opt.rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array();
  return std::sqrt((err.cwiseQuotient(scale)).squaredNorm() / static_cast<double>(err.size()));
}

}  // namespace detail

/// Integrates y' = rhs(x, y) from x0 to x1 (x1 > x0) and returns y(x1).
/// Throws ToleranceNotMet if the step size collapses or max_steps is exceeded.
template <typename Scalar, int N, typename Rhs>
Eigen::Matrix<Scalar, N, 1> dopri5(Rhs&& rhs, Scalar x0, Scalar x1, Eigen::Matrix<Scalar, N, 1> y,
                                   const Options& opt, Stats* stats = nullptr) {
  using Vector = Eigen::Matrix<Scalar, N, 1>;
  constexpr Scalar c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr Scalar a21 = 1.0 / 5;
  constexpr Scalar a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr Scalar a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr Scalar a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr Scalar a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr Scalar b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // b - b_hat, the embedded error weights.
  constexpr Scalar e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  const Scalar span = x1 - x0;
  if (!(span > 0)) return y;

  Vector k1 = rhs(x0, y);
  Scalar h;
  {
    const Vector scale = opt.atol + opt.rtol * y.cwiseAbs().array();
    const Scalar d0 = std::sqrt(y.cwiseQuotient(scale).squaredNorm() / N);
    const Scalar d1 = std::sqrt(k1.cwiseQuotient(scale).squaredNorm() / N);
    h = (d0 < 1e-5 || d1 < 1e-5) ? Scalar(1e-6) * span : Scalar(0.01) * d0 / d1;
    h = std::min(h, span);
  }

  Scalar x = x0;
  const Scalar min_step = 1e-14 * std::max(std::abs(x0), std::abs(x1)) + 1e-300;
  std::size_t steps = 0;
  while (x < x1) {
    if (++steps > opt.max_steps) throw Error(ErrorCode::ToleranceNotMet, "step limit exceeded");
    if (h < min_step) throw Error(ErrorCode::ToleranceNotMet, "step size underflow");
    bool last = false;
    if (x + h >= x1) {
      h = x1 - x;
      last = true;
    }
    const Vector k2 = rhs(x + c2 * h, Vector(y + h * a21 * k1));
    const Vector k3 = rhs(x + c3 * h, Vector(y + h * (a31 * k1 + a32 * k2)));
    const Vector k4 = rhs(x + c4 * h, Vector(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const Vector k5 = rhs(x + c5 * h, Vector(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const Vector k6 =
        rhs(x + h, Vector(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const Vector y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector k7 = rhs(x + h, y_new);
    const Vector err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const Scalar norm = detail::error_norm(err, y, y_new, opt);
    if (!std::isfinite(norm)) throw Error(ErrorCode::ToleranceNotMet, "non-finite solution");
    const Scalar factor =
        norm == 0 ? Scalar(5) : std::clamp(Scalar(0.9) * std::pow(norm, Scalar(-0.2)), Scalar(0.2), Scalar(5));
    if (norm <= 1) {
      x = last ? x1 : x + h;
      y = y_new;
      k1 = k7;
      if (stats) ++stats->accepted;
      h *= factor;
    } else {
      if (stats) ++stats->rejected;
      h *= std::min(factor, Scalar(1));
    }
  }
  return y;
}

}  // namespace qgraph::ode

#endif  // QGRAPH_ODE_HPP
