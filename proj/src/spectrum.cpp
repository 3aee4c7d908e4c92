#include "qgraph/spectrum.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "qgraph/error.hpp"

namespace qgraph {

std::string_view to_string(Multiplicity m) noexcept {
  return m == Multiplicity::Simple ? "simple" : "even_suspected";
}

std::vector<Root> find_roots(const std::function<double(double)>& f, const ScanOptions& opts) {
  if (!(opts.z_lo < opts.z_hi)) throw Error(ErrorCode::InvalidArgument, "z_lo must be below z_hi");
  if (opts.grid_points < 2) throw Error(ErrorCode::InvalidArgument, "grid_points must be at least 2");
  if (!(opts.tol_z > 0.0) || !(opts.tol_value > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");

  const auto n = static_cast<std::size_t>(opts.grid_points);
  const double h = (opts.z_hi - opts.z_lo) / static_cast<double>(n - 1);
  std::vector<double> zs(n), fs(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    zs[i] = i + 1 == n ? opts.z_hi : opts.z_lo + h * static_cast<double>(i);
    fs[i] = f(zs[i]);
    scale = std::max(scale, std::abs(fs[i]));
  }
  std::vector<Root> roots;
  if (scale == 0.0 || !std::isfinite(scale)) return roots;

  auto width_ok = [&](double a, double b) { return std::abs(b - a) <= opts.tol_z * std::max(1.0, std::abs(a)); };
  auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const int s0 = sign(fs[i]), s1 = sign(fs[i + 1]);
    if (s0 == 0) {
      const bool crossing = i > 0 && i + 1 < n && sign(fs[i - 1]) * s1 < 0;
      const bool edge = i == 0;
      roots.push_back({zs[i], RefinedBy::SignChangeBisection,
                       crossing || edge ? Multiplicity::Simple : Multiplicity::EvenSuspected, 0.0});
      continue;
    }
    if (s1 == 0 || s0 == s1) continue;
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::bisect(f, zs[i], zs[i + 1], width_ok, iters);
    const double za = std::abs(f(a)), zb = std::abs(f(b));
    const double z = za <= zb ? a : b;
    roots.push_back({z, RefinedBy::SignChangeBisection, Multiplicity::Simple, std::min(za, zb) / scale});
  }
  if (sign(fs[n - 1]) == 0)
    roots.push_back({zs[n - 1], RefinedBy::SignChangeBisection, Multiplicity::Simple, 0.0});

  // Touching zeros: small interior minima of |f| where the sign does not change.
  const double gate = std::sqrt(opts.tol_value) * scale;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double l = std::abs(fs[i - 1]), c = std::abs(fs[i]), r = std::abs(fs[i + 1]);
    if (!(c <= l && c < r) || c >= gate) continue;
    if (sign(fs[i - 1]) != sign(fs[i]) || sign(fs[i]) != sign(fs[i + 1]) || sign(fs[i]) == 0) continue;
    auto absf = [&f](double z) { return std::abs(f(z)); };
    std::uintmax_t iters = 200;
    const auto [zmin, fmin] = boost::math::tools::brent_find_minima(absf, zs[i - 1], zs[i + 1],
                                                                   std::numeric_limits<double>::digits, iters);
    // Brent stalls near sqrt(eps) relative on a flat minimum; the central
    // difference of f changes sign there and bisects much closer.
    double z0 = zmin, f0 = fmin;
    const double dh = std::min(1e-5 * std::max(1.0, std::abs(zmin)), 1e-2 * h);
    auto slope = [&f, dh](double z) { return f(z + dh) - f(z - dh); };
    if (sign(slope(zs[i - 1])) * sign(slope(zs[i + 1])) < 0) {
      iters = 200;
      const auto [a, b] = boost::math::tools::bisect(slope, zs[i - 1], zs[i + 1], width_ok, iters);
      const double zm = 0.5 * (a + b), fm = std::abs(f(zm));
      if (fm <= 4.0 * fmin + std::numeric_limits<double>::epsilon() * scale) {
        z0 = zm;
        f0 = fm;
      }
    }
    if (f0 / scale < opts.tol_value)
      roots.push_back({z0, RefinedBy::MinimumRefinement, Multiplicity::EvenSuspected, f0 / scale});
  }

  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.z < b.z; });
  std::vector<Root> out;
  for (const Root& r : roots) {
    if (!out.empty() && width_ok(out.back().z, r.z)) {
      if (r.residual < out.back().residual) out.back() = r;
      continue;
    }
    out.push_back(r);
  }
  return out;
}

double weyl_count_estimate(const ValidatedGraph& graph, double z) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, "Weyl estimate needs z > 0");
  return graph.total_length() * std::sqrt(z) / std::numbers::pi;
}

int default_grid_points(double total_length, double z_lo, double z_hi) {
  if (!(z_lo < z_hi) || !(total_length > 0.0)) throw Error(ErrorCode::InvalidArgument, "bad scan range");
  // Smallest Weyl spacing, at the bottom of the spectrum: (pi / L)^2.
  const double spacing = std::numbers::pi * std::numbers::pi / (total_length * total_length);
  const double points = 40.0 * (z_hi - z_lo) / spacing + 1.0;
  return static_cast<int>(std::clamp(points, 200.0, 2e6));
}

bool weyl_warning(const ValidatedGraph& graph, const std::vector<Root>& roots, double z_hi) {
  if (!(z_hi > 0.0)) return false;
  double found = 0.0;
  for (const Root& r : roots)
    if (r.z <= z_hi) found += r.multiplicity_flag == Multiplicity::EvenSuspected ? 2.0 : 1.0;
  const double band = static_cast<double>(graph.vertex_count()) + 2.0;
  return std::abs(found - weyl_count_estimate(graph, z_hi)) > band;
}

}  // namespace qgraph
