#ifndef QGRAPH_SPECTRUM_HPP
#define QGRAPH_SPECTRUM_HPP

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

enum class RefinedBy { SignChangeBisection, MinimumRefinement };
enum class Multiplicity { Simple, EvenSuspected };

std::string_view to_string(Multiplicity m) noexcept;

struct Root {
  double z = 0.0;
  RefinedBy refined_by = RefinedBy::SignChangeBisection;
  Multiplicity multiplicity_flag = Multiplicity::Simple;
  /// |f(z)| relative to the largest |f| seen on the scan grid.
  double residual = 0.0;
};

struct ScanOptions {
  double z_lo = 0.0;
  double z_hi = 100.0;
  int grid_points = 2000;
  /// Absolute bracket width below max(1, |z|) scaling.
  double tol_z = 1e-12;
  /// Relative size of |f| accepted as a zero.
  double tol_value = 1e-8;
};

/// Zeros of f on [z_lo, z_hi]: sign changes on the uniform grid are bisected
/// (Simple), small local minima of |f| without a sign change are refined and
/// kept when they reach tol_value (EvenSuspected).  Sorted, deduplicated.
std::vector<Root> find_roots(const std::function<double(double)>& f, const ScanOptions& opts);

/// L sqrt(z) / pi.
double weyl_count_estimate(const ValidatedGraph& graph, double z);

/// Grid size giving about 40 samples per smallest expected eigenvalue spacing (pi/L)^2.
int default_grid_points(double total_length, double z_lo, double z_hi);

/// Default lower end of a scan: -25 / L^2.
inline double default_negative_floor(double total_length) { return -25.0 / (total_length * total_length); }

/// True when the number of roots found below z_hi (counted with multiplicity
/// two for EvenSuspected) is off the Weyl estimate by more than #vertices + 2.
bool weyl_warning(const ValidatedGraph& graph, const std::vector<Root>& roots, double z_hi);

}  // namespace qgraph

#endif  // QGRAPH_SPECTRUM_HPP
