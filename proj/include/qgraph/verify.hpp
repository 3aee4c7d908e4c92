#ifndef QGRAPH_VERIFY_HPP
#define QGRAPH_VERIFY_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgraph/composition.hpp"
#include "qgraph/graph_io.hpp"

namespace qgraph {

enum class Identity {
  Series11,         // phi_N = phi_N1 phi_D2 + phi_D1 phi_N2 at the cut vertex
  Series3x,         // the four series rules
  Lagrange35,       // defect of the joined graph = product of defects
  Parallel5i,       // Dirichlet family of the parallel connection
  ParallelTheorem,  // Kirchhoff function of the parallel connection
  ParallelM,        // m-way parallel connection
};

std::optional<Identity> parse_identity(std::string_view name);
std::string_view to_string(Identity id) noexcept;

struct VerifyOptions {
  double rtol = 1e-7;
  double tol = 1e-10;
  /// Points where either side is below skip_fraction times its largest value
  /// over the neighbouring grid points are ignored (near-zeros).
  double skip_fraction = 1e-5;
  /// Test hook: negate phi_nd and phi_nn of the second operand.
  bool inject_sign_fault = false;
};

struct CheckResult {
  std::string name;
  double ratio = 0.0;        // median of direct / formula
  double max_rel_dev = 0.0;  // max |r / median - 1|, or |lhs - rhs| / |rhs| for equalities
  std::size_t points = 0;
  std::size_t skipped = 0;
  bool pass = false;
};

struct VerifyReport {
  Identity identity = Identity::Series3x;
  std::vector<CheckResult> checks;
  bool pass = false;

  /// Human-readable, byte-stable report.
  std::string text(double rtol) const;
};

/// Ratio-constancy check of direct against formula values.
CheckResult ratio_check(std::string name, std::span<const double> direct, std::span<const double> formula,
                        double rtol, double skip_fraction);

/// Equality check of lhs against rhs where |rhs| > floor.
CheckResult equality_check(std::string name, std::span<const double> lhs, std::span<const double> rhs,
                           double rtol, double floor = 1e-12);

/// Documents must carry ports.  Series and two-operand parallel identities take
/// exactly two graphs; parallel-m takes two or more.
VerifyReport verify_identity(Identity id, std::span<const GraphDocument> graphs, std::span<const double> zs,
                             const VerifyOptions& opts = {});

}  // namespace qgraph

#endif  // QGRAPH_VERIFY_HPP
