#include "qgraph/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qgraph/format.hpp"

namespace qgraph {

namespace {

constexpr std::array<std::pair<Identity, std::string_view>, 6> kNames{{
    {Identity::Series11, "series-1.1"},
    {Identity::Series3x, "series-3.x"},
    {Identity::Lagrange35, "lagrange-3.5"},
    {Identity::Parallel5i, "parallel-5.i"},
    {Identity::ParallelTheorem, "parallel-theorem"},
    {Identity::ParallelM, "parallel-m"},
}};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Largest |v| within a few grid points of i; the natural size of v near i.
double local_scale(std::span<const double> v, std::size_t i) {
  constexpr std::size_t kWindow = 3;
  const std::size_t lo = i >= kWindow ? i - kWindow : 0, hi = std::min(v.size(), i + kWindow + 1);
  double m = 0.0;
  for (std::size_t k = lo; k < hi; ++k) m = std::max(m, std::abs(v[k]));
  return m;
}

PortedGraph ported(const GraphDocument& doc, double tol) {
  if (!doc.ports) throw Error(ErrorCode::InvalidArgument, "graph document has no ports");
  return PortedGraph(doc.graph, doc.ports->v_in, doc.ports->v_out, tol);
}

void fault(TwoPortValuesd& tp) {
  tp.phi_nd = -tp.phi_nd;
  tp.phi_nn = -tp.phi_nn;
}

void require_count(Identity id, std::size_t n) {
  const bool ok = id == Identity::ParallelM ? n >= 2 : n == 2;
  if (!ok)
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(id)) + " takes " +
                                                (id == Identity::ParallelM ? "two or more" : "exactly two") +
                                                " graphs, got " + std::to_string(n));
}

}  // namespace

std::optional<Identity> parse_identity(std::string_view name) {
  for (const auto& [id, n] : kNames)
    if (n == name) return id;
  return std::nullopt;
}

std::string_view to_string(Identity id) noexcept {
  for (const auto& [i, n] : kNames)
    if (i == id) return n;
  return "unknown";
}

CheckResult ratio_check(std::string name, std::span<const double> direct, std::span<const double> formula,
                        double rtol, double skip_fraction) {
  CheckResult r;
  r.name = std::move(name);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    if (std::abs(direct[i]) <= skip_fraction * local_scale(direct, i) ||
        std::abs(formula[i]) <= skip_fraction * local_scale(formula, i)) {
      ++r.skipped;
      continue;
    }
    ratios.push_back(direct[i] / formula[i]);
  }
  r.points = ratios.size();
  if (ratios.empty()) return r;
  r.ratio = median(ratios);
  for (double q : ratios) r.max_rel_dev = std::max(r.max_rel_dev, std::abs(q / r.ratio - 1.0));
  r.pass = std::isfinite(r.max_rel_dev) && r.max_rel_dev <= rtol;
  return r;
}

CheckResult equality_check(std::string name, std::span<const double> lhs, std::span<const double> rhs,
                           double rtol, double floor) {
  CheckResult r;
  r.name = std::move(name);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!(std::abs(rhs[i]) > floor)) {
      ++r.skipped;
      continue;
    }
    ratios.push_back(lhs[i] / rhs[i]);
    r.max_rel_dev = std::max(r.max_rel_dev, std::abs(lhs[i] - rhs[i]) / std::abs(rhs[i]));
  }
  r.points = ratios.size();
  if (ratios.empty()) return r;
  r.ratio = median(ratios);
  r.pass = std::isfinite(r.max_rel_dev) && r.max_rel_dev <= rtol;
  return r;
}

std::string VerifyReport::text(double rtol) const {
  std::ostringstream os;
  os << "identity: " << to_string(identity) << "\n";
  os << "rtol: " << format_shortest(rtol) << "\n";
  for (const CheckResult& c : checks) {
    os << "check " << c.name << ": ratio " << format_shortest(c.ratio) << ", max relative deviation "
       << format_shortest(c.max_rel_dev) << ", points " << c.points << ", skipped " << c.skipped << ": "
       << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerifyReport verify_identity(Identity id, std::span<const GraphDocument> graphs, std::span<const double> zs,
                             const VerifyOptions& opts) {
  require_count(id, graphs.size());
  if (zs.empty()) throw Error(ErrorCode::InvalidArgument, "empty z grid");
  std::vector<PortedGraph> parts;
  for (const GraphDocument& g : graphs) parts.push_back(ported(g, opts.tol));

  VerifyReport report;
  report.identity = id;
  const std::size_t n = zs.size();

  auto values = [&](std::size_t part, double z) {
    TwoPortValuesd tp = two_port(parts[part], z);
    if (opts.inject_sign_fault && part == 1) fault(tp);
    return tp;
  };

  switch (id) {
    case Identity::Series11: {
      const PortedGraph &a = parts[0], &b = parts[1];
      const JoinedGraph j = join_series(a, b);
      const VertexCondition own_in = a.graph().condition(a.v_in());
      const VertexCondition own_out = b.graph().condition(b.v_out());
      std::vector<double> direct(n), formula(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double z = zs[i];
        const double n1 = port_phi(a, std::nullopt, Neumann{}, z), d1 = port_phi(a, std::nullopt, Dirichlet{}, z);
        double n2 = port_phi(b, Neumann{}, std::nullopt, z);
        const double d2 = port_phi(b, Dirichlet{}, std::nullopt, z);
        if (opts.inject_sign_fault) n2 = -n2;
        direct[i] = joined_phi(j, own_in, own_out, z, opts.tol);
        formula[i] = n1 * d2 + d1 * n2;
      }
      report.checks.push_back(ratio_check("phi", direct, formula, opts.rtol, opts.skip_fraction));
      break;
    }
    case Identity::Series3x: {
      const JoinedGraph j = join_series(parts[0], parts[1]);
      const PortedGraph pj(j.graph, j.v_in, j.v_out, opts.tol);
      std::array<std::vector<double>, 4> direct, formula;
      for (auto& v : direct) v.resize(n);
      for (auto& v : formula) v.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const TwoPortValuesd d = two_port(pj, zs[i]);
        const TwoPortValuesd c = series_compose(values(0, zs[i]), values(1, zs[i]));
        direct[0][i] = d.phi_dd, formula[0][i] = c.phi_dd;
        direct[1][i] = d.phi_dn, formula[1][i] = c.phi_dn;
        direct[2][i] = d.phi_nd, formula[2][i] = c.phi_nd;
        direct[3][i] = d.phi_nn, formula[3][i] = c.phi_nn;
      }
      const std::array<const char*, 4> names{"phi_dd", "phi_dn", "phi_nd", "phi_nn"};
      for (std::size_t k = 0; k < 4; ++k)
        report.checks.push_back(ratio_check(names[k], direct[k], formula[k], opts.rtol, opts.skip_fraction));
      break;
    }
    case Identity::Lagrange35: {
      const JoinedGraph j = join_series(parts[0], parts[1]);
      const PortedGraph pj(j.graph, j.v_in, j.v_out, opts.tol);
      std::vector<double> direct(n), composed(n), product(n);
      for (std::size_t i = 0; i < n; ++i) {
        const TwoPortValuesd a = values(0, zs[i]), b = values(1, zs[i]);
        const LagrangeCheck<double> lc = series_lagrange_check_wide(a, b);
        direct[i] = lagrange_defect(two_port(pj, zs[i]));
        composed[i] = lc.lhs;
        product[i] = lc.rhs;
      }
      report.checks.push_back(equality_check("joined_defect", direct, product, opts.rtol));
      report.checks.push_back(equality_check("composed_defect", composed, product, opts.rtol));
      break;
    }
    case Identity::Parallel5i: {
      const JoinedGraph j = join_parallel(parts[0], parts[1]);
      std::array<std::vector<double>, 3> direct, formula;
      for (auto& v : direct) v.resize(n);
      for (auto& v : formula) v.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double z = zs[i];
        const DirichletFamily<double> f = parallel_dirichlet_family(values(0, z), values(1, z));
        direct[0][i] = joined_phi(j, Dirichlet{}, Dirichlet{}, z, opts.tol), formula[0][i] = f.phi_dd;
        direct[1][i] = joined_phi(j, Dirichlet{}, Neumann{}, z, opts.tol), formula[1][i] = f.phi_dn;
        direct[2][i] = joined_phi(j, Neumann{}, Dirichlet{}, z, opts.tol), formula[2][i] = f.phi_nd;
      }
      const std::array<const char*, 3> names{"phi_dd", "phi_dn", "phi_nd"};
      for (std::size_t k = 0; k < 3; ++k)
        report.checks.push_back(ratio_check(names[k], direct[k], formula[k], opts.rtol, opts.skip_fraction));
      break;
    }
    case Identity::ParallelTheorem:
    case Identity::ParallelM: {
      const JoinedGraph j = join_parallel(parts);
      std::vector<double> direct(n), formula(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<TwoPortValuesd> tps;
        for (std::size_t p = 0; p < parts.size(); ++p) tps.push_back(values(p, zs[i]));
        direct[i] = joined_phi(j, Neumann{}, Neumann{}, zs[i], opts.tol);
        formula[i] = id == Identity::ParallelTheorem ? parallel_phi_NN(tps[0], tps[1]) : parallel_m_phi_NN(tps);
      }
      report.checks.push_back(ratio_check("phi_nn", direct, formula, opts.rtol, opts.skip_fraction));
      break;
    }
  }
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const CheckResult& c) { return c.pass; });
  return report;
}

}  // namespace qgraph
