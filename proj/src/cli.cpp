#include "qgraph/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <ostream>

#include "qgraph/char_matrix.hpp"
#include "qgraph/composition.hpp"
#include "qgraph/format.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/spectrum.hpp"
#include "qgraph/verify.hpp"

namespace qgraph {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZRange {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<int> count;
};

double parse_number(std::string_view s, const std::string& whole) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError("bad z-range \"" + whole + "\"");
  return v;
}

ZRange parse_range(const std::string& text) {
  std::vector<std::string_view> parts;
  std::string_view rest = text;
  for (;;) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() != 2 && parts.size() != 3) throw UsageError("z-range must be A:B or A:B:N, got \"" + text + "\"");
  ZRange r{parse_number(parts[0], text), parse_number(parts[1], text), std::nullopt};
  if (parts.size() == 3) {
    int n = 0;
    const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
    if (res.ec != std::errc{} || res.ptr != parts[2].data() + parts[2].size() || n < 1)
      throw UsageError("bad sample count in z-range \"" + text + "\"");
    r.count = n;
  }
  if (r.hi < r.lo) throw UsageError("z-range must be increasing: \"" + text + "\"");
  return r;
}

std::vector<double> samples(const ZRange& r) {
  const int n = r.count.value_or(2);
  if (n == 1) return {r.lo};
  std::vector<double> zs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    zs[static_cast<std::size_t>(i)] =
        i + 1 == n ? r.hi : r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return zs;
}

void csv_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_double(v);
    first = false;
  }
  out << '\n';
}

std::vector<GraphDocument> load_all(const std::vector<std::string>& files) {
  std::vector<GraphDocument> docs;
  for (const std::string& f : files) docs.push_back(load_graph_document(f));
  return docs;
}

PortedGraph ported(const GraphDocument& doc, double tol) {
  if (!doc.ports) throw Error(ErrorCode::InvalidArgument, "graph document has no ports");
  return PortedGraph(doc.graph, doc.ports->v_in, doc.ports->v_out, tol);
}

RootKind parse_kind(const std::string& k) {
  return k == "dirichlet" ? RootKind::GeneralizedDirichlet : RootKind::GeneralizedNeumann;
}

void dump(std::ostream& out, const std::vector<GraphDocument>& docs) {
  for (const GraphDocument& d : docs) out << dump_graph_document(d.graph.graph(), d.ports);
}

}  // namespace

std::vector<double> parse_z_range(const std::string& text) { return samples(parse_range(text)); }

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic functions and spectra of Sturm-Liouville problems on metric graphs"};
  app.require_subcommand(1);
  double tol = 1e-10;
  app.add_option("--tol", tol, "Integrator tolerance for sampled potentials")->check(CLI::PositiveNumber);

  std::vector<std::string> graphs;
  std::string z_range;
  bool dump_normalized = false;
  auto common = [&](CLI::App* sub, bool many) {
    auto* g = sub->add_option("--graph", graphs, "Graph document (JSON)")->required();
    if (!many) g->expected(1);
    sub->add_flag("--dump-normalized", dump_normalized, "Print the normalized graph document(s) and exit");
  };

  VertexId root = 0;
  std::string kind = "neumann";
  auto* eval = app.add_subcommand("eval", "Characteristic function over a z grid");
  common(eval, false);
  eval->add_option("--root", root, "Root vertex id")->required();
  eval->add_option("--kind", kind, "Root condition")->check(CLI::IsMember({"neumann", "dirichlet"}));
  eval->add_option("--z-range", z_range, "A:B:N")->required();

  double tol_z = 1e-12, tol_value = 1e-8;
  std::optional<int> points;
  auto* spc = app.add_subcommand("spectrum", "Eigenvalues in a z interval");
  common(spc, false);
  spc->add_option("--root", root, "Root vertex id")->required();
  spc->add_option("--kind", kind, "Root condition")->check(CLI::IsMember({"neumann", "dirichlet"}));
  spc->add_option("--z-range", z_range, "A:B (or A:B:N for the grid size)")->required();
  spc->add_option("--tol-z", tol_z, "Root bracket tolerance")->check(CLI::PositiveNumber);
  spc->add_option("--tol-value", tol_value, "Relative |f| accepted as a zero")->check(CLI::PositiveNumber);
  spc->add_option("--points", points, "Scan grid size")->check(CLI::Range(2, 2000000));

  auto* tp = app.add_subcommand("two-port", "Two-port characteristic functions");
  common(tp, false);
  tp->add_option("--z-range", z_range, "A:B:N")->required();

  std::string mode;
  auto* comp = app.add_subcommand("compose", "Series or parallel composition of two-ports");
  common(comp, true);
  comp->add_option("--mode", mode, "series or parallel")->required()->check(CLI::IsMember({"series", "parallel"}));
  comp->add_option("--z-range", z_range, "A:B:N")->required();

  std::string identity;
  VerifyOptions vopts;
  auto* ver = app.add_subcommand("verify", "Check a composition identity against direct assembly");
  common(ver, true);
  ver->add_option("--identity", identity, "Identity name")
      ->required()
      ->check(CLI::IsMember(
          {"series-1.1", "series-3.x", "lagrange-3.5", "parallel-5.i", "parallel-theorem", "parallel-m"}));
  ver->add_option("--z-range", z_range, "A:B:N")->required();
  ver->add_option("--rtol", vopts.rtol, "Pass threshold")->check(CLI::PositiveNumber);
  ver->add_flag("--inject-sign-fault", vopts.inject_sign_fault)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const std::vector<GraphDocument> docs = load_all(graphs);
    if (dump_normalized) {
      dump(out, docs);
      return kExitOk;
    }
    const ZRange range = parse_range(z_range);

    if (eval->parsed()) {
      const CharacteristicFunction f(docs[0].graph, root, parse_kind(kind), tol);
      out << "z,phi\n";
      for (double z : samples(range)) csv_row(out, {z, f(z)});
    } else if (spc->parsed()) {
      const CharacteristicFunction f(docs[0].graph, root, parse_kind(kind), tol);
      ScanOptions o;
      o.z_lo = range.lo;
      o.z_hi = range.hi;
      o.tol_z = tol_z;
      o.tol_value = tol_value;
      o.grid_points = points.value_or(range.count.value_or(
          default_grid_points(docs[0].graph.total_length(), range.lo, range.hi)));
      if (!(o.z_lo < o.z_hi)) throw UsageError("spectrum needs A < B");
      const std::vector<Root> roots = find_roots([&f](double z) { return f(z); }, o);
      out << "z,multiplicity_flag,residual\n";
      for (const Root& r : roots)
        out << format_double(r.z) << ',' << to_string(r.multiplicity_flag) << ',' << format_double(r.residual)
            << '\n';
      if (o.z_hi > 0.0 && weyl_warning(docs[0].graph, roots, o.z_hi))
        err << "warning: " << roots.size() << " roots found below z = " << format_double(o.z_hi)
            << ", Weyl estimate " << format_double(weyl_count_estimate(docs[0].graph, o.z_hi))
            << "; roots may have been missed (try --points)\n";
    } else if (tp->parsed()) {
      const PortedGraph pg = ported(docs[0], tol);
      out << "z,phi_dd,phi_dn,phi_nd,phi_nn,delta\n";
      for (double z : samples(range)) {
        const TwoPortValuesd v = two_port(pg, z);
        csv_row(out, {z, v.phi_dd, v.phi_dn, v.phi_nd, v.phi_nn, v.delta.value_or(1.0)});
      }
    } else if (comp->parsed()) {
      if (docs.size() < 2) throw UsageError("compose needs at least two --graph arguments");
      std::vector<PortedGraph> parts;
      for (const GraphDocument& d : docs) parts.push_back(ported(d, tol));
      const bool series = mode == "series";
      const bool wide = series || parts.size() == 2;
      out << (wide ? "z,phi_dd,phi_dn,phi_nd,phi_nn\n" : "z,phi_nn\n");
      for (double z : samples(range)) {
        std::vector<TwoPortValuesd> v;
        for (const PortedGraph& p : parts) v.push_back(two_port(p, z));
        if (series) {
          TwoPortValuesd acc = v[0];
          for (std::size_t k = 1; k < v.size(); ++k) acc = series_compose(acc, v[k]);
          csv_row(out, {z, acc.phi_dd, acc.phi_dn, acc.phi_nd, acc.phi_nn});
        } else if (wide) {
          const DirichletFamily<double> f = parallel_dirichlet_family(v[0], v[1]);
          csv_row(out, {z, f.phi_dd, f.phi_dn, f.phi_nd, parallel_phi_NN(v[0], v[1])});
        } else {
          csv_row(out, {z, parallel_m_phi_NN(v)});
        }
      }
    } else if (ver->parsed()) {
      const Identity id = *parse_identity(identity);
      const std::size_t n = docs.size();
      if (id == Identity::ParallelM ? n < 2 : n != 2)
        throw UsageError(identity + (id == Identity::ParallelM ? " needs two or more" : " needs exactly two") +
                         " --graph arguments");
      vopts.tol = tol;
      const VerifyReport report = verify_identity(id, docs, samples(range), vopts);
      out << report.text(vopts.rtol);
      return report.pass ? kExitOk : kExitVerifyFailed;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace qgraph
