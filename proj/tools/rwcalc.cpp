// Command-line front end: exact-rational reports over the graph-homology,
// chord-diagram, and characteristic-class machinery. Batch only; exit code 0
// means every requested check passed, 1 a verification failure, 2 a usage or
// parse error.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "rw/chord.hpp"
#include "rw/homology.hpp"
#include "rw/manifold.hpp"
#include "rw/tables.hpp"
#include "rw/wheels.hpp"

namespace {

using namespace rw;

struct Report {
  bool records = false;
  bool failed = false;

  void check(const std::string& name, bool ok, const std::string& detail) {
    failed = failed || !ok;
    if (records) {
      std::cout << "check=" << name << " status=" << (ok ? "PASS" : "FAIL")
                << " " << detail << "\n";
    } else {
      std::cout << (ok ? "PASS" : "FAIL") << "  " << name
                << (detail.empty() ? "" : "  [" + detail + "]") << "\n";
    }
  }
  void info(const std::string& line) {
    if (!records) std::cout << line << "\n";
  }
};

std::string coords_str(const std::vector<Rat>& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << rat_str(v[i]);
  }
  os << ')';
  return os.str();
}

GraphVector parse_graph_vector(const std::string& text) {
  GraphVector v;
  v.add_term(parse_graph(text), Rat(1));
  return v;
}

int cmd_basis(int degree, Report& rep) {
  const HomologyBasis& hb = homology_basis(degree);
  rep.info("degree " + std::to_string(degree) + " homology dimension " +
           std::to_string(hb.dim()));
  for (int i = 0; i < hb.dim(); ++i) {
    std::ostringstream os;
    os << "basis[" << i << "] = " << graph_key(hb.basis_graph(i));
    if (rep.records)
      std::cout << "record=basis degree=" << degree << " slot=" << i
                << " graph=" << graph_key(hb.basis_graph(i)) << "\n";
    else
      std::cout << os.str() << "\n";
  }
  return 0;
}

int cmd_reduce(int degree, const std::string& dsl, Report& rep) {
  GraphVector v = parse_graph_vector(dsl);
  auto coords = reduce(v, homology_basis(degree));
  if (rep.records) {
    std::cout << "record=reduce degree=" << degree
              << " coords=" << coords_str(coords) << "\n";
  } else {
    std::cout << "coordinates " << coords_str(coords) << "\n";
  }
  return 0;
}

int cmd_polywheel(const std::string& expr, Report& rep) {
  std::vector<Wheel> ws = parse_wheels(expr);
  bool any_bold = false;
  int total = 0;
  for (const Wheel& w : ws) {
    any_bold = any_bold || w.bold;
    total += w.spokes;
  }
  if (any_bold) {
    DiagramVector dv = polywheel_close_mixed(ws);
    if (rep.records)
      std::cout << "record=polywheel kind=diagram terms=" << dv.terms().size()
                << " value=" << dv.str() << "\n";
    else
      std::cout << dv.str() << "\n";
  } else {
    GraphVector gv = polywheel_close(ws);
    const int degree = total / 2;
    auto coords = reduce(gv, homology_basis(degree));
    if (rep.records)
      std::cout << "record=polywheel kind=graph degree=" << degree
                << " coords=" << coords_str(coords) << "\n";
    else
      std::cout << "closure " << gv.str() << "\n"
                << "coordinates " << coords_str(coords) << "\n";
  }
  return 0;
}

int cmd_omega(int terms, Report& rep) {
  auto b = omega_coefficients(terms);
  for (int m = 1; m <= terms; ++m) {
    if (rep.records)
      std::cout << "record=omega m=" << 2 * m << " b=" << rat_str(b[m]) << "\n";
    else
      std::cout << "b_" << 2 * m << " = " << rat_str(b[m]) << "\n";
  }
  for (int m = 0; m <= terms; ++m) {
    OmegaElement om = omega_truncation(2 * m);
    std::ostringstream os;
    for (size_t t = 0; t < om.terms.size(); ++t) {
      if (t) os << " + ";
      os << rat_str(om.terms[t].coeff);
      for (int s : om.terms[t].spokes) os << "*w" << s;
    }
    if (rep.records)
      std::cout << "record=omega-truncation degree=" << 2 * m << " value="
                << (om.terms.empty() ? "0" : os.str()) << "\n";
    else
      std::cout << "Omega_" << 2 * m << " = "
                << (om.terms.empty() ? "0" : os.str()) << "\n";
  }
  return 0;
}

int cmd_rw(const std::string& manifold, const std::string& graph,
           const Dataset& ds, Report& rep) {
  FormalManifold X = parse_manifold(manifold, ds);
  GraphVector v = parse_graph_vector(graph);
  InvariantReport r = rw_eval_report(X, v, ds);
  if (rep.records) {
    std::cout << "record=rw manifold=\"" << manifold << "\" graph=\"" << graph
              << "\" value=" << rat_str(r.value) << "\n";
  } else {
    std::cout << "value = " << rat_str(r.value) << "\n";
    std::cout << "coordinates " << coords_str(r.coordinates) << "\n";
    for (const auto& line : r.trace.lines) std::cout << "  via " << line << "\n";
  }
  return 0;
}

void verify_table1(int only_k, Report& rep) {
  for (const DictRow& row : polywheel_dictionary()) {
    if (only_k && row.k != only_k) continue;
    const HomologyBasis& hb = homology_basis(row.k);
    auto lhs = reduce(row.lhs, hb);
    auto rhs = reduce(dict_row_rhs(row), hb);
    bool ok = lhs == rhs;
    rep.check("table1/k=" + std::to_string(row.k) + "/" + row.name, ok,
              "lhs=" + coords_str(lhs) + " rhs=" + coords_str(rhs));
  }
}

void verify_chern_gap(const Dataset& ds, Report& rep) {
  GapReport g = chern_gap_demo(ds);
  rep.check("chern-gap/equal-chern-numbers", g.chern_equal,
            "combinations: " + g.combo_a + "  vs  " + g.combo_b);
  rep.check("chern-gap/invariants-differ", g.values_differ,
            "lhs=" + rat_str(g.value_a) + " rhs=" + rat_str(g.value_b) +
                " diff=" + rat_str(g.difference));
  rep.check("chern-gap/perturbation-detected", g.perturbation_detected,
            "coefficient 63 -> 64 must break the match");
}

void verify_td_half(const std::string& manifold, bool all, const Dataset& ds,
                    Report& rep) {
  std::vector<std::string> names;
  if (all) {
    names = ds.names();
  } else {
    names.push_back(manifold);
  }
  for (const std::string& name : names) {
    TdHalfReport r = td_half_identity_check(parse_manifold(name, ds), name, ds);
    rep.check("td-half/" + name, r.ok,
              "theta-power=" + rat_str(r.lhs) + " 48^k.k!.integral=" +
                  rat_str(r.rhs));
  }
}

void verify_wheeling(int k, Report& rep) {
  DiagramVector diff = wheeling_lhs(k, "E") - wheeling_rhs(k, "E");
  DiagramVector red = stu_reduce(diff);
  rep.check("wheeling/k=" + std::to_string(k), red.is_zero(),
            red.is_zero() ? "difference reduces to 0"
                          : "residue " + red.str());
}

void verify_stu_ihx(int degree, Report& rep) {
  StuImplicationReport r = verify_stu_implies_as_ihx(degree);
  std::ostringstream os;
  os << r.diagrams << " diagrams, " << r.as_instances << " AS and "
     << r.ihx_instances << " IHX instances";
  rep.check("stu-ihx/degree=" + std::to_string(degree), r.ok(), os.str());
  for (const auto& f : r.failures) rep.info("  failed: " + f);
}

void dataset_validate(const Dataset& ds, Report& rep) {
  DatasetReport r = validate_dataset(ds);
  for (const auto& c : r.checks) {
    rep.check("dataset/" + c.name + "/" + c.what, c.ok, c.detail);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculator for trivalent-graph and chord-diagram "
               "invariants of hyperkahler building blocks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string dataset_path = "data/hk_chern_numbers.json";
  app.add_option("--format", format)->check(CLI::IsMember({"text", "records"}));
  app.add_option("--dataset", dataset_path, "path to the Chern-number table");

  int degree = 1;
  std::string graph_dsl, manifold_expr, wheel_expr, td_manifold;
  int terms = 4, wheeling_k = 2;
  bool td_all = false;
  int only_k = 0;

  auto* basis = app.add_subcommand("basis", "homology basis and dimension");
  basis->add_option("--degree", degree)->required()->check(CLI::Range(0, 4));

  auto* reduce_cmd = app.add_subcommand("reduce", "coordinates of a graph");
  reduce_cmd->add_option("--degree", degree)->required()->check(CLI::Range(0, 4));
  reduce_cmd->add_option("graph", graph_dsl, "graph DSL")->required();

  auto* poly = app.add_subcommand("polywheel", "close a wheel list");
  poly->add_option("expr", wheel_expr, "e.g. \"<w2 w4>\"")->required();

  auto* omega = app.add_subcommand("omega", "wheel series coefficients");
  omega->add_option("--terms", terms)->check(CLI::Range(1, 8));

  auto* rwc = app.add_subcommand("rw", "evaluate an invariant");
  rwc->add_option("--manifold", manifold_expr)->required();
  rwc->add_option("--graph", graph_dsl)->required();

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* vtable = verify->add_subcommand("table1", "polywheel dictionary rows");
  vtable->add_option("--k", only_k)->check(CLI::Range(1, 4));
  verify->add_subcommand("chern-gap", "equal Chern numbers, distinct invariant");
  auto* vtd = verify->add_subcommand("td-half", "theta powers vs half Todd");
  vtd->add_flag("--all", td_all);
  vtd->add_option("--manifold", td_manifold);
  auto* vwheel = verify->add_subcommand("wheeling", "wheeling special case");
  vwheel->add_option("--k", wheeling_k)->check(CLI::Range(1, 3));
  auto* vstu = verify->add_subcommand("stu-ihx", "antisymmetry and rewiring");
  vstu->add_option("--degree", degree)->check(CLI::Range(0, 3));

  auto* data = app.add_subcommand("dataset", "dataset operations");
  data->require_subcommand(1);
  auto* dval = data->add_subcommand("validate", "run the table validators");
  std::string validate_path;
  dval->add_option("path", validate_path, "defaults to --dataset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report rep;
  rep.records = format == "records";
  try {
    if (*basis) return cmd_basis(degree, rep);
    if (*reduce_cmd) return cmd_reduce(degree, graph_dsl, rep);
    if (*poly) return cmd_polywheel(wheel_expr, rep);
    if (*omega) return cmd_omega(terms, rep);
    if (*rwc) {
      Dataset ds = Dataset::load_file(dataset_path);
      return cmd_rw(manifold_expr, graph_dsl, ds, rep);
    }
    if (*verify) {
      if (*vtable) verify_table1(only_k, rep);
      if (verify->get_subcommand("chern-gap")->parsed()) {
        Dataset ds = Dataset::load_file(dataset_path);
        verify_chern_gap(ds, rep);
      }
      if (*vtd) {
        Dataset ds = Dataset::load_file(dataset_path);
        if (!td_all && td_manifold.empty())
          throw ManifoldError("td-half needs --all or --manifold");
        verify_td_half(td_manifold, td_all, ds, rep);
      }
      if (*vwheel) verify_wheeling(wheeling_k, rep);
      if (*vstu) verify_stu_ihx(degree, rep);
      return rep.failed ? 1 : 0;
    }
    if (*data) {
      Dataset ds = Dataset::load_file(
          validate_path.empty() ? dataset_path : validate_path);
      dataset_validate(ds, rep);
      return rep.failed ? 1 : 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
