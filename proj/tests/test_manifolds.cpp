#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rw/manifold.hpp"
#include "rw/tables.hpp"
#include "rw/wheels.hpp"

using namespace rw;

namespace {

const char* dataset_path() {
  if (const char* env = std::getenv("RW_DATASET")) return env;
  return RW_DATASET_FILE;
}

const Dataset& ds() {
  static Dataset d = Dataset::load_file(dataset_path());
  return d;
}

FormalManifold mf(const std::string& expr) { return parse_manifold(expr, ds()); }

GraphVector theta_vec(int k) {
  GraphVector v;
  v.add_term(theta_power(k), Rat(1));
  return v;
}

}  // namespace

TEST_CASE("dataset loads and has the eight blocks") {
  CHECK(ds().names().size() == 8);
  CHECK(ds().has("S"));
  CHECK(ds().has("K[4]"));
  CHECK(ds().block("S[2]").chern_numbers.at("c4") == Rat(324));
}

TEST_CASE("manifold expression parsing") {
  FormalManifold a = mf("S[4]");
  CHECK(a.k == 4);
  CHECK(a.terms.size() == 1);

  FormalManifold b = mf("48 K[4] + 294 S x S[3] + 144 S[2] x S[2] + 63 S^4");
  CHECK(b.k == 4);
  CHECK(b.terms.size() == 4);
  CHECK(b.terms[0].mult == 48);
  CHECK(b.terms[3].factors.size() == 4);

  CHECK(mf("S2 x S2").k == 4);  // shorthand names
  CHECK_THROWS_AS(mf("S + S[2]"), ManifoldError);  // mixed dimensions
  CHECK_THROWS_AS(mf("Q[2]"), ManifoldError);
}

TEST_CASE("theta-power closed forms on both families") {
  for (int k = 1; k <= 4; ++k) {
    std::string hilb = k == 1 ? "S" : "S[" + std::to_string(k) + "]";
    CHECK(rw_eval(mf(hilb), theta_vec(k), ds()) == hilb_theta_value(k));
    std::string kummer = "K[" + std::to_string(k) + "]";
    CHECK(rw_eval(mf(kummer), theta_vec(k), ds()) == kummer_theta_value(k));
  }
  // Spot values.
  CHECK(rw_eval(mf("S"), theta_vec(1), ds()) == Rat(48));
  CHECK(rw_eval(mf("S[4]"), theta_vec(4), ds()) == Rat(49787136));
  CHECK(rw_eval(mf("K[4]"), theta_vec(4), ds()) == Rat(64800000));
}

TEST_CASE("k <= 2 tables are pinned by the two identities (dataset-free oracle)") {
  // Solve chi(O) = 3 and the theta-square value 3600 for the S[2] numbers:
  //   (3 c2^2 - c4) / 720 = 3  and  (28 c2^2 - 16 c4) / 5 = 3600.
  // The solution must match the shipped table.
  SparseRow eq1{{0, Rat(3, 720)}, {1, Rat(-1, 720)}};
  SparseRow eq2{{0, Rat(28, 5)}, {1, Rat(-16, 5)}};
  // Solve the transposed 2x2 system by hand: unknown vector (c2^2, c4).
  // Determinant of [[3/720, -1/720], [28/5, -16/5]]:
  Rat det = Rat(3, 720) * Rat(-16, 5) - Rat(-1, 720) * Rat(28, 5);
  REQUIRE(det != 0);
  Rat c2sq = (Rat(3) * Rat(-16, 5) - Rat(-1, 720) * Rat(3600)) / det;
  Rat c4 = (Rat(3, 720) * Rat(3600) - Rat(28, 5) * Rat(3)) / det;
  CHECK(c2sq == Rat(828));
  CHECK(c4 == Rat(324));
  CHECK(ds().block("S[2]").chern_numbers.at("c2^2") == c2sq);
  CHECK(ds().block("S[2]").chern_numbers.at("c4") == c4);
  // Same shape at k = 1: chi(O) = 2 forces c2 = 24 and the theta value 48
  // is then automatic.
  CHECK(ds().block("S").chern_numbers.at("c2") == Rat(24));
  CHECK(rw_eval(mf("S"), theta_vec(1), ds()) == Rat(48));
}

TEST_CASE("product formula: S x S against theta^2") {
  Rat v = rw_eval(mf("S x S"), theta_vec(2), ds());
  CHECK(v == Rat(4608));
  CHECK(v == Rat(2) * Rat(48) * Rat(48));
}

TEST_CASE("product symmetry over the whole basis") {
  for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"S x S[2]", "S[2] x S"},
           {"S x K[2]", "K[2] x S"},
           {"S x S x S[2]", "S[2] x S x S"}}) {
    FormalManifold mx = mf(x), my = mf(y);
    const HomologyBasis& hb = homology_basis(mx.k);
    for (int i = 0; i < hb.dim(); ++i) {
      GraphVector v;
      v.add_term(hb.basis_graph(i), Rat(1));
      CAPTURE(x);
      CHECK(rw_eval(mx, v, ds()) == rw_eval(my, v, ds()));
    }
  }
}

TEST_CASE("rw_eval is linear and additive over disjoint unions") {
  GraphVector t2sq;
  t2sq.add_term(disjoint_union(theta2_graph(), theta2_graph()), Rat(1));
  GraphVector combo = theta_vec(4) + Rat(3, 7) * t2sq;
  Rat on_union = rw_eval(mf("2 S[4] + 5 K[4]"), combo, ds());
  Rat direct = Rat(2) * rw_eval(mf("S[4]"), combo, ds()) +
               Rat(5) * rw_eval(mf("K[4]"), combo, ds());
  CHECK(on_union == direct);
  Rat split = Rat(2) * (rw_eval(mf("S[4]"), theta_vec(4), ds()) +
                        Rat(3, 7) * rw_eval(mf("S[4]"), t2sq, ds())) +
              Rat(5) * (rw_eval(mf("K[4]"), theta_vec(4), ds()) +
                        Rat(3, 7) * rw_eval(mf("K[4]"), t2sq, ds()));
  CHECK(on_union == split);
}

TEST_CASE("theta2^2 on irreducible blocks via the quotient identity") {
  CHECK(theta2sq_irreducible(ds().block("S[4]")) == Rat(57600));
  CHECK(theta2sq_irreducible(ds().block("K[4]")) == Rat(288000));
  // Identity recheck: p * b == q^2 is enforced inside; also spot-check the
  // denominators.
  CHECK(rw_eval(mf("S[4]"), theta_vec(4), ds()) == Rat(49787136));
  CHECK(rw_eval(mf("K[4]"), theta_vec(4), ds()) == Rat(64800000));
  CHECK_THROWS_AS(theta2sq_irreducible(ds().block("S[2]")), ManifoldError);
}

TEST_CASE("every degree-4 basis class evaluates on the irreducible blocks") {
  // The polywheel span (rank 5) plus the theta2^2 class covers the whole
  // six-dimensional space, so no basis slot is blocked.
  const HomologyBasis& h4 = homology_basis(4);
  for (const char* name : {"S[4]", "K[4]"}) {
    for (int i = 0; i < h4.dim(); ++i) {
      GraphVector v;
      v.add_term(h4.basis_graph(i), Rat(1));
      CHECK_NOTHROW(rw_eval(mf(name), v, ds()));
    }
  }
  // Cross-check the cube row: its class equals -(41/96) theta2^2
  // + (41/600) <w4 w4> - (16/175) <w8>, so its value on S[4] must match the
  // direct characteristic-number route.
  GraphVector cube;
  cube.add_term(cube_graph(), Rat(1));
  Rat via_eval = rw_eval(mf("S[4]"), cube, ds());
  const ChernData& s4 = ds().block("S[4]");
  Rat via_row = Rat(-41, 96) * theta2sq_irreducible(s4) +
                Rat(41, 600) * evaluate_top(polywheel_to_chern({4, 4}), s4) +
                Rat(-16, 175) * evaluate_top(polywheel_to_chern({8}), s4);
  CHECK(via_eval == via_row);
}

TEST_CASE("theta2^2 vanishes on products that cannot split it") {
  GraphVector t2sq;
  t2sq.add_term(disjoint_union(theta2_graph(), theta2_graph()), Rat(1));
  CHECK(rw_eval(mf("S x S[3]"), t2sq, ds()) == Rat(0));
  CHECK(rw_eval(mf("S^4"), t2sq, ds()) == Rat(0));
  CHECK(rw_eval(mf("S^2 x S[2]"), t2sq, ds()) == Rat(0));
  CHECK(rw_eval(mf("S[2] x S[2]"), t2sq, ds()) ==
        Rat(2) * Rat(-144) * Rat(-144));
}

TEST_CASE("chern numbers of products: surface squared") {
  auto table = chern_numbers_of(mf("S x S"), ds());
  CHECK(table.at("c2^2") == Rat(1152));  // 2 * 24 * 24
  CHECK(table.at("c4") == Rat(576));     // 24 * 24
}

TEST_CASE("chern gap demonstration") {
  GapReport rep = chern_gap_demo(ds());
  CHECK(rep.chern_equal);
  CHECK(rep.values_differ);
  CHECK(rep.value_a == Rat(19795968));
  CHECK(rep.value_b == Rat(19353600));
  CHECK(rep.difference == Rat(442368));
  CHECK(rep.perturbation_detected);
}

TEST_CASE("half-Todd identity across the dataset and small products") {
  for (const std::string& name : ds().names()) {
    TdHalfReport rep = td_half_identity_check(
        parse_manifold(name, ds()), name, ds());
    CAPTURE(name);
    CHECK(rep.ok);
  }
  // Desk values.
  TdHalfReport s = td_half_identity_check(mf("S"), "S", ds());
  CHECK(s.lhs == Rat(48));
  TdHalfReport s2 = td_half_identity_check(mf("S[2]"), "S[2]", ds());
  CHECK(s2.lhs == Rat(3600));
  CHECK(s2.rhs == Rat(4608) * Rat(25, 32));
  // Products and unions.
  for (const char* expr : {"S x S", "S x S[2]", "2 S[3] + K[3]"}) {
    TdHalfReport rep = td_half_identity_check(mf(expr), expr, ds());
    CAPTURE(expr);
    CHECK(rep.ok);
  }
}

TEST_CASE("curvature norm in the stated normal form") {
  CurvatureNorm k3 = curvature_norm(Rat(48), 1);
  CHECK(k3.coeff == Rat(192));
  CHECK(k3.pi_power == 2);
  CHECK(k3.vol_power == 0);
  CHECK(k3.str() == "192 * pi^2");

  CurvatureNorm h2 = curvature_norm(Rat(3600), 2);
  CHECK(h2.coeff == Rat(115200));
  CHECK(h2.pi_power == 4);
  CHECK(h2.vol_power == 1);

  CHECK_THROWS_AS(curvature_norm(Rat(-1), 1), ManifoldError);
}

TEST_CASE("dataset validation passes and catches corruption") {
  DatasetReport rep = validate_dataset(ds());
  CHECK(rep.all_ok);
  // Three checks for k=2 entries, two otherwise: 8 blocks, 2 with k=2.
  CHECK(rep.checks.size() == 2 * 8 + 2);

  Dataset corrupted = ds();
  ChernData bad = ds().block("S[2]");
  bad.chern_numbers["c4"] = Rat(325);
  corrupted.add(bad);
  DatasetReport rep2 = validate_dataset(corrupted);
  CHECK_FALSE(rep2.all_ok);
  bool theta_check_failed = false;
  for (const auto& c : rep2.checks) {
    if (c.name == "S[2]" && c.what == "theta-power closed form" && !c.ok)
      theta_check_failed = true;
  }
  CHECK(theta_check_failed);
}

TEST_CASE("rw_eval degree mismatch and unknown blocks") {
  CHECK_THROWS_AS(rw_eval(mf("S"), theta_vec(2), ds()), ManifoldError);
  CHECK_THROWS_AS(ds().block("S[9]"), ManifoldError);
}

TEST_CASE("evaluation report carries coordinates and a replayable trace") {
  InvariantReport rep = rw_eval_report(mf("S[2]"), theta_vec(2), ds());
  CHECK(rep.value == Rat(3600));
  CHECK(rep.coordinates.size() == homology_basis(2).dim());
  CHECK_FALSE(rep.trace.lines.empty());
}
