#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rw/chord.hpp"
#include "rw/homology.hpp"
#include "rw/wheels.hpp"

using namespace rw;

namespace {

DiagramVector dv(const ChordDiagram& d, Rat c = Rat(1)) {
  DiagramVector v;
  v.add_term(d, c);
  return v;
}

// Picture-convention diagrams: externals read (in, out, leg).
ChordDiagram pic(int n, std::vector<Circle> circles,
                 std::vector<std::pair<int, int>> gedges,
                 std::map<int, std::array<std::pair<int, int>, 3>> internal =
                     {}) {
  return diagram_from_cyclic(n, std::move(circles), std::move(gedges),
                             internal);
}

}  // namespace

TEST_CASE("parse: circles, lines, bare circles, and errors") {
  ChordDiagram d = parse_diagram("circle E: (1,2); edges: 1-2");
  CHECK(d.n == 2);
  CHECK(d.circles.size() == 1);
  CHECK_FALSE(d.circles[0].based);

  ChordDiagram bare = parse_diagram("circle E: ()");
  CHECK(bare.n == 0);
  CHECK(diagram_degree(bare) == 0);

  ChordDiagram line = parse_diagram("line E: (1,2); edges: 1-2");
  CHECK(line.circles[0].based);

  // Degree-2 internal vertex.
  CHECK_THROWS_WITH_AS(parse_diagram("circle E: (1,2); edges: 1-3, 2-4, 3-4"),
                       "vertex 3 has degree 2, expected 3 (internal)",
                       ChordError);
  // External vertex on two circles.
  CHECK_THROWS_AS(parse_diagram("circle E: (1,2); circle F: (1); edges: 1-2"),
                  ChordError);
  CHECK_THROWS_AS(parse_diagram("squiggle E: (1)"), ParseError);
}

TEST_CASE("canonicalization distinguishes the three two-chord line diagrams") {
  ChordDiagram adjacent =
      parse_diagram("line E: (1,2,3,4); edges: 1-2, 3-4");
  ChordDiagram crossed = parse_diagram("line E: (1,2,3,4); edges: 1-3, 2-4");
  ChordDiagram nested = parse_diagram("line E: (1,2,3,4); edges: 1-4, 2-3");
  std::string ka = diagram_key(canonical_form(adjacent).diagram);
  std::string kc = diagram_key(canonical_form(crossed).diagram);
  std::string kn = diagram_key(canonical_form(nested).diagram);
  CHECK(ka != kc);
  CHECK(ka != kn);
  CHECK(kc != kn);
  // On a closed circle the adjacent and nested pictures become rotations of
  // one another, while the crossed one stays distinct.
  ChordDiagram adj_c = adjacent, nest_c = nested, cross_c = crossed;
  adj_c.circles[0].based = nest_c.circles[0].based = cross_c.circles[0].based =
      false;
  CHECK(diagram_key(canonical_form(adj_c).diagram) ==
        diagram_key(canonical_form(nest_c).diagram));
  CHECK(diagram_key(canonical_form(adj_c).diagram) !=
        diagram_key(canonical_form(cross_c).diagram));
  CHECK(canonical_form(cross_c).sign != 0);
}

TEST_CASE("reversing a circle's orientation negates the Y diagram") {
  // Original: circle 1->2->3->1 with all legs on an internal hub. The only
  // isomorphisms onto the reversed circle swap 1 and 3 (odd) with no edge
  // reversals, and the automorphisms are the even rotations, so the
  // reversed diagram is exactly the negative of the original.
  ChordDiagram orig = parse_diagram("circle E: (1,2,3); edges: 1-4, 2-4, 3-4");
  ChordDiagram rev = orig;
  std::reverse(rev.circles[0].verts.begin(), rev.circles[0].verts.end());
  CanonicalDiagram c0 = canonical_form(orig);
  CanonicalDiagram c1 = canonical_form(rev);
  CHECK(diagram_key(c0.diagram) == diagram_key(c1.diagram));
  CHECK(c0.sign != 0);
  CHECK(c1.sign == -c0.sign);
}

TEST_CASE("canonicalization is idempotent and respects scalar structure") {
  for (const char* text :
       {"circle E: (1,2); edges: 1-2", "line E: (1,2,3,4); edges: 1-3, 2-4",
        "circle E: (1,2,3); edges: 1-4, 2-4, 3-4",
        "circle E: (); edges: 1-2, 1-2, 1-2"}) {
    ChordDiagram d = parse_diagram(text);
    CanonicalDiagram c1 = canonical_form(d);
    CanonicalDiagram c2 = canonical_form(c1.diagram);
    CHECK(c2.sign == +1);
    CHECK(diagram_key(c2.diagram) == diagram_key(c1.diagram));
  }
}

TEST_CASE("stu_reduce: pure diagrams are fixed points") {
  for (const char* text :
       {"circle E: (1,2); edges: 1-2", "circle E: (1,2,3,4); edges: 1-3, 2-4",
        "circle E: ()"}) {
    DiagramVector v = dv(parse_diagram(text));
    CHECK(stu_reduce(v) == v);
  }
}

TEST_CASE("stu_reduce: hand-derived relation instance at the Y diagram") {
  // S: circle (1,2,3), internal vertex 4, legs in the cyclic order
  // (to 1, to 2, to 3) at the internal vertex. Rewriting at the external 1
  // replaces it by two externals carrying the legs in the order (last,
  // next): S = nested - crossed in picture convention.
  ChordDiagram S = pic(4, {Circle{"E", false, {1, 2, 3}}},
                       {{1, 4}, {2, 4}, {3, 4}},
                       {{4, {{{0, 1}, {1, 1}, {2, 1}}}}});
  ChordDiagram nested =
      pic(4, {Circle{"E", false, {1, 2, 3, 4}}}, {{1, 4}, {2, 3}});
  ChordDiagram crossed =
      pic(4, {Circle{"E", false, {1, 2, 3, 4}}}, {{1, 3}, {2, 4}});
  DiagramVector expect = dv(nested) - dv(crossed);
  CHECK(stu_reduce(dv(S)) == stu_reduce(expect));
  // The relation vector itself dies.
  CHECK(stu_reduce(dv(S) - expect).is_zero());
}

TEST_CASE("stu_reduce is linear and idempotent") {
  DiagramVector a = dv(parse_diagram("circle E: (1,2,3); edges: 1-4, 2-4, 3-4"));
  DiagramVector b = dv(parse_diagram("circle E: (1,2); edges: 1-2"), Rat(1));
  // pad b to degree 2 by a disjoint theta component
  DiagramVector b2 = dv(parse_diagram("circle E: (1,2); edges: 1-2, 3-4, 3-4, 3-4"));
  DiagramVector lin = stu_reduce(Rat(2, 3) * a + Rat(-5) * b2);
  DiagramVector rhs = Rat(2, 3) * stu_reduce(a) + Rat(-5) * stu_reduce(b2);
  CHECK(lin == rhs);
  CHECK(stu_reduce(lin) == lin);
}

TEST_CASE("stu_reduce output has no internal vertices in skeleton parts") {
  DiagramVector red = stu_reduce(polywheel_close_mixed({w(2), W(2, "E")}));
  CHECK_FALSE(red.is_zero());
  for (const auto& [key, term] : red.terms()) {
    const ChordDiagram& d = term.first;
    std::vector<char> ext(d.n, 0);
    for (const Circle& c : d.circles)
      for (int v : c.verts) ext[v - 1] = 1;
    for (const auto& [a, b] : d.gedges) {
      // Chords join externals; detached graph edges join internals. No edge
      // may connect the two worlds after reduction.
      CHECK(ext[a - 1] == ext[b - 1]);
    }
  }
}

TEST_CASE("stu_reduce order independence on skeleton-connected diagrams") {
  for (int degree : {2, 3}) {
    int checked = 0;
    for (const ChordDiagram& d : enumerate_skeleton_connected(degree, 1)) {
      DiagramVector v = dv(d);
      DiagramVector det = stu_reduce(v);
      for (unsigned seed : {7u, 99u}) {
        CHECK(stu_reduce_seeded(v, seed) == det);
      }
      if (++checked >= 40) break;  // full exhaustive sweep in acceptance
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("juxtaposition: unit, associativity, commutativity mod reduction") {
  DiagramVector c = dv(parse_diagram("line E: (1,2); edges: 1-2"));
  DiagramVector t = dv(parse_diagram("line E: (); edges: 1-2, 1-2, 1-2"));
  DiagramVector unit = dv(parse_diagram("line E: ()"));

  CHECK(juxtapose(c, unit) == c);
  CHECK(juxtapose(unit, c) == c);

  DiagramVector ab = juxtapose(juxtapose(c, t), c);
  DiagramVector ba = juxtapose(c, juxtapose(t, c));
  CHECK(ab == ba);

  // Bilinearity.
  DiagramVector sum = Rat(2) * c + Rat(-1, 3) * t;
  CHECK(juxtapose(sum, c) ==
        Rat(2) * juxtapose(c, c) + Rat(-1, 3) * juxtapose(t, c));

  std::vector<DiagramVector> pool = {
      c, t, dv(parse_diagram("line E: (1,2,3,4); edges: 1-3, 2-4")),
      dv(parse_diagram("line E: (1,2,3); edges: 1-4, 2-4, 3-4"))};
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = 0; j < pool.size(); ++j) {
      if (pool[i].degree() + pool[j].degree() > 4) continue;
      DiagramVector comm =
          juxtapose(pool[i], pool[j]) - juxtapose(pool[j], pool[i]);
      CHECK(stu_reduce(comm).is_zero());
    }
  }

  CHECK_THROWS_AS(
      juxtapose(c, dv(parse_diagram("line F: (1,2); edges: 1-2"))),
      ChordError);
  CHECK_THROWS_AS(
      juxtapose(c, dv(parse_diagram("circle E: (1,2); edges: 1-2"))),
      ChordError);
}

TEST_CASE("closing lines erases basepoints only") {
  DiagramVector c = dv(parse_diagram("line E: (1,2); edges: 1-2"));
  DiagramVector closed = close_lines(c);
  REQUIRE(closed.terms().size() == 1);
  CHECK_FALSE(closed.terms().begin()->second.first.circles[0].based);
}

TEST_CASE("forget_to_graph") {
  // The closure of the bold 2-wheel carries the theta class with its sign.
  DiagramVector w2b = polywheel_close_mixed({W(2, "E")});
  REQUIRE(w2b.terms().size() == 1);
  const auto& [key, term] = *w2b.terms().begin();
  GraphVector absorbed;
  absorbed.add_term(forget_to_graph(term.first), term.second);
  GraphVector expect;
  expect.add_term(theta_graph(), Rat(1));
  CHECK(absorbed == expect);

  // Degree is preserved.
  ChordDiagram crossed = parse_diagram("circle E: (1,2,3,4); edges: 1-3, 2-4");
  CHECK(forget_to_graph(crossed).n == crossed.n);

  CHECK_THROWS_AS(forget_to_graph(parse_diagram("circle E: ()")), ChordError);
}

TEST_CASE("the one-chord circle with a flipped chord forgets to plus theta") {
  ChordDiagram d = parse_diagram("circle E: (1,2); edges: 2-1");
  auto cg = canonical_form(forget_to_graph(d));
  CHECK(cg.sign == +1);
  CHECK(graph_key(cg.graph) == graph_key(theta_graph()));
}

TEST_CASE("stu implies antisymmetry and rewiring at low degree") {
  for (int degree : {0, 1, 2}) {
    StuImplicationReport rep = verify_stu_implies_as_ihx(degree);
    CAPTURE(degree);
    CHECK(rep.ok());
    if (degree == 2) {
      CHECK(rep.as_instances > 0);
      CHECK(rep.ihx_instances > 0);
    }
  }
}

TEST_CASE("wheeling special case at k = 1 and 2") {
  for (int k : {1, 2}) {
    DiagramVector diff = wheeling_lhs(k, "E") - wheeling_rhs(k, "E");
    CAPTURE(k);
    CHECK(stu_reduce(diff).is_zero());
  }
  // Left side term structure at k = 2: coefficients 1, 2/24, 1/24^2.
  DiagramVector l2 = wheeling_lhs(2, "E");
  std::vector<Rat> coeffs;
  for (const auto& [key, term] : l2.terms()) coeffs.push_back(abs(term.second));
  std::sort(coeffs.begin(), coeffs.end());
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[0] == Rat(1, 576));
  CHECK(coeffs[1] == Rat(2, 24));
  CHECK(coeffs[2] == Rat(1));
}

TEST_CASE("mixed closures join spokes only") {
  // <W0> alone: a single bare circle of degree 0.
  DiagramVector bare = polywheel_close_mixed({W(0, "E")});
  REQUIRE(bare.terms().size() == 1);
  const ChordDiagram& d = bare.terms().begin()->second.first;
  CHECK(d.n == 0);
  CHECK(d.circles.size() == 1);
  // <w2 W0>: theta next to a bare circle.
  DiagramVector tw = polywheel_close_mixed({w(2), W(0, "E")});
  REQUIRE(tw.terms().size() == 1);
  CHECK(tw.terms().begin()->second.first.n == 2);
  CHECK(tw.terms().begin()->second.first.circles.size() == 1);
}

TEST_CASE("diagram vectors reject mixed degrees") {
  DiagramVector v = dv(parse_diagram("circle E: (1,2); edges: 1-2"));
  CHECK_THROWS_AS(
      v.add_term(parse_diagram("circle E: (1,2,3,4); edges: 1-3, 2-4"),
                 Rat(1)),
      ChordError);
}
