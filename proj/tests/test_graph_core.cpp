#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "rw/graph.hpp"

using namespace rw;

namespace {

// Brute-force oracle: does g admit an orientation-reversing automorphism?
// Walks every vertex permutation directly; for parallel edges the flip
// parity between two directed multisets on the same vertex pair is forced,
// and a self-loop makes both parities available.
bool brute_zero_class(const OrientedGraph& g) {
  const int n = g.n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool has_loop = false;
  std::map<std::pair<int, int>, int> fwd;  // directed counts, a < b
  std::map<std::pair<int, int>, int> und;  // undirected multiplicities
  for (auto [a, b] : g.edges) {
    if (a == b) {
      has_loop = true;
      continue;
    }
    int lo = std::min(a, b), hi = std::max(a, b);
    und[{lo, hi}]++;
    if (a < b) fwd[{lo, hi}]++;
  }
  if (has_loop) return true;
  do {
    std::map<std::pair<int, int>, int> fwd2, und2;
    for (auto [a, b] : g.edges) {
      int pa = perm[a - 1] + 1, pb = perm[b - 1] + 1;
      int lo = std::min(pa, pb), hi = std::max(pa, pb);
      und2[{lo, hi}]++;
      if (pa < pb) fwd2[{lo, hi}]++;
    }
    if (und2 != und) continue;
    int flips = 0;
    for (auto& [pr, cnt] : und) {
      auto f1 = fwd.count(pr) ? fwd[pr] : 0;
      auto f2 = fwd2.count(pr) ? fwd2[pr] : 0;
      flips += std::abs(f2 - f1);
    }
    std::vector<int> p0(perm);
    int s = permutation_parity(p0) * (flips % 2 ? -1 : 1);
    if (s < 0) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

OrientedGraph relabel(const OrientedGraph& g, const std::vector<int>& perm) {
  OrientedGraph out;
  out.n = g.n;
  out.sign = g.sign;
  for (auto [a, b] : g.edges)
    out.edges.emplace_back(perm[a - 1] + 1, perm[b - 1] + 1);
  return out;
}

OrientedGraph reverse_all_edges(const OrientedGraph& g) {
  OrientedGraph out = g;
  for (auto& [a, b] : out.edges) std::swap(a, b);
  return out;
}

}  // namespace

TEST_CASE("parse: theta and the empty graph") {
  OrientedGraph th = parse_graph("edges: 1-2, 1-2, 1-2");
  CHECK(th.n == 2);
  CHECK(th.edges.size() == 3);
  CHECK(graph_key(canonical_form(th).graph) ==
        graph_key(canonical_form(theta_graph()).graph));

  OrientedGraph empty = parse_graph("");
  CHECK(empty.n == 0);
  CHECK(empty.edges.empty());

  CHECK(graph_key(parse_graph("theta")) == graph_key(th));
}

TEST_CASE("parse: degree error names the written vertex") {
  CHECK_THROWS_WITH_AS(parse_graph("edges: 1-1, 1-2"),
                       "vertex 2 has degree 1, expected 3", GraphError);
}

TEST_CASE("parse: malformed tokens carry a position") {
  CHECK_THROWS_AS(parse_graph("edges 1-2"), ParseError);
  CHECK_THROWS_AS(parse_graph("edges: 1+2"), ParseError);
  CHECK_THROWS_AS(parse_graph("edges: 1-2, 1-2, 1-2 trailing"), ParseError);
  CHECK_THROWS_AS(parse_graph("nonsense"), ParseError);
}

TEST_CASE("canonical_form: reversing one theta edge flips the sign") {
  OrientedGraph th = theta_graph();
  OrientedGraph flipped = th;
  flipped.edges[0] = {2, 1};
  auto c0 = canonical_form(th);
  auto c1 = canonical_form(flipped);
  CHECK(c0.sign == +1);
  CHECK(c1.sign == -1);
  CHECK(graph_key(c0.graph) == graph_key(c1.graph));
}

TEST_CASE("canonical_form: dumbbell is the zero class") {
  OrientedGraph dumbbell{2, {{1, 1}, {2, 2}, {1, 2}}, +1};
  CHECK(canonical_form(dumbbell).sign == 0);
}

TEST_CASE("canonical_form: vertex swap plus all reversals preserves theta") {
  // sign(transposition) * (-1)^3 = +1.
  OrientedGraph g = reverse_all_edges(relabel(theta_graph(), {1, 0}));
  auto c = canonical_form(g);
  CHECK(c.sign == +1);
  CHECK(graph_key(c.graph) == graph_key(theta_graph()));
}

TEST_CASE("theta automorphism group is orientation-preserving (brute force)") {
  CHECK_FALSE(brute_zero_class(theta_graph()));
  // And every automorphism has sign +1: swapping the vertices needs all
  // three edges reversed, sign(pi)*(-1)^3 = +1.
  std::vector<int> swap01{1, 0};
  OrientedGraph swapped = relabel(theta_graph(), swap01);
  int forward = 0;
  for (auto [a, b] : swapped.edges)
    if (a < b) ++forward;
  CHECK(forward == 0);  // relabeled edges all reversed relative to theta
}

TEST_CASE("canonical_form is idempotent and matches the brute-force oracle") {
  for (int two_k : {2, 4, 6}) {
    for (const OrientedGraph& g : enumerate_trivalent(two_k)) {
      auto c = canonical_form(g);
      CHECK(c.sign == +1);
      CHECK(graph_key(c.graph) == graph_key(g));
      CHECK_FALSE(brute_zero_class(g));
    }
  }
  // Spot checks at the top supported size.
  const auto big = enumerate_trivalent(8);
  for (size_t i = 0; i < big.size(); i += 6) {
    CHECK_FALSE(brute_zero_class(big[i]));
  }
}

TEST_CASE("sign-zero detection agrees with brute force on raw multigraphs") {
  // All loop-free trivalent multigraphs on 4 vertices, before canonical
  // filtering; compare zero-class detection against the oracle.
  int checked = 0;
  std::vector<std::array<int, 6>> mats;  // m12,m13,m14,m23,m24,m34
  for (int m12 = 0; m12 <= 3; ++m12)
    for (int m13 = 0; m13 <= 3; ++m13)
      for (int m14 = 0; m14 <= 3; ++m14)
        for (int m23 = 0; m23 <= 3; ++m23)
          for (int m24 = 0; m24 <= 3; ++m24)
            for (int m34 = 0; m34 <= 3; ++m34) {
              if (m12 + m13 + m14 != 3) continue;
              if (m12 + m23 + m24 != 3) continue;
              if (m13 + m23 + m34 != 3) continue;
              if (m14 + m24 + m34 != 3) continue;
              OrientedGraph g;
              g.n = 4;
              auto put = [&](int a, int b, int m) {
                for (int i = 0; i < m; ++i) g.edges.emplace_back(a, b);
              };
              put(1, 2, m12);
              put(1, 3, m13);
              put(1, 4, m14);
              put(2, 3, m23);
              put(2, 4, m24);
              put(3, 4, m34);
              CHECK((canonical_form(g).sign == 0) == brute_zero_class(g));
              ++checked;
            }
  CHECK(checked > 0);
}

TEST_CASE("reversing an edge twice restores the sign") {
  for (const OrientedGraph& g : enumerate_trivalent(4)) {
    OrientedGraph h = g;
    h.edges[0] = {h.edges[0].second, h.edges[0].first};
    auto c1 = canonical_form(h);
    h.edges[0] = {h.edges[0].second, h.edges[0].first};
    auto c2 = canonical_form(h);
    CHECK(c2.sign == +1);
    CHECK(c1.sign == -1);
    CHECK(graph_key(c2.graph) == graph_key(g));
  }
}

TEST_CASE("enumerate_trivalent small degrees") {
  auto deg0 = enumerate_trivalent(0);
  REQUIRE(deg0.size() == 1);
  CHECK(deg0[0].n == 0);

  auto deg1 = enumerate_trivalent(2);
  REQUIRE(deg1.size() == 1);
  CHECK(graph_key(deg1[0]) == graph_key(theta_graph()));

  auto deg2 = enumerate_trivalent(4);
  std::set<std::string> keys;
  for (const auto& g : deg2) keys.insert(graph_key(g));
  CHECK(keys.count(graph_key(canonical_form(theta_power(2)).graph)));
  CHECK(keys.count(graph_key(canonical_form(theta2_graph()).graph)));

  CHECK_THROWS_AS(enumerate_trivalent(10), GraphError);
  CHECK_THROWS_AS(enumerate_trivalent(3), GraphError);
}

TEST_CASE("disjoint union: identity and block-swap invariance") {
  OrientedGraph th = theta_graph();
  OrientedGraph u = disjoint_union(OrientedGraph{}, th);
  CHECK(graph_key(u) == graph_key(th));

  auto pool2 = enumerate_trivalent(2);
  auto pool4 = enumerate_trivalent(4);
  for (const auto& a : pool4) {
    for (const auto& b : pool2) {
      auto ab = canonical_form(disjoint_union(a, b));
      auto ba = canonical_form(disjoint_union(b, a));
      CHECK(graph_key(ab.graph) == graph_key(ba.graph));
      CHECK(ab.sign == ba.sign);
    }
  }
}

TEST_CASE("cyclic view: the planar anticlockwise theta") {
  // Drawn in the plane with vertex 1 left and vertex 2 right, edges top,
  // middle, bottom, anticlockwise readings are (top,bottom,middle) at 1 and
  // (top,middle,bottom) at 2; the corresponding directed datum is all three
  // edges 1->2 with sign +1.
  CyclicOrientedGraph c;
  c.n = 2;
  c.ends = {{1, 2}, {1, 2}, {1, 2}};  // edges: 0 top, 1 middle, 2 bottom
  c.cyc.resize(2);
  c.cyc[0] = {HalfRef{0, 0}, HalfRef{2, 0}, HalfRef{1, 0}};
  c.cyc[1] = {HalfRef{0, 1}, HalfRef{1, 1}, HalfRef{2, 1}};
  OrientedGraph g = from_cyclic(c);
  CHECK(g.sign == +1);
  CHECK(graph_key(g) == graph_key(theta_graph()));

  SUBCASE("one cyclic flip negates, two flips restore") {
    CyclicOrientedGraph c1 = c;
    flip_cyclic_at(c1, 1);
    CHECK(from_cyclic(c1).sign == -1);
    flip_cyclic_at(c1, 2);
    CHECK(from_cyclic(c1).sign == +1);
  }
}

TEST_CASE("cyclic round-trip preserves class and sign") {
  for (int two_k : {2, 4, 6}) {
    for (const OrientedGraph& g : enumerate_trivalent(two_k)) {
      OrientedGraph back = from_cyclic(to_cyclic(g));
      auto c = canonical_form(back);
      CHECK(c.sign == +1);
      CHECK(graph_key(c.graph) == graph_key(g));

      OrientedGraph neg = g;
      neg.sign = -1;
      auto cn = canonical_form(from_cyclic(to_cyclic(neg)));
      CHECK(cn.sign == -1);
    }
  }
}

TEST_CASE("graph vector: antisymmetry cancels") {
  for (const OrientedGraph& g : enumerate_trivalent(4)) {
    OrientedGraph rev = g;
    rev.edges[2] = {rev.edges[2].second, rev.edges[2].first};
    GraphVector v;
    v.add_term(g, Rat(1));
    v.add_term(rev, Rat(1));
    CHECK(v.is_zero());
  }
}

TEST_CASE("graph vector rejects mixed degrees") {
  GraphVector v;
  v.add_term(theta_graph(), Rat(1));
  CHECK_THROWS_AS(v.add_term(theta_power(2), Rat(1)), GraphError);
}
