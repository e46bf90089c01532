#pragma once

#include <map>
#include <string>
#include <vector>

#include "rw/graph.hpp"

namespace rw {

struct ChordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One skeleton circle: an oriented cyclic sequence of external vertices
// carrying a bundle label. A based circle ("line") is a circle cut at a
// point: its sequence starts at the cut and does not rotate.
struct Circle {
  std::string label;
  bool based = false;
  std::vector<int> verts;
};

// Chord diagram: skeleton circles plus a unitrivalent graph. External
// vertices (those on circles) carry exactly one graph edge; internal
// vertices carry three. Viewed as a trivalent graph with the skeleton arcs
// included, the orientation datum mirrors OrientedGraph: ascending vertex
// order and edge directions, with arcs always directed along their circle;
// reversing a single graph edge flips the class sign. Closed trivalent
// components away from the skeleton are permitted, as are bare circles.
struct ChordDiagram {
  int n = 0;  // vertices 1..n, external and internal together
  std::vector<Circle> circles;
  std::vector<std::pair<int, int>> gedges;
  int sign = +1;
};

void validate_diagram(const ChordDiagram& d);

// DSL: statements separated by ';':
//   circle LABEL: (v1, v2, ...)   oriented circle (may be empty)
//   line LABEL: (v1, v2, ...)     based circle
//   edges: a-b, c-d, ...          graph edges
ChordDiagram parse_diagram(const std::string& text);

struct CanonicalDiagram {
  ChordDiagram diagram;  // canonical representative, sign +1 inside
  int sign = 0;          // input = sign * representative; 0 for zero classes
};

CanonicalDiagram canonical_form(const ChordDiagram& d);
std::string diagram_key(const ChordDiagram& d);

inline int diagram_degree(const ChordDiagram& d) { return d.n / 2; }

// Q-linear combinations of canonical nonzero diagrams of one degree.
class DiagramVector {
 public:
  DiagramVector() = default;
  void add_term(const ChordDiagram& d, const Rat& c);
  DiagramVector& operator+=(const DiagramVector& o);
  DiagramVector& operator-=(const DiagramVector& o);
  DiagramVector& operator*=(const Rat& c);
  friend DiagramVector operator*(const Rat& c, DiagramVector v) {
    v *= c;
    return v;
  }
  friend DiagramVector operator+(DiagramVector a, const DiagramVector& b) {
    return a += b;
  }
  friend DiagramVector operator-(DiagramVector a, const DiagramVector& b) {
    return a -= b;
  }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return degree_; }  // -1 while zero
  const std::map<std::string, std::pair<ChordDiagram, Rat>>& terms() const {
    return terms_;
  }
  bool operator==(const DiagramVector& o) const;
  std::string str() const;

 private:
  std::map<std::string, std::pair<ChordDiagram, Rat>> terms_;
  int degree_ = -1;
};

// Normal form modulo the local skeleton relation together with the graph
// relations on detached components: rewrites every internal vertex out of
// skeleton-connected components (deterministic site order), projects the
// resulting pure chord parts onto a fixed quotient basis, and reduces
// detached graph components to homology basis elements. Linear, idempotent,
// and independent of rewrite order.
DiagramVector stu_reduce(const DiagramVector& v);

// Same normal form computed along a randomized rewrite order; used by the
// order-independence tests.
DiagramVector stu_reduce_seeded(const DiagramVector& v, unsigned seed);

// Juxtaposition product: both sides must carry exactly one based circle with
// the same label; the lines concatenate. Associative on the nose and
// commutative after stu_reduce.
DiagramVector juxtapose(const DiagramVector& x, const DiagramVector& y);
ChordDiagram juxtapose(const ChordDiagram& x, const ChordDiagram& y);

// Erases basepoints (closing each line into a circle).
DiagramVector close_lines(const DiagramVector& x);

// Skeleton arcs become ordinary edges. Requires every circle to carry at
// least one external vertex.
OrientedGraph forget_to_graph(const ChordDiagram& d);

// Builds the diagram whose orientation is specified cyclically: external
// vertices read (incoming arc, outgoing arc, leg); internal vertices listed
// in internal_cyc read their three graph-edge halves, each given as
// (gedge index, end) with end 0 the stored tail. Every internal vertex must
// appear in internal_cyc.
ChordDiagram diagram_from_cyclic(
    int n, std::vector<Circle> circles,
    std::vector<std::pair<int, int>> gedges,
    const std::map<int, std::array<std::pair<int, int>, 3>>& internal_cyc);

// The three-term rewiring at a graph edge joining two internal vertices;
// terms sum to zero modulo the skeleton relation (checked exhaustively by
// verify_stu_implies_as_ihx).
std::vector<ChordDiagram> diagram_ihx_terms(const ChordDiagram& d,
                                            int gedge_index);

// All canonical nonzero diagrams of the exact degree on `ncircles`
// distinctly labeled circles, each circle carrying at least one external
// vertex and every component touching the skeleton. Exhaustive; degree <= 3.
std::vector<ChordDiagram> enumerate_skeleton_connected(int degree,
                                                       int ncircles);

struct StuImplicationReport {
  int degree = 0;
  int diagrams = 0;
  int as_instances = 0;
  int ihx_instances = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Exhaustively enumerates diagrams of the exact degree on one and two
// circles whose components all touch the skeleton, and checks that every
// antisymmetry and rewiring instance at internal vertices/edges reduces to
// zero. degree <= 3.
StuImplicationReport verify_stu_implies_as_ihx(int degree);

}  // namespace rw
