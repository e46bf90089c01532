#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rw/rational.hpp"

namespace rw {

// Parse failure with a character offset into the input text.
struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Oriented trivalent multigraph.
//
// Vertices are 1..n; the ascending order of the ids is part of the
// orientation datum, as are the edge directions (tail, head). Two data
// describe the same oriented graph exactly when they differ by a vertex
// permutation pi and reversal of r edges with sign(pi) * (-1)^r = +1;
// when sign(pi) * (-1)^r = -1 they describe opposite orientations.
// Self-loops are representable; any graph containing one is equivalent to
// its own negative (reverse the loop) and therefore canonicalizes to 0.
struct OrientedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  int sign = +1;
};

// Checks that every vertex has total degree 3 (a self-loop counts twice) and
// that the vertex count is even. Throws GraphError on violation.
void validate_graph(const OrientedGraph& g);

// Edge-list DSL: "edges: a-b, c-d, ..." with `|` separating disjoint-union
// factors, plus the shorthands theta, theta2, theta3 and postfix powers on
// shorthands ("theta^4"). Empty input parses to the empty graph.
OrientedGraph parse_graph(const std::string& text);

struct CanonicalGraph {
  OrientedGraph graph;  // canonical representative, stored with sign +1
  int sign = 0;         // input = sign * representative; 0 for the zero class
};

// Canonical labeling with orientation tracking: equal classes get equal
// representatives, and sign is 0 exactly when the graph admits an
// orientation-reversing automorphism.
CanonicalGraph canonical_form(const OrientedGraph& g);

// Deterministic printable key; the orientation sign field is not encoded.
std::string graph_key(const OrientedGraph& g);

// Vertex order of the result is a's block then b's block; signs multiply.
OrientedGraph disjoint_union(const OrientedGraph& a, const OrientedGraph& b);

// All canonical representatives of nonzero classes on two_k vertices,
// sorted by key. Supports two_k <= 8.
std::vector<OrientedGraph> enumerate_trivalent(int two_k);

// ---------------------------------------------------------------------
// Cyclic-order view of the same orientation data.

struct HalfRef {
  int edge = -1;
  int end = 0;  // 0 = tail slot of the stored pair, 1 = head slot
  bool operator==(const HalfRef&) const = default;
};

// Orientation carried by a cyclic order of the three incident half-edges at
// each vertex; changing the cyclic order at an odd number of vertices
// negates the class. The correspondence with OrientedGraph compares, as
// orderings of all half-edges, "vertices in order, each listing its halves
// cyclically" against "edges in order, each listing tail then head": even
// permutation parity means the same orientation.
struct CyclicOrientedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> ends;     // edge -> (vertex, vertex)
  std::vector<std::array<HalfRef, 3>> cyc;   // index v-1
};

CyclicOrientedGraph to_cyclic(const OrientedGraph& g);

// The returned sign field carries the parity relating the cyclic datum to
// the chosen directed representative.
OrientedGraph from_cyclic(const CyclicOrientedGraph& c);

void flip_cyclic_at(CyclicOrientedGraph& c, int v);

int permutation_parity(const std::vector<int>& p);

// ---------------------------------------------------------------------

// Formal Q-linear combination of canonical nonzero oriented graphs, all on
// the same number of vertices. Zero coefficients are never stored.
class GraphVector {
 public:
  GraphVector() = default;

  // Canonicalizes g and accumulates c * [g]; drops zero classes.
  void add_term(const OrientedGraph& g, const Rat& c);

  GraphVector& operator+=(const GraphVector& o);
  GraphVector& operator-=(const GraphVector& o);
  GraphVector& operator*=(const Rat& c);
  friend GraphVector operator*(const Rat& c, GraphVector v) {
    v *= c;
    return v;
  }
  friend GraphVector operator+(GraphVector a, const GraphVector& b) {
    a += b;
    return a;
  }
  friend GraphVector operator-(GraphVector a, const GraphVector& b) {
    a -= b;
    return a;
  }

  bool is_zero() const { return terms_.empty(); }
  // -1 while the vector is zero.
  int nverts() const { return nverts_; }
  const std::map<std::string, std::pair<OrientedGraph, Rat>>& terms() const {
    return terms_;
  }
  bool operator==(const GraphVector& o) const;

  std::string str() const;

 private:
  std::map<std::string, std::pair<OrientedGraph, Rat>> terms_;
  int nverts_ = -1;
};

// Named small graphs (fixed edge lists; orientations chosen so that the
// polywheel dictionary holds with the printed coefficients).
OrientedGraph theta_graph();
OrientedGraph theta2_graph();
OrientedGraph theta3_graph();
OrientedGraph theta_power(int k);

}  // namespace rw
