#pragma once

#include <map>
#include <string>
#include <vector>

#include "rw/graph.hpp"
#include "rw/linalg.hpp"

namespace rw {

struct RelationSet {
  int k = 0;
  std::vector<GraphVector> relations;
};

// All IHX relations among graphs on 2k vertices: for every enumerated graph
// and every edge with two distinct endpoints, the three-term rewiring of the
// four half-edges adjacent to that edge. Terms are canonicalized with their
// orientation signs; relations that collapse to zero are dropped.
RelationSet ihx_relations(int k);

// Degree-k graph homology: the span of canonical nonzero graphs modulo the
// IHX relations (antisymmetry is already built into canonical_form).
struct HomologyBasis {
  int k = 0;
  std::vector<OrientedGraph> graphs;    // column order used by the reduction
  std::map<std::string, int> index_of;  // canonical key -> column
  std::vector<int> basis_columns;       // columns surviving as basis elements
  std::vector<SparseRow> reduction;     // column -> coords over basis slots

  int dim() const { return static_cast<int>(basis_columns.size()); }
  const OrientedGraph& basis_graph(int i) const {
    return graphs[basis_columns[i]];
  }
};

// Deterministic (lexicographic pivoting with a fixed preference list of
// report-friendly graphs kept as basis elements when possible). Cached.
const HomologyBasis& homology_basis(int k);

// Coordinates of v in the homology basis. Throws GraphError when v is
// nonzero and lives at a different degree.
std::vector<Rat> reduce(const GraphVector& v, const HomologyBasis& basis);

// Class of v as a sparse (basis slot, coeff) row.
SparseRow reduce_sparse(const GraphVector& v, const HomologyBasis& basis);

}  // namespace rw
