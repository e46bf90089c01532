#pragma once

#include <string>
#include <vector>

#include "rw/graph.hpp"
#include "rw/wheels.hpp"

namespace rw {

// The two 8-vertex graphs named in the degree-4 dictionary rows, with
// orientations pinned by those rows (checked in the tests).
OrientedGraph theta_chain4_graph();  // two bigons around a double-rung ladder
OrientedGraph cube_graph();          // the 3-cube

// One row of the trivalent-graph / polywheel dictionary: an oriented graph
// class expressed as a combination of polywheel closures, plus (for three of
// the degree-4 rows) a multiple of [theta2^2].
struct DictRow {
  int k = 0;
  std::string name;
  GraphVector lhs;
  struct WheelTerm {
    Rat coeff;
    std::vector<int> spokes;
  };
  std::vector<WheelTerm> wheel_terms;
  Rat theta2sq_coeff = Rat(0);
};

// All thirteen rows, degrees 1 through 4.
const std::vector<DictRow>& polywheel_dictionary();

// Evaluates the right-hand side of a row as a graph vector.
GraphVector dict_row_rhs(const DictRow& row);

// Closed forms for the theta-power invariants of the two families.
Rat hilb_theta_value(int k);    // 12^k (k+3)^k
Rat kummer_theta_value(int k);  // 12^k (k+1)^{k+1}

// The two disjoint-union combinations with matching Chern numbers used by
// the characteristic-number gap demonstration.
std::string gap_combination_a();
std::string gap_combination_b();

}  // namespace rw
