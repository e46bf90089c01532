#pragma once

#include <string>
#include <vector>

#include "rw/chord.hpp"
#include "rw/graph.hpp"

namespace rw {

// A wheel is a cycle of rim vertices, one outward spoke per rim vertex.
// Bold wheels have their rim on an oriented skeleton circle carrying a
// bundle label; the degenerate 0-spoke wheel is the bare circle and is only
// meaningful in bold form.
struct Wheel {
  int spokes = 0;
  bool bold = false;
  std::string label;
};

inline Wheel w(int spokes) { return Wheel{spokes, false, ""}; }
inline Wheel W(int spokes, std::string label) {
  return Wheel{spokes, true, std::move(label)};
}

// <w_{2a} w_{2b} ...>: the sum over all pairwise joinings of the spokes.
// Plain wheels only; throws GraphError on bold input, a plain 0-spoke wheel,
// or an odd total spoke count. Individual odd wheels are permitted (their
// closures land in the zero class for small degrees; see the tests).
GraphVector polywheel_close(const std::vector<Wheel>& wheels);

// Number of raw matching terms before canonical cancellation.
Int polywheel_term_count(const std::vector<Wheel>& wheels);

// Taylor coefficients b_{2m} of (1/2) log(sinh(x/2)/(x/2)): returns
// [b_0, b_2, ..., b_{2*max_m}] indexed by m. max_m <= 8.
std::vector<Rat> omega_coefficients(int max_m);

// One term of the wheel expansion of the wheeling element: a coefficient
// times a disjoint union of plain even wheels.
struct WheelTerm {
  Rat coeff;
  std::vector<int> spokes;  // descending even spoke counts
};

struct OmegaElement {
  int degree = 0;  // total number of external legs, 2m
  std::vector<WheelTerm> terms;
};

// Degree-2m part of exp_cup(sum b_{2m} w_{2m}).
OmegaElement omega_truncation(int two_m);

// Parses "<w2 w2 w4>" or "<w4 W(2,E) W(0,E)>"; w2m and w(2m) are plain
// wheels, W(2m,LABEL) bold ones.
std::vector<Wheel> parse_wheels(const std::string& text);

// Closure allowing bold wheels: bold rims become labeled skeleton circles and
// the result is a diagram vector. Only spokes are joined, never skeleton
// arcs; the 0-spoke bold wheel contributes a bare circle.
DiagramVector polywheel_close_mixed(const std::vector<Wheel>& wheels);

// The two sides of the wheeling special case on one line with the given
// bundle label, both closed into circle diagrams. Left: the k-th
// juxtaposition power of (one-chord + 1/24 theta x line). Right:
// 2^k k! sum_j <Omega_{2j} W_{2k-2j}> / (2k-2j)!. Their difference reduces
// to zero (the acceptance suite checks k = 1, 2).
DiagramVector wheeling_lhs(int k, const std::string& label);
DiagramVector wheeling_rhs(int k, const std::string& label);

}  // namespace rw
