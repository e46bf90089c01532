#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rw/chern.hpp"
#include "rw/homology.hpp"

namespace rw {

struct ManifoldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Building-block tables keyed by name ("S", "S[3]", "K[2]", ...).
class Dataset {
 public:
  static Dataset load_file(const std::string& path);
  static Dataset from_json(const std::string& text);

  void add(ChernData d);
  bool has(const std::string& name) const { return blocks_.count(name) > 0; }
  const ChernData& block(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, ChernData> blocks_;
};

// Nonnegative-integer combination of products of building blocks; '+' is
// disjoint union. Every term must have the same total half-dimension k.
struct ProductTerm {
  long mult = 1;
  std::vector<std::string> factors;
};

struct FormalManifold {
  std::vector<ProductTerm> terms;
  int k = 0;
};

// Grammar: term ('+' term)*, term = [int] product, product = block
// (('x'|'*') block)*, block = NAME('^' int)?, NAME in {S, S[j], K[j]} with
// Sj / Kj accepted as shorthand.
FormalManifold parse_manifold(const std::string& text, const Dataset& ds);

// ---------------------------------------------------------------------

struct EvalTrace {
  std::vector<std::string> lines;
  void note(std::string s) { lines.push_back(std::move(s)); }
};

// Exact value of the invariant attached to a graph vector on a formal
// manifold: polywheel dictionary on irreducible blocks, the degree-4
// quotient identity for the class of theta2^2, the splitting formula across
// products, additivity across disjoint unions. Throws ManifoldError naming
// the blocking basis element when no route applies.
Rat rw_eval(const FormalManifold& X, const GraphVector& v, const Dataset& ds,
            EvalTrace* trace = nullptr);

struct InvariantReport {
  std::vector<Rat> coordinates;  // homology coordinates of the input
  Rat value{0};
  EvalTrace trace;
};
InvariantReport rw_eval_report(const FormalManifold& X, const GraphVector& v,
                               const Dataset& ds);

// b_{theta2^2} on an irreducible 16-real-dimensional block via the quotient
// of squares identity; rechecks the identity on its own output.
Rat theta2sq_irreducible(const ChernData& block);

// Full top-degree Chern monomial table of a formal manifold (products via
// the Whitney formula, disjoint unions by additivity).
std::map<std::string, Rat> chern_numbers_of(const FormalManifold& X,
                                            const Dataset& ds);

struct GapReport {
  std::string combo_a, combo_b;
  std::map<std::string, Rat> chern_a, chern_b;
  bool chern_equal = false;
  Rat value_a{0}, value_b{0};
  Rat difference{0};
  bool values_differ = false;
  bool perturbation_detected = false;  // changing one coefficient must break it
};
GapReport chern_gap_demo(const Dataset& ds);

struct TdHalfReport {
  std::string name;
  Rat lhs{0};  // theta-power invariant
  Rat rhs{0};  // 48^k k! integral of the half Todd class
  bool ok = false;
};
TdHalfReport td_half_identity_check(const FormalManifold& X,
                                    const std::string& name,
                                    const Dataset& ds);

// |R|^{2k} = coeff * pi^{pi_power} * vol^{vol_power}, coeff rational.
struct CurvatureNorm {
  Rat coeff{0};
  int pi_power = 0;
  int vol_power = 0;
  std::string str() const;
};
CurvatureNorm curvature_norm(const Rat& b_theta_k, int k);

struct DatasetCheck {
  std::string name;
  std::string what;
  std::string detail;
  bool ok = false;
};
struct DatasetReport {
  std::vector<DatasetCheck> checks;
  bool all_ok = true;
};
// (a) theta-power closed forms, (b) structure-sheaf Euler characteristic,
// (c) the dimension-8 bound.
DatasetReport validate_dataset(const Dataset& ds);

}  // namespace rw
