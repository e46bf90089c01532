#pragma once

#include <map>
#include <string>
#include <vector>

#include "rw/rational.hpp"

namespace rw {

struct ChernError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monomial in abstract Chern classes: exps[i] is the exponent of c_{i+1};
// trailing zeros are trimmed. Complex degree = sum (i+1) * exps[i].
using ChernMono = std::vector<int>;

int mono_degree(const ChernMono& m);
std::string mono_str(const ChernMono& m);       // "c2^2*c4"; "1" when empty
ChernMono parse_mono(const std::string& text);  // canonical spelling only

// Graded polynomial in c_1, c_2, ... with rational coefficients. Products
// are truncated at MAX_COMPLEX_DEGREE since nothing in scope integrates
// beyond complex dimension 8.
class ChernPoly {
 public:
  static constexpr int MAX_COMPLEX_DEGREE = 8;

  ChernPoly() = default;
  static ChernPoly constant(const Rat& c);
  static ChernPoly chern_class(int i);  // c_i, 1 <= i <= MAX_COMPLEX_DEGREE

  ChernPoly& operator+=(const ChernPoly& o);
  ChernPoly& operator-=(const ChernPoly& o);
  ChernPoly& operator*=(const Rat& c);
  friend ChernPoly operator+(ChernPoly a, const ChernPoly& b) { return a += b; }
  friend ChernPoly operator-(ChernPoly a, const ChernPoly& b) { return a -= b; }
  friend ChernPoly operator*(const Rat& c, ChernPoly p) { return p *= c; }
  ChernPoly operator*(const ChernPoly& o) const;  // truncated product

  ChernPoly homogeneous(int degree) const;
  // Substitutes 0 for every odd-index Chern class.
  ChernPoly drop_odd() const;
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const ChernPoly& o) const { return terms_ == o.terms_; }
  const std::map<ChernMono, Rat>& terms() const { return terms_; }
  void add(const ChernMono& m, const Rat& c);

  std::string str() const;

 private:
  std::map<ChernMono, Rat> terms_;
};

// Chern character components ch_m = p_m / m! via Newton's identities on the
// power sums of formal Chern roots; index m runs 1..max_degree and slot 0 is
// zero (the rank term is supplied by callers where it matters).
std::vector<ChernPoly> chern_character(int max_degree);

ChernPoly todd_series(int max_degree);

// Formal square root of the Todd series, term by term.
ChernPoly td_sqrt(int max_degree);

// Chern-number table of one building block.
struct ChernData {
  std::string name;
  int k = 0;  // complex dimension 2k, real dimension 4k
  bool irreducible = false;
  std::map<std::string, Rat> chern_numbers;  // canonical monomial -> integral
  std::string source;
};

void validate_chern_data(const ChernData& d);

// Integral of the top-degree (2k) component against the table. Monomials
// containing an odd Chern class integrate to zero (the profiles in scope
// have vanishing odd classes); anything else missing from the table throws.
Rat evaluate_top(const ChernPoly& p, const ChernData& d);

// (-1)^t (2a)!(2b)!... ch_{2a} ch_{2b} ... for spoke counts {2a, 2b, ...}.
ChernPoly polywheel_to_chern(const std::vector<int>& spokes);

// Odd cohomology vanishes in odd rows for irreducible blocks, so the
// structure sheaf Euler characteristic is k + 1.
int chi_O(int k);

// Asserts integral(Td) == k + 1; returns both sides.
struct RiemannRochCheck {
  Rat integral;
  Rat expected;
  bool ok = false;
};
RiemannRochCheck riemann_roch_constraint(const ChernData& d);

// The dimension-8 consequence of positivity of the Td^{1/2} integral:
// combines td_sqrt degree 4 with chi(O) = 3 into an exact bound on c4.
struct C4Bound {
  ChernPoly td_sqrt_deg4;  // (7 c2^2 - 4 c4) / 5760 after dropping odds
  Rat bound;               // 3024
};
C4Bound c4_bound();

}  // namespace rw
