#pragma once

#include <gmpxx.h>

#include <string>

namespace rw {

using Int = mpz_class;

// Exact rational scalar used throughout; no floating point anywhere in the
// algebra. mpq_class leaves two-argument constructions un-canonicalized
// (so e.g. mpq_class(-4, 5760) != mpq_class(-1, 1440)); this wrapper
// canonicalizes on construction, which is the only place raw fractions
// enter. Results of arithmetic are canonical already.
class Rat : public mpq_class {
 public:
  Rat() : mpq_class() {}
  Rat(const mpq_class& q) : mpq_class(q) {}
  template <typename T, typename U>
  Rat(const __gmp_expr<T, U>& e) : mpq_class(e) {}
  Rat(int n) : mpq_class(n) {}
  Rat(long n) : mpq_class(n) {}
  Rat(const Int& z) : mpq_class(z) {}
  Rat(long num, long den) : mpq_class(num, den) { canonicalize(); }
};

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// Prints "n" for integers and "n/d" otherwise, never a decimal expansion.
std::string rat_str(const Rat& r);

Rat rat_pow(const Rat& base, unsigned exp);

// Parses "-3", "25/32", etc. Throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);

Int factorial(unsigned n);

// (2m-1)!! = 1*3*5*...*(2m-1); the number of perfect matchings of 2m points.
Int double_factorial_odd(unsigned m);

}  // namespace rw
