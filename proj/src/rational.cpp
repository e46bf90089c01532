#include "rw/rational.hpp"

#include <stdexcept>

namespace rw {

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_pow(const Rat& base, unsigned exp) {
  Rat out(1);
  Rat b = base;
  while (exp) {
    if (exp & 1u) out *= b;
    b *= b;
    exp >>= 1u;
  }
  return out;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    mpq_class q(s);
    q.canonicalize();
    return Rat(q);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

Int factorial(unsigned n) {
  Int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Int double_factorial_odd(unsigned m) {
  Int f = 1;
  for (unsigned i = 1; i <= m; ++i) f *= 2 * i - 1;
  return f;
}

}  // namespace rw
