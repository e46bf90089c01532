#pragma once

#include <vector>

#include "rw/rational.hpp"

namespace rw {

// Dense univariate power series over Q, index = exponent, truncated length.

std::vector<Rat> series_mul(const std::vector<Rat>& a,
                            const std::vector<Rat>& b, size_t len);

// log f for f(0) = 1.
std::vector<Rat> series_log(const std::vector<Rat>& f);

// exp g for g(0) = 0.
std::vector<Rat> series_exp(const std::vector<Rat>& g);

}  // namespace rw
