#include "rw/series.hpp"

namespace rw {

std::vector<Rat> series_mul(const std::vector<Rat>& a,
                            const std::vector<Rat>& b, size_t len) {
  std::vector<Rat> out(len, Rat(0));
  for (size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < len; ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<Rat> series_log(const std::vector<Rat>& f) {
  // n f_n = sum_{j<=n} j g_j f_{n-j} with f_0 = 1.
  const size_t len = f.size();
  std::vector<Rat> g(len, Rat(0));
  for (size_t n = 1; n < len; ++n) {
    Rat acc = f[n] * static_cast<long>(n);
    for (size_t j = 1; j < n; ++j)
      acc -= Rat(static_cast<long>(j)) * g[j] * f[n - j];
    g[n] = acc / static_cast<long>(n);
  }
  return g;
}

std::vector<Rat> series_exp(const std::vector<Rat>& g) {
  // f' = g' f, so n f_n = sum_{j<=n} j g_j f_{n-j}.
  const size_t len = g.size();
  std::vector<Rat> f(len, Rat(0));
  f[0] = 1;
  for (size_t n = 1; n < len; ++n) {
    Rat acc(0);
    for (size_t j = 1; j <= n; ++j)
      acc += Rat(static_cast<long>(j)) * g[j] * f[n - j];
    f[n] = acc / static_cast<long>(n);
  }
  return f;
}

}  // namespace rw
