#include "rw/chern.hpp"

#include <algorithm>
#include <sstream>

#include "rw/series.hpp"

namespace rw {

int mono_degree(const ChernMono& m) {
  int d = 0;
  for (size_t i = 0; i < m.size(); ++i) d += static_cast<int>(i + 1) * m[i];
  return d;
}

std::string mono_str(const ChernMono& m) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << 'c' << (i + 1);
    if (m[i] > 1) os << '^' << m[i];
  }
  return first ? "1" : os.str();
}

ChernMono parse_mono(const std::string& text) {
  if (text == "1") return {};
  ChernMono m;
  size_t i = 0;
  auto fail = [&]() {
    throw ChernError("malformed Chern monomial: " + text);
  };
  while (i < text.size()) {
    if (text[i] != 'c') fail();
    ++i;
    size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
      ++j;
    if (j == i) fail();
    int idx = std::stoi(text.substr(i, j - i));
    if (idx < 1 || idx > ChernPoly::MAX_COMPLEX_DEGREE) fail();
    i = j;
    int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      j = i;
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      if (j == i) fail();
      exp = std::stoi(text.substr(i, j - i));
      i = j;
    }
    if (m.size() < static_cast<size_t>(idx)) m.resize(idx, 0);
    m[idx - 1] += exp;
    if (i < text.size()) {
      if (text[i] != '*') fail();
      ++i;
      if (i == text.size()) fail();
    }
  }
  return m;
}

namespace {

ChernMono trim(ChernMono m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

}  // namespace

ChernPoly ChernPoly::constant(const Rat& c) {
  ChernPoly p;
  p.add({}, c);
  return p;
}

ChernPoly ChernPoly::chern_class(int i) {
  if (i < 1 || i > MAX_COMPLEX_DEGREE)
    throw ChernError("chern class index out of range");
  ChernMono m(i, 0);
  m[i - 1] = 1;
  ChernPoly p;
  p.add(m, Rat(1));
  return p;
}

void ChernPoly::add(const ChernMono& m, const Rat& c) {
  if (c == 0) return;
  ChernMono key = trim(m);
  if (mono_degree(key) > MAX_COMPLEX_DEGREE) return;
  auto [it, inserted] = terms_.try_emplace(key, Rat(0));
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

ChernPoly& ChernPoly::operator+=(const ChernPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

ChernPoly& ChernPoly::operator-=(const ChernPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

ChernPoly& ChernPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ChernPoly ChernPoly::operator*(const ChernPoly& o) const {
  ChernPoly out;
  for (const auto& [ma, ca] : terms_) {
    const int da = mono_degree(ma);
    for (const auto& [mb, cb] : o.terms_) {
      if (da + mono_degree(mb) > MAX_COMPLEX_DEGREE) continue;
      ChernMono m(std::max(ma.size(), mb.size()), 0);
      for (size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      out.add(m, ca * cb);
    }
  }
  return out;
}

ChernPoly ChernPoly::homogeneous(int degree) const {
  ChernPoly out;
  for (const auto& [m, c] : terms_) {
    if (mono_degree(m) == degree) out.add(m, c);
  }
  return out;
}

ChernPoly ChernPoly::drop_odd() const {
  ChernPoly out;
  for (const auto& [m, c] : terms_) {
    bool odd = false;
    for (size_t i = 0; i < m.size(); i += 2) {  // c_1, c_3, ... at even index
      if (m[i] != 0) {
        odd = true;
        break;
      }
    }
    if (!odd) out.add(m, c);
  }
  return out;
}

std::string ChernPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << "*" << mono_str(m);
  }
  return os.str();
}

// ---------------------------------------------------------------------

std::vector<ChernPoly> chern_character(int max_degree) {
  if (max_degree < 0 || max_degree > ChernPoly::MAX_COMPLEX_DEGREE)
    throw ChernError("chern_character degree out of range");
  static std::map<int, std::vector<ChernPoly>> cache;
  if (auto it = cache.find(max_degree); it != cache.end()) return it->second;

  // Newton: p_m = sum_{i=1}^{m-1} (-1)^{i-1} c_i p_{m-i} + (-1)^{m-1} m c_m.
  std::vector<ChernPoly> p(max_degree + 1);
  for (int m = 1; m <= max_degree; ++m) {
    ChernPoly acc;
    for (int i = 1; i < m; ++i) {
      ChernPoly term = ChernPoly::chern_class(i) * p[m - i];
      acc += (i % 2 ? Rat(1) : Rat(-1)) * term;
    }
    acc += (m % 2 ? Rat(m) : Rat(-m)) * ChernPoly::chern_class(m);
    p[m] = acc;
  }
  std::vector<ChernPoly> ch(max_degree + 1);
  for (int m = 1; m <= max_degree; ++m) {
    ch[m] = Rat(1) / Rat(factorial(m)) * p[m];
  }
  cache.emplace(max_degree, ch);
  return ch;
}

namespace {

// log(x / (1 - e^{-x})) as a series in x: x/2 - log(sinh(x/2)/(x/2)).
std::vector<Rat> log_todd_factor(size_t len) {
  std::vector<Rat> sinh_ratio(len, Rat(0));
  for (size_t m = 0; 2 * m < len; ++m)
    sinh_ratio[2 * m] =
        Rat(1) / (rat_pow(Rat(4), static_cast<unsigned>(m)) *
                  Rat(factorial(static_cast<unsigned>(2 * m + 1))));
  std::vector<Rat> lg = series_log(sinh_ratio);
  std::vector<Rat> out(len, Rat(0));
  if (len > 1) out[1] = Rat(1, 2);
  for (size_t j = 2; j < len; ++j) out[j] -= lg[j];
  return out;
}

ChernPoly exp_of_power_sums(const std::vector<Rat>& coeff, int max_degree) {
  // exp(sum_j coeff[j] p_j) truncated; p_j = j! ch_j.
  std::vector<ChernPoly> ch = chern_character(max_degree);
  ChernPoly arg;
  for (int j = 1; j <= max_degree; ++j) {
    if (static_cast<size_t>(j) < coeff.size() && coeff[j] != 0)
      arg += (coeff[j] * Rat(factorial(j))) * ch[j];
  }
  ChernPoly acc = ChernPoly::constant(Rat(1));
  ChernPoly power = ChernPoly::constant(Rat(1));
  Int fact = 1;
  for (int it = 1; it <= max_degree; ++it) {
    power = power * arg;
    fact *= it;
    acc += Rat(1) / Rat(fact) * power;
  }
  return acc;
}

}  // namespace

ChernPoly todd_series(int max_degree) {
  if (max_degree < 0 || max_degree > ChernPoly::MAX_COMPLEX_DEGREE)
    throw ChernError("todd_series degree out of range");
  static std::map<int, ChernPoly> cache;
  if (auto it = cache.find(max_degree); it != cache.end()) return it->second;
  std::vector<Rat> q = log_todd_factor(max_degree + 1);
  ChernPoly full = exp_of_power_sums(q, max_degree);
  // The exponential is exact only up to the requested degree; discard the
  // partial higher terms.
  ChernPoly td;
  for (int d = 0; d <= max_degree; ++d) td += full.homogeneous(d);
  cache.emplace(max_degree, td);
  return td;
}

ChernPoly td_sqrt(int max_degree) {
  if (max_degree < 0 || max_degree > ChernPoly::MAX_COMPLEX_DEGREE)
    throw ChernError("td_sqrt degree out of range");
  static std::map<int, ChernPoly> cache;
  if (auto it = cache.find(max_degree); it != cache.end()) return it->second;
  const ChernPoly td = todd_series(max_degree);
  // s_0 = 1, s_d = (td_d - sum_{0<i<d} s_i s_{d-i}) / 2.
  std::vector<ChernPoly> s(max_degree + 1);
  s[0] = ChernPoly::constant(Rat(1));
  ChernPoly out = s[0];
  for (int d = 1; d <= max_degree; ++d) {
    ChernPoly acc = td.homogeneous(d);
    for (int i = 1; i < d; ++i) acc -= (s[i] * s[d - i]).homogeneous(d);
    s[d] = Rat(1, 2) * acc;
    out += s[d];
  }
  cache.emplace(max_degree, out);
  return out;
}

// ---------------------------------------------------------------------

void validate_chern_data(const ChernData& d) {
  if (d.k < 1 || 2 * d.k > ChernPoly::MAX_COMPLEX_DEGREE)
    throw ChernError(d.name + ": dimension out of range");
  ChernMono euler(2 * d.k, 0);
  euler[2 * d.k - 1] = 1;
  if (!d.chern_numbers.count(mono_str(euler)))
    throw ChernError(d.name + ": missing Euler class entry " +
                     mono_str(euler));
  for (const auto& [key, v] : d.chern_numbers) {
    ChernMono m = parse_mono(key);
    if (mono_str(m) != key)
      throw ChernError(d.name + ": non-canonical monomial spelling " + key);
    if (mono_degree(m) != 2 * d.k)
      throw ChernError(d.name + ": monomial " + key + " has degree " +
                       std::to_string(mono_degree(m)) + ", expected " +
                       std::to_string(2 * d.k));
  }
}

Rat evaluate_top(const ChernPoly& p, const ChernData& d) {
  Rat out(0);
  const ChernPoly top = p.homogeneous(2 * d.k);
  for (const auto& [m, c] : top.terms()) {
    bool odd = false;
    for (size_t i = 0; i < m.size(); i += 2) {
      if (m[i] != 0) {
        odd = true;
        break;
      }
    }
    if (odd) continue;
    auto it = d.chern_numbers.find(mono_str(m));
    if (it == d.chern_numbers.end())
      throw ChernError(d.name + ": no Chern number for monomial " +
                       mono_str(m));
    out += c * it->second;
  }
  return out;
}

ChernPoly polywheel_to_chern(const std::vector<int>& spokes) {
  const std::vector<ChernPoly> ch =
      chern_character(ChernPoly::MAX_COMPLEX_DEGREE);
  ChernPoly out = ChernPoly::constant(Rat(1));
  Rat scale(1);
  for (int s : spokes) {
    if (s < 2 || s % 2 != 0 || s > ChernPoly::MAX_COMPLEX_DEGREE)
      throw ChernError("polywheel spoke count out of range");
    out = out * ch[s];
    scale *= Rat(factorial(s)) * Rat(-1);
  }
  return scale * out;
}

int chi_O(int k) { return k + 1; }

RiemannRochCheck riemann_roch_constraint(const ChernData& d) {
  if (!d.irreducible)
    throw ChernError(d.name + ": structure-sheaf check needs an irreducible block");
  RiemannRochCheck r;
  r.integral = evaluate_top(todd_series(2 * d.k), d);
  r.expected = Rat(chi_O(d.k));
  r.ok = r.integral == r.expected;
  return r;
}

C4Bound c4_bound() {
  C4Bound out;
  out.td_sqrt_deg4 = td_sqrt(4).homogeneous(4).drop_odd();

  // Expected shape (a c2^2 + b c4) with a = 7/5760, b = -4/5760.
  ChernPoly expect;
  expect.add(parse_mono("c2^2"), Rat(7, 5760));
  expect.add(parse_mono("c4"), Rat(-4, 5760));
  if (!(out.td_sqrt_deg4 == expect))
    throw ChernError("unexpected degree-4 half-Todd component: " +
                     out.td_sqrt_deg4.str());

  // chi(O) = 3 pins 3 c2^2 - c4 = 2160 through the Todd integral, so
  // positivity of 7 c2^2 - 4 c4 becomes 7(2160 + c4)/3 > 4 c4.
  ChernPoly td4 = todd_series(4).homogeneous(4).drop_odd();
  ChernPoly td_expect;
  td_expect.add(parse_mono("c2^2"), Rat(3, 720));
  td_expect.add(parse_mono("c4"), Rat(-1, 720));
  if (!(td4 == td_expect))
    throw ChernError("unexpected degree-4 Todd component: " + td4.str());
  const Rat chi_term = Rat(3) * Rat(720);      // c2^2 coefficient solved out
  const Rat bound = Rat(7) * chi_term / Rat(5);  // 7*2160/5
  out.bound = bound;
  if (out.bound != Rat(3024)) throw ChernError("c4 bound derivation drifted");
  return out;
}

}  // namespace rw
