#include "rw/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace rw {

void validate_graph(const OrientedGraph& g) {
  if (g.n < 0) throw GraphError("negative vertex count");
  if (g.n % 2 != 0)
    throw GraphError("vertex count must be even, got " + std::to_string(g.n));
  if (g.sign != 1 && g.sign != -1)
    throw GraphError("stored sign must be +1 or -1");
  std::vector<int> deg(g.n, 0);
  for (const auto& [a, b] : g.edges) {
    if (a < 1 || a > g.n || b < 1 || b > g.n)
      throw GraphError("edge endpoint out of range");
    ++deg[a - 1];
    ++deg[b - 1];
  }
  for (int v = 0; v < g.n; ++v) {
    if (deg[v] != 3)
      throw GraphError("vertex " + std::to_string(v + 1) + " has degree " +
                       std::to_string(deg[v]) + ", expected 3");
  }
}

std::string graph_key(const OrientedGraph& g) {
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  std::ostringstream os;
  os << g.n << '|';
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) os << ',';
    os << edges[i].first << '-' << edges[i].second;
  }
  return os.str();
}

OrientedGraph disjoint_union(const OrientedGraph& a, const OrientedGraph& b) {
  OrientedGraph out;
  out.n = a.n + b.n;
  out.edges = a.edges;
  out.edges.reserve(a.edges.size() + b.edges.size());
  for (const auto& [t, h] : b.edges) out.edges.emplace_back(t + a.n, h + a.n);
  out.sign = a.sign * b.sign;
  return out;
}

int permutation_parity(const std::vector<int>& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return (inv % 2 == 0) ? +1 : -1;
}

// ---------------------------------------------------------------------
// Canonical labeling.
//
// The canonical representative maximizes, over all vertex relabelings, the
// concatenation of column blocks of the multiplicity matrix: position t
// contributes (m[t][0..t-1], m[t][t]). The two-pass search finds the maximal
// encoding first and then walks every relabeling that attains it to collect
// the orientation signs; conflicting signs mean the class is zero.

namespace {

struct CanonSearch {
  int n = 0;
  std::vector<std::vector<int>> m;  // multiplicities, diagonal = loop count
  std::vector<int> best;
  std::vector<int> assigned;  // position -> original vertex
  std::vector<char> used;

  std::vector<int> block_for(int v, int t) const {
    std::vector<int> b(t + 1);
    for (int s = 0; s < t; ++s) b[s] = m[v][assigned[s]];
    b[t] = m[v][v];
    return b;
  }

  void seed_identity() {
    best.clear();
    for (int t = 0; t < n; ++t) {
      for (int s = 0; s < t; ++s) best.push_back(m[t][s]);
      best.push_back(m[t][t]);
    }
  }

  void dfs_max(int t, int offset) {
    if (t == n) return;
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      std::vector<int> blk = block_for(v, t);
      int cmp = 0;
      for (int j = 0; j <= t && cmp == 0; ++j) {
        if (blk[j] != best[offset + j]) cmp = blk[j] < best[offset + j] ? -1 : 1;
      }
      if (cmp < 0) continue;
      if (cmp > 0) {
        std::copy(blk.begin(), blk.end(), best.begin() + offset);
        std::fill(best.begin() + offset + t + 1, best.end(), -1);
      }
      used[v] = 1;
      assigned[t] = v;
      dfs_max(t + 1, offset + t + 1);
      used[v] = 0;
    }
  }

  template <typename Leaf>
  void dfs_collect(int t, int offset, Leaf&& leaf) {
    if (t == n) {
      leaf(assigned);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      std::vector<int> blk = block_for(v, t);
      if (!std::equal(blk.begin(), blk.end(), best.begin() + offset)) continue;
      used[v] = 1;
      assigned[t] = v;
      dfs_collect(t + 1, offset + t + 1, leaf);
      used[v] = 0;
    }
  }
};

}  // namespace

CanonicalGraph canonical_form(const OrientedGraph& g) {
  validate_graph(g);
  const int n = g.n;
  if (n == 0) return {OrientedGraph{0, {}, +1}, g.sign};

  static std::map<std::string, CanonicalGraph> cache;
  const std::string in_key = graph_key(g);
  if (auto it = cache.find(in_key); it != cache.end()) {
    CanonicalGraph r = it->second;
    r.sign *= g.sign;
    return r;
  }

  CanonSearch cs;
  cs.n = n;
  cs.m.assign(n, std::vector<int>(n, 0));
  bool has_loop = false;
  for (const auto& [a, b] : g.edges) {
    if (a == b) {
      ++cs.m[a - 1][a - 1];
      has_loop = true;
    } else {
      ++cs.m[a - 1][b - 1];
      ++cs.m[b - 1][a - 1];
    }
  }
  cs.assigned.assign(n, -1);
  cs.used.assign(n, 0);
  cs.seed_identity();
  cs.dfs_max(0, 0);

  // Rebuild the representative from the winning encoding.
  OrientedGraph canon;
  canon.n = n;
  {
    int off = 0;
    for (int t = 0; t < n; ++t) {
      for (int s = 0; s < t; ++s)
        for (int rep = 0; rep < cs.best[off + s]; ++rep)
          canon.edges.emplace_back(s + 1, t + 1);
      for (int rep = 0; rep < cs.best[off + t]; ++rep)
        canon.edges.emplace_back(t + 1, t + 1);
      off += t + 1;
    }
    std::sort(canon.edges.begin(), canon.edges.end());
  }

  CanonicalGraph result{canon, 0};
  if (!has_loop) {
    // Orientation signs over all optimal relabelings.
    bool seen_plus = false, seen_minus = false;
    cs.dfs_collect(0, 0, [&](const std::vector<int>& assigned) {
      if (seen_plus && seen_minus) return;
      std::vector<int> pos(n);
      for (int t = 0; t < n; ++t) pos[assigned[t]] = t;
      int s = permutation_parity(pos);
      for (const auto& [a, b] : g.edges) {
        if (pos[a - 1] > pos[b - 1]) s = -s;
      }
      (s > 0 ? seen_plus : seen_minus) = true;
    });
    if (seen_plus != seen_minus) result.sign = seen_plus ? +1 : -1;
  }

  cache.emplace(in_key, result);
  result.sign *= g.sign;
  return result;
}

std::vector<OrientedGraph> enumerate_trivalent(int two_k) {
  if (two_k < 0 || two_k % 2 != 0 || two_k > 8)
    throw GraphError("enumerate_trivalent supports even vertex counts 0..8");
  if (two_k == 0) return {OrientedGraph{}};

  static std::map<int, std::vector<OrientedGraph>> cache;
  if (auto it = cache.find(two_k); it != cache.end()) return it->second;

  const int n = two_k;
  std::map<std::string, OrientedGraph> found;
  std::vector<int> deg(n, 3);
  std::vector<std::pair<int, int>> edges;

  // Depth-first over the upper triangle of the multiplicity matrix.
  // Self-loops are skipped outright: a loop reverses to itself, so every
  // looped graph is its own negative and vanishes.
  auto rec = [&](auto&& self, int i, int j) -> void {
    if (i == n - 1) {
      if (deg[n - 1] != 0) return;
      OrientedGraph g;
      g.n = n;
      for (const auto& [a, b] : edges) g.edges.emplace_back(a + 1, b + 1);
      CanonicalGraph c = canonical_form(g);
      if (c.sign != 0) found.emplace(graph_key(c.graph), c.graph);
      return;
    }
    if (j == n) {
      if (deg[i] == 0) self(self, i + 1, i + 2);
      return;
    }
    // Capacity prune: remaining partners must be able to absorb deg[i].
    int cap = 0;
    for (int t = j; t < n; ++t) cap += std::min(deg[t], 3);
    if (deg[i] > cap) return;
    const int top = std::min(3, std::min(deg[i], deg[j]));
    for (int mult = 0; mult <= top; ++mult) {
      if (mult > 0) {
        --deg[i];
        --deg[j];
        edges.emplace_back(i, j);
      }
      self(self, i, j + 1);
    }
    for (int mult = 0; mult < top; ++mult) {
      ++deg[i];
      ++deg[j];
      edges.pop_back();
    }
  };
  rec(rec, 0, 1);

  std::vector<OrientedGraph> out;
  out.reserve(found.size());
  for (auto& [k, g] : found) out.push_back(g);
  cache.emplace(two_k, out);
  return out;
}

// ---------------------------------------------------------------------
// Cyclic-order conversions.

namespace {

// Parity of the permutation taking the edge ordering of half-edges
// (tail0, head0, tail1, head1, ...) to the vertex ordering (each vertex in
// ascending order listing its three halves in cyclic order).
int cyclic_parity(const CyclicOrientedGraph& c) {
  const int ne = static_cast<int>(c.ends.size());
  std::vector<int> omega_a;
  omega_a.reserve(2 * ne);
  for (int v = 0; v < c.n; ++v)
    for (const HalfRef& h : c.cyc[v]) omega_a.push_back(2 * h.edge + h.end);
  std::vector<int> pos_in_a(2 * ne, -1);
  for (size_t i = 0; i < omega_a.size(); ++i) pos_in_a[omega_a[i]] = (int)i;
  std::vector<int> perm(2 * ne);
  for (int h = 0; h < 2 * ne; ++h) perm[h] = pos_in_a[h];
  return permutation_parity(perm);
}

void check_cyclic(const CyclicOrientedGraph& c) {
  if (static_cast<int>(c.cyc.size()) != c.n)
    throw GraphError("cyclic data size mismatch");
  std::vector<int> seen(2 * c.ends.size(), 0);
  for (int v = 0; v < c.n; ++v) {
    for (const HalfRef& h : c.cyc[v]) {
      if (h.edge < 0 || h.edge >= (int)c.ends.size() || (h.end & ~1))
        throw GraphError("bad half-edge reference");
      int vertex_here = h.end == 0 ? c.ends[h.edge].first : c.ends[h.edge].second;
      if (vertex_here != v + 1)
        throw GraphError("cyclic order lists a half-edge of another vertex");
      ++seen[2 * h.edge + h.end];
    }
  }
  for (int s : seen)
    if (s != 1) throw GraphError("every half-edge must appear exactly once");
}

}  // namespace

CyclicOrientedGraph to_cyclic(const OrientedGraph& g) {
  validate_graph(g);
  CyclicOrientedGraph c;
  c.n = g.n;
  c.ends = g.edges;
  c.cyc.assign(g.n, {});
  std::vector<int> fill(g.n, 0);
  for (int e = 0; e < (int)g.edges.size(); ++e) {
    for (int end = 0; end < 2; ++end) {
      int v = (end == 0 ? g.edges[e].first : g.edges[e].second) - 1;
      if (fill[v] > 2) throw GraphError("vertex of degree > 3");
      c.cyc[v][fill[v]++] = HalfRef{e, end};
    }
  }
  if (g.n > 0 && cyclic_parity(c) * g.sign < 0) {
    std::swap(c.cyc[0][1], c.cyc[0][2]);
  }
  return c;
}

OrientedGraph from_cyclic(const CyclicOrientedGraph& c) {
  check_cyclic(c);
  OrientedGraph g;
  g.n = c.n;
  g.edges = c.ends;
  g.sign = c.n == 0 ? +1 : cyclic_parity(c);
  validate_graph(g);
  return g;
}

void flip_cyclic_at(CyclicOrientedGraph& c, int v) {
  if (v < 1 || v > c.n) throw GraphError("vertex out of range");
  std::swap(c.cyc[v - 1][1], c.cyc[v - 1][2]);
}

// ---------------------------------------------------------------------

void GraphVector::add_term(const OrientedGraph& g, const Rat& c) {
  if (c == 0) return;
  CanonicalGraph cf = canonical_form(g);
  if (cf.sign == 0) return;
  if (nverts_ < 0) nverts_ = cf.graph.n;
  if (cf.graph.n != nverts_)
    throw GraphError("mixed vertex counts in one graph vector");
  const std::string key = graph_key(cf.graph);
  auto [it, inserted] = terms_.try_emplace(key, cf.graph, Rat(0));
  it->second.second += Rat(cf.sign) * c;
  if (it->second.second == 0) terms_.erase(it);
  if (terms_.empty()) nverts_ = -1;
}

GraphVector& GraphVector::operator+=(const GraphVector& o) {
  for (const auto& [key, term] : o.terms_) add_term(term.first, term.second);
  return *this;
}

GraphVector& GraphVector::operator-=(const GraphVector& o) {
  for (const auto& [key, term] : o.terms_)
    add_term(term.first, -term.second);
  return *this;
}

GraphVector& GraphVector::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    nverts_ = -1;
    return *this;
  }
  for (auto& [key, term] : terms_) term.second *= c;
  return *this;
}

bool GraphVector::operator==(const GraphVector& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first || it->second.second != jt->second.second)
      return false;
  }
  return true;
}

std::string GraphVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, term] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(term.second) << " * [" << key << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------
// DSL parser.

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  bool try_char(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  long parse_uint() {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("expected integer", i);
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      ++i;
      if (v > 1000000) throw ParseError("integer too large", i);
    }
    return v;
  }
  std::string parse_word() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                            s[i] == '_'))
      ++i;
    if (start == i) throw ParseError("expected identifier", i);
    return s.substr(start, i - start);
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

OrientedGraph parse_edge_list(Cursor& cur) {
  // "edges" ":" pair ("," pair)*
  size_t kw_pos = cur.i;
  std::string kw = cur.parse_word();
  if (kw != "edges") throw ParseError("expected 'edges' or a shorthand", kw_pos);
  if (!cur.try_char(':')) throw ParseError("expected ':' after 'edges'", cur.i);
  std::vector<std::pair<long, long>> raw;
  while (true) {
    long a = cur.parse_uint();
    if (!cur.try_char('-'))
      throw ParseError("expected '-' between edge endpoints", cur.i);
    long b = cur.parse_uint();
    if (a <= 0 || b <= 0) throw ParseError("vertex ids must be positive", cur.i);
    raw.emplace_back(a, b);
    if (!cur.try_char(',')) break;
  }
  // Renumber by first appearance, preserving the written vertex order.
  std::map<long, int> renum;
  std::vector<long> original;
  for (const auto& [a, b] : raw) {
    for (long v : {a, b}) {
      if (!renum.count(v)) {
        renum[v] = static_cast<int>(renum.size()) + 1;
        original.push_back(v);
      }
    }
  }
  OrientedGraph g;
  g.n = static_cast<int>(renum.size());
  for (const auto& [a, b] : raw) g.edges.emplace_back(renum[a], renum[b]);
  // Degree check with the caller's vertex names.
  std::vector<int> deg(g.n, 0);
  for (const auto& [a, b] : g.edges) {
    ++deg[a - 1];
    ++deg[b - 1];
  }
  for (int v = 0; v < g.n; ++v) {
    if (deg[v] != 3)
      throw GraphError("vertex " + std::to_string(original[v]) +
                       " has degree " + std::to_string(deg[v]) +
                       ", expected 3");
  }
  if (g.n % 2 != 0) throw GraphError("vertex count must be even");
  return g;
}

OrientedGraph parse_factor(Cursor& cur) {
  size_t pos = cur.i;
  if (std::isdigit(static_cast<unsigned char>(cur.peek())))
    throw ParseError("expected 'edges:' or a shorthand", pos);
  // Lookahead on the word.
  size_t save = cur.i;
  std::string word = cur.parse_word();
  OrientedGraph base;
  if (word == "edges") {
    cur.i = save;
    return parse_edge_list(cur);
  } else if (word == "theta") {
    base = theta_graph();
  } else if (word == "theta2") {
    base = theta2_graph();
  } else if (word == "theta3") {
    base = theta3_graph();
  } else {
    throw ParseError("unknown graph shorthand '" + word + "'", pos);
  }
  if (cur.try_char('^')) {
    long p = cur.parse_uint();
    if (p < 1 || p > 4) throw ParseError("power out of range", cur.i);
    OrientedGraph acc;
    for (long t = 0; t < p; ++t) acc = disjoint_union(acc, base);
    return acc;
  }
  return base;
}

}  // namespace

OrientedGraph parse_graph(const std::string& text) {
  Cursor cur{text};
  if (cur.eof()) return OrientedGraph{};
  OrientedGraph g = parse_factor(cur);
  while (cur.try_char('|')) g = disjoint_union(g, parse_factor(cur));
  if (!cur.eof()) throw ParseError("trailing input", cur.i);
  validate_graph(g);
  return g;
}

OrientedGraph theta_graph() {
  return OrientedGraph{2, {{1, 2}, {1, 2}, {1, 2}}, +1};
}

// Two bigons joined by a pair of links. The edge directions pin the
// orientation: the class equals 2/5 <w4> exactly (checked in the tests).
OrientedGraph theta2_graph() {
  return OrientedGraph{
      4, {{1, 2}, {1, 2}, {3, 1}, {2, 4}, {3, 4}, {3, 4}}, +1};
}

// Chain of two bigons around a bridged middle pair; the oriented class
// equals 4/35 <w6> exactly (checked in the tests).
OrientedGraph theta3_graph() {
  return OrientedGraph{6,
                       {{1, 2},
                        {1, 2},
                        {1, 3},
                        {2, 4},
                        {3, 4},
                        {3, 5},
                        {4, 6},
                        {5, 6},
                        {5, 6}},
                       +1};
}

OrientedGraph theta_power(int k) {
  OrientedGraph acc;
  for (int i = 0; i < k; ++i) acc = disjoint_union(acc, theta_graph());
  return acc;
}

}  // namespace rw
