#include "rw/chord.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "rw/homology.hpp"
#include "rw/linalg.hpp"

namespace rw {

// ---------------------------------------------------------------------
// Validation, keys, parsing.

void validate_diagram(const ChordDiagram& d) {
  if (d.sign != 1 && d.sign != -1)
    throw ChordError("stored sign must be +1 or -1");
  if (d.n < 0 || d.n % 2 != 0)
    throw ChordError("total vertex count must be even, got " +
                     std::to_string(d.n));
  std::vector<int> on_circle(d.n, 0);
  for (const Circle& c : d.circles) {
    for (int v : c.verts) {
      if (v < 1 || v > d.n) throw ChordError("circle vertex out of range");
      if (on_circle[v - 1]++)
        throw ChordError("vertex " + std::to_string(v) +
                         " appears on the skeleton twice");
    }
  }
  std::vector<int> deg(d.n, 0);
  for (const auto& [a, b] : d.gedges) {
    if (a < 1 || a > d.n || b < 1 || b > d.n)
      throw ChordError("edge endpoint out of range");
    ++deg[a - 1];
    ++deg[b - 1];
  }
  for (int v = 0; v < d.n; ++v) {
    const int expect = on_circle[v] ? 1 : 3;
    if (deg[v] != expect)
      throw ChordError("vertex " + std::to_string(v + 1) + " has degree " +
                       std::to_string(deg[v]) + ", expected " +
                       std::to_string(expect) +
                       (on_circle[v] ? " (external)" : " (internal)"));
  }
}

std::string diagram_key(const ChordDiagram& d) {
  std::ostringstream os;
  os << d.n << ';';
  for (const Circle& c : d.circles) {
    os << (c.based ? 'l' : 'c') << '[' << c.label << ':';
    for (size_t i = 0; i < c.verts.size(); ++i) {
      if (i) os << ',';
      os << c.verts[i];
    }
    os << ']';
  }
  os << ';';
  auto edges = d.gedges;
  std::sort(edges.begin(), edges.end());
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) os << ',';
    os << edges[i].first << '-' << edges[i].second;
  }
  return os.str();
}

namespace {

struct DCursor {
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
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + (s[i++] - '0');
    return v;
  }
  std::string parse_word() {
    skip_ws();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (start == i) throw ParseError("expected identifier", i);
    return s.substr(start, i - start);
  }
};

}  // namespace

ChordDiagram parse_diagram(const std::string& text) {
  DCursor cur{text};
  std::vector<Circle> circles;
  std::vector<std::pair<long, long>> raw_edges;
  std::vector<std::vector<long>> raw_circles;

  while (!cur.eof()) {
    size_t kw_pos = cur.i;
    std::string kw = cur.parse_word();
    if (kw == "circle" || kw == "line") {
      Circle c;
      c.based = (kw == "line");
      c.label = cur.parse_word();
      if (!cur.try_char(':'))
        throw ParseError("expected ':' after circle label", cur.i);
      if (!cur.try_char('('))
        throw ParseError("expected '(' before circle vertices", cur.i);
      std::vector<long> verts;
      if (!cur.try_char(')')) {
        while (true) {
          verts.push_back(cur.parse_uint());
          if (cur.try_char(')')) break;
          if (!cur.try_char(','))
            throw ParseError("expected ',' or ')' in circle vertex list",
                             cur.i);
        }
      }
      circles.push_back(std::move(c));
      raw_circles.push_back(std::move(verts));
    } else if (kw == "edges") {
      if (!cur.try_char(':'))
        throw ParseError("expected ':' after 'edges'", cur.i);
      while (true) {
        long a = cur.parse_uint();
        if (!cur.try_char('-'))
          throw ParseError("expected '-' between edge endpoints", cur.i);
        long b = cur.parse_uint();
        raw_edges.emplace_back(a, b);
        if (!cur.try_char(',')) break;
      }
    } else {
      throw ParseError("expected 'circle', 'line' or 'edges'", kw_pos);
    }
    if (!cur.try_char(';')) break;
  }
  if (!cur.eof()) throw ParseError("trailing input", cur.i);

  // Renumber by first appearance: circles first, then edge endpoints.
  std::map<long, int> renum;
  auto id_of = [&](long v) {
    auto [it, ins] = renum.try_emplace(v, static_cast<int>(renum.size()) + 1);
    return it->second;
  };
  ChordDiagram d;
  for (size_t ci = 0; ci < circles.size(); ++ci) {
    for (long v : raw_circles[ci]) circles[ci].verts.push_back(id_of(v));
  }
  for (const auto& [a, b] : raw_edges) d.gedges.emplace_back(id_of(a), id_of(b));
  d.circles = std::move(circles);
  d.n = static_cast<int>(renum.size());
  validate_diagram(d);
  return d;
}

// ---------------------------------------------------------------------
// Trivalent view: skeleton arcs plus graph edges, with a cyclic-order datum
// representing the stored orientation.

namespace {

struct DiagramView {
  std::vector<std::pair<int, int>> edges;  // arcs first, then gedges
  int narcs = 0;
  CyclicOrientedGraph cyc;                    // class representative of +d
  std::vector<HalfRef> in_arc, out_arc;       // externals only
  std::vector<int> leg_edge;                  // global edge index, -1 internal
  std::vector<int> circle_of, pos_of;         // externals only, else -1
};

DiagramView make_view(const ChordDiagram& d) {
  DiagramView vw;
  vw.in_arc.assign(d.n, HalfRef{-1, 0});
  vw.out_arc.assign(d.n, HalfRef{-1, 0});
  vw.leg_edge.assign(d.n, -1);
  vw.circle_of.assign(d.n, -1);
  vw.pos_of.assign(d.n, -1);

  for (size_t ci = 0; ci < d.circles.size(); ++ci) {
    const auto& verts = d.circles[ci].verts;
    const int m = static_cast<int>(verts.size());
    for (int t = 0; t < m; ++t) {
      int a = verts[t], b = verts[(t + 1) % m];
      int e = static_cast<int>(vw.edges.size());
      vw.edges.emplace_back(a, b);
      vw.out_arc[a - 1] = HalfRef{e, 0};
      vw.in_arc[b - 1] = HalfRef{e, 1};
      vw.circle_of[a - 1] = static_cast<int>(ci);
      vw.pos_of[a - 1] = t;
    }
  }
  vw.narcs = static_cast<int>(vw.edges.size());
  for (const auto& ge : d.gedges) vw.edges.push_back(ge);
  for (int e = vw.narcs; e < static_cast<int>(vw.edges.size()); ++e) {
    for (int end = 0; end < 2; ++end) {
      int v = (end == 0 ? vw.edges[e].first : vw.edges[e].second) - 1;
      if (vw.circle_of[v] >= 0) vw.leg_edge[v] = e;
    }
  }

  vw.cyc.n = d.n;
  vw.cyc.ends = vw.edges;
  vw.cyc.cyc.assign(d.n, {});
  std::vector<int> fill(d.n, 0);
  for (int e = 0; e < static_cast<int>(vw.edges.size()); ++e) {
    for (int end = 0; end < 2; ++end) {
      int v = (end == 0 ? vw.edges[e].first : vw.edges[e].second) - 1;
      if (fill[v] > 2) throw ChordError("vertex of degree > 3 in view");
      vw.cyc.cyc[v][fill[v]++] = HalfRef{e, end};
    }
  }
  if (d.n > 0) {
    int parity = from_cyclic(vw.cyc).sign;
    if (parity != d.sign) std::swap(vw.cyc.cyc[0][1], vw.cyc.cyc[0][2]);
  }
  return vw;
}

bool same_cyclic_class(const std::array<HalfRef, 3>& a,
                       const std::array<HalfRef, 3>& b) {
  for (int r = 0; r < 3; ++r) {
    if (a[0] == b[r] && a[1] == b[(r + 1) % 3] && a[2] == b[(r + 2) % 3])
      return true;
  }
  return false;
}

std::array<HalfRef, 3> rotate_front(const std::array<HalfRef, 3>& a,
                                    const HalfRef& target) {
  for (int r = 0; r < 3; ++r) {
    if (a[r] == target) return {a[r], a[(r + 1) % 3], a[(r + 2) % 3]};
  }
  throw ChordError("half-edge not found at vertex");
}

// ---------------------------------------------------------------------
// Canonical form.

struct SkeletonPart {
  int s = 0;
  std::vector<Circle> circles;  // content circles only (>=1 vertex)
  std::vector<std::pair<int, int>> gedges;
};

struct SkelCanon {
  std::vector<int> best_gedges;  // flattened sorted normalized pairs
  std::vector<int> circle_sizes;
  std::vector<std::pair<std::string, bool>> circle_keys;
  bool zero = false;
  int sign = +1;
};

SkelCanon canonicalize_skeleton(const SkeletonPart& p) {
  SkelCanon out;
  if (p.s == 0) {
    out.sign = +1;
    return out;
  }
  // Group circles by (label, based, size); groups in sorted order. Only
  // same-group circles may swap, so the circle key sequence is fixed and the
  // encoding needs to cover the graph edges only.
  std::vector<int> order(p.circles.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  auto circle_key = [&](int ci) {
    return std::make_tuple(p.circles[ci].label, p.circles[ci].based,
                           p.circles[ci].verts.size());
  };
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return circle_key(a) < circle_key(b); });
  std::vector<std::pair<size_t, size_t>> groups;  // [begin, end) in order
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && circle_key(order[j]) == circle_key(order[i]))
      ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  for (int ci : order) {
    out.circle_sizes.push_back(static_cast<int>(p.circles[ci].verts.size()));
    out.circle_keys.emplace_back(p.circles[ci].label, p.circles[ci].based);
  }

  std::vector<int> internals;
  {
    std::vector<char> ext(p.s, 0);
    for (const Circle& c : p.circles)
      for (int v : c.verts) ext[v - 1] = 1;
    for (int v = 0; v < p.s; ++v)
      if (!ext[v]) internals.push_back(v);
  }
  if (internals.size() > 8)
    throw ChordError("skeleton component too large to canonicalize");

  bool have_best = false;
  bool seen_plus = false, seen_minus = false;

  std::vector<int> rot(p.circles.size(), 0);
  std::vector<int> newid(p.s, 0);
  std::vector<std::pair<int, int>> norm(p.gedges.size());
  std::vector<int> enc(p.gedges.size() * 2);
  std::sort(internals.begin(), internals.end());
  std::vector<int> placement;

  auto consider = [&]() {
    // Assign external ids along the chosen layout.
    int next = 1;
    for (int ci : order) {
      const auto& verts = p.circles[ci].verts;
      const int m = static_cast<int>(verts.size());
      const int r = rot[ci];
      for (int t = 0; t < m; ++t) newid[verts[(r + t) % m] - 1] = next++;
    }
    // Internal ids: all placements.
    placement = internals;
    do {
      int id = next;
      for (int v : placement) newid[v] = id++;
      int flips = 0;
      for (size_t ge = 0; ge < p.gedges.size(); ++ge) {
        int x = newid[p.gedges[ge].first - 1];
        int y = newid[p.gedges[ge].second - 1];
        if (x > y) {
          std::swap(x, y);
          ++flips;
        }
        norm[ge] = {x, y};
      }
      std::sort(norm.begin(), norm.end());
      for (size_t ge = 0; ge < norm.size(); ++ge) {
        enc[2 * ge] = norm[ge].first;
        enc[2 * ge + 1] = norm[ge].second;
      }
      int cmp = 0;
      if (have_best) {
        if (enc < out.best_gedges) cmp = -1;
        else if (enc > out.best_gedges) cmp = 1;
      }
      if (!have_best || cmp < 0) {
        out.best_gedges = enc;
        have_best = true;
        seen_plus = seen_minus = false;
        cmp = 0;
      }
      if (cmp == 0) {
        int inv = flips;
        for (int v = 0; v < p.s; ++v) {
          for (int w = v + 1; w < p.s; ++w) {
            if (newid[v] > newid[w]) ++inv;
          }
        }
        ((inv % 2 == 0) ? seen_plus : seen_minus) = true;
      }
    } while (std::next_permutation(placement.begin(), placement.end()));
  };

  // Iterate group permutations x rotations.
  std::function<void(size_t)> iterate_groups = [&](size_t gi) {
    if (gi == groups.size()) {
      // rotations: mixed radix over content circles
      std::function<void(size_t)> rotate = [&](size_t ci_pos) {
        if (ci_pos == order.size()) {
          consider();
          return;
        }
        int ci = order[ci_pos];
        const int m = static_cast<int>(p.circles[ci].verts.size());
        const int rmax = p.circles[ci].based ? 1 : m;
        for (int r = 0; r < rmax; ++r) {
          rot[ci] = r;
          rotate(ci_pos + 1);
        }
      };
      rotate(0);
      return;
    }
    auto [b, e] = groups[gi];
    std::vector<int> idx(order.begin() + b, order.begin() + e);
    std::sort(idx.begin(), idx.end());
    do {
      std::copy(idx.begin(), idx.end(), order.begin() + b);
      iterate_groups(gi + 1);
    } while (std::next_permutation(idx.begin(), idx.end()));
    std::sort(order.begin() + b, order.begin() + e);
  };
  iterate_groups(0);

  if (seen_plus && seen_minus) {
    out.zero = true;
    out.sign = 0;
  } else {
    out.sign = seen_plus ? +1 : -1;
  }
  return out;
}

}  // namespace

CanonicalDiagram canonical_form(const ChordDiagram& d) {
  validate_diagram(d);

  static std::map<std::string, CanonicalDiagram> cache;
  const std::string in_key = diagram_key(d);
  if (auto it = cache.find(in_key); it != cache.end()) {
    CanonicalDiagram r = it->second;
    r.sign *= d.sign;
    return r;
  }

  // Partition vertices into the skeleton-connected part and detached graph
  // components.
  std::vector<int> comp(d.n, -1);
  {
    std::vector<std::vector<int>> adj(d.n);
    for (const auto& [a, b] : d.gedges) {
      adj[a - 1].push_back(b - 1);
      adj[b - 1].push_back(a - 1);
    }
    for (const Circle& c : d.circles) {
      const int m = static_cast<int>(c.verts.size());
      for (int t = 0; t < m; ++t) {
        adj[c.verts[t] - 1].push_back(c.verts[(t + 1) % m] - 1);
        adj[c.verts[(t + 1) % m] - 1].push_back(c.verts[t] - 1);
      }
    }
    std::vector<char> on_skel(d.n, 0);
    for (const Circle& c : d.circles)
      for (int v : c.verts) on_skel[v - 1] = 1;
    // BFS from skeleton vertices.
    std::vector<int> stack;
    for (int v = 0; v < d.n; ++v) {
      if (on_skel[v]) {
        comp[v] = 0;
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u]) {
        if (comp[w] < 0) {
          comp[w] = 0;
          stack.push_back(w);
        }
      }
    }
  }

  std::vector<int> skel_old, graph_old;  // 0-based old ids
  for (int v = 0; v < d.n; ++v)
    (comp[v] == 0 ? skel_old : graph_old).push_back(v);

  // Parity of the block rearrangement [skeleton ascending][graph ascending].
  std::vector<int> rho(d.n);
  {
    int pos = 0;
    for (int v : skel_old) rho[v] = pos++;
    for (int v : graph_old) rho[v] = pos++;
  }
  const int rho_sign = d.n ? permutation_parity(rho) : +1;

  // Skeleton part.
  SkeletonPart part;
  part.s = static_cast<int>(skel_old.size());
  std::vector<int> skel_newid(d.n, 0);
  for (int i = 0; i < part.s; ++i) skel_newid[skel_old[i]] = i + 1;
  std::vector<Circle> bare;
  for (const Circle& c : d.circles) {
    if (c.verts.empty()) {
      bare.push_back(c);
      continue;
    }
    Circle cc;
    cc.label = c.label;
    cc.based = c.based;
    for (int v : c.verts) cc.verts.push_back(skel_newid[v - 1]);
    part.circles.push_back(std::move(cc));
  }
  // Graph part.
  OrientedGraph gpart;
  gpart.n = static_cast<int>(graph_old.size());
  std::vector<int> graph_newid(d.n, 0);
  for (int i = 0; i < gpart.n; ++i) graph_newid[graph_old[i]] = i + 1;
  for (const auto& [a, b] : d.gedges) {
    if (comp[a - 1] == 0) {
      part.gedges.emplace_back(skel_newid[a - 1], skel_newid[b - 1]);
    } else {
      gpart.edges.emplace_back(graph_newid[a - 1], graph_newid[b - 1]);
    }
  }

  SkelCanon sk = canonicalize_skeleton(part);
  CanonicalGraph gc = canonical_form(gpart);

  // Rebuild the canonical diagram: bare circles sorted among content
  // circles by (label, based, size); content circles carry sequential ids.
  CanonicalDiagram result;
  ChordDiagram canon;
  canon.n = d.n;
  std::vector<std::tuple<std::string, bool, int, int>> circle_order;
  for (const Circle& c : bare)
    circle_order.emplace_back(c.label, c.based, 0, -1);
  for (size_t i = 0; i < sk.circle_keys.size(); ++i)
    circle_order.emplace_back(sk.circle_keys[i].first, sk.circle_keys[i].second,
                              sk.circle_sizes[i], static_cast<int>(i));
  std::sort(circle_order.begin(), circle_order.end());
  // Content circles keep their search order ids (1..e sequentially in the
  // canonical layout); recompute the id ranges in that order.
  std::vector<int> first_id(sk.circle_sizes.size() + 1, 1);
  for (size_t i = 0; i < sk.circle_sizes.size(); ++i)
    first_id[i + 1] = first_id[i] + sk.circle_sizes[i];
  for (const auto& [label, based, size, idx] : circle_order) {
    Circle c;
    c.label = label;
    c.based = based;
    if (idx >= 0) {
      for (int t = 0; t < size; ++t) c.verts.push_back(first_id[idx] + t);
    }
    canon.circles.push_back(std::move(c));
  }
  for (size_t i = 0; i + 1 < sk.best_gedges.size(); i += 2)
    canon.gedges.emplace_back(sk.best_gedges[i], sk.best_gedges[i + 1]);
  for (const auto& [a, b] : gc.graph.edges)
    canon.gedges.emplace_back(a + part.s, b + part.s);
  canon.sign = +1;

  result.diagram = canon;
  if (sk.zero || gc.sign == 0) {
    result.sign = 0;
  } else {
    result.sign = rho_sign * sk.sign * gc.sign;
  }
  cache.emplace(in_key, result);
  result.sign *= d.sign;
  return result;
}

// ---------------------------------------------------------------------
// DiagramVector.

void DiagramVector::add_term(const ChordDiagram& d, const Rat& c) {
  if (c == 0) return;
  CanonicalDiagram cf = canonical_form(d);
  if (cf.sign == 0) return;
  if (degree_ < 0) degree_ = diagram_degree(cf.diagram);
  if (diagram_degree(cf.diagram) != degree_)
    throw ChordError("mixed degrees in one diagram vector");
  const std::string key = diagram_key(cf.diagram);
  auto [it, inserted] = terms_.try_emplace(key, cf.diagram, Rat(0));
  it->second.second += Rat(cf.sign) * c;
  if (it->second.second == 0) terms_.erase(it);
  if (terms_.empty()) degree_ = -1;
}

DiagramVector& DiagramVector::operator+=(const DiagramVector& o) {
  for (const auto& [k, t] : o.terms_) add_term(t.first, t.second);
  return *this;
}

DiagramVector& DiagramVector::operator-=(const DiagramVector& o) {
  for (const auto& [k, t] : o.terms_) add_term(t.first, -t.second);
  return *this;
}

DiagramVector& DiagramVector::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    degree_ = -1;
    return *this;
  }
  for (auto& [k, t] : terms_) t.second *= c;
  return *this;
}

bool DiagramVector::operator==(const DiagramVector& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first || it->second.second != jt->second.second)
      return false;
  }
  return true;
}

std::string DiagramVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, t] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(t.second) << " * [" << k << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------
// The local skeleton rewrite.

namespace {

// Rebuild helper: a mutable copy of a diagram's structure at the half-edge
// level, from which a stored ChordDiagram (with parity-computed sign) is
// produced.
struct Builder {
  int n = 0;
  std::vector<Circle> circles;
  // edges: (tail, head); arcs are regenerated from circles, so this holds
  // graph edges only, as unordered pairs with a direction choice.
  std::vector<std::pair<int, int>> gedges;
  // Cyclic patterns per vertex, expressed through slot tags:
  //   in/out arc slots for externals, gedge half slots via (gedge idx, end).
  struct Slot {
    enum Kind { IN_ARC, OUT_ARC, GEDGE } kind = GEDGE;
    int edge = -1;  // gedge index for GEDGE
    int end = 0;
  };
  std::vector<std::array<Slot, 3>> pattern;  // per vertex

  ChordDiagram finish() const {
    ChordDiagram d;
    d.n = n;
    d.circles = circles;
    d.gedges = gedges;
    d.sign = +1;
    validate_diagram(d);
    DiagramView vw = make_view(d);
    // Desired cyclic datum from the patterns.
    CyclicOrientedGraph want = vw.cyc;
    for (int v = 0; v < n; ++v) {
      for (int s = 0; s < 3; ++s) {
        const Slot& sl = pattern[v][s];
        switch (sl.kind) {
          case Slot::IN_ARC:
            want.cyc[v][s] = vw.in_arc[v];
            break;
          case Slot::OUT_ARC:
            want.cyc[v][s] = vw.out_arc[v];
            break;
          case Slot::GEDGE:
            want.cyc[v][s] = HalfRef{vw.narcs + sl.edge, sl.end};
            break;
        }
      }
    }
    d.sign = from_cyclic(want).sign;
    return d;
  }
};

// Classify the stored cyclic datum of vertex v into Builder slots.
std::array<Builder::Slot, 3> classify(const DiagramView& vw, int v) {
  std::array<Builder::Slot, 3> out;
  for (int s = 0; s < 3; ++s) {
    const HalfRef h = vw.cyc.cyc[v][s];
    if (h.edge < vw.narcs) {
      if (vw.in_arc[v] == h) {
        out[s].kind = Builder::Slot::IN_ARC;
      } else if (vw.out_arc[v] == h) {
        out[s].kind = Builder::Slot::OUT_ARC;
      } else {
        throw ChordError("arc half mismatch");
      }
    } else {
      out[s].kind = Builder::Slot::GEDGE;
      out[s].edge = h.edge - vw.narcs;
      out[s].end = h.end;
    }
  }
  return out;
}

// One rewrite step at external vertex x (1-based) whose leg meets an
// internal vertex: returns the two signed replacement terms.
std::vector<std::pair<ChordDiagram, Rat>> rewrite_at(const ChordDiagram& d,
                                                     int x) {
  DiagramView vw = make_view(d);
  const int leg = vw.leg_edge[x - 1];
  if (leg < 0) throw ChordError("rewrite site must be external");
  const auto [la, lb] = vw.edges[leg];
  const int v = (la == x) ? lb : la;
  if (vw.circle_of[v - 1] >= 0)
    throw ChordError("rewrite needs an internal neighbor");

  // Local orientation bookkeeping: compare x's cyclic order against the
  // reference (in, out, leg); a mismatch contributes a global -1.
  const HalfRef leg_half_x =
      (vw.edges[leg].first == x) ? HalfRef{leg, 0} : HalfRef{leg, 1};
  const std::array<HalfRef, 3> reference{vw.in_arc[x - 1], vw.out_arc[x - 1],
                                         leg_half_x};
  const int s0 = same_cyclic_class(vw.cyc.cyc[x - 1], reference) ? +1 : -1;

  // v's cyclic order rotated leg-first reads (leg, B, A): in the positive
  // term the first new skeleton position takes A's edge, the second takes
  // B's; the negative term swaps them.
  const HalfRef leg_half_v =
      (vw.edges[leg].first == v) ? HalfRef{leg, 0} : HalfRef{leg, 1};
  const auto sv = rotate_front(vw.cyc.cyc[v - 1], leg_half_v);
  const HalfRef half_B = sv[1], half_A = sv[2];

  // Remaining vertices keep their ids compressed; the two replacement
  // externals take the last two ids, first the one at x's position.
  const int n_new = d.n;
  std::vector<int> newid(d.n + 1, 0);
  {
    int next = 1;
    for (int w = 1; w <= d.n; ++w) {
      if (w == x || w == v) continue;
      newid[w] = next++;
    }
  }
  const int y1 = n_new - 1, y2 = n_new;

  auto build = [&](bool positive) {
    Builder b;
    b.n = n_new;
    // Circles: x replaced by (y1, y2).
    for (size_t ci = 0; ci < d.circles.size(); ++ci) {
      Circle c;
      c.label = d.circles[ci].label;
      c.based = d.circles[ci].based;
      for (int w : d.circles[ci].verts) {
        if (w == x) {
          c.verts.push_back(y1);
          c.verts.push_back(y2);
        } else {
          c.verts.push_back(newid[w]);
        }
      }
      b.circles.push_back(std::move(c));
    }
    // Graph edges: drop the leg; re-terminate the halves A and B.
    // old gedge index -> new index.
    std::vector<int> gmap(d.gedges.size(), -1);
    const int leg_gidx = leg - vw.narcs;
    const int a_gidx = half_A.edge - vw.narcs;
    const int b_gidx = half_B.edge - vw.narcs;
    for (int ge = 0; ge < static_cast<int>(d.gedges.size()); ++ge) {
      if (ge == leg_gidx) continue;
      auto [p, q] = d.gedges[ge];
      int np = (p == x || p == v) ? 0 : newid[p];
      int nq = (q == x || q == v) ? 0 : newid[q];
      // Re-attach the halves that sat at v.
      if (ge == a_gidx && half_A.end == 0) np = positive ? y1 : y2;
      if (ge == a_gidx && half_A.end == 1) nq = positive ? y1 : y2;
      if (ge == b_gidx && half_B.end == 0) np = positive ? y2 : y1;
      if (ge == b_gidx && half_B.end == 1) nq = positive ? y2 : y1;
      if (np == 0 || nq == 0)
        throw ChordError("dangling half-edge in rewrite");
      gmap[ge] = static_cast<int>(b.gedges.size());
      b.gedges.emplace_back(np, nq);
    }
    // Cyclic patterns: inherited everywhere else, reference order at the
    // two new externals.
    b.pattern.assign(n_new, {});
    for (int w = 1; w <= d.n; ++w) {
      if (w == x || w == v) continue;
      auto slots = classify(vw, w - 1);
      for (auto& sl : slots) {
        if (sl.kind == Builder::Slot::GEDGE) sl.edge = gmap[sl.edge];
      }
      b.pattern[newid[w] - 1] = slots;
    }
    auto ref_pattern = [&](int leg_gidx_new, int which_end) {
      std::array<Builder::Slot, 3> pat;
      pat[0].kind = Builder::Slot::IN_ARC;
      pat[1].kind = Builder::Slot::OUT_ARC;
      pat[2].kind = Builder::Slot::GEDGE;
      pat[2].edge = leg_gidx_new;
      pat[2].end = which_end;
      return pat;
    };
    const int a_new = gmap[a_gidx];
    const int b_new = gmap[b_gidx];
    if (positive) {
      b.pattern[y1 - 1] = ref_pattern(a_new, half_A.end);
      b.pattern[y2 - 1] = ref_pattern(b_new, half_B.end);
    } else {
      b.pattern[y1 - 1] = ref_pattern(b_new, half_B.end);
      b.pattern[y2 - 1] = ref_pattern(a_new, half_A.end);
    }
    return b.finish();
  };

  std::vector<std::pair<ChordDiagram, Rat>> out;
  out.emplace_back(build(true), Rat(s0));
  out.emplace_back(build(false), Rat(-s0));
  return out;
}

// First external vertex (canonical circle/position order) whose leg meets an
// internal vertex; 0 if none.
int find_site(const ChordDiagram& d, const DiagramView& vw) {
  for (const Circle& c : d.circles) {
    for (int w : c.verts) {
      const int leg = vw.leg_edge[w - 1];
      const auto [a, b] = vw.edges[leg];
      const int other = (a == w) ? b : a;
      if (other != w && vw.circle_of[other - 1] < 0) return w;
    }
  }
  return 0;
}

std::vector<int> all_sites(const ChordDiagram& d, const DiagramView& vw) {
  std::vector<int> out;
  for (const Circle& c : d.circles) {
    for (int w : c.verts) {
      const int leg = vw.leg_edge[w - 1];
      const auto [a, b] = vw.edges[leg];
      const int other = (a == w) ? b : a;
      if (other != w && vw.circle_of[other - 1] < 0) out.push_back(w);
    }
  }
  return out;
}

// Fully rewrites a canonical diagram to pure terms (deterministic order).
const DiagramVector& rewrite_fully(const ChordDiagram& canon) {
  static std::map<std::string, DiagramVector> memo;
  const std::string key = diagram_key(canon);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  DiagramVector out;
  DiagramView vw = make_view(canon);
  const int site = find_site(canon, vw);
  if (site == 0) {
    out.add_term(canon, Rat(1));
  } else {
    for (const auto& [term, coeff] : rewrite_at(canon, site)) {
      CanonicalDiagram cf = canonical_form(term);
      if (cf.sign == 0) continue;
      out += (coeff * Rat(cf.sign)) * rewrite_fully(cf.diagram);
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

DiagramVector rewrite_fully_seeded(const ChordDiagram& canon,
                                   std::mt19937& rng) {
  DiagramVector out;
  DiagramView vw = make_view(canon);
  std::vector<int> sites = all_sites(canon, vw);
  if (sites.empty()) {
    out.add_term(canon, Rat(1));
    return out;
  }
  const int site = sites[rng() % sites.size()];
  for (const auto& [term, coeff] : rewrite_at(canon, site)) {
    CanonicalDiagram cf = canonical_form(term);
    if (cf.sign == 0) continue;
    out += (coeff * Rat(cf.sign)) * rewrite_fully_seeded(cf.diagram, rng);
  }
  return out;
}

// ---------------------------------------------------------------------
// Quotient projection for pure chord parts.

struct PureSpace {
  std::vector<ChordDiagram> diagrams;   // canonical, key order
  std::map<std::string, int> index;
  std::vector<SparseRow> reduction;     // column -> coords over basis slots
  std::vector<int> basis_cols;
};

std::string signature_key(const std::vector<std::pair<std::string, bool>>& cs,
                          int degree) {
  std::ostringstream os;
  os << degree;
  for (const auto& [label, based] : cs)
    os << '|' << label << (based ? ":l" : ":c");
  return os.str();
}

// All pure diagrams: distribute 2j externals over the circles, then match
// them pairwise with chords.
std::map<std::string, ChordDiagram> enumerate_pure(
    const std::vector<std::pair<std::string, bool>>& cs, int degree) {
  std::map<std::string, ChordDiagram> out;
  const int e = 2 * degree;
  const int nc = static_cast<int>(cs.size());
  if (nc == 0) {
    if (e == 0) {
      ChordDiagram empty;
      out.emplace(diagram_key(empty), empty);
    }
    return out;
  }
  std::vector<int> counts(nc, 0);
  std::function<void(int, int)> distribute = [&](int ci, int rest) {
    if (ci == nc - 1) {
      counts[ci] = rest;
      // Build the skeleton; externals are 1..e laid out in order.
      ChordDiagram base;
      base.n = e;
      int next = 1;
      for (int i = 0; i < nc; ++i) {
        Circle c;
        c.label = cs[i].first;
        c.based = cs[i].second;
        for (int t = 0; t < counts[i]; ++t) c.verts.push_back(next++);
        base.circles.push_back(std::move(c));
      }
      // All chord matchings.
      std::vector<int> partner(e, -1);
      std::function<void()> match = [&]() {
        int u = -1;
        for (int i = 0; i < e; ++i) {
          if (partner[i] < 0) {
            u = i;
            break;
          }
        }
        if (u < 0) {
          ChordDiagram d = base;
          for (int i = 0; i < e; ++i) {
            if (partner[i] > i) d.gedges.emplace_back(i + 1, partner[i] + 1);
          }
          CanonicalDiagram cf = canonical_form(d);
          if (cf.sign != 0)
            out.emplace(diagram_key(cf.diagram), cf.diagram);
          return;
        }
        for (int w = u + 1; w < e; ++w) {
          if (partner[w] >= 0) continue;
          partner[u] = w;
          partner[w] = u;
          match();
          partner[u] = -1;
          partner[w] = -1;
        }
      };
      if (e == 0) {
        CanonicalDiagram cf = canonical_form(base);
        if (cf.sign != 0) out.emplace(diagram_key(cf.diagram), cf.diagram);
      } else {
        match();
      }
      return;
    }
    for (int take = 0; take <= rest; ++take) {
      counts[ci] = take;
      distribute(ci + 1, rest - take);
    }
  };
  distribute(0, e);
  return out;
}

const PureSpace& pure_space(const std::vector<std::pair<std::string, bool>>& cs,
                            int degree) {
  static std::map<std::string, PureSpace> cache;
  const std::string sig = signature_key(cs, degree);
  if (auto it = cache.find(sig); it != cache.end()) return it->second;

  PureSpace ps;
  for (auto& [key, d] : enumerate_pure(cs, degree)) {
    ps.index.emplace(key, static_cast<int>(ps.diagrams.size()));
    ps.diagrams.push_back(d);
  }

  RowReducer rr;
  // Relations: every one-internal-vertex diagram admits up to three rewrite
  // sites; outcome differences span the quotient relations among pure
  // diagrams.
  const int e = 2 * degree - 1;  // externals
  const int nc = static_cast<int>(cs.size());
  if (e >= 3 && nc > 0) {
    std::vector<int> counts(nc, 0);
    std::function<void(int, int)> distribute = [&](int ci, int rest) {
      if (ci == nc - 1) {
        counts[ci] = rest;
        ChordDiagram base;
        base.n = e + 1;  // externals 1..e, internal vertex e+1
        int next = 1;
        for (int i = 0; i < nc; ++i) {
          Circle c;
          c.label = cs[i].first;
          c.based = cs[i].second;
          for (int t = 0; t < counts[i]; ++t) c.verts.push_back(next++);
          base.circles.push_back(std::move(c));
        }
        const int v = e + 1;
        // Matchings of e external legs and 3 internal halves (no tadpole).
        // Slots 0..e-1 are externals, e..e+2 are v's halves.
        const int nslots = e + 3;
        std::vector<int> partner(nslots, -1);
        std::function<void()> match = [&]() {
          int u = -1;
          for (int i = 0; i < nslots; ++i) {
            if (partner[i] < 0) {
              u = i;
              break;
            }
          }
          if (u < 0) {
            ChordDiagram d = base;
            for (int i = 0; i < nslots; ++i) {
              if (partner[i] <= i) continue;
              const int a = i < e ? i + 1 : v;
              const int b = partner[i] < e ? partner[i] + 1 : v;
              d.gedges.emplace_back(a, b);
            }
            CanonicalDiagram cf = canonical_form(d);
            if (cf.sign == 0) return;
            DiagramView vw = make_view(cf.diagram);
            std::vector<int> sites = all_sites(cf.diagram, vw);
            std::vector<DiagramVector> outcomes;
            for (int site : sites) {
              DiagramVector o;
              for (const auto& [t, c] : rewrite_at(cf.diagram, site))
                o.add_term(t, c);
              outcomes.push_back(std::move(o));
            }
            for (size_t i = 0; i < outcomes.size(); ++i) {
              for (size_t j = i + 1; j < outcomes.size(); ++j) {
                DiagramVector diff = outcomes[i] - outcomes[j];
                SparseRow row;
                for (const auto& [key, t] : diff.terms()) {
                  auto it = ps.index.find(key);
                  if (it == ps.index.end())
                    throw ChordError("pure diagram outside its signature: " +
                                     key);
                  row.emplace_back(it->second, t.second);
                }
                std::sort(row.begin(), row.end());
                rr.add_row(std::move(row));
              }
            }
            return;
          }
          for (int w = u + 1; w < nslots; ++w) {
            if (partner[w] >= 0) continue;
            if (u >= e && w >= e) continue;  // tadpole: zero class
            partner[u] = w;
            partner[w] = u;
            match();
            partner[u] = -1;
            partner[w] = -1;
          }
        };
        match();
        return;
      }
      for (int take = 0; take <= rest; ++take) {
        counts[ci] = take;
        distribute(ci + 1, rest - take);
      }
    };
    distribute(0, e);
  }

  const int ncols = static_cast<int>(ps.diagrams.size());
  ps.basis_cols = rr.free_columns(ncols);
  std::map<int, int> slot_of;
  for (int i = 0; i < static_cast<int>(ps.basis_cols.size()); ++i)
    slot_of[ps.basis_cols[i]] = i;
  ps.reduction.assign(ncols, {});
  for (int c = 0; c < ncols; ++c) {
    auto it = rr.pivot_rows().find(c);
    if (it == rr.pivot_rows().end()) {
      ps.reduction[c] = {{slot_of.at(c), Rat(1)}};
    } else {
      SparseRow coords;
      for (const auto& [col, val] : it->second) {
        if (col == c) continue;
        coords.emplace_back(slot_of.at(col), -val);
      }
      std::sort(coords.begin(), coords.end());
      ps.reduction[c] = std::move(coords);
    }
  }
  return cache.emplace(sig, std::move(ps)).first->second;
}

// Split a canonical pure term into its chord-skeleton part and detached
// graph part, project both, and reassemble over pivot diagrams and homology
// basis graphs.
DiagramVector normalize_pure(const DiagramVector& v) {
  DiagramVector out;
  for (const auto& [key, entry] : v.terms()) {
    const ChordDiagram& d = entry.first;
    const Rat& coeff = entry.second;

    // The canonical layout puts skeleton vertices first, so the split is a
    // prefix split; a pure term has externals exactly on the skeleton.
    std::vector<char> on_skel_comp(d.n, 0);
    for (const Circle& c : d.circles)
      for (int w : c.verts) on_skel_comp[w - 1] = 1;
    ChordDiagram skel;
    OrientedGraph graph;
    std::vector<int> gid(d.n + 1, 0);
    int s = 0;
    for (int w = 1; w <= d.n; ++w) {
      if (on_skel_comp[w - 1]) {
        if (w != ++s) throw ChordError("canonical layout violated");
      }
    }
    skel.n = s;
    skel.circles = d.circles;
    graph.n = d.n - s;
    for (const auto& [a, b] : d.gedges) {
      if (a <= s && b <= s) {
        skel.gedges.emplace_back(a, b);
      } else if (a > s && b > s) {
        graph.edges.emplace_back(a - s, b - s);
      } else {
        throw ChordError("pure term mixes skeleton and graph components");
      }
    }

    // Project the skeleton part.
    std::vector<std::pair<std::string, bool>> cs;
    for (const Circle& c : skel.circles) cs.emplace_back(c.label, c.based);
    const PureSpace& ps = pure_space(cs, diagram_degree(skel));
    CanonicalDiagram skel_cf = canonical_form(skel);
    if (skel_cf.sign == 0) continue;
    auto it = ps.index.find(diagram_key(skel_cf.diagram));
    if (it == ps.index.end())
      throw ChordError("pure part missing from its signature space");
    const SparseRow& skel_coords = ps.reduction[it->second];

    // Reduce the graph part.
    SparseRow graph_coords{{0, Rat(1)}};
    const HomologyBasis* hb = nullptr;
    CanonicalGraph graph_cf = canonical_form(graph);
    if (graph.n > 0) {
      if (graph_cf.sign == 0) continue;
      hb = &homology_basis(graph.n / 2);
      GraphVector gv;
      gv.add_term(graph_cf.graph, Rat(1));
      graph_coords = reduce_sparse(gv, *hb);
    }

    for (const auto& [pslot, pc] : skel_coords) {
      for (const auto& [gslot, gc2] : graph_coords) {
        // Reduction rows index basis slots; map through basis_cols.
        ChordDiagram assembled = ps.diagrams[ps.basis_cols[pslot]];
        const OrientedGraph* bg = nullptr;
        if (hb) bg = &hb->basis_graph(gslot);
        if (bg) {
          const int offset = assembled.n;
          assembled.n += bg->n;
          for (const auto& [a, b] : bg->edges)
            assembled.gedges.emplace_back(a + offset, b + offset);
        }
        out.add_term(assembled,
                     coeff * Rat(skel_cf.sign) * Rat(graph_cf.sign) * pc * gc2);
      }
    }
  }
  return out;
}

}  // namespace

DiagramVector stu_reduce(const DiagramVector& v) {
  DiagramVector rewritten;
  for (const auto& [key, entry] : v.terms())
    rewritten += entry.second * rewrite_fully(entry.first);
  return normalize_pure(rewritten);
}

DiagramVector stu_reduce_seeded(const DiagramVector& v, unsigned seed) {
  std::mt19937 rng(seed);
  DiagramVector rewritten;
  for (const auto& [key, entry] : v.terms())
    rewritten += entry.second * rewrite_fully_seeded(entry.first, rng);
  return normalize_pure(rewritten);
}

// ---------------------------------------------------------------------
// Products, closing, forgetting.

namespace {

const Circle* the_line(const ChordDiagram& d) {
  const Circle* line = nullptr;
  for (const Circle& c : d.circles) {
    if (c.based) {
      if (line) throw ChordError("juxtaposition needs exactly one line");
      line = &c;
    }
  }
  if (!line) throw ChordError("juxtaposition needs a based circle");
  return line;
}

}  // namespace

ChordDiagram juxtapose(const ChordDiagram& x, const ChordDiagram& y) {
  const Circle* lx = the_line(x);
  const Circle* ly = the_line(y);
  if (lx->label != ly->label)
    throw ChordError("juxtaposition labels disagree: " + lx->label + " vs " +
                     ly->label);
  // Concatenating the lines re-splices their wrap arcs, which shifts the
  // half-edge parity; the product orientation is therefore rebuilt from the
  // factors' cyclic patterns (slot-wise: in-arc, out-arc, leg) rather than
  // by multiplying stored signs.
  DiagramView vx = make_view(x);
  DiagramView vy = make_view(y);
  Builder b;
  b.n = x.n + y.n;
  Circle merged;
  merged.label = lx->label;
  merged.based = true;
  merged.verts = lx->verts;
  for (int v : ly->verts) merged.verts.push_back(v + x.n);
  b.circles.push_back(std::move(merged));
  for (const Circle& c : x.circles) {
    if (&c != lx) b.circles.push_back(c);
  }
  for (const Circle& c : y.circles) {
    if (&c == ly) continue;
    Circle cc = c;
    for (int& v : cc.verts) v += x.n;
    b.circles.push_back(std::move(cc));
  }
  b.gedges = x.gedges;
  for (const auto& [a, b2] : y.gedges)
    b.gedges.emplace_back(a + x.n, b2 + x.n);

  b.pattern.assign(b.n, {});
  for (int v = 1; v <= x.n; ++v) b.pattern[v - 1] = classify(vx, v - 1);
  const int offset = static_cast<int>(x.gedges.size());
  for (int v = 1; v <= y.n; ++v) {
    auto slots = classify(vy, v - 1);
    for (auto& sl : slots) {
      if (sl.kind == Builder::Slot::GEDGE) sl.edge += offset;
    }
    b.pattern[x.n + v - 1] = slots;
  }
  return b.finish();
}

DiagramVector juxtapose(const DiagramVector& x, const DiagramVector& y) {
  DiagramVector out;
  for (const auto& [kx, tx] : x.terms()) {
    for (const auto& [ky, ty] : y.terms()) {
      out.add_term(juxtapose(tx.first, ty.first), tx.second * ty.second);
    }
  }
  return out;
}

DiagramVector close_lines(const DiagramVector& x) {
  DiagramVector out;
  for (const auto& [k, t] : x.terms()) {
    ChordDiagram d = t.first;
    for (Circle& c : d.circles) c.based = false;
    out.add_term(d, t.second);
  }
  return out;
}

ChordDiagram diagram_from_cyclic(
    int n, std::vector<Circle> circles,
    std::vector<std::pair<int, int>> gedges,
    const std::map<int, std::array<std::pair<int, int>, 3>>& internal_cyc) {
  Builder b;
  b.n = n;
  b.circles = std::move(circles);
  b.gedges = std::move(gedges);
  b.pattern.assign(n, {});
  std::vector<char> external(n, 0);
  for (const Circle& c : b.circles)
    for (int v : c.verts) external[v - 1] = 1;
  for (int v = 1; v <= n; ++v) {
    if (external[v - 1]) {
      b.pattern[v - 1][0].kind = Builder::Slot::IN_ARC;
      b.pattern[v - 1][1].kind = Builder::Slot::OUT_ARC;
      b.pattern[v - 1][2].kind = Builder::Slot::GEDGE;
      // Locate the unique leg.
      int found = -1, end = 0;
      for (int ge = 0; ge < static_cast<int>(b.gedges.size()); ++ge) {
        if (b.gedges[ge].first == v) {
          found = ge;
          end = 0;
        } else if (b.gedges[ge].second == v) {
          found = ge;
          end = 1;
        }
      }
      if (found < 0) throw ChordError("external vertex without a leg");
      b.pattern[v - 1][2].edge = found;
      b.pattern[v - 1][2].end = end;
    } else {
      auto it = internal_cyc.find(v);
      if (it == internal_cyc.end())
        throw ChordError("missing cyclic order for internal vertex " +
                         std::to_string(v));
      for (int s = 0; s < 3; ++s) {
        b.pattern[v - 1][s].kind = Builder::Slot::GEDGE;
        b.pattern[v - 1][s].edge = it->second[s].first;
        b.pattern[v - 1][s].end = it->second[s].second;
      }
    }
  }
  return b.finish();
}

OrientedGraph forget_to_graph(const ChordDiagram& d) {
  if (d.circles.empty())
    throw ChordError("forget_to_graph needs a skeleton");
  for (const Circle& c : d.circles) {
    if (c.verts.empty())
      throw ChordError("bare circle cannot be absorbed into a graph");
  }
  DiagramView vw = make_view(d);
  OrientedGraph g;
  g.n = d.n;
  g.edges = vw.edges;
  g.sign = d.sign;
  validate_graph(g);
  return g;
}

// ---------------------------------------------------------------------
// Rewiring at internal edges and the implication report.

std::vector<ChordDiagram> diagram_ihx_terms(const ChordDiagram& d,
                                            int gedge_index) {
  DiagramView vw = make_view(d);
  const int e = vw.narcs + gedge_index;
  const auto [p, q] = vw.edges[e];
  if (p == q) throw ChordError("rewiring needs distinct endpoints");
  if (vw.circle_of[p - 1] >= 0 || vw.circle_of[q - 1] >= 0)
    throw ChordError("rewiring applies at internal vertices");

  const HalfRef ep{e, 0}, eq{e, 1};
  const auto sp = rotate_front(vw.cyc.cyc[p - 1], ep);
  const auto sq = rotate_front(vw.cyc.cyc[q - 1], eq);
  const HalfRef a = sp[1], b = sp[2], c = sq[1], dd = sq[2];

  std::vector<ChordDiagram> out;
  for (int term = 0; term < 3; ++term) {
    CyclicOrientedGraph cc = vw.cyc;
    auto move_half = [&](const HalfRef& h, int vert) {
      if (h.end == 0)
        cc.ends[h.edge].first = vert;
      else
        cc.ends[h.edge].second = vert;
    };
    if (term == 0) {
      cc.cyc[p - 1] = {ep, a, b};
      cc.cyc[q - 1] = {eq, c, dd};
    } else if (term == 1) {
      cc.cyc[p - 1] = {ep, b, c};
      cc.cyc[q - 1] = {eq, a, dd};
      move_half(c, p);
      move_half(a, q);
    } else {
      cc.cyc[p - 1] = {ep, c, a};
      cc.cyc[q - 1] = {eq, b, dd};
      move_half(c, p);
      move_half(b, q);
    }
    ChordDiagram nd;
    nd.n = d.n;
    nd.circles = d.circles;
    for (int ge = vw.narcs; ge < static_cast<int>(cc.ends.size()); ++ge)
      nd.gedges.push_back(cc.ends[ge]);
    nd.sign = from_cyclic(cc).sign;
    validate_diagram(nd);
    out.push_back(std::move(nd));
  }
  return out;
}

std::vector<ChordDiagram> enumerate_skeleton_connected(int degree,
                                                       int ncircles) {
  if (degree < 0 || degree > 3)
    throw ChordError("exhaustive enumeration supports degrees 0..3");
  if (ncircles < 1 || ncircles > 3)
    throw ChordError("enumeration supports 1..3 circles");
  std::vector<std::pair<std::string, bool>> cs;
  const char* labels[] = {"E", "F", "G"};
  for (int c = 0; c < ncircles; ++c) cs.emplace_back(labels[c], false);

  std::map<std::string, ChordDiagram> diagrams;
  const int nc = ncircles;
  for (int e = nc; e <= 2 * degree; ++e) {
    const int i = 2 * degree - e;
    // Distribute e externals, at least one per circle.
    std::vector<int> counts(nc, 0);
    std::function<void(int, int)> distribute = [&](int ci, int rest) {
      if (ci == nc - 1) {
        if (rest < 1) return;
        counts[ci] = rest;
        ChordDiagram base;
        base.n = e + i;
        int next = 1;
        for (int c = 0; c < nc; ++c) {
          Circle circ;
          circ.label = cs[c].first;
          for (int t = 0; t < counts[c]; ++t) circ.verts.push_back(next++);
          base.circles.push_back(std::move(circ));
        }
        // Half-edge slots: one per external, three per internal.
        const int nslots = e + 3 * i;
        auto vertex_of_slot = [&](int s) {
          return s < e ? s + 1 : e + 1 + (s - e) / 3;
        };
        std::vector<int> partner(nslots, -1);
        std::function<void()> match = [&]() {
          int u = -1;
          for (int s = 0; s < nslots; ++s) {
            if (partner[s] < 0) {
              u = s;
              break;
            }
          }
          if (u < 0) {
            ChordDiagram d = base;
            for (int s = 0; s < nslots; ++s) {
              if (partner[s] > s)
                d.gedges.emplace_back(vertex_of_slot(s),
                                      vertex_of_slot(partner[s]));
            }
            // Every component must reach the skeleton.
            {
              std::vector<int> reach(d.n, 0);
              std::vector<int> stack;
              for (const Circle& c : d.circles)
                for (int w : c.verts) {
                  reach[w - 1] = 1;
                  stack.push_back(w - 1);
                }
              while (!stack.empty()) {
                int w = stack.back();
                stack.pop_back();
                for (const auto& [x, y] : d.gedges) {
                  if (x - 1 == w && !reach[y - 1]) {
                    reach[y - 1] = 1;
                    stack.push_back(y - 1);
                  }
                  if (y - 1 == w && !reach[x - 1]) {
                    reach[x - 1] = 1;
                    stack.push_back(x - 1);
                  }
                }
              }
              for (int w = 0; w < d.n; ++w)
                if (!reach[w]) return;
            }
            CanonicalDiagram cf = canonical_form(d);
            if (cf.sign != 0)
              diagrams.emplace(diagram_key(cf.diagram), cf.diagram);
            return;
          }
          for (int w = u + 1; w < nslots; ++w) {
            if (partner[w] >= 0) continue;
            if (vertex_of_slot(u) == vertex_of_slot(w)) continue;  // loop
            partner[u] = w;
            partner[w] = u;
            match();
            partner[u] = -1;
            partner[w] = -1;
          }
        };
        match();
        return;
      }
      for (int take = 1; take <= rest; ++take) {
        counts[ci] = take;
        distribute(ci + 1, rest - take);
      }
    };
    distribute(0, e);
  }
  std::vector<ChordDiagram> out;
  for (auto& [k, d] : diagrams) out.push_back(d);
  return out;
}

StuImplicationReport verify_stu_implies_as_ihx(int degree) {
  if (degree < 0 || degree > 3)
    throw ChordError("implication check supports degrees 0..3");
  StuImplicationReport rep;
  rep.degree = degree;
  if (degree == 0) return rep;

  std::vector<ChordDiagram> diagrams;
  for (int nc : {1, 2}) {
    for (ChordDiagram& d : enumerate_skeleton_connected(degree, nc))
      diagrams.push_back(std::move(d));
  }

  rep.diagrams = static_cast<int>(diagrams.size());
  for (const ChordDiagram& d : diagrams) {
    const std::string key = diagram_key(d);
    DiagramView vw = make_view(d);
    // Antisymmetry at each internal vertex.
    for (int w = 1; w <= d.n; ++w) {
      if (vw.circle_of[w - 1] >= 0) continue;
      CyclicOrientedGraph flipped = vw.cyc;
      std::swap(flipped.cyc[w - 1][1], flipped.cyc[w - 1][2]);
      ChordDiagram nd = d;
      nd.gedges.clear();
      for (int ge = vw.narcs; ge < static_cast<int>(flipped.ends.size()); ++ge)
        nd.gedges.push_back(flipped.ends[ge]);
      nd.sign = from_cyclic(flipped).sign;
      DiagramVector sum;
      sum.add_term(d, Rat(1));
      sum.add_term(nd, Rat(1));
      ++rep.as_instances;
      if (!stu_reduce(sum).is_zero())
        rep.failures.push_back("AS at vertex " + std::to_string(w) + " of " +
                               key);
    }
    // Rewiring at each internal-internal edge.
    for (int ge = 0; ge < static_cast<int>(d.gedges.size()); ++ge) {
      const auto [p, q] = d.gedges[ge];
      if (p == q) continue;
      if (vw.circle_of[p - 1] >= 0 || vw.circle_of[q - 1] >= 0) continue;
      DiagramVector sum;
      for (const ChordDiagram& t : diagram_ihx_terms(d, ge))
        sum.add_term(t, Rat(1));
      ++rep.ihx_instances;
      if (!stu_reduce(sum).is_zero())
        rep.failures.push_back("IHX at edge " + std::to_string(ge) + " of " +
                               key);
    }
  }
  return rep;
}

}  // namespace rw
