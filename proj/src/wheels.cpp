#include "rw/wheels.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "rw/series.hpp"

namespace rw {

namespace {

struct RimLayout {
  // Per wheel: first vertex id (1-based), spoke count.
  std::vector<std::pair<int, int>> wheels;
  int nverts = 0;
  int nspokes = 0;
};

RimLayout layout_plain(const std::vector<Wheel>& wheels) {
  RimLayout lay;
  for (const Wheel& wh : wheels) {
    if (wh.bold) throw GraphError("bold wheel in a plain polywheel closure");
    if (wh.spokes <= 0)
      throw GraphError("plain wheels need at least one spoke");
    lay.wheels.emplace_back(lay.nverts + 1, wh.spokes);
    lay.nverts += wh.spokes;
    lay.nspokes += wh.spokes;
  }
  if (lay.nspokes % 2 != 0)
    throw GraphError("total spoke count must be even to close a polywheel");
  return lay;
}

void all_matchings(int nslots,
                   const std::function<void(const std::vector<int>&)>& cb) {
  std::vector<int> partner(nslots, -1);
  std::vector<int> stack;
  std::function<void()> rec = [&]() {
    int u = -1;
    for (int i = 0; i < nslots; ++i) {
      if (partner[i] < 0) {
        u = i;
        break;
      }
    }
    if (u < 0) {
      cb(partner);
      return;
    }
    for (int v = u + 1; v < nslots; ++v) {
      if (partner[v] >= 0) continue;
      partner[u] = v;
      partner[v] = u;
      rec();
      partner[u] = -1;
      partner[v] = -1;
    }
  };
  rec();
}

}  // namespace

GraphVector polywheel_close(const std::vector<Wheel>& wheels) {
  const RimLayout lay = layout_plain(wheels);
  GraphVector out;

  // Rim arcs are shared by every matching term; spoke joins vary.
  // Each rim vertex reads (incoming arc, outgoing arc, spoke) in its cyclic
  // order; with even rims this pins the orientation of every closure term.
  all_matchings(lay.nspokes, [&](const std::vector<int>& partner) {
    CyclicOrientedGraph c;
    c.n = lay.nverts;
    c.cyc.assign(lay.nverts, {});
    std::vector<HalfRef> in_half(lay.nverts), out_half(lay.nverts),
        spoke_half(lay.nverts);
    // Arcs.
    for (const auto& [first, m] : lay.wheels) {
      for (int t = 0; t < m; ++t) {
        int a = first + t;                // 1-based tail
        int b = first + (t + 1) % m;      // head
        int e = static_cast<int>(c.ends.size());
        c.ends.emplace_back(a, b);
        out_half[a - 1] = HalfRef{e, 0};
        in_half[b - 1] = HalfRef{e, 1};
      }
    }
    // Spoke joins; slot s belongs to rim vertex s+1 by construction.
    for (int s = 0; s < lay.nspokes; ++s) {
      if (partner[s] < s) continue;
      int e = static_cast<int>(c.ends.size());
      c.ends.emplace_back(s + 1, partner[s] + 1);
      spoke_half[s] = HalfRef{e, 0};
      spoke_half[partner[s]] = HalfRef{e, 1};
    }
    for (int v = 0; v < lay.nverts; ++v)
      c.cyc[v] = {in_half[v], out_half[v], spoke_half[v]};
    out.add_term(from_cyclic(c), Rat(1));
  });
  return out;
}

Int polywheel_term_count(const std::vector<Wheel>& wheels) {
  int total = 0;
  for (const Wheel& wh : wheels) total += wh.spokes;
  if (total % 2 != 0) throw GraphError("odd total spoke count");
  return double_factorial_odd(total / 2);
}

// ---------------------------------------------------------------------

std::vector<Rat> omega_coefficients(int max_m) {
  if (max_m < 0 || max_m > 8)
    throw GraphError("omega_coefficients supports 0 <= max_m <= 8");
  const size_t len = 2 * max_m + 1;
  // sinh(x/2)/(x/2) = sum x^{2m} / (4^m (2m+1)!)
  std::vector<Rat> f(len, Rat(0));
  for (int m = 0; 2 * m < static_cast<int>(len); ++m) {
    f[2 * m] = Rat(1) / (Rat(rat_pow(Rat(4), m)) * Rat(factorial(2 * m + 1)));
  }
  std::vector<Rat> g = series_log(f);
  std::vector<Rat> out(max_m + 1, Rat(0));
  for (int m = 0; m <= max_m; ++m) out[m] = g[2 * m] / 2;
  return out;
}

// ---------------------------------------------------------------------

std::vector<Wheel> parse_wheels(const std::string& text) {
  size_t i = 0;
  auto skip_ws = [&]() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto fail = [&](const std::string& msg) {
    throw ParseError(msg, i);
  };
  auto parse_int = [&]() {
    skip_ws();
    size_t start = i;
    long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      v = v * 10 + (text[i++] - '0');
    if (i == start) fail("expected integer");
    return v;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '<') fail("expected '<'");
  ++i;
  std::vector<Wheel> out;
  while (true) {
    skip_ws();
    if (i < text.size() && text[i] == '>') {
      ++i;
      break;
    }
    if (i >= text.size()) fail("unterminated wheel list");
    const char c = text[i];
    if (c != 'w' && c != 'W') fail("expected w(...) or W(...)");
    const bool bold = (c == 'W');
    ++i;
    long spokes;
    std::string label;
    skip_ws();
    if (i < text.size() && text[i] == '(') {
      ++i;
      spokes = parse_int();
      if (bold) {
        skip_ws();
        if (i >= text.size() || text[i] != ',') fail("bold wheels need a label");
        ++i;
        skip_ws();
        size_t start = i;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) ||
                text[i] == '_'))
          ++i;
        if (start == i) fail("expected label");
        label = text.substr(start, i - start);
      }
      skip_ws();
      if (i >= text.size() || text[i] != ')') fail("expected ')'");
      ++i;
    } else {
      if (bold) fail("bold wheels are written W(2m,LABEL)");
      spokes = parse_int();
    }
    out.push_back(Wheel{static_cast<int>(spokes), bold, label});
  }
  skip_ws();
  if (i != text.size()) fail("trailing input after '>'");
  if (out.empty()) fail("empty wheel list");
  return out;
}

DiagramVector polywheel_close_mixed(const std::vector<Wheel>& wheels) {
  // Layout: bold rims take the low vertex ids (externals), plain rims
  // follow (internals).
  struct Rim {
    bool bold = false;
    std::string label;
    int first = 0;  // first vertex id
    int m = 0;      // spokes = rim vertices
  };
  std::vector<Rim> rims;
  int next_id = 1;
  int total_spokes = 0;
  std::vector<Circle> circles;
  for (const Wheel& wh : wheels) {
    if (!wh.bold && wh.spokes <= 0)
      throw GraphError("plain wheels need at least one spoke");
    if (wh.bold && wh.spokes == 0) {
      circles.push_back(Circle{wh.label, false, {}});
      continue;
    }
    if (wh.bold) rims.push_back({true, wh.label, 0, wh.spokes});
    total_spokes += wh.spokes;
  }
  for (const Wheel& wh : wheels) {
    if (!wh.bold && wh.spokes > 0) rims.push_back({false, "", 0, wh.spokes});
  }
  // Bold rims were pushed first; assign ids in rim order.
  std::stable_sort(rims.begin(), rims.end(),
                   [](const Rim& a, const Rim& b) { return a.bold > b.bold; });
  for (Rim& r : rims) {
    r.first = next_id;
    next_id += r.m;
    if (r.bold) {
      Circle c;
      c.label = r.label;
      for (int t = 0; t < r.m; ++t) c.verts.push_back(r.first + t);
      circles.push_back(std::move(c));
    }
  }
  if (total_spokes % 2 != 0)
    throw GraphError("total spoke count must be even to close a polywheel");
  const int n = next_id - 1;

  // Spoke slot s sits at vertex slot_vertex[s].
  std::vector<int> slot_vertex;
  for (const Rim& r : rims)
    for (int t = 0; t < r.m; ++t) slot_vertex.push_back(r.first + t);

  DiagramVector out;
  all_matchings(total_spokes, [&](const std::vector<int>& partner) {
    // Graph edges: plain rim arcs first, then the spoke joins.
    std::vector<std::pair<int, int>> gedges;
    std::map<int, std::array<std::pair<int, int>, 3>> internal_cyc;
    std::map<int, std::pair<int, int>> in_arc, out_arc;  // plain rim verts
    for (const Rim& r : rims) {
      if (r.bold) continue;
      for (int t = 0; t < r.m; ++t) {
        int a = r.first + t;
        int b = r.first + (t + 1) % r.m;
        int e = static_cast<int>(gedges.size());
        gedges.emplace_back(a, b);
        out_arc[a] = {e, 0};
        in_arc[b] = {e, 1};
      }
    }
    std::vector<std::pair<int, int>> spoke_half(total_spokes);
    for (int s = 0; s < total_spokes; ++s) {
      if (partner[s] < s) continue;
      int e = static_cast<int>(gedges.size());
      gedges.emplace_back(slot_vertex[s], slot_vertex[partner[s]]);
      spoke_half[s] = {e, 0};
      spoke_half[partner[s]] = {e, 1};
    }
    for (const Rim& r : rims) {
      if (r.bold) continue;
      for (int t = 0; t < r.m; ++t) {
        int v = r.first + t;
        int slot = -1;
        for (int s = 0; s < total_spokes; ++s) {
          if (slot_vertex[s] == v) slot = s;
        }
        internal_cyc[v] = {in_arc.at(v), out_arc.at(v), spoke_half[slot]};
      }
    }
    out.add_term(diagram_from_cyclic(n, circles, gedges, internal_cyc),
                 Rat(1));
  });
  return out;
}

DiagramVector wheeling_lhs(int k, const std::string& label) {
  if (k < 1 || k > 3) throw GraphError("wheeling sides support 1 <= k <= 3");
  // Both factors are built through the cyclic constructor so the external
  // vertices read (in, out, leg) and the closed component is the planar
  // theta, matching the conventions of the wheel closures.
  const ChordDiagram one_chord = diagram_from_cyclic(
      2, {Circle{label, true, {1, 2}}}, {{1, 2}}, {});
  const ChordDiagram theta_line = diagram_from_cyclic(
      2, {Circle{label, true, {}}}, {{1, 2}, {1, 2}, {1, 2}},
      {{1, {{{0, 0}, {2, 0}, {1, 0}}}}, {2, {{{0, 1}, {1, 1}, {2, 1}}}}});
  DiagramVector base;
  base.add_term(one_chord, Rat(1));
  base.add_term(theta_line, Rat(1, 24));
  DiagramVector acc = base;
  for (int i = 1; i < k; ++i) acc = juxtapose(acc, base);
  return close_lines(acc);
}

DiagramVector wheeling_rhs(int k, const std::string& label) {
  if (k < 1 || k > 3) throw GraphError("wheeling sides support 1 <= k <= 3");
  DiagramVector rhs;
  for (int j = 0; j <= k; ++j) {
    const OmegaElement om = omega_truncation(2 * j);
    const Rat scale = Rat(1) / Rat(factorial(2 * (k - j)));
    for (const WheelTerm& wt : om.terms) {
      std::vector<Wheel> ws;
      for (int s : wt.spokes) ws.push_back(w(s));
      ws.push_back(W(2 * (k - j), label));
      rhs += (wt.coeff * scale) * polywheel_close_mixed(ws);
    }
  }
  return (rat_pow(Rat(2), k) * Rat(factorial(k))) * rhs;
}

OmegaElement omega_truncation(int two_m) {
  if (two_m < 0 || two_m % 2 != 0 || two_m > 8)
    throw GraphError("omega_truncation supports even degrees 0..8");
  const int m = two_m / 2;
  const std::vector<Rat> b = omega_coefficients(m);
  OmegaElement out;
  out.degree = two_m;

  // Partitions of m; a part p contributes a wheel with 2p spokes and a
  // factor b_{2p}; exp_cup divides by the multiplicity factorials.
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int maxp) {
    if (rest == 0) {
      Rat coeff(1);
      for (int p : parts) coeff *= b[p];
      int run = 1;
      for (size_t i = 1; i <= parts.size(); ++i) {
        if (i < parts.size() && parts[i] == parts[i - 1]) {
          ++run;
        } else {
          coeff /= Rat(factorial(run));
          run = 1;
        }
      }
      if (coeff != 0) {
        WheelTerm t;
        t.coeff = coeff;
        for (int p : parts) t.spokes.push_back(2 * p);
        out.terms.push_back(std::move(t));
      }
      return;
    }
    for (int p = std::min(rest, maxp); p >= 1; --p) {
      parts.push_back(p);
      rec(rest - p, p);
      parts.pop_back();
    }
  };
  rec(m, m);
  return out;
}

}  // namespace rw
