#include "rw/homology.hpp"

#include <algorithm>
#include <set>

#include "rw/tables.hpp"

namespace rw {

namespace {

void move_half(CyclicOrientedGraph& c, const HalfRef& h, int v) {
  if (h.end == 0)
    c.ends[h.edge].first = v;
  else
    c.ends[h.edge].second = v;
}

std::array<HalfRef, 3> rotated_front(const std::array<HalfRef, 3>& a,
                                     const HalfRef& target) {
  for (int r = 0; r < 3; ++r) {
    if (a[r] == target) return {a[r], a[(r + 1) % 3], a[(r + 2) % 3]};
  }
  throw GraphError("half-edge not present at vertex");
}

}  // namespace

// The three-term relation at an edge e with endpoints p != q. With the
// cyclic orders written e-first as p:(e,a,b), q:(e',c,d), the classes
//   [p:(e,a,b), q:(e',c,d)] + [p:(e,b,c), q:(e',a,d)] + [p:(e,c,a), q:(e',b,d)]
// sum to zero; the second and third terms move the named half-edges between
// the endpoints while every other attachment stays put.
static std::array<CyclicOrientedGraph, 3> ihx_terms(
    const CyclicOrientedGraph& c0, int e) {
  const int p = c0.ends[e].first;
  const int q = c0.ends[e].second;
  if (p == q) throw GraphError("ihx requires an edge with distinct endpoints");
  const HalfRef ep{e, 0}, eq{e, 1};
  const auto sp = rotated_front(c0.cyc[p - 1], ep);
  const auto sq = rotated_front(c0.cyc[q - 1], eq);
  const HalfRef a = sp[1], b = sp[2], c = sq[1], d = sq[2];

  std::array<CyclicOrientedGraph, 3> out{c0, c0, c0};
  out[0].cyc[p - 1] = {ep, a, b};
  out[0].cyc[q - 1] = {eq, c, d};

  out[1].cyc[p - 1] = {ep, b, c};
  out[1].cyc[q - 1] = {eq, a, d};
  move_half(out[1], c, p);
  move_half(out[1], a, q);

  out[2].cyc[p - 1] = {ep, c, a};
  out[2].cyc[q - 1] = {eq, b, d};
  move_half(out[2], c, p);
  move_half(out[2], b, q);
  return out;
}

RelationSet ihx_relations(int k) {
  RelationSet rs;
  rs.k = k;
  if (k == 0) return rs;
  std::set<std::string> seen;
  for (const OrientedGraph& g : enumerate_trivalent(2 * k)) {
    const CyclicOrientedGraph cyc = to_cyclic(g);
    for (int e = 0; e < static_cast<int>(cyc.ends.size()); ++e) {
      if (cyc.ends[e].first == cyc.ends[e].second) continue;
      GraphVector rel;
      for (const CyclicOrientedGraph& term : ihx_terms(cyc, e)) {
        rel.add_term(from_cyclic(term), Rat(1));
      }
      if (rel.is_zero()) continue;
      // Scale-normalize for deduplication.
      GraphVector norm = rel;
      norm *= 1 / rel.terms().begin()->second.second;
      if (seen.insert(norm.str()).second) rs.relations.push_back(rel);
    }
  }
  return rs;
}

namespace {

// Graphs kept as basis elements when the relations allow it: theta powers
// and the small named graphs, in reporting order.
std::vector<std::string> preferred_keys(int k) {
  auto key = [](const OrientedGraph& g) {
    return graph_key(canonical_form(g).graph);
  };
  std::vector<OrientedGraph> pref;
  const OrientedGraph th = theta_graph();
  const OrientedGraph t2 = theta2_graph();
  const OrientedGraph t3 = theta3_graph();
  switch (k) {
    case 1:
      pref = {th};
      break;
    case 2:
      pref = {theta_power(2), t2};
      break;
    case 3:
      pref = {theta_power(3), disjoint_union(th, t2), t3};
      break;
    case 4:
      pref = {theta_power(4),
              disjoint_union(theta_power(2), t2),
              disjoint_union(th, t3),
              disjoint_union(t2, t2),
              theta_chain4_graph(),
              cube_graph()};
      break;
    default:
      break;
  }
  std::vector<std::string> out;
  for (const auto& g : pref) out.push_back(key(g));
  return out;
}

HomologyBasis build_basis(int k) {
  HomologyBasis hb;
  hb.k = k;
  std::vector<OrientedGraph> all = enumerate_trivalent(2 * k);

  // Column order: non-preferred graphs first (by key), preferred graphs
  // last, so lexicographic pivoting eliminates the former when possible.
  const std::vector<std::string> pref = preferred_keys(k);
  std::map<std::string, OrientedGraph> by_key;
  for (const auto& g : all) by_key.emplace(graph_key(g), g);
  std::vector<std::string> order;
  for (const auto& [key, g] : by_key) {
    if (std::find(pref.begin(), pref.end(), key) == pref.end())
      order.push_back(key);
  }
  for (const auto& key : pref) {
    if (by_key.count(key)) order.push_back(key);
  }

  for (const auto& key : order) {
    hb.index_of.emplace(key, static_cast<int>(hb.graphs.size()));
    hb.graphs.push_back(by_key.at(key));
  }

  RowReducer rr;
  for (const GraphVector& rel : ihx_relations(k).relations) {
    SparseRow row;
    for (const auto& [key, term] : rel.terms())
      row.emplace_back(hb.index_of.at(key), term.second);
    std::sort(row.begin(), row.end());
    rr.add_row(std::move(row));
  }

  const int ncols = static_cast<int>(hb.graphs.size());
  hb.basis_columns = rr.free_columns(ncols);
  std::map<int, int> slot_of;
  for (int i = 0; i < static_cast<int>(hb.basis_columns.size()); ++i)
    slot_of[hb.basis_columns[i]] = i;

  hb.reduction.assign(ncols, {});
  for (int c = 0; c < ncols; ++c) {
    auto it = rr.pivot_rows().find(c);
    if (it == rr.pivot_rows().end()) {
      hb.reduction[c] = {{slot_of.at(c), Rat(1)}};
    } else {
      // Pivot row: x_c + sum coeff_f x_f = 0 over free columns f.
      SparseRow coords;
      for (const auto& [col, v] : it->second) {
        if (col == c) continue;
        coords.emplace_back(slot_of.at(col), -v);
      }
      std::sort(coords.begin(), coords.end());
      hb.reduction[c] = std::move(coords);
    }
  }
  return hb;
}

}  // namespace

const HomologyBasis& homology_basis(int k) {
  static std::map<int, HomologyBasis> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, build_basis(k)).first;
  return it->second;
}

SparseRow reduce_sparse(const GraphVector& v, const HomologyBasis& basis) {
  if (!v.is_zero() && v.nverts() != 2 * basis.k)
    throw GraphError("degree mismatch: vector has " +
                     std::to_string(v.nverts()) + " vertices, basis expects " +
                     std::to_string(2 * basis.k));
  SparseRow acc;
  for (const auto& [key, term] : v.terms()) {
    auto it = basis.index_of.find(key);
    if (it == basis.index_of.end())
      throw GraphError("graph not in the enumeration: " + key);
    acc = sparse_axpy(acc, term.second, basis.reduction[it->second]);
  }
  return acc;
}

std::vector<Rat> reduce(const GraphVector& v, const HomologyBasis& basis) {
  std::vector<Rat> out(basis.dim(), Rat(0));
  for (const auto& [slot, c] : reduce_sparse(v, basis)) out[slot] = c;
  return out;
}

}  // namespace rw
