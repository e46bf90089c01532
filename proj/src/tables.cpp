#include "rw/tables.hpp"

namespace rw {

OrientedGraph theta_chain4_graph() {
  return OrientedGraph{8,
                       {{1, 2},
                        {1, 2},
                        {3, 1},
                        {2, 4},
                        {3, 4},
                        {3, 5},
                        {4, 6},
                        {5, 6},
                        {5, 7},
                        {6, 8},
                        {7, 8},
                        {7, 8}},
                       +1};
}

OrientedGraph cube_graph() {
  return OrientedGraph{8,
                       {{2, 1},
                        {1, 3},
                        {1, 4},
                        {2, 5},
                        {2, 6},
                        {3, 5},
                        {3, 7},
                        {4, 6},
                        {4, 7},
                        {5, 8},
                        {6, 8},
                        {7, 8}},
                       +1};
}

namespace {

GraphVector one(const OrientedGraph& g) {
  GraphVector v;
  v.add_term(g, Rat(1));
  return v;
}

std::vector<DictRow> build_dictionary() {
  const OrientedGraph th = theta_graph();
  const OrientedGraph t2 = theta2_graph();
  const OrientedGraph t3 = theta3_graph();
  std::vector<DictRow> rows;

  auto add = [&](int k, std::string name, const OrientedGraph& lhs,
                 std::vector<DictRow::WheelTerm> terms,
                 Rat t2sq = Rat(0)) {
    DictRow r;
    r.k = k;
    r.name = std::move(name);
    r.lhs = one(lhs);
    r.wheel_terms = std::move(terms);
    r.theta2sq_coeff = t2sq;
    rows.push_back(std::move(r));
  };

  add(1, "theta", th, {{Rat(1), {2}}});

  add(2, "theta^2", theta_power(2),
      {{Rat(1), {2, 2}}, {Rat(-4, 5), {4}}});
  add(2, "theta2", t2, {{Rat(2, 5), {4}}});

  add(3, "theta^3", theta_power(3),
      {{Rat(1), {2, 2, 2}}, {Rat(-12, 5), {2, 4}}, {Rat(64, 35), {6}}});
  add(3, "theta*theta2", disjoint_union(th, t2),
      {{Rat(2, 5), {2, 4}}, {Rat(-16, 35), {6}}});
  add(3, "theta3", t3, {{Rat(4, 35), {6}}});

  add(4, "theta^4", theta_power(4),
      {{Rat(1), {2, 2, 2, 2}},
       {Rat(-24, 5), {2, 2, 4}},
       {Rat(48, 25), {4, 4}},
       {Rat(256, 35), {2, 6}},
       {Rat(-1152, 175), {8}}});
  add(4, "theta^2*theta2", disjoint_union(theta_power(2), t2),
      {{Rat(2, 5), {2, 2, 4}},
       {Rat(-8, 25), {4, 4}},
       {Rat(-32, 35), {2, 6}},
       {Rat(192, 175), {8}}});
  add(4, "theta*theta3", disjoint_union(th, t3),
      {{Rat(2, 25), {4, 4}}, {Rat(4, 35), {2, 6}}, {Rat(-48, 175), {8}}},
      Rat(-1, 2));
  add(4, "theta_chain4", theta_chain4_graph(),
      {{Rat(-1, 75), {4, 4}}, {Rat(8, 175), {8}}}, Rat(1, 12));
  add(4, "cube", cube_graph(),
      {{Rat(41, 600), {4, 4}}, {Rat(-16, 175), {8}}}, Rat(-41, 96));

  return rows;
}

}  // namespace

const std::vector<DictRow>& polywheel_dictionary() {
  static const std::vector<DictRow> rows = build_dictionary();
  return rows;
}

GraphVector dict_row_rhs(const DictRow& row) {
  GraphVector rhs;
  for (const auto& term : row.wheel_terms) {
    std::vector<Wheel> wheels;
    for (int s : term.spokes) wheels.push_back(w(s));
    rhs += term.coeff * polywheel_close(wheels);
  }
  if (row.theta2sq_coeff != 0) {
    GraphVector t2sq = one(disjoint_union(theta2_graph(), theta2_graph()));
    rhs += row.theta2sq_coeff * t2sq;
  }
  return rhs;
}

Rat hilb_theta_value(int k) {
  return rat_pow(Rat(12), k) * rat_pow(Rat(k + 3), k);
}

Rat kummer_theta_value(int k) {
  return rat_pow(Rat(12), k) * rat_pow(Rat(k + 1), k + 1);
}

std::string gap_combination_a() {
  return "48 K[4] + 294 S x S[3] + 144 S[2] x S[2] + 63 S^4";
}

std::string gap_combination_b() {
  return "336 S[4] + 268 S^2 x S[2]";
}

}  // namespace rw
