#pragma once
#include <string>
#include <vector>

#include "ep/katsura.hpp"
#include "ep/tuple.hpp"

namespace ep::testing {

inline FieldSpec Q() { return FieldSpec{0}; }
inline FieldSpec F(long p) { return FieldSpec{p}; }

// single vertex, two loops, trivial group
inline EPTuple two_loop_trivial(FieldSpec f = Q()) {
  Graph g = Graph::make({"v"}, {{"e0", "v", "v"}, {"e1", "v", "v"}});
  return EPTuple::make(std::move(g), GroupModel::trivial(), f, {}, {}, {}, {});
}

// square Katsura system on one vertex per row
inline KatsuraTriple kat(std::vector<std::vector<long>> a,
                         std::vector<std::vector<long>> b,
                         FieldSpec f = Q()) {
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  std::vector<std::string> vs, rvs;
  for (int i = 0; i < cols; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 0; i < rows; ++i) rvs.push_back(vs[i]);
  std::vector<std::vector<Scalar>> c(
      rows, std::vector<Scalar>(cols, Scalar::one(f)));
  return make_katsura(vs, rvs, std::move(a), std::move(b), std::move(c), f);
}

inline KatsuraTriple kat_c(std::vector<std::vector<long>> a,
                           std::vector<std::vector<long>> b,
                           std::vector<std::vector<Scalar>> c, FieldSpec f) {
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  std::vector<std::string> vs, rvs;
  for (int i = 0; i < cols; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 0; i < rows; ++i) rvs.push_back(vs[i]);
  return make_katsura(vs, rvs, std::move(a), std::move(b), std::move(c), f);
}

// order-two table group acting on two parallel loops by the swap, with
// phi(s, .) = s and twists 2, 1/2 so the closure laws hold
inline EPTuple swap_table_tuple() {
  Graph g = Graph::make({"v"}, {{"e0", "v", "v"}, {"e1", "v", "v"}});
  GroupModel z2 = GroupModel::table({"1", "s"}, {{0, 1}, {1, 0}});
  const GElem id{0, 0}, s{0, 1};
  const FieldSpec f = Q();
  std::vector<std::vector<int>> act_v = {{0}, {0}};
  std::vector<std::vector<int>> act_e = {{0, 1}, {1, 0}};
  std::vector<std::vector<GElem>> phi = {{id, id}, {s, s}};
  std::vector<std::vector<Scalar>> c = {
      {Scalar::one(f), Scalar::one(f)},
      {Scalar::from_long(2, f), Scalar::from_string("1/2", f)}};
  return EPTuple::make(std::move(g), std::move(z2), f, act_v, act_e, phi, c);
}

}  // namespace ep::testing
