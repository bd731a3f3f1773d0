#include "ep/abgroup.hpp"

#include "ep/errors.hpp"

namespace ep {

std::string AbGroup::str() const {
  if (trivial()) return "0";
  std::string s;
  if (rank == 1)
    s = "Z";
  else if (rank > 1)
    s = "Z^" + std::to_string(rank);
  for (const auto& d : torsion) {
    if (!s.empty()) s += " ⊕ ";
    s += "Z/" + d.get_str();
  }
  return s;
}

AbGroup ab_free(long rank) { return AbGroup{rank, {}}; }

AbGroup ab_of(long rank, const std::vector<mpz_class>& orders) {
  check_internal(rank >= 0, "negative rank");
  // invariant factors via the Smith form of the diagonal relation matrix
  std::vector<mpz_class> pos;
  for (const auto& d : orders) {
    check_internal(d >= 1, "nonpositive torsion order");
    if (d > 1) pos.push_back(d);
  }
  AbGroup g;
  g.rank = rank;
  if (pos.empty()) return g;
  ZMat m = zmat(static_cast<int>(pos.size()), static_cast<int>(pos.size()));
  for (size_t i = 0; i < pos.size(); ++i) m[i][i] = pos[i];
  for (const auto& d : snf_diagonal(m))
    if (d > 1) g.torsion.push_back(d);
  return g;
}

AbGroup ab_direct_sum(const AbGroup& a, const AbGroup& b) {
  std::vector<mpz_class> orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  return ab_of(a.rank + b.rank, orders);
}

CokerKer coker_ker(const ZMat& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  CokerKer r;
  if (rows == 0) {
    r.ker_rank = cols;
    return r;
  }
  r.snf_diag = snf_diagonal(m);
  const long rk = static_cast<long>(r.snf_diag.size());
  r.coker = ab_of(rows - rk, r.snf_diag);
  r.ker_rank = cols - rk;
  return r;
}

}  // namespace ep
