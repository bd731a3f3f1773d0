#include "ep/random_tuples.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "ep/errors.hpp"

namespace ep {
namespace {

long gcd_long(long a, long b) { return std::gcd(a, b); }

long pow_mod(long b, long e, long p) {
  long r = 1, x = b % p;
  while (e > 0) {
    if (e & 1) r = static_cast<long>(static_cast<__int128>(r) * x % p);
    x = static_cast<long>(static_cast<__int128>(x) * x % p);
    e >>= 1;
  }
  return r;
}

// random d-th root of unity
Scalar random_root(FieldSpec f, long d, std::mt19937_64& rng) {
  if (f.is_rational()) {
    if (d % 2 == 0 && rng() % 2 == 0) return -Scalar::one(f);
    return Scalar::one(f);
  }
  const long p = f.p;
  if (p == 2) return Scalar::one(f);
  std::vector<long> facs;
  long n = p - 1;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      facs.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) facs.push_back(n);
  long root = 0;
  for (long g = 2; g < p && root == 0; ++g) {
    bool ok = true;
    for (long q : facs)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) root = g;
  }
  check_internal(root != 0, "no primitive root found");
  // the d-th roots form the subgroup of order gcd(d, p-1)
  const long sub = gcd_long(d, p - 1);
  const Scalar gen = Scalar::from_long(root, f).pow(mpz_class((p - 1) / sub));
  return gen.pow(mpz_class(static_cast<long>(rng() % static_cast<unsigned long>(sub))));
}

}  // namespace

Scalar random_unit(FieldSpec f, std::mt19937_64& rng) {
  if (f.is_rational()) {
    std::uniform_int_distribution<long> d(1, 5);
    Scalar s = Scalar::from_long(d(rng), f) * Scalar::from_long(d(rng), f).inv();
    if (rng() % 2 == 0) s = -s;
    return s;
  }
  std::uniform_int_distribution<long> d(1, f.p - 1);
  return Scalar::from_long(d(rng), f);
}

EPTuple random_tuple(FieldSpec f, RandomGroup g, std::mt19937_64& rng,
                     int max_vertices, int max_edges) {
  if (g == RandomGroup::Any) {
    switch (rng() % 4) {
      case 0: g = RandomGroup::Trivial; break;
      case 1: g = RandomGroup::Z2; break;
      case 2: g = RandomGroup::Z6; break;
      default: g = RandomGroup::Z; break;
    }
  }
  GroupModel group = g == RandomGroup::Trivial ? GroupModel::trivial()
                     : g == RandomGroup::Z2    ? GroupModel::cyclic(2)
                     : g == RandomGroup::Z6    ? GroupModel::cyclic(6)
                                               : GroupModel::integers();
  const long m = group.kind() == GroupKind::Cyclic ? group.order() : 0;

  std::uniform_int_distribution<int> pick_nv(1, max_vertices);
  const int nv = pick_nv(rng);
  std::vector<std::string> vnames;
  for (int v = 0; v < nv; ++v) vnames.push_back("v" + std::to_string(v));

  // parallel classes; each becomes one t-orbit of edges
  std::uniform_int_distribution<int> pick_ne(1, max_edges);
  const int budget = pick_ne(rng);
  std::uniform_int_distribution<int> pick_v(0, nv - 1);
  std::vector<Graph::EdgeDecl> edges;
  std::vector<std::pair<int, int>> orbit_span;  // [first, last] edge index
  while (static_cast<int>(edges.size()) < budget) {
    const int left = budget - static_cast<int>(edges.size());
    std::vector<int> sizes;
    for (int d = 1; d <= left; ++d)
      if (m == 0 || m % d == 0) sizes.push_back(d);
    const int d = sizes[rng() % sizes.size()];
    const int sv = pick_v(rng), rv = pick_v(rng);
    const int first = static_cast<int>(edges.size());
    for (int i = 0; i < d; ++i)
      edges.push_back({"e" + std::to_string(edges.size()), vnames[sv], vnames[rv]});
    orbit_span.push_back({first, first + d - 1});
  }
  Graph graph = Graph::make(vnames, edges);

  const int slots = group.n_gen_slots();
  std::vector<std::vector<int>> act_v(slots), act_e(slots);
  std::vector<std::vector<GElem>> phi(slots);
  std::vector<std::vector<Scalar>> c(slots);
  if (slots == 1) {
    act_v[0].resize(nv);
    for (int v = 0; v < nv; ++v) act_v[0][v] = v;
    act_e[0].assign(graph.n_edges(), 0);
    phi[0].assign(graph.n_edges(), GElem{});
    c[0].assign(graph.n_edges(), Scalar::one(f));
    std::uniform_int_distribution<long> small(-3, 3);
    for (const auto& [first, last] : orbit_span) {
      const long d = last - first + 1;
      for (int e = first; e <= last; ++e)
        act_e[0][e] = (e == last) ? first : e + 1;
      // phi exponents, orbit sum forced to 0 mod d for finite groups
      mpz_class sum = 0;
      for (int e = first; e <= last; ++e) {
        mpz_class x = small(rng);
        if (m != 0) {
          x = ((x % m) + m) % m;
          if (e == last) {
            mpz_class rem = ((-sum) % d + d) % d;
            x = rem + d * static_cast<long>(rng() % static_cast<unsigned long>(m / d));
          }
          phi[0][e].i = static_cast<int>(x.get_si());
        } else {
          phi[0][e].z = x;
        }
        sum += x;
      }
      // twists, orbit product forced to an (m/d)-th root of unity
      Scalar prod = Scalar::one(f);
      for (int e = first; e <= last; ++e) {
        Scalar x = random_unit(f, rng);
        if (m != 0 && e == last) x = random_root(f, m / d, rng) * prod.inv();
        c[0][e] = x;
        prod = prod * x;
      }
    }
  }
  return EPTuple::make(std::move(graph), std::move(group), f, std::move(act_v),
                       std::move(act_e), std::move(phi), std::move(c));
}

}  // namespace ep
