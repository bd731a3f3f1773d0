#pragma once
#include <compare>
#include <string>

#include "ep/tuple.hpp"

namespace ep {

// Element of the inverse semigroup S(G,E,phi): zero or a triple (alpha, g,
// beta) with r(alpha) = g(r(beta)).
struct STriple {
  bool zero = true;
  Path alpha, beta;
  GElem g;

  static STriple zero_elem() { return STriple{}; }
  // Validates the range condition; throws domain_error when it fails.
  static STriple make(const EPTuple& t, Path alpha, GElem g, Path beta);

  bool operator==(const STriple& o) const {
    if (zero || o.zero) return zero == o.zero;
    return alpha == o.alpha && g == o.g && beta == o.beta;
  }
  auto operator<=>(const STriple& o) const {
    if (auto c = (zero ? 0 : 1) <=> (o.zero ? 0 : 1); c != 0) return c;
    if (zero) return std::strong_ordering::equal;
    if (auto c = alpha <=> o.alpha; c != 0) return c;
    if (auto c = g <=> o.g; c != 0) return c;
    return beta <=> o.beta;
  }
};

STriple striple_vertex(const EPTuple& t, int v);        // (v, 1, v)
STriple striple_edge(const EPTuple& t, int e);          // (e, 1, r(e))
STriple striple_vg(const EPTuple& t, int v, GElem g);   // (v, g, g^-1(v))

STriple mul(const EPTuple& t, const STriple& x, const STriple& y);
STriple star(const EPTuple& t, const STriple& x);
// The 2-cocycle: c(g, gamma1) / c(h, h^-1(beta1)) on the matching branch,
// zero exactly when mul(x, y) is zero.
Scalar omega(const EPTuple& t, const STriple& x, const STriple& y);
// Product and cocycle in one pass.
std::pair<STriple, Scalar> mul_omega(const EPTuple& t, const STriple& x,
                                     const STriple& y);

std::string striple_str(const EPTuple& t, const STriple& x);

}  // namespace ep
