#include "ep/semigroup.hpp"

#include "ep/errors.hpp"

namespace ep {

STriple STriple::make(const EPTuple& t, Path alpha, GElem g, Path beta) {
  const Graph& G = t.graph();
  check_internal(path_ok(G, alpha) && path_ok(G, beta),
                 "malformed path in triple");
  if (path_rng(G, alpha) != t.act_vertex(g, path_rng(G, beta)))
    throw domain_error("triple fails r(alpha) = g(r(beta))");
  STriple s;
  s.zero = false;
  s.alpha = std::move(alpha);
  s.g = g;
  s.beta = std::move(beta);
  return s;
}

STriple striple_vertex(const EPTuple& t, int v) {
  return STriple::make(t, vertex_path(v), t.group().id(), vertex_path(v));
}

STriple striple_edge(const EPTuple& t, int e) {
  Path a = vertex_path(t.graph().src(e));
  a.edges.push_back(e);
  return STriple::make(t, a, t.group().id(),
                       vertex_path(t.graph().rng(e)));
}

STriple striple_vg(const EPTuple& t, int v, GElem g) {
  int w = t.act_vertex(t.group().inv(g), v);
  return STriple::make(t, vertex_path(v), g, vertex_path(w));
}

namespace {

std::pair<STriple, Scalar> mul_case_right(const EPTuple& t, const STriple& x,
                                          const STriple& y,
                                          const Path& gamma1) {
  // gamma = beta . gamma1: (alpha g(gamma1), phi(g, gamma1) h, theta)
  const Graph& G = t.graph();
  EPTuple::Pushed p = t.push_path(x.g, gamma1);
  STriple r = STriple::make(t, path_concat(G, x.alpha, p.image),
                            t.group().mul(p.residual, y.g), y.beta);
  return {r, p.twist};
}

std::pair<STriple, Scalar> mul_case_left(const EPTuple& t, const STriple& x,
                                         const STriple& y, const Path& beta1) {
  // beta = gamma . beta1: (alpha, g phi(h, h^-1(beta1)), theta h^-1(beta1))
  const Graph& G = t.graph();
  Path b1 = t.act_path(t.group().inv(y.g), beta1);
  EPTuple::Pushed p = t.push_path(y.g, b1);
  check_internal(p.image == beta1, "inverse action round trip failed");
  STriple r = STriple::make(t, x.alpha, t.group().mul(x.g, p.residual),
                            path_concat(G, y.beta, b1));
  return {r, p.twist};
}

}  // namespace

std::pair<STriple, Scalar> mul_omega(const EPTuple& t, const STriple& x,
                                     const STriple& y) {
  Scalar zero = Scalar::zero(t.field());
  if (x.zero || y.zero) return {STriple::zero_elem(), zero};
  const Graph& G = t.graph();
  auto gamma1 = path_cut_prefix(G, x.beta, y.alpha);
  auto beta1 = path_cut_prefix(G, y.alpha, x.beta);
  if (gamma1 && beta1) {
    // beta == gamma: both branches must agree and carry trivial twist
    auto r1 = mul_case_right(t, x, y, *gamma1);
    auto r2 = mul_case_left(t, x, y, *beta1);
    check_internal(r1.first == r2.first && r1.second == r2.second &&
                       r1.second.is_one(),
                   "matched-tail branches disagree");
    return r1;
  }
  if (gamma1) return mul_case_right(t, x, y, *gamma1);
  if (beta1) return mul_case_left(t, x, y, *beta1);
  return {STriple::zero_elem(), zero};
}

STriple mul(const EPTuple& t, const STriple& x, const STriple& y) {
  return mul_omega(t, x, y).first;
}

STriple star(const EPTuple& t, const STriple& x) {
  if (x.zero) return x;
  return STriple::make(t, x.beta, t.group().inv(x.g), x.alpha);
}

Scalar omega(const EPTuple& t, const STriple& x, const STriple& y) {
  return mul_omega(t, x, y).second;
}

std::string striple_str(const EPTuple& t, const STriple& x) {
  if (x.zero) return "0";
  const Graph& G = t.graph();
  return "(" + path_str(G, x.alpha) + ", " + t.group().str(x.g) + ", " +
         path_str(G, x.beta) + ")";
}

}  // namespace ep
