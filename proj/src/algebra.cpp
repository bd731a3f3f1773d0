#include "ep/algebra.hpp"

#include <optional>

#include "ep/errors.hpp"

namespace ep {

void AlgElem::add_term(const TripleKey& k, const Scalar& coeff) {
  check_internal(coeff.field() == field_, "coefficient field mismatch");
  if (coeff.is_zero()) return;
  auto [it, fresh] = terms_.emplace(k, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void AlgElem::add_striple(const EPTuple& t, const STriple& s,
                          const Scalar& coeff) {
  (void)t;
  if (s.zero) return;
  add_term(TripleKey{s.alpha, s.g, s.beta}, coeff);
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
  check_internal(field_ == o.field_, "element field mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o) {
  check_internal(field_ == o.field_, "element field mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
  AlgElem r = *this;
  r += o;
  return r;
}

AlgElem AlgElem::operator-(const AlgElem& o) const {
  AlgElem r = *this;
  r -= o;
  return r;
}

AlgElem AlgElem::operator-() const {
  AlgElem r(field_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

AlgElem AlgElem::scaled(const Scalar& s) const {
  AlgElem r(field_);
  if (s.is_zero()) return r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
  return r;
}

AlgElem alg_zero(const EPTuple& t) { return AlgElem(t.field()); }

AlgElem alg_from(const EPTuple& t, const STriple& s, const Scalar& coeff) {
  AlgElem r(t.field());
  r.add_striple(t, s, coeff);
  return r;
}

AlgElem alg_from(const EPTuple& t, const STriple& s) {
  return alg_from(t, s, Scalar::one(t.field()));
}

AlgElem alg_mul(const EPTuple& t, const AlgElem& x, const AlgElem& y) {
  check_internal(x.field() == t.field() && y.field() == t.field(),
                 "element field mismatch");
  AlgElem r(t.field());
  for (const auto& [kx, cx] : x.terms()) {
    STriple sx;
    sx.zero = false;
    sx.alpha = kx.alpha;
    sx.g = kx.g;
    sx.beta = kx.beta;
    for (const auto& [ky, cy] : y.terms()) {
      STriple sy;
      sy.zero = false;
      sy.alpha = ky.alpha;
      sy.g = ky.g;
      sy.beta = ky.beta;
      auto [prod, w] = mul_omega(t, sx, sy);
      if (prod.zero) continue;
      r.add_striple(t, prod, cx * cy * w);
    }
  }
  return r;
}

AlgElem alg_pow(const EPTuple& t, const AlgElem& x, long n,
                const AlgElem& unit) {
  check_internal(n >= 0, "alg_pow wants n >= 0");
  AlgElem r = unit;
  for (long i = 0; i < n; ++i) r = alg_mul(t, r, x);
  return r;
}

std::string alg_str(const EPTuple& t, const AlgElem& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : x.terms()) {
    STriple st;
    st.zero = false;
    st.alpha = k.alpha;
    st.g = k.g;
    st.beta = k.beta;
    if (!s.empty()) s += " + ";
    s += c.str() + "*" + striple_str(t, st);
  }
  return s;
}

AlgElem kernel_gen(const EPTuple& t, const Path& alpha, const GElem& g,
                   const Path& beta_tilde) {
  const Graph& G = t.graph();
  const GroupModel& grp = t.group();
  const int v = path_rng(G, alpha);
  if (!G.is_regular(v))
    throw domain_error("kernel generator needs a regular vertex, got " +
                       G.vname(v));
  if (path_rng(G, beta_tilde) != t.act_vertex(grp.inv(g), v))
    throw domain_error("kernel generator needs r(beta) = g^-1(r(alpha))");
  AlgElem r(t.field());
  r.add_term(TripleKey{alpha, g, beta_tilde}, Scalar::one(t.field()));
  GElem gi = grp.inv(g);
  for (int e : G.out_edges(v)) {
    int ei = t.act_edge(gi, e);
    auto [h, u] = t.phic_edge(g, ei);
    r.add_term(TripleKey{path_append(G, alpha, e), h,
                         path_append(G, beta_tilde, ei)},
               -u);
  }
  return r;
}

AlgElem q_elem(const EPTuple& t, int v, const GElem& g) {
  int w = t.act_vertex(t.group().inv(g), v);
  return kernel_gen(t, vertex_path(v), g, vertex_path(w));
}

// --- normal form ---

namespace {

struct NFContext {
  const EPTuple& t;
  const std::vector<int>& section;
  std::vector<char> reg0, reg1;  // post-overlap assignment per vertex

  NFContext(const EPTuple& tt, const std::vector<int>& sec)
      : t(tt), section(sec) {
    check_section(tt, sec);
    Stratification st = stratify_regular(tt);
    if (!st.covers)
      throw domain_error(
          "normal form needs every regular vertex in reg0 or reg1");
    reg0.assign(tt.graph().n_vertices(), 0);
    reg1.assign(tt.graph().n_vertices(), 0);
    for (int v : st.reg0) reg0[v] = 1;
    for (int v : st.reg1) reg1[v] = 1;
  }
};

struct R2Match {
  TripleKey key;
  Scalar coeff;
  GElem g;  // the exhibited preimage
  int v;    // section vertex
};

std::optional<GElem> match_r2(const NFContext& ctx, const TripleKey& k) {
  const Graph& G = ctx.t.graph();
  const GroupModel& grp = ctx.t.group();
  if (k.alpha.edges.empty()) return std::nullopt;
  const int ev = k.alpha.edges.back();
  const int v = G.src(ev);
  if (ctx.section[v] != ev) return std::nullopt;
  if (ctx.reg0[v]) {
    if (!grp.is_id(k.g)) return std::nullopt;
    if (k.beta.edges.empty() || k.beta.edges.back() != ev)
      return std::nullopt;
    return grp.id();
  }
  if (ctx.reg1[v]) {
    if (k.beta.edges.empty()) return std::nullopt;
    const int f = k.beta.edges.back();
    return nabla_preimage(ctx.t, ev, f, k.g);
  }
  return std::nullopt;
}

// T = (alpha e_v, phi(g, g^-1(e_v)), beta g^-1(e_v)) rewrites to
// c(g^-1, e_v) [ (alpha, g, beta)
//   - sum_{s(e)=v, e != e_v} c(g, g^-1(e)) (alpha e, phi(g, g^-1(e)), beta g^-1(e)) ].
AlgElem apply_r2(const NFContext& ctx, const TripleKey& k, const Scalar& coeff,
                 const GElem& g) {
  const EPTuple& t = ctx.t;
  const Graph& G = t.graph();
  const GroupModel& grp = t.group();
  const int ev = k.alpha.edges.back();
  const int v = G.src(ev);
  Path alpha = path_drop_last(G, k.alpha);
  Path beta = path_drop_last(G, k.beta);
  check_internal(path_rng(G, alpha) == v, "r2 prefix range mismatch");
  check_internal(
      path_rng(G, beta) == t.act_vertex(grp.inv(g), v),
      "r2 beta prefix range mismatch");
  AlgElem delta(t.field());
  delta.add_term(k, -coeff);
  Scalar u0 = coeff * t.c_edge(grp.inv(g), ev);
  delta.add_term(TripleKey{alpha, g, beta}, u0);
  GElem gi = grp.inv(g);
  for (int e : G.out_edges(v)) {
    if (e == ev) continue;
    int ei = t.act_edge(gi, e);
    auto [h, u] = t.phic_edge(g, ei);
    delta.add_term(TripleKey{path_append(G, alpha, e), h,
                             path_append(G, beta, ei)},
                   -(u0 * u));
  }
  return delta;
}

// (alpha, g, beta) with r(alpha) in reg0 and g != 1 rewrites to
// sum_{s(e)=v} c(g, e) (alpha e, 1, beta e); on reg0 vertices g fixes every
// out-edge with trivial phi, and the vertex action is globally trivial.
AlgElem apply_r1(const NFContext& ctx, const TripleKey& k,
                 const Scalar& coeff) {
  const EPTuple& t = ctx.t;
  const Graph& G = t.graph();
  const GroupModel& grp = t.group();
  const int v = path_rng(G, k.alpha);
  check_internal(path_rng(G, k.beta) == v, "r1 beta range mismatch");
  AlgElem delta(t.field());
  delta.add_term(k, -coeff);
  for (int e : G.out_edges(v)) {
    check_internal(t.act_edge(grp.inv(k.g), e) == e &&
                       grp.is_id(t.phi_edge(k.g, e)),
                   "reg0 vertex with a moved out-edge");
    delta.add_term(TripleKey{path_append(G, k.alpha, e), grp.id(),
                             path_append(G, k.beta, e)},
                   coeff * t.c_edge(k.g, e));
  }
  return delta;
}

}  // namespace

NFResult nf_L(const EPTuple& t, const AlgElem& x,
              const std::vector<int>& section, const NFOptions& opts) {
  check_internal(x.field() == t.field(), "element field mismatch");
  NFContext ctx(t, section);
  const Graph& G = t.graph();
  AlgElem cur = x;
  long steps = 0;
  for (;;) {
    std::optional<R2Match> r2;
    const TripleKey* r1key = nullptr;
    Scalar r1coeff = Scalar::zero(t.field());
    // deepest terms first
    for (auto it = cur.terms().rbegin(); it != cur.terms().rend(); ++it) {
      if (auto g = match_r2(ctx, it->first)) {
        r2 = R2Match{it->first, it->second, *g,
                     G.src(it->first.alpha.edges.back())};
        break;
      }
      if (!r1key && ctx.reg0[path_rng(G, it->first.alpha)] &&
          !t.group().is_id(it->first.g)) {
        r1key = &it->first;
        r1coeff = it->second;
      }
    }
    AlgElem delta(t.field());
    if (r2)
      delta = apply_r2(ctx, r2->key, r2->coeff, r2->g);
    else if (r1key)
      delta = apply_r1(ctx, *r1key, r1coeff);
    else
      break;
    cur += delta;
    if (++steps > opts.max_steps)
      throw divergence_error("normal form did not settle within " +
                             std::to_string(opts.max_steps) + " steps");
  }
  return NFResult(std::move(cur), steps);
}

bool equal_in_L(const EPTuple& t, const AlgElem& x, const AlgElem& y,
                const std::vector<int>& section, const NFOptions& opts) {
  return nf_L(t, x - y, section, opts).value.is_zero();
}

std::vector<KernelCoord> to_kernel_basis(const EPTuple& t, const AlgElem& x,
                                         const std::vector<int>& section,
                                         const NFOptions& opts) {
  const Graph& G = t.graph();
  if (!nf_L(t, x, section, opts).value.is_zero())
    throw domain_error("element is not in the kernel ideal");
  std::map<TripleKey, Scalar, TripleKeyLess> coords;
  AlgElem y = x;
  long iters = 0;
  while (!y.is_zero()) {
    // the shallowest term is the short term of a unique kernel generator
    const auto& [k, coeff] = *y.terms().begin();
    const int v = path_rng(G, k.alpha);
    if (!G.is_regular(v))
      throw domain_error("element is not in the kernel ideal");
    auto [it, fresh] = coords.emplace(k, coeff);
    check_internal(fresh, "kernel peel revisited a generator");
    y -= kernel_gen(t, k.alpha, k.g, k.beta).scaled(coeff);
    if (++iters > opts.max_steps)
      throw divergence_error("kernel peel did not settle within " +
                             std::to_string(opts.max_steps) + " steps");
  }
  // round trip
  AlgElem back(t.field());
  std::vector<KernelCoord> out;
  for (const auto& [k, coeff] : coords) {
    back += kernel_gen(t, k.alpha, k.g, k.beta).scaled(coeff);
    out.push_back({k.alpha, path_rng(G, k.alpha), k.g, k.beta, coeff});
  }
  check_internal(back == x, "kernel coordinates do not reassemble the input");
  return out;
}

}  // namespace ep
