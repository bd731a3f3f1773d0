#include "ep/tuple.hpp"

#include <map>
#include <random>

#include "ep/errors.hpp"

namespace ep {

namespace {

int wrap_pos(int j, const mpz_class& k, int P) {
  mpz_class r = (j + k) % P;
  long x = r.get_si();
  if (x < 0) x += P;
  return static_cast<int>(x);
}

bool is_permutation(const std::vector<int>& f, int n) {
  if (static_cast<int>(f.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : f) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

EPTuple EPTuple::make(Graph graph, GroupModel group, FieldSpec field,
                      std::vector<std::vector<int>> act_v,
                      std::vector<std::vector<int>> act_e,
                      std::vector<std::vector<GElem>> phi,
                      std::vector<std::vector<Scalar>> c) {
  EPTuple t;
  t.graph_ = std::move(graph);
  t.group_ = std::move(group);
  t.field_ = field;
  t.act_v_ = std::move(act_v);
  t.act_e_ = std::move(act_e);
  t.phi_ = std::move(phi);
  t.c_ = std::move(c);

  const size_t slots = static_cast<size_t>(t.group_.n_gen_slots());
  const size_t nv = static_cast<size_t>(t.graph_.n_vertices());
  const size_t ne = static_cast<size_t>(t.graph_.n_edges());
  if (t.act_v_.size() != slots || t.act_e_.size() != slots ||
      t.phi_.size() != slots || t.c_.size() != slots)
    throw schema_error("action/phi/c tables must cover every group generator");
  for (size_t s = 0; s < slots; ++s) {
    if (t.act_v_[s].size() != nv)
      throw schema_error("vertex action table has wrong size");
    if (t.act_e_[s].size() != ne)
      throw schema_error("edge action table has wrong size");
    if (t.phi_[s].size() != ne) throw schema_error("phi table has wrong size");
    if (t.c_[s].size() != ne) throw schema_error("c table has wrong size");
    for (int x : t.act_v_[s])
      if (x < 0 || x >= static_cast<int>(nv))
        throw schema_error("vertex action value out of range");
    for (int x : t.act_e_[s])
      if (x < 0 || x >= static_cast<int>(ne))
        throw schema_error("edge action value out of range");
    for (const Scalar& u : t.c_[s])
      if (u.field() != field)
        throw schema_error("twist value in wrong field");
  }
  if (t.group_.kind() == GroupKind::Z || t.group_.kind() == GroupKind::Cyclic)
    t.build_cycles();
  return t;
}

void EPTuple::build_cycles() {
  has_cycles_ = false;
  const int nv = graph_.n_vertices();
  const int ne = graph_.n_edges();
  if (!is_permutation(act_v_[0], nv) || !is_permutation(act_e_[0], ne)) return;

  cyc_.v_orbit_id.assign(nv, -1);
  cyc_.v_orbit_pos.assign(nv, -1);
  cyc_.v_orbits.clear();
  for (int v = 0; v < nv; ++v) {
    if (cyc_.v_orbit_id[v] >= 0) continue;
    std::vector<int> orbit;
    int x = v;
    do {
      cyc_.v_orbit_id[x] = static_cast<int>(cyc_.v_orbits.size());
      cyc_.v_orbit_pos[x] = static_cast<int>(orbit.size());
      orbit.push_back(x);
      x = act_v_[0][x];
    } while (x != v);
    cyc_.v_orbits.push_back(std::move(orbit));
  }

  cyc_.e_orbit_id.assign(ne, -1);
  cyc_.e_orbit_pos.assign(ne, -1);
  cyc_.e_orbits.clear();
  cyc_.phiexp.clear();
  cyc_.phipref.clear();
  cyc_.ctw.clear();
  cyc_.cprod.clear();
  for (int e = 0; e < ne; ++e) {
    if (cyc_.e_orbit_id[e] >= 0) continue;
    std::vector<int> orbit;
    int x = e;
    do {
      cyc_.e_orbit_id[x] = static_cast<int>(cyc_.e_orbits.size());
      cyc_.e_orbit_pos[x] = static_cast<int>(orbit.size());
      orbit.push_back(x);
      x = act_e_[0][x];
    } while (x != e);
    std::vector<mpz_class> pe, pref;
    std::vector<Scalar> cs;
    Scalar prod = Scalar::one(field_);
    pref.push_back(0);
    for (int y : orbit) {
      mpz_class ex = group_.kind() == GroupKind::Z ? phi_[0][y].z
                                                   : mpz_class(phi_[0][y].i);
      pe.push_back(ex);
      pref.push_back(pref.back() + ex);
      cs.push_back(c_[0][y]);
      prod = prod * c_[0][y];
    }
    cyc_.e_orbits.push_back(std::move(orbit));
    cyc_.phiexp.push_back(std::move(pe));
    cyc_.phipref.push_back(std::move(pref));
    cyc_.ctw.push_back(std::move(cs));
    cyc_.cprod.push_back(prod);
  }
  has_cycles_ = true;
}

mpz_class EPTuple::gelem_exp(const GElem& g) const {
  return group_.kind() == GroupKind::Z ? g.z : mpz_class(g.i);
}

int EPTuple::act_vertex(const GElem& g, int v) const {
  switch (group_.kind()) {
    case GroupKind::Trivial:
      return v;
    case GroupKind::Table:
      return act_v_[g.i][v];
    default: {
      if (!has_cycles_) throw domain_error("generator action is not bijective");
      const auto& orbit = cyc_.v_orbits[cyc_.v_orbit_id[v]];
      return orbit[wrap_pos(cyc_.v_orbit_pos[v], gelem_exp(g),
                            static_cast<int>(orbit.size()))];
    }
  }
}

int EPTuple::act_edge(const GElem& g, int e) const {
  switch (group_.kind()) {
    case GroupKind::Trivial:
      return e;
    case GroupKind::Table:
      return act_e_[g.i][e];
    default: {
      if (!has_cycles_) throw domain_error("generator action is not bijective");
      const auto& orbit = cyc_.e_orbits[cyc_.e_orbit_id[e]];
      return orbit[wrap_pos(cyc_.e_orbit_pos[e], gelem_exp(g),
                            static_cast<int>(orbit.size()))];
    }
  }
}

// phi(t^k, e) exponent for k >= 0 via orbit prefix sums; negative k by
// inversion: phi(t^-n, e) = phi(t^n, t^-n(e))^{-1}.
mpz_class EPTuple::phi_exp_pow(const mpz_class& k, int e) const {
  if (!has_cycles_) throw domain_error("generator action is not bijective");
  const int oid = cyc_.e_orbit_id[e];
  const auto& orbit = cyc_.e_orbits[oid];
  const int P = static_cast<int>(orbit.size());
  const int j = cyc_.e_orbit_pos[e];
  if (k >= 0) {
    mpz_class full = k / P;
    long rem = mpz_class(k % P).get_si();
    const auto& pref = cyc_.phipref[oid];
    mpz_class partial;
    if (j + rem <= P)
      partial = pref[j + rem] - pref[j];
    else
      partial = (pref[P] - pref[j]) + pref[j + rem - P];
    return full * pref[P] + partial;
  }
  int ee = orbit[wrap_pos(j, k, P)];
  return -phi_exp_pow(-k, ee);
}

Scalar EPTuple::c_pow(const mpz_class& k, int e) const {
  if (!has_cycles_) throw domain_error("generator action is not bijective");
  const int oid = cyc_.e_orbit_id[e];
  const auto& orbit = cyc_.e_orbits[oid];
  const int P = static_cast<int>(orbit.size());
  const int j = cyc_.e_orbit_pos[e];
  if (k >= 0) {
    mpz_class full = k / P;
    long rem = mpz_class(k % P).get_si();
    Scalar out = cyc_.cprod[oid].pow(full);
    for (long i = 0; i < rem; ++i)
      out = out * cyc_.ctw[oid][(j + i) % P];
    return out;
  }
  int ee = orbit[wrap_pos(j, k, P)];
  return c_pow(-k, ee).inv();
}

GElem EPTuple::phi_edge(const GElem& g, int e) const {
  switch (group_.kind()) {
    case GroupKind::Trivial:
      return g;  // the identity
    case GroupKind::Table:
      return phi_[g.i][e];
    case GroupKind::Z: {
      GElem r;
      r.z = phi_exp_pow(g.z, e);
      return r;
    }
    case GroupKind::Cyclic: {
      mpz_class ex = phi_exp_pow(mpz_class(g.i), e) % group_.order();
      long x = ex.get_si();
      if (x < 0) x += group_.order();
      GElem r;
      r.i = static_cast<int>(x);
      return r;
    }
  }
  return GElem{};
}

Scalar EPTuple::c_edge(const GElem& g, int e) const {
  switch (group_.kind()) {
    case GroupKind::Trivial:
      return Scalar::one(field_);
    case GroupKind::Table:
      return c_[g.i][e];
    default:
      return c_pow(gelem_exp(g), e);
  }
}

std::pair<GElem, Scalar> EPTuple::phic_edge(const GElem& g, int e) const {
  return {phi_edge(g, e), c_edge(g, e)};
}

EPTuple::Pushed EPTuple::push_path(const GElem& g, const Path& a) const {
  Pushed out;
  out.image.base = act_vertex(g, a.base);
  out.residual = g;
  out.twist = Scalar::one(field_);
  for (int e : a.edges) {
    out.image.edges.push_back(act_edge(out.residual, e));
    out.twist = out.twist * c_edge(out.residual, e);
    out.residual = phi_edge(out.residual, e);
  }
  return out;
}

Path EPTuple::act_path(const GElem& g, const Path& a) const {
  return push_path(g, a).image;
}

GElem EPTuple::phi_path(const GElem& g, const Path& a) const {
  return push_path(g, a).residual;
}

Scalar EPTuple::c_path(const GElem& g, const Path& a) const {
  return push_path(g, a).twist;
}

// --- validation ---

namespace {

void add_check(ValidationReport& rep, const std::string& name, bool ok,
               const std::string& witness) {
  rep.checks.push_back({name, ok, ok ? "" : witness});
  rep.valid = rep.valid && ok;
}

}  // namespace

ValidationReport validate(const EPTuple& t, int word_len, unsigned long seed) {
  ValidationReport rep;
  const Graph& G = t.graph();
  const GroupModel& grp = t.group();
  const int slots = grp.n_gen_slots();

  // bijectivity of each generator's action
  {
    bool ok = true;
    std::string w;
    for (int s = 0; s < slots && ok; ++s) {
      std::vector<int> fv(G.n_vertices()), fe(G.n_edges());
      for (int v = 0; v < G.n_vertices(); ++v) fv[v] = t.act_v_slot(s, v);
      for (int e = 0; e < G.n_edges(); ++e) fe[e] = t.act_e_slot(s, e);
      if (!is_permutation(fv, G.n_vertices())) {
        ok = false;
        w = "vertex action of " + grp.str(grp.slot_elem(s)) +
            " is not a bijection";
      } else if (!is_permutation(fe, G.n_edges())) {
        ok = false;
        w = "edge action of " + grp.str(grp.slot_elem(s)) +
            " is not a bijection";
      }
    }
    add_check(rep, "action-bijective", ok, w);
    if (!ok) return rep;  // everything below needs well-defined actions
  }

  // equivariance: s(g e) = g s(e), r(g e) = g r(e) per generator
  {
    bool ok = true;
    std::string w;
    for (int s = 0; s < slots && ok; ++s)
      for (int e = 0; e < G.n_edges() && ok; ++e) {
        int ge = t.act_e_slot(s, e);
        if (G.src(ge) != t.act_v_slot(s, G.src(e)) ||
            G.rng(ge) != t.act_v_slot(s, G.rng(e))) {
          ok = false;
          w = "edge " + G.ename(e) + " under " + grp.str(grp.slot_elem(s)) +
              " breaks src/rng equivariance";
        }
      }
    add_check(rep, "action-graph-morphism", ok, w);
    if (!ok) return rep;
  }

  // twist values must be units
  {
    bool ok = true;
    std::string w;
    for (int s = 0; s < slots && ok; ++s)
      for (int e = 0; e < G.n_edges() && ok; ++e)
        if (t.c_edge(grp.slot_elem(s), e).is_zero()) {
          ok = false;
          w = "c(" + grp.str(grp.slot_elem(s)) + ", " + G.ename(e) + ") = 0";
        }
    add_check(rep, "c-units", ok, w);
    if (!ok) return rep;
  }

  if (grp.kind() == GroupKind::Table) {
    // identity slot must act as identity
    {
      bool ok = true;
      std::string w;
      GElem one = grp.id();
      for (int v = 0; v < G.n_vertices() && ok; ++v)
        if (t.act_vertex(one, v) != v) {
          ok = false;
          w = "identity moves vertex " + G.vname(v);
        }
      for (int e = 0; e < G.n_edges() && ok; ++e) {
        if (t.act_edge(one, e) != e) {
          ok = false;
          w = "identity moves edge " + G.ename(e);
        } else if (!grp.is_id(t.phi_edge(one, e))) {
          ok = false;
          w = "phi(1, " + G.ename(e) + ") != 1";
        } else if (!t.c_edge(one, e).is_one()) {
          ok = false;
          w = "c(1, " + G.ename(e) + ") != 1";
        }
      }
      add_check(rep, "identity-slot", ok, w);
    }
    // action is a homomorphism, phi and c satisfy the cocycle law (all pairs)
    {
      bool ok_act = true, ok_phi = true, ok_c = true;
      std::string wa, wp, wc;
      auto elems = grp.elements();
      for (const GElem& a : elems)
        for (const GElem& b : elems) {
          GElem ab = grp.mul(a, b);
          for (int v = 0; v < G.n_vertices(); ++v)
            if (ok_act && t.act_vertex(ab, v) != t.act_vertex(a, t.act_vertex(b, v))) {
              ok_act = false;
              wa = "vertex action fails at g=" + grp.str(a) + ", h=" +
                   grp.str(b) + ", v=" + G.vname(v);
            }
          for (int e = 0; e < G.n_edges(); ++e) {
            int be = t.act_edge(b, e);
            if (ok_act && t.act_edge(ab, e) != t.act_edge(a, be)) {
              ok_act = false;
              wa = "edge action fails at g=" + grp.str(a) + ", h=" +
                   grp.str(b) + ", e=" + G.ename(e);
            }
            if (ok_phi &&
                !(t.phi_edge(ab, e) ==
                  grp.mul(t.phi_edge(a, be), t.phi_edge(b, e)))) {
              ok_phi = false;
              wp = "phi(gh,e) != phi(g,h(e)) phi(h,e) at g=" + grp.str(a) +
                   ", h=" + grp.str(b) + ", e=" + G.ename(e);
            }
            if (ok_c && !(t.c_edge(ab, e) ==
                          t.c_edge(a, be) * t.c_edge(b, e))) {
              ok_c = false;
              wc = "c(gh,e) != c(g,h(e)) c(h,e) at g=" + grp.str(a) + ", h=" +
                   grp.str(b) + ", e=" + G.ename(e);
            }
          }
        }
      add_check(rep, "action-homomorphism", ok_act, wa);
      add_check(rep, "phi-cocycle", ok_phi, wp);
      add_check(rep, "c-cocycle", ok_c, wc);
    }
  }

  if (grp.kind() == GroupKind::Cyclic) {
    // t^m must act trivially, with phi(t^m, .) = 1 and c(t^m, .) = 1
    bool ok = true;
    std::string w;
    const long m = grp.order();
    for (int v = 0; v < G.n_vertices() && ok; ++v) {
      int x = v;
      for (long i = 0; i < m; ++i) x = t.act_v_slot(0, x);
      if (x != v) {
        ok = false;
        w = "t^" + std::to_string(m) + " moves vertex " + G.vname(v);
      }
    }
    for (int e = 0; e < G.n_edges() && ok; ++e) {
      int x = e;
      GElem acc = grp.id();
      Scalar ctw = Scalar::one(t.field());
      for (long i = 0; i < m; ++i) {
        // fold phi(t, t^i(e)) and c(t, t^i(e)) left to right
        ctw = ctw * t.c_edge(grp.gen_t(), x);
        acc = grp.mul(t.phi_edge(grp.gen_t(), x), acc);
        x = t.act_e_slot(0, x);
      }
      if (x != e) {
        ok = false;
        w = "t^" + std::to_string(m) + " moves edge " + G.ename(e);
      } else if (!grp.is_id(acc)) {
        ok = false;
        w = "phi(t^" + std::to_string(m) + ", " + G.ename(e) + ") != 1";
      } else if (!ctw.is_one()) {
        ok = false;
        w = "c(t^" + std::to_string(m) + ", " + G.ename(e) + ") != 1";
      }
    }
    add_check(rep, "order-closure", ok, w);
    if (!ok) return rep;
  }

  // EP condition phi(g, e)(v) = g(v); exhaustive over generators, plus
  // random words for the cyclic kinds.
  {
    bool ok = true;
    std::string w;
    std::vector<GElem> probes;
    if (grp.kind() == GroupKind::Table) {
      probes = grp.elements();
    } else if (grp.kind() == GroupKind::Z || grp.kind() == GroupKind::Cyclic) {
      probes.push_back(grp.gen_t());
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<long> dist(-1000000, 1000000);
      for (int i = 0; i < word_len; ++i)
        probes.push_back(grp.pow(grp.gen_t(), dist(rng)));
    }
    for (const GElem& g : probes) {
      for (int e = 0; e < G.n_edges() && ok; ++e) {
        GElem f = t.phi_edge(g, e);
        for (int v = 0; v < G.n_vertices() && ok; ++v)
          if (t.act_vertex(f, v) != t.act_vertex(g, v)) {
            ok = false;
            w = "phi(" + grp.str(g) + ", " + G.ename(e) +
                ") acts differently from " + grp.str(g) + " on vertex " +
                G.vname(v);
          }
      }
      if (!ok) break;
    }
    add_check(rep, "ep-condition", ok, w);
  }

  return rep;
}

// --- nabla ---

NablaReport nabla(const EPTuple& t, int e, long sample_k) {
  NablaReport rep;
  const GroupModel& grp = t.group();
  std::map<std::pair<int, GElem>, long> image;
  auto singleton_ok = [&](int f, const GElem& h) {
    return f == e && grp.is_id(h);
  };

  if (grp.finite()) {
    bool inj = true, single = true;
    for (const GElem& g : grp.elements()) {
      int f = t.act_edge(grp.inv(g), e);
      GElem h = t.phi_edge(g, f);
      long& m = image[{f, h}];
      ++m;
      if (m > 1) inj = false;
      if (!singleton_ok(f, h)) single = false;
    }
    rep.verdict = inj ? NablaVerdict::Injective : NablaVerdict::NonInjective;
    rep.image_singleton_trivial = single;
  } else {
    // Z: the orbit of e under t is a cycle of some period P, and
    // phi(t^(k+P), t^-(k+P)(e)) - phi(t^k, t^-k(e)) is the constant
    // d = phi(t^P, e); injectivity is equivalent to d != 0.
    GElem tp;
    tp.z = 1;
    int P = 1;
    {
      int x = t.act_edge(tp, e);
      while (x != e) {
        x = t.act_edge(tp, x);
        ++P;
      }
    }
    GElem gP = grp.pow(tp, P);
    rep.period = P;
    rep.d = t.phi_edge(gP, e).z;
    bool inj = rep.d != 0;
    rep.verdict = inj ? NablaVerdict::Injective : NablaVerdict::NonInjective;
    rep.image_singleton_trivial = (P == 1 && rep.d == 0);
    for (long k = -sample_k; k <= sample_k; ++k) {
      GElem g = grp.pow(tp, k);
      int f = t.act_edge(grp.inv(g), e);
      GElem h = t.phi_edge(g, f);
      ++image[{f, h}];
    }
  }
  for (const auto& [key, mult] : image)
    rep.sample.push_back({key.first, key.second, mult});
  return rep;
}

std::optional<GElem> nabla_preimage(const EPTuple& t, int e, int f,
                                    const GElem& h) {
  const GroupModel& grp = t.group();
  if (grp.finite()) {
    for (const GElem& g : grp.elements())
      if (t.act_edge(grp.inv(g), e) == f && t.phi_edge(g, f) == h) return g;
    return std::nullopt;
  }
  // Z: t^-k(e) = f forces k = r (mod P); on that residue class the phi
  // exponent is eta0 + n*d with d = phi(t^P, e).
  GElem tp;
  tp.z = 1;
  std::vector<int> orbit{e};
  for (int x = t.act_edge(tp, e); x != e; x = t.act_edge(tp, x))
    orbit.push_back(x);
  const int P = static_cast<int>(orbit.size());
  int jf = -1;
  for (int j = 0; j < P; ++j)
    if (orbit[j] == f) jf = j;
  if (jf < 0) return std::nullopt;
  // orbit[j] = t^j(e), so t^-k(e) = orbit[(-k) mod P]; k = -jf (mod P)
  long r = (P - jf) % P;
  mpz_class eta0 = t.phi_edge(grp.pow(tp, r), f).z;
  mpz_class d = t.phi_edge(grp.pow(tp, P), e).z;
  mpz_class m = h.z;
  if (d == 0) {
    if (m == eta0) {
      GElem g;
      g.z = r;
      return g;
    }
    return std::nullopt;
  }
  mpz_class num = m - eta0;
  if (num % d != 0) return std::nullopt;
  GElem g;
  g.z = r + P * (num / d);
  return g;
}

// --- stratification ---

namespace {

struct EdgeClasses {
  std::vector<char> injective, singleton;
};

EdgeClasses classify_edges(const EPTuple& t) {
  EdgeClasses c;
  const int ne = t.graph().n_edges();
  c.injective.assign(ne, 0);
  c.singleton.assign(ne, 0);
  for (int e = 0; e < ne; ++e) {
    NablaReport r = nabla(t, e, 1);
    c.injective[e] = r.verdict == NablaVerdict::Injective;
    c.singleton[e] = r.image_singleton_trivial;
  }
  return c;
}

}  // namespace

Stratification stratify_regular(const EPTuple& t) {
  Stratification st;
  EdgeClasses cls = classify_edges(t);
  const Graph& G = t.graph();
  bool all_inj = true;
  for (int e = 0; e < G.n_edges(); ++e) all_inj = all_inj && cls.injective[e];
  st.pseudo_free = all_inj;
  st.disjoint = true;
  st.covers = true;
  st.partially_pseudo_free = true;
  for (int v : G.regular_vertices()) {
    bool q0 = true, q1 = false;
    for (int e : G.out_edges(v)) {
      q0 = q0 && cls.singleton[e];
      q1 = q1 || cls.injective[e];
    }
    if (q0 && q1) st.disjoint = false;
    if (q0)
      st.reg0.push_back(v);
    else if (q1)
      st.reg1.push_back(v);
    else {
      st.other.push_back(v);
      st.covers = false;
    }
    st.partially_pseudo_free = st.partially_pseudo_free && q1;
  }
  return st;
}

std::vector<int> default_section(const EPTuple& t) {
  const Graph& G = t.graph();
  EdgeClasses cls = classify_edges(t);
  std::vector<int> sec(G.n_vertices(), -1);
  for (int v : G.regular_vertices()) {
    bool q0 = true;
    for (int e : G.out_edges(v)) q0 = q0 && cls.singleton[e];
    int pick = -1;
    if (q0) {
      pick = G.out_edges(v).front();
    } else {
      for (int e : G.out_edges(v))
        if (cls.injective[e]) {
          pick = e;
          break;
        }
      if (pick < 0) pick = G.out_edges(v).front();
    }
    sec[v] = pick;
  }
  return sec;
}

void check_section(const EPTuple& t, const std::vector<int>& section) {
  const Graph& G = t.graph();
  if (static_cast<int>(section.size()) != G.n_vertices())
    throw domain_error("section must assign a value to every vertex slot");
  EdgeClasses cls = classify_edges(t);
  for (int v = 0; v < G.n_vertices(); ++v) {
    if (!G.is_regular(v)) {
      if (section[v] != -1)
        throw domain_error("section defined at non-regular vertex " +
                           G.vname(v));
      continue;
    }
    int e = section[v];
    if (e < 0 || e >= G.n_edges() || G.src(e) != v)
      throw domain_error("section at " + G.vname(v) +
                         " is not an out-edge of the vertex");
    bool q0 = true;
    for (int f : G.out_edges(v)) q0 = q0 && cls.singleton[f];
    if (!q0 && !cls.injective[e])
      throw domain_error("section edge " + G.ename(e) +
                         " needs an injective nabla at vertex " + G.vname(v));
  }
}

}  // namespace ep
