#include <random>
#include <vector>

#include "doctest.h"
#include "ep/errors.hpp"
#include "ep/katsura.hpp"
#include "ep/tuple.hpp"
#include "helpers.hpp"

using namespace ep;
using namespace ep::testing;

namespace {

GElem tpow(const EPTuple& t, long n) {
  return t.group().pow(t.group().gen_t(), n);
}

}  // namespace

TEST_CASE("trivial tuple acts trivially") {
  const EPTuple t = two_loop_trivial();
  const GElem one = t.group().id();
  CHECK(t.act_vertex(one, 0) == 0);
  CHECK(t.act_edge(one, 1) == 1);
  CHECK(t.group().is_id(t.phi_edge(one, 0)));
  CHECK(t.c_edge(one, 0).is_one());
  CHECK(validate(t).valid);
}

TEST_CASE("one step data of the two loop system") {
  // A = (2), B = (1): t swaps the loops, phi(t, e0) = 1, phi(t, e1) = t,
  // c(t, e0) = -1
  const EPTuple t = build_tuple(kat({{2}}, {{1}}));
  const GElem tt = t.group().gen_t();
  const int e0 = t.graph().eindex("e(v0,v0,0)");
  const int e1 = t.graph().eindex("e(v0,v0,1)");
  CHECK(t.act_edge(tt, e0) == e1);
  CHECK(t.act_edge(tt, e1) == e0);
  CHECK(t.group().is_id(t.phi_edge(tt, e0)));
  CHECK(t.phi_edge(tt, e1) == tt);
  CHECK(t.c_edge(tt, e0) == Scalar::from_long(-1, Q()));
  CHECK(t.c_edge(tt, e1).is_one());
  CHECK(validate(t).valid);

  // B = (3) shifts the exponents: psi(1,0) = 1, psi(1,1) = 2
  const EPTuple t3 = build_tuple(kat({{2}}, {{3}}));
  CHECK(t3.phi_edge(tt, e0) == tt);
  CHECK(t3.phi_edge(tt, e1) == tpow(t3, 2));
  CHECK(t3.c_edge(tt, e0) == Scalar::from_long(-1, Q()));
  CHECK(validate(t3).valid);
}

TEST_CASE("path push collects image, residual and twist") {
  const EPTuple t = build_tuple(kat({{2}}, {{1}}));
  const GElem tt = t.group().gen_t();
  const int e0 = t.graph().eindex("e(v0,v0,0)");
  const int e1 = t.graph().eindex("e(v0,v0,1)");

  const Path e0e0{0, {e0, e0}};
  const auto p = t.push_path(tt, e0e0);
  // t(e0 e0) = t(e0) phi(t,e0)(e0) = e1 e0, residual phi(1, e0) = 1,
  // twist c(t, e0) c(1, e0) = -1
  CHECK(p.image == Path{0, {e1, e0}});
  CHECK(t.group().is_id(p.residual));
  CHECK(p.twist == Scalar::from_long(-1, Q()));

  // vertex paths: phi(g, v) = g, c(g, v) = 1
  const auto pv = t.push_path(tpow(t, 5), vertex_path(0));
  CHECK(pv.image == vertex_path(0));
  CHECK(pv.residual == tpow(t, 5));
  CHECK(pv.twist.is_one());

  // inversion: phi(t^-1, e0) = phi(t, t^-1(e0))^-1 and
  // c(t^-1, e0) = c(t, t^-1(e0))^-1
  CHECK(t.phi_edge(tpow(t, -1), e0) == tpow(t, -1));
  CHECK(t.c_edge(tpow(t, -1), e0).is_one());
  CHECK(t.c_edge(tpow(t, -1), e1) == Scalar::from_long(-1, Q()));
}

TEST_CASE("cocycle laws on random words") {
  const EPTuple t = build_tuple(kat({{2, 1}, {1, 1}}, {{1, 0}, {0, 1}}));
  const Graph& g = t.graph();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> ex(-4, 4);
  const auto paths = paths_up_to(g, 3);
  std::uniform_int_distribution<size_t> pick(0, paths.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const GElem a = tpow(t, ex(rng)), b = tpow(t, ex(rng));
    const Path& p = paths[pick(rng)];
    const GElem ab = t.group().mul(a, b);
    const auto pb = t.push_path(b, p);
    const auto pa = t.push_path(a, pb.image);
    const auto pab = t.push_path(ab, p);
    CHECK(pab.image == pa.image);
    CHECK(pab.residual ==
          t.group().mul(t.phi_path(a, pb.image), t.phi_path(b, p)));
    CHECK(pab.twist == pa.twist * pb.twist);
  }
}

TEST_CASE("validation flags a broken action") {
  // swapping a loop with a non-loop cannot preserve sources
  Graph g = Graph::make({"u", "w"}, {{"e", "u", "w"}, {"f", "u", "u"}});
  GroupModel z2 = GroupModel::table({"1", "s"}, {{0, 1}, {1, 0}});
  const GElem id{0, 0};
  const FieldSpec f = Q();
  const std::vector<Scalar> ones = {Scalar::one(f), Scalar::one(f)};
  const EPTuple t = EPTuple::make(
      std::move(g), std::move(z2), f, {{0, 1}, {0, 1}}, {{0, 1}, {1, 0}},
      {{id, id}, {id, id}}, {ones, ones});
  const ValidationReport rep = validate(t);
  CHECK_FALSE(rep.valid);
  bool morphism_flagged = false;
  for (const auto& c : rep.checks)
    if (c.name == "action-graph-morphism" && !c.ok) morphism_flagged = true;
  CHECK(morphism_flagged);
}

TEST_CASE("table tuple validates") {
  const EPTuple t = swap_table_tuple();
  CHECK(validate(t).valid);
  const GElem s{0, 1};
  CHECK(t.act_edge(s, 0) == 1);
  CHECK(t.c_edge(s, 0) == Scalar::from_long(2, Q()));
  // s has order two, so phi(s^2, e) = phi(s, s(e)) phi(s, e) = s s = 1 and
  // c(s^2, e) = c(s, s(e)) c(s, e) = 2 * 1/2 = 1
  const GElem s2 = t.group().mul(s, s);
  CHECK(t.group().is_id(s2));
}

TEST_CASE("nabla verdicts") {
  // single loop with B = 0: every group element maps to (e, 1)
  const EPTuple t10 = build_tuple(kat({{1}}, {{0}}));
  const NablaReport r10 = nabla(t10, 0);
  CHECK(r10.verdict == NablaVerdict::NonInjective);
  CHECK(r10.image_singleton_trivial);

  // A = (2), B = (1): orbit period 2 and phi(t^2, e0) = t, so injective
  const EPTuple t21 = build_tuple(kat({{2}}, {{1}}));
  const NablaReport r21 = nabla(t21, 0);
  CHECK(r21.verdict == NablaVerdict::Injective);
  CHECK(r21.period == 2);
  CHECK(r21.d == 1);
  CHECK_FALSE(r21.image_singleton_trivial);

  // A = (2), B = (4): fixed edges with phi exponent step 2
  const EPTuple t24 = build_tuple(kat({{2}}, {{4}}));
  const NablaReport r24 = nabla(t24, 0);
  CHECK(r24.verdict == NablaVerdict::Injective);
  CHECK(r24.period == 1);
  CHECK(r24.d == 2);
}

TEST_CASE("nabla preimages solve the congruence") {
  const EPTuple t = build_tuple(kat({{2}}, {{1}}));
  const int e0 = 0, e1 = 1;
  // nabla_{e0}(t^3) = (e1, t^2)
  const auto g = nabla_preimage(t, e0, e1, tpow(t, 2));
  REQUIRE(g.has_value());
  CHECK(*g == tpow(t, 3));
  CHECK(t.act_edge(t.group().inv(*g), e0) == e1);
  CHECK(t.phi_edge(*g, e1) == tpow(t, 2));

  // step two lattice: only even exponents appear over the fixed edge
  const EPTuple t24 = build_tuple(kat({{2}}, {{4}}));
  CHECK(nabla_preimage(t24, 0, 0, tpow(t24, 2)).has_value());
  CHECK_FALSE(nabla_preimage(t24, 0, 0, tpow(t24, 3)).has_value());
  CHECK_FALSE(nabla_preimage(t24, 0, 1, tpow(t24, 2)).has_value());
}

TEST_CASE("stratification of regular vertices") {
  // all nabla images trivial
  const Stratification s10 = stratify_regular(build_tuple(kat({{1}}, {{0}})));
  CHECK(s10.reg0 == std::vector<int>{0});
  CHECK(s10.reg1.empty());
  CHECK(s10.covers);
  CHECK_FALSE(s10.pseudo_free);

  // all nabla maps injective
  const Stratification s21 = stratify_regular(build_tuple(kat({{2}}, {{1}})));
  CHECK(s21.reg0.empty());
  CHECK(s21.reg1 == std::vector<int>{0});
  CHECK(s21.covers);
  CHECK(s21.pseudo_free);
  CHECK(s21.partially_pseudo_free);

  // mixed out-edges: the trivial-image loop disqualifies reg0, the injective
  // pair to v1 still gives reg1
  const EPTuple tm = build_tuple(kat({{1, 2}}, {{0, 1}}));
  const Stratification sm = stratify_regular(tm);
  CHECK(sm.reg0.empty());
  CHECK(sm.reg1 == std::vector<int>{0});
  CHECK(sm.covers);

  const EPTuple tt = two_loop_trivial();
  const Stratification st = stratify_regular(tt);
  // with a trivial group every edge has trivial singleton image and nabla is
  // injective, so reg0 wins on the overlap
  CHECK(st.reg0 == std::vector<int>{0});
  CHECK(st.covers);
}

TEST_CASE("sections") {
  const EPTuple tm = build_tuple(kat({{1, 2}}, {{0, 1}}));
  const auto s = default_section(tm);
  CHECK(s[0] == tm.graph().eindex("e(v0,v1,0)"));
  check_section(tm, s);

  // the loop has trivial nabla image, not an injective one
  std::vector<int> bad = s;
  bad[0] = tm.graph().eindex("e(v0,v0,0)");
  CHECK_THROWS_AS(check_section(tm, bad), domain_error);

  // sections must pick an out-edge of the vertex
  const EPTuple t2 = build_tuple(kat({{2, 1}, {1, 1}}, {{1, 0}, {0, 1}}));
  std::vector<int> wrong = default_section(t2);
  wrong[0] = t2.graph().eindex("e(v1,v0,0)");
  CHECK_THROWS_AS(check_section(t2, wrong), domain_error);
}
