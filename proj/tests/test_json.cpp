#include <string>

#include "doctest.h"
#include "ep/errors.hpp"
#include "ep/json_io.hpp"
#include "helpers.hpp"

using namespace ep;
using namespace ep::testing;

namespace {

const char* Z_TUPLE = R"({
  "vertices": ["v0"],
  "edges": [
    {"id": "e0", "src": "v0", "rng": "v0"},
    {"id": "e1", "src": "v0", "rng": "v0"}
  ],
  "group": {"kind": "Z"},
  "action": {"t": {"vertices": {"v0": "v0"}, "edges": {"e0": "e1", "e1": "e0"}}},
  "phi": {"t": {"e0": "1", "e1": "t"}},
  "c": {"t": {"e0": "-1", "e1": "1"}}
})";

}  // namespace

TEST_CASE("graph json") {
  const Json j = Json::parse(R"({
    "vertices": ["u", "w"],
    "edges": [{"id": "e", "src": "u", "rng": "w"}]
  })");
  const Graph g = parse_graph_json(j);
  CHECK(g.n_vertices() == 2);
  CHECK(g.src(0) == g.vindex("u"));

  CHECK_THROWS_AS(parse_graph_json(Json::parse(R"({"vertices": []})")),
                  schema_error);
  CHECK_THROWS_AS(parse_graph_json(Json::parse(
                      R"({"vertices": ["u"], "edges": [], "extra": 1})")),
                  schema_error);
}

TEST_CASE("tuple json round trip") {
  const EPTuple t = parse_tuple_json(Json::parse(Z_TUPLE), Q());
  CHECK(t.group().kind() == GroupKind::Z);
  const GElem tt = t.group().gen_t();
  CHECK(t.act_edge(tt, 0) == 1);
  CHECK(t.phi_edge(tt, 1) == tt);
  CHECK(t.c_edge(tt, 0) == Scalar::from_long(-1, Q()));
  CHECK(validate(t).valid);

  const Json out = tuple_to_json(t);
  CHECK(out == Json::parse(Z_TUPLE));
  const EPTuple t2 = parse_tuple_json(out, Q());
  CHECK(tuple_to_json(t2) == out);
}

TEST_CASE("table tuple round trip") {
  const EPTuple t = swap_table_tuple();
  const Json j = tuple_to_json(t);
  CHECK(j.at("group").at("kind") == "table");
  const EPTuple t2 = parse_tuple_json(j, Q());
  CHECK(tuple_to_json(t2) == j);
  const GElem s{0, 1};
  CHECK(t2.c_edge(s, 0) == Scalar::from_long(2, Q()));
}

TEST_CASE("trivial and cyclic groups in tuples") {
  const Json j = Json::parse(R"({
    "vertices": ["v"],
    "edges": [{"id": "e", "src": "v", "rng": "v"}],
    "group": {"kind": "trivial"}
  })");
  const EPTuple t = parse_tuple_json(j, Q());
  CHECK(t.group().n_gen_slots() == 0);
  CHECK(tuple_to_json(t) == j);

  // order one degrades to the trivial group
  const Json j1 = Json::parse(R"({
    "vertices": ["v"],
    "edges": [{"id": "e", "src": "v", "rng": "v"}],
    "group": {"kind": "cyclic", "order": 1}
  })");
  CHECK(parse_tuple_json(j1, Q()).group().n_gen_slots() == 0);

  Json j4 = Json::parse(Z_TUPLE);
  j4["group"] = {{"kind", "cyclic"}, {"order", 4}};
  j4["phi"]["t"]["e1"] = "t^3";
  const EPTuple t4 = parse_tuple_json(j4, Q());
  CHECK(t4.group().order() == 4);
  CHECK(tuple_to_json(t4) == j4);
}

TEST_CASE("tuple json rejections") {
  const FieldSpec q = Q();
  Json base = Json::parse(Z_TUPLE);

  Json extra = base;
  extra["bogus"] = 1;
  CHECK_THROWS_WITH_AS(parse_tuple_json(extra, q).field(),
                       doctest::Contains("bogus"), schema_error);

  Json nophi = base;
  nophi.erase("phi");
  CHECK_THROWS_AS(parse_tuple_json(nophi, q).field(), schema_error);

  Json miss = base;
  miss["phi"]["t"].erase("e1");
  CHECK_THROWS_WITH_AS(parse_tuple_json(miss, q).field(),
                       doctest::Contains("e1"), schema_error);

  Json badgen = base;
  badgen["phi"]["s"] = Json::object();
  CHECK_THROWS_AS(parse_tuple_json(badgen, q).field(), schema_error);

  Json badedge = base;
  badedge["action"]["t"]["edges"]["e9"] = "e0";
  CHECK_THROWS_AS(parse_tuple_json(badedge, q).field(), schema_error);
}

TEST_CASE("element json") {
  const EPTuple t = parse_tuple_json(Json::parse(Z_TUPLE), Q());

  const AlgElem x = parse_element_json(Json::parse(R"([
    {"alpha": ["e0", "e1"], "beta": ["e1"], "g": "t^2", "coeff": "-2/3"},
    {"v": "v0"}
  ])"),
                                       t);
  CHECK(x.size() == 2);
  const Json j = element_to_json(t, x);
  CHECK(parse_element_json(j, t) == x);

  // defaulted keys are written back out explicitly
  CHECK(j[0].at("g") == "1");
  CHECK(j[0].at("coeff") == "1");
  CHECK(j[0].at("v") == "v0");
}

TEST_CASE("element json rejections") {
  const EPTuple t = parse_tuple_json(Json::parse(Z_TUPLE), Q());
  // a bare group element with no paths needs its vertex
  CHECK_THROWS_WITH_AS(parse_element_json(Json::parse(R"([{"g": "t"}])"), t),
                       doctest::Contains("\"v\""), schema_error);
  // v must agree with the source of alpha when both are given
  CHECK_THROWS_AS(parse_element_json(
                      Json::parse(R"([{"alpha": ["e0"], "v": "v9"}])"), t),
                  schema_error);
  CHECK_THROWS_AS(
      parse_element_json(Json::parse(R"([{"alpha": ["e0"], "bogus": 1}])"), t),
      schema_error);
  CHECK_THROWS_AS(parse_element_json(Json::parse(R"({"alpha": []})"), t),
                  schema_error);
}

TEST_CASE("non composing paths are schema errors") {
  const Json j = Json::parse(R"({
    "vertices": ["u", "w"],
    "edges": [{"id": "e", "src": "u", "rng": "w"}],
    "group": {"kind": "trivial"}
  })");
  const EPTuple t = parse_tuple_json(j, Q());
  CHECK_THROWS_WITH_AS(
      parse_element_json(Json::parse(R"([{"alpha": ["e", "e"]}])"), t),
      doctest::Contains("compose"), schema_error);
}

TEST_CASE("katsura json defaults") {
  const KatsuraTriple k =
      parse_katsura_json(Json::parse(R"({"A": [[2]], "B": [[1]]})"), Q());
  CHECK(k.vertices == std::vector<std::string>{"v0"});
  CHECK(k.row_vertices == std::vector<std::string>{"v0"});
  CHECK(k.C[0][0].is_one());

  const KatsuraTriple r = parse_katsura_json(Json::parse(R"({
    "A": [[1, 1]], "B": [[1, 0]],
    "vertices": ["a", "b"], "row_vertices": ["a"]
  })"),
                                             Q());
  CHECK(r.cols() == 2);
  CHECK(r.rows() == 1);
  CHECK(r.vertices[1] == "b");

  // C entries parse as field elements
  const KatsuraTriple c = parse_katsura_json(
      Json::parse(R"({"A": [[2]], "B": [[1]], "C": [["3"]]})"), F(7));
  CHECK(c.C[0][0] == Scalar::from_long(3, F(7)));

  CHECK_THROWS_AS(
      parse_katsura_json(Json::parse(R"({"A": [[2]]})"), Q()), schema_error);
  CHECK_THROWS_AS(parse_katsura_json(
                      Json::parse(R"({"A": [[2]], "B": [[1]], "x": 0})"), Q()),
                  schema_error);
}

TEST_CASE("matrix json accepts big entries as strings") {
  const ZMat m = parse_zmat_json(
      Json::parse(R"([[1, "123456789012345678901234567890"], [0, -2]])"),
      "M");
  CHECK(m[0][1] == mpz_class("123456789012345678901234567890"));
  const Json j = zmat_to_json(m);
  CHECK(j[0][1].is_string());
  CHECK(j[1][1] == -2);
  CHECK(zmat_eq(parse_zmat_json(j, "M"), m));

  CHECK_THROWS_AS(parse_zmat_json(Json::parse(R"([[1], [1, 2]])"), "M"),
                  schema_error);
  CHECK_THROWS_AS(parse_zmat_json(Json::parse(R"([])"), "M"), schema_error);
  CHECK_THROWS_AS(parse_zmat_json(Json::parse(R"([["ab"]])"), "M"),
                  schema_error);
}

TEST_CASE("section json") {
  const EPTuple t = parse_tuple_json(Json::parse(Z_TUPLE), Q());
  const auto s =
      parse_section_json(Json::parse(R"({"v0": "e1"})"), t.graph());
  CHECK(s[0] == 1);
  CHECK_THROWS_AS(
      parse_section_json(Json::parse(R"({"v9": "e1"})"), t.graph()),
      schema_error);
}

TEST_CASE("unit matrix json") {
  const UnitsModel u = UnitsModel::for_field(Q(), {2});
  const ExpMat p = parse_unit_matrix_json(
      Json::parse(R"([["-4", "1"]])"), u, "P");
  CHECK(p[0][0] == ExpVec{1, 2});  // -4 = (-1)^1 2^2
  CHECK(p[0][1] == ExpVec{0, 0});
  CHECK_THROWS_AS(
      parse_unit_matrix_json(Json::parse(R"([["3"]])"), u, "P"),
      encoding_error);
}
