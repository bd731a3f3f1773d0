#include "ep/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "ep/errors.hpp"
#include "ep/semigroup.hpp"

namespace ep {
namespace {

std::string str_field(const Json& j, const std::string& key,
                      const std::string& where) {
  if (!j.at(key).is_string())
    throw schema_error(where + ": \"" + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

std::vector<std::string> str_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw schema_error(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string())
      throw schema_error(where + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

long int_field(const Json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw schema_error(where + " must be an integer");
  return j.get<long>();
}

// name -> name object into a total table over the given name list
std::vector<int> total_map(const Json& j, const std::vector<std::string>& names,
                           const std::function<int(const std::string&)>& index,
                           const std::string& where) {
  if (!j.is_object()) throw schema_error(where + " must be an object");
  std::vector<int> out(names.size(), -1);
  for (const auto& [key, val] : j.items()) {
    if (!val.is_string())
      throw schema_error(where + ": values must be strings");
    int from;
    try {
      from = index(key);
    } catch (const schema_error&) {
      throw schema_error(where + ": unknown name \"" + key + "\"");
    }
    out[static_cast<size_t>(from)] = index(val.get<std::string>());
  }
  for (size_t i = 0; i < names.size(); ++i)
    if (out[i] < 0)
      throw schema_error(where + ": missing entry for \"" + names[i] + "\"");
  return out;
}

GroupModel parse_group(const Json& j) {
  if (!j.is_object()) throw schema_error("\"group\" must be an object");
  const std::string kind = str_field(j, "kind", "group");
  if (kind == "trivial") {
    require_keys(j, {"kind"}, {}, "group");
    return GroupModel::trivial();
  }
  if (kind == "Z") {
    require_keys(j, {"kind"}, {}, "group");
    return GroupModel::integers();
  }
  if (kind == "cyclic") {
    require_keys(j, {"kind", "order"}, {}, "group");
    return GroupModel::cyclic(int_field(j.at("order"), "group order"));
  }
  if (kind == "table") {
    require_keys(j, {"kind", "elements", "mul"}, {}, "group");
    const auto names = str_array(j.at("elements"), "group elements");
    if (!j.at("mul").is_array())
      throw schema_error("group mul must be an array of arrays");
    std::vector<std::vector<int>> mul;
    for (const auto& row : j.at("mul")) {
      const auto rnames = str_array(row, "group mul row");
      std::vector<int> r;
      for (const auto& nm : rnames) {
        const auto it = std::find(names.begin(), names.end(), nm);
        if (it == names.end())
          throw schema_error("group mul mentions unknown element \"" + nm + "\"");
        r.push_back(static_cast<int>(it - names.begin()));
      }
      mul.push_back(std::move(r));
    }
    return GroupModel::table(names, mul);
  }
  throw schema_error("group kind must be one of trivial, Z, cyclic, table");
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot read file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw schema_error(path + ": " + e.what());
  }
  return j;
}

void require_keys(const Json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional,
                  const std::string& where) {
  if (!j.is_object()) throw schema_error(where + " must be a JSON object");
  for (const auto& key : required)
    if (!j.contains(key))
      throw schema_error(where + ": missing key \"" + key + "\"");
  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (std::find(required.begin(), required.end(), key) == required.end() &&
        std::find(optional.begin(), optional.end(), key) == optional.end())
      throw schema_error(where + ": unknown key \"" + key + "\"");
  }
}

Graph parse_graph_json(const Json& j) {
  require_keys(j, {"vertices", "edges"}, {}, "graph");
  const auto vertices = str_array(j.at("vertices"), "\"vertices\"");
  if (!j.at("edges").is_array())
    throw schema_error("\"edges\" must be an array");
  std::vector<Graph::EdgeDecl> edges;
  for (const auto& e : j.at("edges")) {
    require_keys(e, {"id", "src", "rng"}, {}, "edge");
    edges.push_back({str_field(e, "id", "edge"), str_field(e, "src", "edge"),
                     str_field(e, "rng", "edge")});
  }
  return Graph::make(vertices, edges);
}

EPTuple parse_tuple_json(const Json& j, FieldSpec f) {
  require_keys(j, {"vertices", "edges", "group"},
               {"action", "phi", "c"}, "tuple");
  Json graph_part = {{"vertices", j.at("vertices")}, {"edges", j.at("edges")}};
  Graph graph = parse_graph_json(graph_part);
  GroupModel group = parse_group(j.at("group"));

  std::vector<std::string> gens;
  for (int s = 0; s < group.n_gen_slots(); ++s)
    gens.push_back(group.str(group.slot_elem(s)));

  const auto section_of = [&](const char* key) -> const Json& {
    static const Json empty = Json::object();
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_object())
      throw schema_error(std::string("\"") + key + "\" must be an object");
    return j.at(key);
  };
  const Json& action = section_of("action");
  const Json& phi_j = section_of("phi");
  const Json& c_j = section_of("c");
  for (const Json* part : {&action, &phi_j, &c_j})
    for (const auto& [key, val] : part->items()) {
      (void)val;
      if (std::find(gens.begin(), gens.end(), key) == gens.end())
        throw schema_error("unknown generator \"" + key + "\" in tuple tables");
    }

  std::vector<std::string> vnames, enames;
  for (int v = 0; v < graph.n_vertices(); ++v) vnames.push_back(graph.vname(v));
  for (int e = 0; e < graph.n_edges(); ++e) enames.push_back(graph.ename(e));

  const int slots = group.n_gen_slots();
  std::vector<std::vector<int>> act_v(static_cast<size_t>(slots)),
      act_e(static_cast<size_t>(slots));
  std::vector<std::vector<GElem>> phi(static_cast<size_t>(slots));
  std::vector<std::vector<Scalar>> c(static_cast<size_t>(slots));
  for (int s = 0; s < slots; ++s) {
    const std::string& gen = gens[static_cast<size_t>(s)];
    if (!action.contains(gen))
      throw schema_error("\"action\" is missing generator \"" + gen + "\"");
    require_keys(action.at(gen), {"vertices", "edges"}, {},
                 "action of " + gen);
    act_v[static_cast<size_t>(s)] =
        total_map(action.at(gen).at("vertices"), vnames,
                  [&](const std::string& n) { return graph.vindex(n); },
                  "action of " + gen + " on vertices");
    act_e[static_cast<size_t>(s)] =
        total_map(action.at(gen).at("edges"), enames,
                  [&](const std::string& n) { return graph.eindex(n); },
                  "action of " + gen + " on edges");

    if (!phi_j.contains(gen))
      throw schema_error("\"phi\" is missing generator \"" + gen + "\"");
    if (!phi_j.at(gen).is_object())
      throw schema_error("phi of " + gen + " must be an object");
    if (!c_j.contains(gen))
      throw schema_error("\"c\" is missing generator \"" + gen + "\"");
    if (!c_j.at(gen).is_object())
      throw schema_error("c of " + gen + " must be an object");
    phi[static_cast<size_t>(s)].assign(static_cast<size_t>(graph.n_edges()),
                                       GElem{});
    c[static_cast<size_t>(s)].assign(static_cast<size_t>(graph.n_edges()),
                                     Scalar::one(f));
    std::vector<bool> phi_seen(static_cast<size_t>(graph.n_edges()), false),
        c_seen(phi_seen);
    for (const auto& [key, val] : phi_j.at(gen).items()) {
      if (!val.is_string())
        throw schema_error("phi values must be group element strings");
      const int e = graph.eindex(key);
      phi[static_cast<size_t>(s)][static_cast<size_t>(e)] =
          group.parse(val.get<std::string>());
      phi_seen[static_cast<size_t>(e)] = true;
    }
    for (const auto& [key, val] : c_j.at(gen).items()) {
      if (!val.is_string())
        throw schema_error("c values must be field element strings");
      const int e = graph.eindex(key);
      c[static_cast<size_t>(s)][static_cast<size_t>(e)] =
          Scalar::from_string(val.get<std::string>(), f);
      c_seen[static_cast<size_t>(e)] = true;
    }
    for (int e = 0; e < graph.n_edges(); ++e) {
      if (!phi_seen[static_cast<size_t>(e)])
        throw schema_error("phi of " + gen + " is missing edge \"" +
                           graph.ename(e) + "\"");
      if (!c_seen[static_cast<size_t>(e)])
        throw schema_error("c of " + gen + " is missing edge \"" +
                           graph.ename(e) + "\"");
    }
  }
  return EPTuple::make(std::move(graph), std::move(group), f, std::move(act_v),
                       std::move(act_e), std::move(phi), std::move(c));
}

KatsuraTriple parse_katsura_json(const Json& j, FieldSpec f) {
  require_keys(j, {"A", "B"}, {"C", "vertices", "row_vertices"}, "triple");
  const auto read_long_mat = [&](const Json& m, const std::string& name) {
    if (!m.is_array()) throw schema_error(name + " must be a matrix");
    std::vector<std::vector<long>> out;
    for (const auto& row : m) {
      if (!row.is_array()) throw schema_error(name + " must be a matrix");
      std::vector<long> r;
      for (const auto& x : row) r.push_back(int_field(x, name + " entry"));
      out.push_back(std::move(r));
    }
    return out;
  };
  auto A = read_long_mat(j.at("A"), "A");
  auto B = read_long_mat(j.at("B"), "B");
  if (A.empty() || A[0].empty()) throw schema_error("A must be nonempty");
  const int r = static_cast<int>(A.size()), n = static_cast<int>(A[0].size());

  std::vector<std::vector<Scalar>> C;
  if (j.contains("C")) {
    if (!j.at("C").is_array()) throw schema_error("C must be a matrix");
    for (const auto& row : j.at("C")) {
      const auto names = str_array(row, "C row");
      std::vector<Scalar> cr;
      for (const auto& s : names) cr.push_back(Scalar::from_string(s, f));
      C.push_back(std::move(cr));
    }
  } else {
    C.assign(static_cast<size_t>(r),
             std::vector<Scalar>(static_cast<size_t>(n), Scalar::one(f)));
  }

  std::vector<std::string> vertices;
  if (j.contains("vertices")) {
    vertices = str_array(j.at("vertices"), "\"vertices\"");
  } else {
    for (int i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  }
  std::vector<std::string> row_vertices;
  if (j.contains("row_vertices")) {
    row_vertices = str_array(j.at("row_vertices"), "\"row_vertices\"");
  } else {
    if (r > static_cast<int>(vertices.size()))
      throw schema_error("A has more rows than vertices");
    row_vertices.assign(vertices.begin(), vertices.begin() + r);
  }
  return make_katsura(std::move(vertices), std::move(row_vertices),
                      std::move(A), std::move(B), std::move(C), f);
}

AlgElem parse_element_json(const Json& j, const EPTuple& t) {
  if (!j.is_array())
    throw schema_error("an element must be an array of terms");
  const Graph& g = t.graph();
  AlgElem x = alg_zero(t);
  for (const auto& term : j) {
    require_keys(term, {}, {"alpha", "beta", "g", "coeff", "v"}, "term");
    const auto build_path = [&](const std::string& key) {
      Path p;
      if (!term.contains(key)) return p;
      for (const auto& name : str_array(term.at(key), key)) {
        const int e = g.eindex(name);
        if (!p.edges.empty() && g.rng(p.edges.back()) != g.src(e))
          throw schema_error(key + ": edges do not compose");
        if (p.edges.empty()) p.base = g.src(e);
        p.edges.push_back(e);
      }
      return p;
    };
    Path alpha = build_path("alpha");
    Path beta = build_path("beta");
    const GElem ge =
        term.contains("g")
            ? t.group().parse(str_field(term, "g", "term"))
            : t.group().id();
    const Scalar coeff =
        term.contains("coeff")
            ? Scalar::from_string(str_field(term, "coeff", "term"), t.field())
            : Scalar::one(t.field());
    if (term.contains("v")) {
      const int v = g.vindex(str_field(term, "v", "term"));
      if (alpha.edges.empty())
        alpha.base = v;
      else if (path_src(g, alpha) != v)
        throw schema_error("term: \"v\" contradicts the source of alpha");
    }
    if (alpha.base < 0 && alpha.edges.empty()) {
      // derive the base of alpha from beta: r(alpha) = g(r(beta))
      if (beta.edges.empty())
        throw schema_error(
            "term: \"v\" is required when alpha and beta are both empty");
      alpha.base = t.act_vertex(ge, path_rng(g, beta));
    }
    if (beta.edges.empty())
      beta.base = t.act_vertex(t.group().inv(ge), path_rng(g, alpha));
    STriple s;
    try {
      s = STriple::make(t, alpha, ge, beta);
    } catch (const domain_error& e) {
      throw schema_error(std::string("term: ") + e.what());
    }
    x.add_striple(t, s, coeff);
  }
  return x;
}

std::vector<int> parse_section_json(const Json& j, const Graph& g) {
  if (!j.is_object())
    throw schema_error("a section must be an object vertex -> edge");
  std::vector<int> section(static_cast<size_t>(g.n_vertices()), -1);
  for (const auto& [key, val] : j.items()) {
    if (!val.is_string())
      throw schema_error("section values must be edge ids");
    section[static_cast<size_t>(g.vindex(key))] =
        g.eindex(val.get<std::string>());
  }
  return section;
}

ZMat parse_zmat_json(const Json& j, const std::string& name) {
  if (!j.is_array()) throw schema_error(name + " must be a matrix");
  ZMat m;
  size_t cols = 0;
  for (const auto& row : j) {
    if (!row.is_array()) throw schema_error(name + " must be a matrix");
    std::vector<mpz_class> r;
    for (const auto& x : row) {
      // large entries travel as decimal strings
      if (x.is_string()) {
        try {
          r.emplace_back(x.get<std::string>());
        } catch (const std::invalid_argument&) {
          throw schema_error(name + " entries must be integers");
        }
      } else {
        r.emplace_back(int_field(x, name));
      }
    }
    if (!m.empty() && r.size() != cols)
      throw schema_error(name + " rows must have equal length");
    cols = r.size();
    m.push_back(std::move(r));
  }
  if (m.empty()) throw schema_error(name + " must be nonempty");
  return m;
}

ExpMat parse_unit_matrix_json(const Json& j, const UnitsModel& u,
                              const std::string& name) {
  if (!j.is_array()) throw schema_error(name + " must be a matrix");
  ExpMat m;
  size_t cols = 0;
  for (const auto& row : j) {
    const auto names = str_array(row, name + " row");
    std::vector<ExpVec> r;
    for (const auto& s : names)
      r.push_back(u.encode(Scalar::from_string(s, u.field())));
    if (!m.empty() && r.size() != cols)
      throw schema_error(name + " rows must have equal length");
    cols = r.size();
    m.push_back(std::move(r));
  }
  if (m.empty()) throw schema_error(name + " must be nonempty");
  return m;
}

Json element_to_json(const EPTuple& t, const AlgElem& x) {
  const Graph& g = t.graph();
  Json out = Json::array();
  for (const auto& [key, coeff] : x.terms()) {
    Json term;
    term["v"] = g.vname(path_src(g, key.alpha));
    Json alpha = Json::array(), beta = Json::array();
    for (int e : key.alpha.edges) alpha.push_back(g.ename(e));
    for (int e : key.beta.edges) beta.push_back(g.ename(e));
    term["alpha"] = std::move(alpha);
    term["g"] = t.group().str(key.g);
    term["beta"] = std::move(beta);
    term["coeff"] = coeff.str();
    out.push_back(std::move(term));
  }
  return out;
}

Json tuple_to_json(const EPTuple& t) {
  const Graph& g = t.graph();
  const GroupModel& grp = t.group();
  Json j;
  Json verts = Json::array(), edges = Json::array();
  for (int v = 0; v < g.n_vertices(); ++v) verts.push_back(g.vname(v));
  for (int e = 0; e < g.n_edges(); ++e)
    edges.push_back({{"id", g.ename(e)},
                     {"src", g.vname(g.src(e))},
                     {"rng", g.vname(g.rng(e))}});
  j["vertices"] = std::move(verts);
  j["edges"] = std::move(edges);

  Json group;
  switch (grp.kind()) {
    case GroupKind::Trivial:
      group["kind"] = "trivial";
      break;
    case GroupKind::Z:
      group["kind"] = "Z";
      break;
    case GroupKind::Cyclic:
      group["kind"] = "cyclic";
      group["order"] = grp.order();
      break;
    case GroupKind::Table: {
      group["kind"] = "table";
      Json names = Json::array(), mul = Json::array();
      for (const auto& n : grp.table_names()) names.push_back(n);
      for (const auto& a : grp.elements()) {
        Json row = Json::array();
        for (const auto& b : grp.elements()) row.push_back(grp.str(grp.mul(a, b)));
        mul.push_back(std::move(row));
      }
      group["elements"] = std::move(names);
      group["mul"] = std::move(mul);
      break;
    }
  }
  j["group"] = std::move(group);

  if (grp.n_gen_slots() > 0) {
    Json action = Json::object(), phi = Json::object(), c = Json::object();
    for (int s = 0; s < grp.n_gen_slots(); ++s) {
      const GElem ge = grp.slot_elem(s);
      const std::string gen = grp.str(ge);
      Json vmap = Json::object(), emap = Json::object(), pmap = Json::object(),
           cmap = Json::object();
      for (int v = 0; v < g.n_vertices(); ++v)
        vmap[g.vname(v)] = g.vname(t.act_v_slot(s, v));
      for (int e = 0; e < g.n_edges(); ++e) {
        emap[g.ename(e)] = g.ename(t.act_e_slot(s, e));
        pmap[g.ename(e)] = grp.str(t.phi_edge(ge, e));
        cmap[g.ename(e)] = t.c_edge(ge, e).str();
      }
      action[gen] = {{"vertices", std::move(vmap)}, {"edges", std::move(emap)}};
      phi[gen] = std::move(pmap);
      c[gen] = std::move(cmap);
    }
    j["action"] = std::move(action);
    j["phi"] = std::move(phi);
    j["c"] = std::move(c);
  }
  return j;
}

Json zmat_to_json(const ZMat& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) {
      if (x.fits_slong_p())
        r.push_back(x.get_si());
      else
        r.push_back(x.get_str());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ep
