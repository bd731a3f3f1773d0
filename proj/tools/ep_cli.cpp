// eptwist: batch CLI over the twisted graph-algebra library. Every command
// reads JSON files, prints one JSON report on stdout and exits with
//   0  success
//   1  mathematical failure (invalid tuple, non-KSPI, not in the kernel, ...)
//   2  schema or encoding error in the inputs
//   3  divergence or an undetermined verdict
//   4  internal invariant violation (a bug)
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ep/batch.hpp"
#include "ep/errors.hpp"
#include "ep/json_io.hpp"
#include "ep/ktheory.hpp"

namespace {

using namespace ep;

void emit(const Json& j, bool compact) {
  std::cout << (compact ? j.dump() : j.dump(2)) << "\n";
}

Json group_str_list(const std::vector<mpz_class>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

Json units_to_json(const UnitsModel& u) {
  Json j;
  j["field"] = u.field().str();
  j["generators"] = u.n_gens();
  j["torsion"] = group_str_list(u.torsion());
  if (!u.field().is_rational() && u.field().p != 2)
    j["primitive_root"] = u.primitive_root();
  if (u.field().is_rational()) {
    Json primes = Json::array();
    for (long p : u.primes()) primes.push_back(p);
    j["primes"] = std::move(primes);
  }
  return j;
}

Json section_to_json(const Graph& g, const std::vector<int>& section) {
  Json j = Json::object();
  for (int v = 0; v < g.n_vertices(); ++v)
    if (section[static_cast<size_t>(v)] >= 0)
      j[g.vname(v)] = g.ename(section[static_cast<size_t>(v)]);
  return j;
}

Json blockmap_to_json(const BlockMap& e) {
  Json j;
  j["half"] = e.half;
  j["unit_generators"] = e.k;
  j["A"] = zmat_to_json(e.a);
  j["B"] = zmat_to_json(e.b);
  Json cs = Json::array();
  for (const auto& row : e.cstar) {
    Json r = Json::array();
    for (const auto& xs : row) r.push_back(group_str_list(xs));
    cs.push_back(std::move(r));
  }
  j["Cstar"] = std::move(cs);
  return j;
}

// element files: either a bare term array or a previous report carrying an
// "element" key, so nf output can be fed back in directly
AlgElem load_element(const std::string& path, const EPTuple& t) {
  Json j = load_json_file(path);
  if (j.is_object() && j.contains("element")) j = j.at("element");
  return parse_element_json(j, t);
}

std::vector<int> load_section(const std::string& path, const EPTuple& t) {
  if (path.empty()) return default_section(t);
  const auto s = parse_section_json(load_json_file(path), t.graph());
  check_section(t, s);
  return s;
}

struct Options {
  bool compact = false;
  std::string field = "Q";
  std::string tuple_file, triple_file, section_file;
  std::vector<std::string> element_files;
  std::vector<long> units_primes;
  long cap_steps = 1000000;
  int cap_paths = 12;
  long cap_l = 0;
  long cap_states = 200000;
  unsigned long seed = 1;
  bool check = false;
  std::string u_file, v_file, y_file;
  bool search_y = false;
};

int cmd_validate(const Options& o) {
  const EPTuple t =
      parse_tuple_json(load_json_file(o.tuple_file), parse_field(o.field));
  const ValidationReport rep = validate(t, 4, o.seed);
  Json j;
  j["command"] = "validate";
  j["field"] = o.field;
  j["seed"] = o.seed;
  j["valid"] = rep.valid;
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back(
        {{"name", c.name}, {"ok", c.ok}, {"witness", c.witness}});
  j["checks"] = std::move(checks);
  emit(j, o.compact);
  return rep.valid ? 0 : 1;
}

int cmd_mul(const Options& o) {
  const EPTuple t =
      parse_tuple_json(load_json_file(o.tuple_file), parse_field(o.field));
  if (o.element_files.size() < 2)
    throw schema_error("mul needs at least two --element files");
  AlgElem x = load_element(o.element_files[0], t);
  for (size_t i = 1; i < o.element_files.size(); ++i)
    x = alg_mul(t, x, load_element(o.element_files[i], t));
  Json j;
  j["command"] = "mul";
  j["field"] = o.field;
  j["factors"] = o.element_files.size();
  j["element"] = element_to_json(t, x);
  emit(j, o.compact);
  return 0;
}

int cmd_nf(const Options& o) {
  const EPTuple t =
      parse_tuple_json(load_json_file(o.tuple_file), parse_field(o.field));
  const AlgElem x = load_element(o.element_files.at(0), t);
  const auto section = load_section(o.section_file, t);
  const NFResult r = nf_L(t, x, section, NFOptions{o.cap_steps});
  Json j;
  j["command"] = "nf";
  j["field"] = o.field;
  j["section"] = section_to_json(t.graph(), section);
  j["cap_steps"] = o.cap_steps;
  j["steps"] = r.steps;
  j["element"] = element_to_json(t, r.value);
  emit(j, o.compact);
  return 0;
}

int cmd_kbasis(const Options& o) {
  const EPTuple t =
      parse_tuple_json(load_json_file(o.tuple_file), parse_field(o.field));
  const AlgElem x = load_element(o.element_files.at(0), t);
  const auto section = load_section(o.section_file, t);
  const auto coords = to_kernel_basis(t, x, section, NFOptions{o.cap_steps});
  Json j;
  j["command"] = "kbasis";
  j["field"] = o.field;
  j["section"] = section_to_json(t.graph(), section);
  j["in_kernel"] = true;
  Json cs = Json::array();
  const Graph& g = t.graph();
  for (const auto& c : coords) {
    Json alpha = Json::array(), beta = Json::array();
    for (int e : c.alpha.edges) alpha.push_back(g.ename(e));
    for (int e : c.beta.edges) beta.push_back(g.ename(e));
    cs.push_back({{"alpha", std::move(alpha)},
                  {"v", g.vname(c.v)},
                  {"g", t.group().str(c.g)},
                  {"beta", std::move(beta)},
                  {"coeff", c.coeff.str()}});
  }
  j["coords"] = std::move(cs);
  emit(j, o.compact);
  return 0;
}

int cmd_katsura_build(const Options& o) {
  const KatsuraTriple k =
      parse_katsura_json(load_json_file(o.triple_file), parse_field(o.field));
  const EPTuple t = build_tuple(k);
  Json j;
  j["command"] = "katsura-build";
  j["field"] = o.field;
  j["rows"] = k.rows();
  j["vertices"] = k.cols();
  j["edges"] = t.graph().n_edges();
  j["tuple"] = tuple_to_json(t);
  int rc = 0;
  if (o.check) {
    const ValidationReport rep = validate(t, 4, o.seed);
    j["valid"] = rep.valid;
    Json checks = Json::array();
    for (const auto& c : rep.checks)
      checks.push_back(
          {{"name", c.name}, {"ok", c.ok}, {"witness", c.witness}});
    j["checks"] = std::move(checks);
    const Stratification s = stratify_regular(t);
    Json strat;
    Json reg0 = Json::array(), reg1 = Json::array();
    for (int v : s.reg0) reg0.push_back(t.graph().vname(v));
    for (int v : s.reg1) reg1.push_back(t.graph().vname(v));
    strat["reg0"] = std::move(reg0);
    strat["reg1"] = std::move(reg1);
    strat["covers"] = s.covers;
    strat["pseudo_free"] = s.pseudo_free;
    strat["partially_pseudo_free"] = s.partially_pseudo_free;
    j["stratification"] = std::move(strat);
    if (!rep.valid) rc = 1;
  }
  emit(j, o.compact);
  return rc;
}

int cmd_kspi(const Options& o) {
  const KatsuraTriple k =
      parse_katsura_json(load_json_file(o.triple_file), parse_field(o.field));
  const KspiReport rep = is_kspi(k);
  Json j;
  j["command"] = "kspi";
  j["kspi"] = rep.kspi;
  j["a0_implies_b0"] = rep.a0_implies_b0;
  j["reach_all_pairs_strict"] = rep.reach_all_pairs_strict;
  j["reach_all_pairs_lax"] = rep.reach_all_pairs_lax;
  j["two_first_return_loops"] = rep.two_first_return_loops;
  j["two_loop_edges"] = rep.two_loop_edges;
  j["diag_b_one"] = rep.diag_b_one;
  j["first_failure"] = rep.first_failure;
  emit(j, o.compact);
  return rep.kspi ? 0 : 1;
}

int cmd_hausdorff(const Options& o) {
  const KatsuraTriple k =
      parse_katsura_json(load_json_file(o.triple_file), parse_field(o.field));
  const HausdorffReport rep =
      hausdorff_condition(k, o.cap_paths, o.cap_l, o.cap_states);
  Json j;
  j["command"] = "hausdorff";
  j["verdict"] = rep.verdict == Hausdorff::Holds   ? "holds"
                 : rep.verdict == Hausdorff::Fails ? "fails"
                                                   : "undetermined";
  j["l_cap"] = rep.l_cap;
  j["path_len_cap"] = rep.path_len_cap;
  j["explored_fully"] = rep.explored_fully;
  Json fs = Json::array();
  for (const auto& f : rep.findings)
    fs.push_back({{"l", f.l},
                  {"at", k.vertices[static_cast<size_t>(f.at_v)]},
                  {"to", k.vertices[static_cast<size_t>(f.to_w)]},
                  {"count", f.count.get_str()}});
  j["findings"] = std::move(fs);
  if (rep.has_certificate) {
    Json cycle = Json::array();
    for (int v : rep.cert_cycle)
      cycle.push_back(k.vertices[static_cast<size_t>(v)]);
    j["certificate"] = {{"l", rep.cert_l}, {"cycle", std::move(cycle)}};
  }
  j["detail"] = rep.detail;
  emit(j, o.compact);
  return rep.verdict == Hausdorff::Holds   ? 0
         : rep.verdict == Hausdorff::Fails ? 1
                                           : 3;
}

int cmd_kreg(const Options& o) {
  const KatsuraTriple k =
      parse_katsura_json(load_json_file(o.triple_file), parse_field(o.field));
  const KregReport rep = kreg_conditions(k);
  Json j;
  j["command"] = "kreg";
  j["cond_i"] = rep.cond_i;
  j["cond_ii"] = rep.cond_ii;
  j["kregular"] = rep.kregular;
  Json pairs = Json::array();
  for (const auto& p : rep.pairs)
    pairs.push_back(
        {{"v", k.row_vertices[static_cast<size_t>(p.row)]},
         {"w", k.vertices[static_cast<size_t>(p.col)]},
         {"status", p.status == FlatStatus::FlatUnit    ? "flat-unit"
                    : p.status == FlatStatus::NotFlat   ? "not-flat"
                                                        : "flat-zero-row"}});
  j["pairs"] = std::move(pairs);
  emit(j, o.compact);
  return rep.kregular ? 0 : 1;
}

int cmd_ktheory(const Options& o) {
  const FieldSpec f = parse_field(o.field);
  const KatsuraTriple k =
      parse_katsura_json(load_json_file(o.triple_file), f);
  const UnitsModel u = UnitsModel::for_field(f, o.units_primes);
  const KHResult r = kh_groups(k, u);
  const BFResult bf = bf_modules(k, u);
  Json j;
  j["command"] = "ktheory";
  j["field"] = o.field;
  j["units"] = units_to_json(u);
  j["kh0"] = r.kh0.str();
  j["kh1"] = r.kh1.str();
  j["coker_phi1"] = r.coker_phi1.str();
  j["ker_rank"] = r.ker_ia_rank;
  j["witness"] = {{"snf_ia", group_str_list(r.witness.snf_ia)},
                  {"snf_phi1", group_str_list(r.witness.snf_phi1)},
                  {"ses", r.witness.ses}};
  j["bf"] = bf.bf.str();
  j["bf_checked"] = bf.bf_checked.str();
  emit(j, o.compact);
  return 0;
}

int cmd_stabilize(const Options& o) {
  const FieldSpec f = parse_field(o.field);
  const UnitsModel u = UnitsModel::for_field(f, o.units_primes);
  const Json in = load_json_file(o.triple_file);
  require_keys(in, {"M", "N"}, {"P"}, "stabilize input");
  const ZMat m = parse_zmat_json(in.at("M"), "M");
  const ZMat n = parse_zmat_json(in.at("N"), "N");
  const int sz = static_cast<int>(m.size());
  ExpMat p;
  if (in.contains("P")) {
    p = parse_unit_matrix_json(in.at("P"), u, "P");
  } else {
    p.assign(static_cast<size_t>(sz),
             std::vector<ExpVec>(
                 static_cast<size_t>(sz),
                 ExpVec(static_cast<size_t>(u.n_gens()), 0)));
  }
  const BlockMap e = stabilize(m, n, p, u.n_gens());

  Json j;
  j["command"] = "stabilize";
  j["field"] = o.field;
  j["units"] = units_to_json(u);
  j["E"] = blockmap_to_json(e);
  int rc = 0;

  const bool have_uv = !o.u_file.empty() || !o.v_file.empty();
  const bool have_y = !o.y_file.empty();
  if ((have_uv && (o.u_file.empty() || o.v_file.empty())))
    throw schema_error("--U and --V must be given together");
  if (have_uv && have_y)
    throw schema_error("--y replaces --U/--V; give one or the other");

  if (have_uv || have_y) {
    ZMat uu, vv;
    if (have_y) {
      const ZMat y = parse_zmat_json(load_json_file(o.y_file), "Y");
      uu = realization_u(sz);
      vv = realization_v(sz, y);
    } else {
      uu = parse_zmat_json(load_json_file(o.u_file), "U");
      vv = parse_zmat_json(load_json_file(o.v_file), "V");
    }
    const ConjugateReport rep = conjugate(e, uu, vv, u.torsion());
    Json c;
    c["structure_ok"] = rep.structure_ok;
    if (!rep.structure_ok) {
      c["detail"] = rep.structure_detail;
      rc = 1;
    } else {
      c["result"] = blockmap_to_json(rep.result);
      c["a_nonneg"] = rep.a_nonneg;
      c["cond_a0b0"] = rep.cond_a0b0;
      c["cond_a0c1"] = rep.cond_a0c1;
      c["kspi_form"] = rep.kspi_form;
      c["coker_invariant"] = rep.coker_invariant;
      c["coker_e"] = rep.coker_e.str();
      c["coker_w"] = rep.coker_w.str();
      c["ker_rank_e"] = rep.ker_rank_e;
      c["ker_rank_w"] = rep.ker_rank_w;
      if (!rep.kspi_form) rc = 1;
    }
    j["conjugate"] = std::move(c);
  }

  if (o.search_y) {
    const YSearchResult sr = search_y(m, n, p, u.n_gens(), u.torsion());
    Json s;
    s["found"] = sr.found;
    s["tried"] = sr.tried;
    if (sr.found) s["y"] = zmat_to_json(sr.y);
    j["search_y"] = std::move(s);
    if (!sr.found && !have_uv && !have_y) rc = 1;
  }

  emit(j, o.compact);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eptwist: twisted graph algebras, their inverse semigroups, normal "
      "forms, Katsura systems and K-theory"};
  app.require_subcommand(1);

  Options o;
  app.add_flag("--json", o.compact, "compact single-line JSON (default: pretty)");

  const auto add_field = [&](CLI::App* c) {
    c->add_option("--field", o.field, "coefficient field, Q or Fp (default Q)");
  };
  const auto add_tuple = [&](CLI::App* c) {
    c->add_option("--tuple", o.tuple_file, "tuple JSON file")->required();
    add_field(c);
  };
  const auto add_triple = [&](CLI::App* c) {
    c->add_option("--triple", o.triple_file, "triple JSON file")->required();
    add_field(c);
  };
  const auto add_nf_opts = [&](CLI::App* c) {
    c->add_option("--element", o.element_files, "element JSON file")
        ->required();
    c->add_option("--section", o.section_file,
                  "section JSON file (default: first admissible out-edge per "
                  "regular vertex)");
    c->add_option("--cap-steps", o.cap_steps,
                  "rewriting step cap (default 1000000)");
  };

  auto* validate_c = app.add_subcommand("validate", "check the tuple axioms");
  add_tuple(validate_c);
  validate_c->add_option("--seed", o.seed, "probe seed (default 1)");

  auto* mul_c = app.add_subcommand("mul", "multiply elements left to right");
  add_tuple(mul_c);
  mul_c->add_option("--element", o.element_files,
                    "element JSON file (repeat, at least twice)")
      ->required();

  auto* nf_c = app.add_subcommand("nf", "normal form of an element");
  add_tuple(nf_c);
  add_nf_opts(nf_c);

  auto* kbasis_c = app.add_subcommand(
      "kbasis", "coordinates over the kernel ideal basis");
  add_tuple(kbasis_c);
  add_nf_opts(kbasis_c);

  auto* kat_c = app.add_subcommand(
      "katsura-build", "build the tuple of a Katsura triple");
  add_triple(kat_c);
  kat_c->add_flag("--check", o.check,
                  "also validate the built tuple and report stratification");
  kat_c->add_option("--seed", o.seed, "probe seed (default 1)");

  auto* kspi_c = app.add_subcommand("kspi", "simple purely infinite test");
  add_triple(kspi_c);

  auto* h_c = app.add_subcommand("hausdorff", "bounded Hausdorff test");
  add_triple(h_c);
  h_c->add_option("--cap-paths", o.cap_paths,
                  "strongly fixed path length cap (default 12)");
  h_c->add_option("--cap-l", o.cap_l,
                  "powers of t to test (default: lcm of the positive A "
                  "entries)");
  h_c->add_option("--cap-states", o.cap_states,
                  "search state budget (default 200000)");

  auto* kreg_c = app.add_subcommand("kreg", "flatness row conditions");
  add_triple(kreg_c);

  auto* kt_c = app.add_subcommand("ktheory", "KH0 and KH1 of the triple");
  add_triple(kt_c);
  kt_c->add_option("--units-primes", o.units_primes,
                   "prime support of the unit group over Q (comma separated)")
      ->delimiter(',');

  auto* st_c = app.add_subcommand(
      "stabilize", "stabilized block map and its conjugates");
  st_c->add_option("--triple", o.triple_file,
                   "JSON file with M, N and optional P")
      ->required();
  add_field(st_c);
  st_c->add_option("--units-primes", o.units_primes,
                   "prime support of the unit group over Q (comma separated)")
      ->delimiter(',');
  st_c->add_option("--U", o.u_file, "left conjugation matrix JSON file");
  st_c->add_option("--V", o.v_file, "right conjugation matrix JSON file");
  st_c->add_option("--y", o.y_file,
                   "Y matrix JSON file for the displayed U, V pair");
  st_c->add_flag("--search-y", o.search_y,
                 "search small Y entries for a KSPI-form conjugate");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json err;
    err["error"] = {{"kind", "usage"}, {"message", e.what()}};
    emit(err, o.compact);
    return 2;
  }

  const auto fail = [&](const char* kind, const std::string& msg, int rc) {
    Json err;
    err["error"] = {{"kind", kind}, {"message", msg}};
    emit(err, o.compact);
    return rc;
  };

  try {
    if (validate_c->parsed()) return cmd_validate(o);
    if (mul_c->parsed()) return cmd_mul(o);
    if (nf_c->parsed()) return cmd_nf(o);
    if (kbasis_c->parsed()) return cmd_kbasis(o);
    if (kat_c->parsed()) return cmd_katsura_build(o);
    if (kspi_c->parsed()) return cmd_kspi(o);
    if (h_c->parsed()) return cmd_hausdorff(o);
    if (kreg_c->parsed()) return cmd_kreg(o);
    if (kt_c->parsed()) return cmd_ktheory(o);
    if (st_c->parsed()) return cmd_stabilize(o);
  } catch (const divergence_error& e) {
    return fail("divergence", e.what(), 3);
  } catch (const encoding_error& e) {
    return fail("encoding", e.what(), 2);
  } catch (const schema_error& e) {
    return fail("schema", e.what(), 2);
  } catch (const domain_error& e) {
    return fail("domain", e.what(), 1);
  } catch (const internal_error& e) {
    return fail("internal", e.what(), 4);
  }
  return 0;
}
