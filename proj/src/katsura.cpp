#include "ep/katsura.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "ep/batch.hpp"
#include "ep/errors.hpp"

namespace ep {

long kat_tau(long A, long B, long n) {
  long r = (B + n) % A;
  return r < 0 ? r + A : r;
}

long kat_psi(long A, long B, long n) { return (B + n - kat_tau(A, B, n)) / A; }

std::string kat_edge_id(const std::string& v, const std::string& w, long i) {
  return "e(" + v + "," + w + "," + std::to_string(i) + ")";
}

KatsuraTriple make_katsura(std::vector<std::string> vertices,
                           std::vector<std::string> row_vertices,
                           std::vector<std::vector<long>> A,
                           std::vector<std::vector<long>> B,
                           std::vector<std::vector<Scalar>> C,
                           FieldSpec field) {
  KatsuraTriple k;
  k.vertices = std::move(vertices);
  k.row_vertices = std::move(row_vertices);
  k.A = std::move(A);
  k.B = std::move(B);
  k.C = std::move(C);
  k.field = field;

  const size_t r = k.row_vertices.size(), n = k.vertices.size();
  if (n == 0) throw schema_error("katsura triple needs at least one vertex");
  if (r == 0 || r > n)
    throw schema_error("row vertex count must be between 1 and the vertex count");
  std::set<std::string> vset(k.vertices.begin(), k.vertices.end());
  if (vset.size() != n) throw schema_error("duplicate vertex label");
  std::set<std::string> rset(k.row_vertices.begin(), k.row_vertices.end());
  if (rset.size() != r) throw schema_error("duplicate row vertex label");
  for (const auto& v : k.row_vertices)
    if (!vset.count(v)) throw schema_error("row vertex not a vertex: " + v);
  auto shape_ok = [&](const auto& m) {
    if (m.size() != r) return false;
    for (const auto& row : m)
      if (row.size() != n) return false;
    return true;
  };
  if (!shape_ok(k.A) || !shape_ok(k.B) || !shape_ok(k.C))
    throw schema_error("A, B, C must all be (row vertices) x (vertices)");

  for (size_t i = 0; i < r; ++i) {
    bool rowpos = false;
    for (size_t j = 0; j < n; ++j) {
      if (k.A[i][j] < 0) throw domain_error("A must be nonnegative");
      rowpos = rowpos || k.A[i][j] > 0;
      if (k.C[i][j].field() != field)
        throw schema_error("C entry in wrong field");
      if (k.C[i][j].is_zero()) throw domain_error("C entries must be units");
      if (k.A[i][j] == 0 && k.B[i][j] != 0)
        throw domain_error("A_{v,w} = 0 forces B_{v,w} = 0 (at " +
                           k.row_vertices[i] + ", " + k.vertices[j] + ")");
      if (k.A[i][j] == 0 && !k.C[i][j].is_one())
        throw domain_error("A_{v,w} = 0 forces C_{v,w} = 1 (at " +
                           k.row_vertices[i] + ", " + k.vertices[j] + ")");
    }
    if (!rowpos)
      throw domain_error("row " + k.row_vertices[i] + " of A is zero");
  }
  return k;
}

EPTuple build_tuple(const KatsuraTriple& k) {
  std::vector<Graph::EdgeDecl> edges;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j)
      for (long n = 0; n < k.A[i][j]; ++n)
        edges.push_back({kat_edge_id(k.row_vertices[i], k.vertices[j], n),
                         k.row_vertices[i], k.vertices[j]});
  Graph g = Graph::make(k.vertices, edges);

  std::vector<int> act_v(g.n_vertices());
  for (int v = 0; v < g.n_vertices(); ++v) act_v[v] = v;
  std::vector<int> act_e(g.n_edges());
  std::vector<GElem> phi(g.n_edges());
  std::vector<Scalar> c(g.n_edges(), Scalar::one(k.field));
  int e = 0;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) {
      const long A = k.A[i][j], B = k.B[i][j];
      for (long n = 0; n < A; ++n, ++e) {
        act_e[e] = e - static_cast<int>(n) + static_cast<int>(kat_tau(A, B, n));
        phi[e].z = kat_psi(A, B, n);
        if (n == 0) {
          Scalar sign = Scalar::from_long(((A - 1) * B) % 2 != 0 ? -1 : 1,
                                          k.field);
          c[e] = sign * k.C[i][j];
        }
      }
    }
  return EPTuple::make(std::move(g), GroupModel::integers(), k.field,
                       {act_v}, {act_e}, {phi}, {c});
}

// --- KSPI ---

namespace {

// Number of closed walks from v back to v that avoid v in between, counted
// with edge multiplicities, capped at 2; walk length capped at len_cap.
long first_return_count(const KatsuraTriple& k,
                        const std::vector<int>& row_of, int v, int len_cap) {
  long found = 0;
  // DFS over (current vertex, remaining length)
  struct Frame {
    int at;
    long ways;
    int len;
  };
  std::vector<Frame> stack{{v, 1, 0}};
  while (!stack.empty() && found < 2) {
    Frame f = stack.back();
    stack.pop_back();
    if (row_of[f.at] < 0) continue;  // sink: no continuation
    const int i = row_of[f.at];
    for (int w = 0; w < k.cols(); ++w) {
      if (k.A[i][w] == 0) continue;
      long ways = f.ways * k.A[i][w];
      if (w == v) {
        found += ways;
        if (found >= 2) break;
      } else if (f.len + 1 < len_cap) {
        stack.push_back({w, ways, f.len + 1});
      }
    }
  }
  return std::min(found, 2L);
}

}  // namespace

KspiReport is_kspi(const KatsuraTriple& k) {
  KspiReport rep;
  const int n = k.cols();
  std::vector<int> row_of(n, -1);
  for (int i = 0; i < k.rows(); ++i) {
    for (int j = 0; j < n; ++j)
      if (k.vertices[j] == k.row_vertices[i]) row_of[j] = i;
  }

  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < n; ++j)
      if (k.A[i][j] == 0 && k.B[i][j] != 0) rep.a0_implies_b0 = false;

  // reachability over the positive-A adjacency
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) {
    std::vector<int> todo{v};
    std::vector<char> seen(n, 0);
    seen[v] = 1;
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      if (row_of[x] < 0) continue;
      for (int w = 0; w < n; ++w)
        if (k.A[row_of[x]][w] > 0 && !seen[w]) {
          seen[w] = 1;
          todo.push_back(w);
        }
    }
    for (int w = 0; w < n; ++w) reach[v][w] = seen[w];
  }
  long total_edges = 0;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < n; ++j) total_edges += k.A[i][j];
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      if (!reach[v][w]) {
        rep.reach_all_pairs_lax = false;
        rep.reach_all_pairs_strict = false;
      } else if (v == w) {
        // strict reading: a closed path of positive length
        bool strict = false;
        if (row_of[v] >= 0)
          for (int x = 0; x < n && !strict; ++x)
            strict = k.A[row_of[v]][x] > 0 && reach[x][v];
        rep.reach_all_pairs_strict = rep.reach_all_pairs_strict && strict;
      }
    }

  for (int v = 0; v < n; ++v) {
    long frc = first_return_count(k, row_of, v,
                                  static_cast<int>(total_edges) + 1);
    if (frc < 2) rep.two_first_return_loops = false;
    long loops = row_of[v] >= 0 ? k.A[row_of[v]][v] : 0;
    if (loops < 2) rep.two_loop_edges = false;
  }

  for (int i = 0; i < k.rows(); ++i) {
    int j = -1;
    for (int x = 0; x < n; ++x)
      if (k.vertices[x] == k.row_vertices[i]) j = x;
    if (k.B[i][j] != 1) rep.diag_b_one = false;
  }

  if (!rep.a0_implies_b0)
    rep.first_failure = "(a) A_{v,w} = 0 must force B_{v,w} = 0";
  else if (!rep.reach_all_pairs_strict)
    rep.first_failure = "(b) every ordered vertex pair must be connected";
  else if (!rep.two_first_return_loops)
    rep.first_failure = "(c) every vertex needs two distinct first-return loops";
  else if (!rep.diag_b_one)
    rep.first_failure = "(d) B_{v,v} = 1 must hold at every vertex";
  rep.kspi = rep.first_failure.empty();
  return rep;
}

// --- Hausdorff ---

namespace {

struct HState {
  int v;
  mpz_class r;
  bool operator<(const HState& o) const {
    if (v != o.v) return v < o.v;
    return r < o.r;
  }
};

struct HGraph {
  std::vector<std::vector<int>> killers;  // per column vertex: killer columns
  std::vector<std::vector<std::pair<int, std::pair<long, long>>>>
      moves;  // per column vertex: (target, (A, B)) with B != 0
};

HGraph hgraph_of(const KatsuraTriple& k) {
  const int n = k.cols();
  HGraph h;
  h.killers.assign(n, {});
  h.moves.assign(n, {});
  std::vector<int> row_of(n, -1);
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < n; ++j)
      if (k.vertices[j] == k.row_vertices[i]) row_of[j] = i;
  for (int v = 0; v < n; ++v) {
    if (row_of[v] < 0) continue;
    const int i = row_of[v];
    for (int w = 0; w < n; ++w) {
      if (k.A[i][w] > 0 && k.B[i][w] == 0) h.killers[v].push_back(w);
      if (k.B[i][w] != 0) h.moves[v].push_back({w, {k.A[i][w], k.B[i][w]}});
    }
  }
  return h;
}

// Live residual transition: R -> R*B/A when A | R*B (B != 0 keeps it nonzero).
bool hstep(const mpz_class& r, long A, long B, mpz_class& out) {
  mpz_class num = r * B;
  if (num % A != 0) return false;
  out = num / A;
  return true;
}

// Bounded search for a live path from (v, r) to any vertex with a killer.
bool fertile_reachable(const HGraph& h, const HState& s0, int depth_cap,
                       long budget) {
  std::set<HState> seen;
  std::vector<std::pair<HState, int>> todo{{s0, 0}};
  while (!todo.empty()) {
    auto [s, d] = todo.back();
    todo.pop_back();
    if (!h.killers[s.v].empty()) return true;
    if (d >= depth_cap) continue;
    if (!seen.insert(s).second) continue;
    if (--budget < 0) return false;
    for (const auto& [w, ab] : h.moves[s.v]) {
      mpz_class rr;
      if (hstep(s.r, ab.first, ab.second, rr))
        todo.push_back({HState{w, rr}, d + 1});
    }
  }
  return false;
}

}  // namespace

HausdorffReport hausdorff_condition(const KatsuraTriple& k, int path_len_cap,
                                    long l_cap, long state_cap) {
  HausdorffReport rep;
  rep.path_len_cap = path_len_cap;
  HGraph h = hgraph_of(k);
  const int n = k.cols();
  std::vector<int> row_of(n, -1);
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < n; ++j)
      if (k.vertices[j] == k.row_vertices[i]) row_of[j] = i;

  bool any_killer = false;
  for (int v = 0; v < n; ++v) any_killer = any_killer || !h.killers[v].empty();
  if (l_cap <= 0) {
    long l = 1;
    for (int i = 0; i < k.rows(); ++i)
      for (int j = 0; j < n; ++j)
        if (k.A[i][j] > 0) l = std::lcm(l, k.A[i][j]);
    l_cap = l;
  }
  rep.l_cap = l_cap;
  if (!any_killer) {
    rep.verdict = Hausdorff::Holds;
    rep.detail = "no position has A > 0 with B = 0; no strongly fixed paths";
    return rep;
  }

  std::map<std::tuple<long, int, int>, mpz_class> finding_counts;
  bool complete = true;

  for (long l = 1; l <= l_cap && !rep.has_certificate; ++l) {
    // count layer by layer
    std::map<HState, mpz_class> layer;
    for (int v = 0; v < n; ++v) layer[HState{v, l}] += 1;
    long states_seen = 0;
    for (int depth = 0; depth <= path_len_cap; ++depth) {
      for (const auto& [s, cnt] : layer)
        for (int w : h.killers[s.v])
          finding_counts[{l, s.v, w}] += cnt * k.A[row_of[s.v]][w];
      if (depth == path_len_cap) {
        if (!layer.empty()) complete = false;
        break;
      }
      std::map<HState, mpz_class> next;
      for (const auto& [s, cnt] : layer)
        for (const auto& [w, ab] : h.moves[s.v]) {
          mpz_class rr;
          if (hstep(s.r, ab.first, ab.second, rr))
            next[HState{w, rr}] += cnt * ab.first;
        }
      states_seen += static_cast<long>(next.size());
      if (states_seen > state_cap) {
        complete = false;
        next.clear();
      }
      layer = std::move(next);
      if (layer.empty()) break;
    }

    // certificate search: a stacked vertex repeat with integer residual
    // ratio is pumpable; failure if a killer-capable vertex stays reachable
    struct Frame {
      HState s;
      size_t next_move = 0;
    };
    for (int v0 = 0; v0 < n && !rep.has_certificate; ++v0) {
      std::vector<Frame> stack{{HState{v0, l}, 0}};
      long budget = state_cap;
      while (!stack.empty() && !rep.has_certificate) {
        Frame& f = stack.back();
        if (f.next_move >= h.moves[f.s.v].size() ||
            static_cast<int>(stack.size()) > path_len_cap || --budget < 0) {
          stack.pop_back();
          continue;
        }
        const auto& [w, ab] = h.moves[f.s.v][f.next_move++];
        mpz_class rr;
        if (!hstep(f.s.r, ab.first, ab.second, rr)) continue;
        HState ns{w, rr};
        bool pumped = false;
        for (size_t i = 0; i < stack.size(); ++i) {
          const HState& old = stack[i].s;
          if (old.v == w && rr % old.r == 0) {
            if (fertile_reachable(h, ns, path_len_cap, state_cap)) {
              rep.has_certificate = true;
              rep.cert_l = l;
              for (size_t j = i; j < stack.size(); ++j)
                rep.cert_cycle.push_back(stack[j].s.v);
              rep.cert_cycle.push_back(w);
              rep.detail =
                  "pumpable residual cycle with a reachable vanishing position";
            }
            pumped = true;
            break;
          }
        }
        if (!pumped) stack.push_back({ns, 0});
      }
    }
  }

  for (const auto& [key, cnt] : finding_counts)
    rep.findings.push_back(
        {std::get<0>(key), std::get<1>(key), std::get<2>(key), cnt});
  rep.explored_fully = complete;
  if (rep.has_certificate)
    rep.verdict = Hausdorff::Fails;
  else if (complete)
    rep.verdict = Hausdorff::Holds;
  else
    rep.verdict = Hausdorff::Undetermined;
  if (rep.detail.empty())
    rep.detail = complete
                     ? "every residual search closed within the caps"
                     : "caps reached before the residual search closed";
  return rep;
}

// --- K-regularity row conditions ---

KregReport kreg_conditions(const KatsuraTriple& k) {
  KregReport rep;
  rep.cond_i = true;
  rep.cond_ii = true;
  for (int i = 0; i < k.rows(); ++i) {
    bool has_zero = false, has_nonzero = false;
    for (int j = 0; j < k.cols(); ++j) {
      if ((k.A[i][j] == 0) != (k.B[i][j] == 0)) rep.cond_i = false;
      if (k.A[i][j] > 0) (k.B[i][j] == 0 ? has_zero : has_nonzero) = true;
    }
    if (has_zero && has_nonzero) rep.cond_ii = false;
    for (int j = 0; j < k.cols(); ++j) {
      if (k.A[i][j] == 0) continue;
      FlatStatus st;
      if (k.B[i][j] != 0)
        st = FlatStatus::FlatUnit;
      else if (has_nonzero)
        st = FlatStatus::NotFlat;
      else
        st = FlatStatus::FlatZeroRow;
      rep.pairs.push_back({i, j, st});
    }
  }
  rep.kregular = rep.cond_i || rep.cond_ii;
  return rep;
}

// --- corner units ---

namespace {

UvwPairReport check_uvw_pair(const KatsuraTriple& k, const EPTuple& t, int i,
                             int j) {
  UvwPairReport rep;
  rep.row = i;
  rep.col = j;
  const Graph& G = t.graph();
  const long A = k.A[i][j], B = k.B[i][j];
  const std::string& vl = k.row_vertices[i];
  const std::string& wl = k.vertices[j];
  const int v = G.vindex(vl);
  std::vector<int> e(A);
  for (long x = 0; x < A; ++x) e[x] = G.eindex(kat_edge_id(vl, wl, x));
  auto ee = [&](long a, long b) {
    // e_a e_b^* as a basis triple
    Path pa = vertex_path(v), pb = vertex_path(v);
    pa.edges.push_back(e[a]);
    pb.edges.push_back(e[b]);
    return STriple::make(t, pa, t.group().id(), pb);
  };
  GElem tg = t.group().parse("t");

  AlgElem m(t.field());
  for (long x = 0; x < A; ++x)
    m.add_striple(t, ee(x, x), Scalar::one(t.field()));

  AlgElem u(t.field());
  {
    Path pa = vertex_path(v), pb = vertex_path(v);
    pa.edges.push_back(e[0]);
    pb.edges.push_back(e[A - 1]);
    u.add_striple(t, STriple::make(t, pa, tg, pb), Scalar::one(t.field()));
    for (long x = 0; x + 1 < A; ++x)
      u.add_striple(t, ee(x + 1, x), Scalar::one(t.field()));
  }
  AlgElem uinv(t.field());
  {
    Path pa = vertex_path(v), pb = vertex_path(v);
    pa.edges.push_back(e[A - 1]);
    pb.edges.push_back(e[0]);
    uinv.add_striple(t, STriple::make(t, pa, t.group().inv(tg), pb),
                     Scalar::one(t.field()));
    for (long x = 0; x + 1 < A; ++x)
      uinv.add_striple(t, ee(x, x + 1), Scalar::one(t.field()));
  }
  rep.corner_inverse_ok =
      alg_mul(t, u, uinv) == m && alg_mul(t, uinv, u) == m;

  // u^n = sum_i e_{(i+n) mod A} t^{(n+i) div A} e_i^*
  rep.intermediate_ok = true;
  const long nmax = std::max(A, std::abs(B)) + 1;
  AlgElem upow = m;
  for (long nn = 0; nn <= nmax; ++nn) {
    AlgElem expect(t.field());
    for (long x = 0; x < A; ++x) {
      long q = (nn + x) / A;  // nonneg operands
      long rm = (nn + x) % A;
      Path pa = vertex_path(v), pb = vertex_path(v);
      pa.edges.push_back(e[rm]);
      pb.edges.push_back(e[x]);
      expect.add_striple(
          t, STriple::make(t, pa, t.group().pow(tg, q), pb),
          Scalar::one(t.field()));
    }
    if (!(upow == expect)) rep.intermediate_ok = false;
    upow = alg_mul(t, upow, u);
  }

  // closed form for u^B
  AlgElem ub = m;
  if (B >= 0)
    ub = alg_pow(t, u, B, m);
  else
    ub = alg_pow(t, uinv, -B, m);
  AlgElem rhs(t.field());
  {
    Scalar s = Scalar::from_long(((A - 1) * B) % 2 != 0 ? -1 : 1, t.field());
    AlgElem vt = alg_from(t, striple_vg(t, v, tg));
    AlgElem head = alg_mul(t, vt, alg_from(t, ee(0, 0)));
    rhs += head.scaled(s * k.C[i][j].inv());
    for (long x = 1; x < A; ++x)
      rhs += alg_mul(t, vt, alg_from(t, ee(x, x)));
  }
  rep.closed_form_ok = ub == rhs;
  return rep;
}

}  // namespace

std::vector<UvwPairReport> uvw_identity_report(const KatsuraTriple& k,
                                               bool parallel) {
  EPTuple t = build_tuple(k);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j)
      if (k.A[i][j] > 0) pairs.push_back({i, j});
  std::vector<UvwPairReport> out(pairs.size());
  parallel_for(
      static_cast<long>(pairs.size()),
      [&](long x) {
        out[x] = check_uvw_pair(k, t, pairs[x].first, pairs[x].second);
      },
      parallel);
  return out;
}

}  // namespace ep
