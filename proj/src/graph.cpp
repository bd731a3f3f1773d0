#include "ep/graph.hpp"

#include <algorithm>

#include "ep/errors.hpp"

namespace ep {

Graph Graph::make(const std::vector<std::string>& vertices,
                  const std::vector<EdgeDecl>& edges) {
  Graph g;
  g.vnames_ = vertices;
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    if (vertices[i].empty()) throw schema_error("empty vertex id");
    if (!g.vidx_.emplace(vertices[i], i).second)
      throw schema_error("duplicate vertex id: " + vertices[i]);
  }
  g.out_.resize(vertices.size());
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto& e = edges[i];
    if (e.id.empty()) throw schema_error("empty edge id");
    if (!g.eidx_.emplace(e.id, i).second)
      throw schema_error("duplicate edge id: " + e.id);
    auto sv = g.vidx_.find(e.src);
    auto rv = g.vidx_.find(e.rng);
    if (sv == g.vidx_.end())
      throw schema_error("edge " + e.id + " has unknown src: " + e.src);
    if (rv == g.vidx_.end())
      throw schema_error("edge " + e.id + " has unknown rng: " + e.rng);
    g.enames_.push_back(e.id);
    g.esrc_.push_back(sv->second);
    g.erng_.push_back(rv->second);
    g.out_[sv->second].push_back(i);
  }
  return g;
}

int Graph::vindex(const std::string& name) const {
  auto it = vidx_.find(name);
  if (it == vidx_.end()) throw schema_error("unknown vertex: " + name);
  return it->second;
}

int Graph::eindex(const std::string& name) const {
  auto it = eidx_.find(name);
  if (it == eidx_.end()) throw schema_error("unknown edge: " + name);
  return it->second;
}

std::vector<int> Graph::regular_vertices() const {
  std::vector<int> r;
  for (int v = 0; v < n_vertices(); ++v)
    if (is_regular(v)) r.push_back(v);
  return r;
}

std::vector<int> Graph::sinks() const {
  std::vector<int> r;
  for (int v = 0; v < n_vertices(); ++v)
    if (!is_regular(v)) r.push_back(v);
  return r;
}

Path vertex_path(int v) { return Path{v, {}}; }

bool path_ok(const Graph& g, const Path& p) {
  if (p.base < 0 || p.base >= g.n_vertices()) return false;
  int at = p.base;
  for (int e : p.edges) {
    if (e < 0 || e >= g.n_edges() || g.src(e) != at) return false;
    at = g.rng(e);
  }
  return true;
}

int path_src(const Graph&, const Path& p) { return p.base; }

int path_rng(const Graph& g, const Path& p) {
  return p.edges.empty() ? p.base : g.rng(p.edges.back());
}

Path path_concat(const Graph& g, const Path& a, const Path& b) {
  check_internal(path_rng(g, a) == b.base, "path concat range/source mismatch");
  Path r = a;
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  return r;
}

Path path_append(const Graph& g, const Path& a, int edge) {
  check_internal(path_rng(g, a) == g.src(edge),
                 "path append range/source mismatch");
  Path r = a;
  r.edges.push_back(edge);
  return r;
}

Path path_drop_last(const Graph& g, const Path& a) {
  check_internal(!a.edges.empty(), "drop_last on vertex path");
  Path r = a;
  r.edges.pop_back();
  (void)g;
  return r;
}

std::optional<Path> path_cut_prefix(const Graph& g, const Path& a,
                                    const Path& b) {
  if (a.base != b.base) return std::nullopt;
  if (a.edges.size() > b.edges.size()) return std::nullopt;
  if (!std::equal(a.edges.begin(), a.edges.end(), b.edges.begin()))
    return std::nullopt;
  Path tail;
  tail.edges.assign(b.edges.begin() + a.edges.size(), b.edges.end());
  tail.base = tail.edges.empty() ? path_rng(g, b) : g.src(tail.edges.front());
  check_internal(tail.base == path_rng(g, a), "prefix cut seam mismatch");
  return tail;
}

std::string path_str(const Graph& g, const Path& p) {
  if (p.edges.empty()) return "(" + g.vname(p.base) + ")";
  std::string s;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ".";
    s += g.ename(p.edges[i]);
  }
  return s;
}

std::vector<Path> paths_up_to(const Graph& g, int n, PathFilter f) {
  std::vector<Path> out;
  std::vector<Path> layer;
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (f.src && *f.src != v) continue;
    layer.push_back(vertex_path(v));
  }
  for (int len = 0; len <= n; ++len) {
    for (const Path& p : layer)
      if (!f.rng || path_rng(g, p) == *f.rng) out.push_back(p);
    if (len == n) break;
    std::vector<Path> next;
    for (const Path& p : layer)
      for (int e : g.out_edges(path_rng(g, p))) next.push_back(path_append(g, p, e));
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const Path& a, const Path& b) {
    if (a.len() != b.len()) return a.len() < b.len();
    for (int i = 0; i < a.len(); ++i) {
      const std::string &ea = g.ename(a.edges[i]), &eb = g.ename(b.edges[i]);
      if (ea != eb) return ea < eb;
    }
    return g.vname(a.base) < g.vname(b.base);
  });
  return out;
}

ReducedIncidence reduced_incidence(const Graph& g) {
  ReducedIncidence r;
  r.rows = g.regular_vertices();
  r.a.assign(r.rows.size(), std::vector<long>(g.n_vertices(), 0));
  for (size_t i = 0; i < r.rows.size(); ++i)
    for (int e : g.out_edges(r.rows[i])) ++r.a[i][g.rng(e)];
  return r;
}

}  // namespace ep
