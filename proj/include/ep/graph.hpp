#pragma once
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ep {

// Finite directed graph. Vertices and edges keep their declaration order;
// all internal references are indices into that order.
class Graph {
 public:
  struct EdgeDecl {
    std::string id, src, rng;
  };

  static Graph make(const std::vector<std::string>& vertices,
                    const std::vector<EdgeDecl>& edges);

  int n_vertices() const { return static_cast<int>(vnames_.size()); }
  int n_edges() const { return static_cast<int>(enames_.size()); }
  int src(int e) const { return esrc_[e]; }
  int rng(int e) const { return erng_[e]; }
  const std::string& vname(int v) const { return vnames_[v]; }
  const std::string& ename(int e) const { return enames_[e]; }
  int vindex(const std::string& name) const;  // throws schema_error if absent
  int eindex(const std::string& name) const;
  const std::vector<int>& out_edges(int v) const { return out_[v]; }

  bool is_regular(int v) const { return !out_[v].empty(); }
  std::vector<int> regular_vertices() const;
  std::vector<int> sinks() const;

 private:
  std::vector<std::string> vnames_, enames_;
  std::vector<int> esrc_, erng_;
  std::map<std::string, int> vidx_, eidx_;
  std::vector<std::vector<int>> out_;
};

// Finite path. base is the source vertex; for nonempty paths it must equal
// the source of the first edge. Composition reads left to right: in "ef"
// edge e is traversed first and rng(e) == src(f).
struct Path {
  int base = -1;
  std::vector<int> edges;

  int len() const { return static_cast<int>(edges.size()); }
  bool operator==(const Path&) const = default;
  auto operator<=>(const Path& o) const {
    if (auto c = edges <=> o.edges; c != 0) return c;
    return base <=> o.base;
  }
};

Path vertex_path(int v);
bool path_ok(const Graph& g, const Path& p);
int path_src(const Graph& g, const Path& p);
int path_rng(const Graph& g, const Path& p);
// Throws internal_error when rng(a) != src(b).
Path path_concat(const Graph& g, const Path& a, const Path& b);
Path path_append(const Graph& g, const Path& a, int edge);
// Longest proper prefix (drops the last edge). Requires a nonempty path.
Path path_drop_last(const Graph& g, const Path& a);
// If b = a . tail, returns tail; otherwise nullopt.
std::optional<Path> path_cut_prefix(const Graph& g, const Path& a,
                                    const Path& b);
std::string path_str(const Graph& g, const Path& p);

struct PathFilter {
  std::optional<int> src, rng;
};

// All paths of length <= n matching the filter, each exactly once, ordered by
// length, then edge-id names position by position, then base vertex name.
std::vector<Path> paths_up_to(const Graph& g, int n, PathFilter f = {});

// Rows follow regular_vertices() order, columns follow vertex order;
// entry (v, w) counts edges from v to w.
struct ReducedIncidence {
  std::vector<int> rows;  // regular vertex indices
  std::vector<std::vector<long>> a;
};
ReducedIncidence reduced_incidence(const Graph& g);

}  // namespace ep
