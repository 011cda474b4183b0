#include "qalg/quiver.hpp"

#include <set>

namespace qalg {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
               const std::string& at)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_)
    if (!seen.insert(v).second) throw input_error("duplicate vertex label '" + v + "'", at);
  std::set<std::string> anames;
  for (const auto& a : arrows_) {
    if (!anames.insert(a.name).second)
      throw input_error("duplicate arrow name '" + a.name + "'", at);
    if (a.src < 0 || a.src >= n_vertices() || a.dst < 0 || a.dst >= n_vertices())
      throw input_error("arrow '" + a.name + "' has an endpoint outside the vertex list", at);
  }
}

int Quiver::vertex_index(const std::string& label, const std::string& at) const {
  for (int i = 0; i < n_vertices(); ++i)
    if (vertices_[i] == label) return i;
  throw input_error("unknown vertex '" + label + "'", at);
}

int Quiver::arrow_index(const std::string& name, const std::string& at) const {
  for (int i = 0; i < n_arrows(); ++i)
    if (arrows_[i].name == name) return i;
  throw input_error("unknown arrow '" + name + "'", at);
}

bool Quiver::has_directed_cycle() const {
  /* DFS three-color. */
  std::vector<int> color(n_vertices(), 0);
  std::vector<std::vector<int>> out(n_vertices());
  for (int a = 0; a < n_arrows(); ++a) out[arrows_[a].src].push_back(arrows_[a].dst);
  struct Walk {
    const std::vector<std::vector<int>>& out;
    std::vector<int>& color;
    bool cyclic = false;
    void go(int v) {
      color[v] = 1;
      for (int w : out[v]) {
        if (color[w] == 1) cyclic = true;
        if (color[w] == 0 && !cyclic) go(w);
      }
      color[v] = 2;
    }
  } walk{out, color};
  for (int v = 0; v < n_vertices() && !walk.cyclic; ++v)
    if (color[v] == 0) walk.go(v);
  return walk.cyclic;
}

bool Quiver::same_shape(const Quiver& o) const {
  if (vertices_ != o.vertices_) return false;
  if (arrows_.size() != o.arrows_.size()) return false;
  for (size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name != o.arrows_[i].name || arrows_[i].src != o.arrows_[i].src ||
        arrows_[i].dst != o.arrows_[i].dst)
      return false;
  return true;
}

int path_source(const Quiver&, const Path& p) { return p.base; }

int path_target(const Quiver& q, const Path& p) {
  return p.arrows.empty() ? p.base : q.arrow(p.arrows.back()).dst;
}

bool path_valid(const Quiver& q, const Path& p) {
  if (p.base < 0 || p.base >= q.n_vertices()) return false;
  int at = p.base;
  for (int a : p.arrows) {
    if (a < 0 || a >= q.n_arrows() || q.arrow(a).src != at) return false;
    at = q.arrow(a).dst;
  }
  return true;
}

Path path_then(const Quiver& q, const Path& p, const Path& rest) {
  check_internal(path_target(q, p) == path_source(q, rest), "path_then: endpoints mismatch");
  Path out = p;
  out.arrows.insert(out.arrows.end(), rest.arrows.begin(), rest.arrows.end());
  return out;
}

std::string path_str(const Quiver& q, const Path& p) {
  if (p.trivial()) return "e_" + q.vertex(p.base);
  std::string s;
  for (size_t i = 0; i < p.arrows.size(); ++i)
    s += (i ? "." : "") + q.arrow(p.arrows[i]).name;
  return s;
}

std::vector<std::vector<Path>> paths_by_length(const Quiver& q, int max_len, int limit) {
  std::vector<std::vector<Path>> out(1);
  int total = 0;
  for (int v = 0; v < q.n_vertices(); ++v) {
    out[0].push_back(Path{v, {}});
    ++total;
  }
  for (int len = 1; len <= max_len; ++len) {
    out.emplace_back();
    for (const Path& p : out[len - 1]) {
      int tail = path_target(q, p);
      for (int a = 0; a < q.n_arrows(); ++a) {
        if (q.arrow(a).src != tail) continue;
        Path ext = p;
        ext.arrows.push_back(a);
        out[len].push_back(std::move(ext));
        if (++total > limit)
          throw input_error("path count exceeds limit " + std::to_string(limit) +
                            "; algebra is too large or not finite-dimensional");
      }
    }
  }
  return out;
}

}  // namespace qalg
