#pragma once

#include <string>
#include <vector>

#include "qalg/errors.hpp"

namespace qalg {

struct Arrow {
  std::string name;
  int src = -1;
  int dst = -1;
};

class Quiver {
public:
  Quiver() = default;
  /* Validates label/name uniqueness and endpoint ranges. */
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
         const std::string& at = "");

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::string& vertex(int i) const { return vertices_[i]; }
  const Arrow& arrow(int i) const { return arrows_[i]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<std::string>& vertices() const { return vertices_; }

  int vertex_index(const std::string& label, const std::string& at = "") const;
  int arrow_index(const std::string& name, const std::string& at = "") const;

  bool has_directed_cycle() const;
  bool same_shape(const Quiver& o) const;

private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/* Arrow indices in traversal order: the walk starts at `base` and follows
   arrows[0], arrows[1], ... head to tail. The trivial path at vertex v is
   {v, {}}. As an algebra element a path equals the function-style product of
   its arrows taken right to left. */
struct Path {
  int base = -1;
  std::vector<int> arrows;

  int length() const { return static_cast<int>(arrows.size()); }
  bool trivial() const { return arrows.empty(); }
  bool operator==(const Path& o) const { return base == o.base && arrows == o.arrows; }
};

int path_source(const Quiver& q, const Path& p);
int path_target(const Quiver& q, const Path& p);
bool path_valid(const Quiver& q, const Path& p);
/* "p then q"; requires path_target(p) == path_source(q). */
Path path_then(const Quiver& q, const Path& p, const Path& rest);
std::string path_str(const Quiver& q, const Path& p);

/* All paths of length <= max_len grouped by length, each group in a fixed
   deterministic order (extend by arrows in declaration order). Throws
   input_error when the count exceeds `limit`. */
std::vector<std::vector<Path>> paths_by_length(const Quiver& q, int max_len, int limit);

}  // namespace qalg
