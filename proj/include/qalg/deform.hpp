#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qalg/aobject.hpp"

namespace qalg {

/* ------------------------------------------------------------------ */
/* collections of modules over a common base                            */

template <class K>
struct Collection {
  BasePtr<K> base;
  std::vector<Rep<K>> items;

  int size() const { return static_cast<int>(items.size()); }
};

template <class K>
Collection<K> make_collection(BasePtr<K> base, std::vector<Rep<K>> items,
                              const std::string& at = "") {
  if (items.empty()) throw input_error("collection must be nonempty", at);
  for (const Rep<K>& m : items) {
    if (!m.base->same_as(*base)) throw input_error("collection member over a different base", at);
    validate_rep(m, at);
    if (m.total_dim() == 0) throw input_error("collection member is the zero module", at);
  }
  return Collection<K>{std::move(base), std::move(items)};
}

struct SimpleDefect {
  int i = -1, j = -1;  // offending ordered pair of members
  int dim = 0;         // observed hom dimension
};

/* A collection behaves like a set of simples when hom spaces between members
   are one dimensional on the diagonal and vanish off it. */
template <class K>
std::optional<SimpleDefect> simple_collection_defect(const Collection<K>& c) {
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) {
      int d = hom_dim(c.items[i], c.items[j]);
      if (d != (i == j ? 1 : 0)) return SimpleDefect{i, j, d};
    }
  return std::nullopt;
}

template <class K>
bool is_simple_collection(const Collection<K>& c) {
  return !simple_collection_defect(c).has_value();
}

/* Relation check that reports instead of throwing. */
template <class K>
bool relations_hold(const Rep<K>& m) {
  const Quiver& q = m.base->quiver();
  for (const auto& r : m.base->relations()) {
    int src = path_source(q, r.terms[0].path), tgt = path_target(q, r.terms[0].path);
    Matrix<K> acc(m.dims[src], m.dims[tgt], m.proto());
    for (const auto& t : r.terms) acc = acc + act_of_path(m, t.path).scaled(t.coeff);
    if (!acc.is_zero()) return false;
  }
  return true;
}

/* ------------------------------------------------------------------ */
/* membership in iterated extension closures                            */

struct ExBudget {
  long node_limit = 20000;   // search tree nodes
  long combo_limit = 4096;   // scalar lines drawn from one hom space
  long subset_limit = 4096;  // candidate layers enumerated at one node
};

template <class K>
struct ExStep {
  std::vector<int> pieces;  // collection indices of the layer summands
  RepMap<K> inc;            // direct sum of the pieces -> current module
  Rep<K> quo;               // quotient by the layer image
};

template <class K>
struct ExCert {
  std::vector<ExStep<K>> steps;

  int depth() const { return steps.empty() ? 0 : static_cast<int>(steps.size()) - 1; }
};

template <class K>
struct ExResult {
  bool member = false;
  bool exhaustive = true;  // when false, a negative verdict is inconclusive
  std::optional<ExCert<K>> cert;
};

namespace detail_ex {

inline bool bump(std::vector<int>& digits, long p) {
  for (size_t r = 0; r < digits.size(); ++r) {
    if (++digits[r] < p) return true;
    digits[r] = 0;
  }
  return false;
}

/* Canonical key of the per-vertex column span of the blocks of f. */
template <class K>
std::string image_key(const RepMap<K>& f) {
  std::string k;
  for (const Matrix<K>& b : f.blocks) {
    k += matrix_key(rref(column_space_basis(b).transpose()).mat);
    k += ';';
  }
  return k;
}

/* Canonical key of the per-vertex kernel span of the blocks of f. */
template <class K>
std::string kernel_key(const RepMap<K>& f) {
  std::string k;
  for (const Matrix<K>& b : f.blocks) {
    k += matrix_key(rref(kernel_basis(b).transpose()).mat);
    k += ';';
  }
  return k;
}

template <class K>
bool span_contains(const Matrix<K>& big, const Matrix<K>& cand) {
  if (cand.cols() == 0) return true;
  for (int p : rref(Matrix<K>::hstack(big, cand)).pivots)
    if (p >= big.cols()) return false;
  return true;
}

/* Per-vertex span of the maximal semisimple submodule. */
template <class K>
std::vector<Matrix<K>> socle_spans(const Rep<K>& m) {
  const Quiver& q = m.base->quiver();
  std::vector<Matrix<K>> out;
  for (int v = 0; v < q.n_vertices(); ++v) {
    Matrix<K> stack(0, m.dims[v], m.proto());
    for (int a = 0; a < q.n_arrows(); ++a)
      if (q.arrow(a).dst == v) stack = Matrix<K>::vstack(stack, m.act[a]);
    out.push_back(kernel_basis(stack));
  }
  return out;
}

/* One element per scalar line of the span of a hom basis. Over the rationals
   only multiplicity-free spaces have a finite scalar-free enumeration, so
   larger ones are refused; over a finite field a span above the budget yields
   nothing and the caller downgrades exhaustiveness. */
template <class K>
std::optional<std::vector<RepMap<K>>> scalar_lines(const std::vector<RepMap<K>>& basis,
                                                   long limit, const std::string& what) {
  std::vector<RepMap<K>> out;
  if (basis.empty()) return out;
  const K proto = f_zero(basis[0].src.proto());
  std::int64_t p = f_characteristic(proto);
  int d = static_cast<int>(basis.size());
  if (p == 0) {
    if (d > 1)
      throw input_error("membership search over the rationals needs hom spaces of dimension at most one (" +
                        what + ")");
    out.push_back(basis[0]);
    return out;
  }
  {
    long count = 0, power = 1;
    for (int lead = 0; lead < d; ++lead) {
      count += power;
      if (count > limit) return std::nullopt;
      if (power <= limit) power *= p;
    }
  }
  for (int lead = 0; lead < d; ++lead) {
    int free = d - 1 - lead;
    std::vector<int> digits(free, 0);
    do {
      RepMap<K> f = basis[lead];
      for (int r = 0; r < free; ++r)
        if (digits[r] != 0)
          f = add_maps(f, scale_map(f_from_int(digits[r], proto), basis[lead + 1 + r]));
      out.push_back(std::move(f));
    } while (bump(digits, p));
  }
  return out;
}

template <class K>
struct LayerCand {
  std::vector<int> pieces;
  RepMap<K> map;  // mono into cur (sub side) or epi out of cur (quotient side)
};

template <class K>
LayerCand<K> joint_mono(const Collection<K>& coll, const Rep<K>& cur,
                        const std::vector<std::pair<int, const RepMap<K>*>>& chosen) {
  LayerCand<K> out;
  std::vector<Rep<K>> parts;
  for (const auto& pr : chosen) {
    out.pieces.push_back(pr.first);
    parts.push_back(coll.items[pr.first]);
  }
  SumRep<K> sum = direct_sum(coll.base, parts);
  out.map = zero_map(sum.sum, cur);
  for (size_t t = 0; t < chosen.size(); ++t)
    out.map = add_maps(out.map, compose_maps(*chosen[t].second, sum.prj[t]));
  return out;
}

template <class K>
LayerCand<K> joint_epi(const Collection<K>& coll, const Rep<K>& cur,
                       const std::vector<std::pair<int, const RepMap<K>*>>& chosen) {
  LayerCand<K> out;
  std::vector<Rep<K>> parts;
  for (const auto& pr : chosen) {
    out.pieces.push_back(pr.first);
    parts.push_back(coll.items[pr.first]);
  }
  SumRep<K> sum = direct_sum(coll.base, parts);
  out.map = zero_map(cur, sum.sum);
  for (size_t t = 0; t < chosen.size(); ++t)
    out.map = add_maps(out.map, compose_maps(sum.inc[t], *chosen[t].second));
  return out;
}

template <class K>
bool all_simple(const Collection<K>& coll) {
  for (const Rep<K>& m : coll.items)
    if (m.total_dim() != 1) return false;
  return true;
}

/* For one dimensional pieces the joint trace is the unique maximal layer and
   peeling it loses no memberships: quotients of semisimple layers remain
   semisimple with factors among the same pieces. */
template <class K>
std::vector<LayerCand<K>> sub_layers_simple(const Rep<K>& cur, const Collection<K>& coll) {
  const Quiver& q = cur.base->quiver();
  std::vector<Matrix<K>> span;
  for (int v = 0; v < q.n_vertices(); ++v) span.emplace_back(cur.dims[v], 0, cur.proto());
  std::vector<std::pair<int, const RepMap<K>*>> chosen;
  std::vector<std::vector<RepMap<K>>> kept(coll.size());
  for (int i = 0; i < coll.size(); ++i) {
    kept[i] = hom_space(coll.items[i], cur);
    for (const RepMap<K>& f : kept[i]) {
      bool grows = false;
      for (int v = 0; v < q.n_vertices(); ++v)
        if (!span_contains(span[v], f.blocks[v])) grows = true;
      if (!grows) continue;
      for (int v = 0; v < q.n_vertices(); ++v)
        span[v] = Matrix<K>::hstack(span[v], f.blocks[v]);
      chosen.push_back({i, &f});
    }
  }
  std::vector<LayerCand<K>> out;
  if (!chosen.empty()) out.push_back(joint_mono(coll, cur, chosen));
  return out;
}

/* Dual canonical layer: quotient by the joint kernel of all maps to pieces. */
template <class K>
std::vector<LayerCand<K>> quo_layers_simple(const Rep<K>& cur, const Collection<K>& coll) {
  const Quiver& q = cur.base->quiver();
  std::vector<Matrix<K>> rows;
  for (int v = 0; v < q.n_vertices(); ++v) rows.emplace_back(0, cur.dims[v], cur.proto());
  std::vector<std::pair<int, const RepMap<K>*>> chosen;
  std::vector<std::vector<RepMap<K>>> kept(coll.size());
  for (int i = 0; i < coll.size(); ++i) {
    kept[i] = hom_space(cur, coll.items[i]);
    for (const RepMap<K>& f : kept[i]) {
      bool grows = false;
      for (int v = 0; v < q.n_vertices(); ++v)
        if (!span_contains(rows[v].transpose(), f.blocks[v].transpose())) grows = true;
      if (!grows) continue;
      for (int v = 0; v < q.n_vertices(); ++v)
        rows[v] = Matrix<K>::vstack(rows[v], f.blocks[v]);
      chosen.push_back({i, &f});
    }
  }
  std::vector<LayerCand<K>> out;
  if (!chosen.empty()) out.push_back(joint_epi(coll, cur, chosen));
  return out;
}

/* Candidate sub-layers: monomorphisms from direct sums of collection members,
   deduplicated by image. Small single sets are combined exhaustively; larger
   ones fall back to greedy stacks (socle-contained singles first) plus their
   prefixes, leave-one-outs and singletons, downgrading exhaustiveness. */
template <class K>
std::vector<LayerCand<K>> sub_layers(const Rep<K>& cur, const Collection<K>& coll,
                                     const ExBudget& budget, bool& exhaustive) {
  if (all_simple(coll)) return sub_layers_simple(cur, coll);
  struct Single {
    int piece;
    RepMap<K> f;
    bool deep;
  };
  std::vector<Single> singles;
  {
    std::set<std::string> seen;
    std::vector<Matrix<K>> soc = socle_spans(cur);
    for (int i = 0; i < coll.size(); ++i) {
      if (coll.items[i].total_dim() > cur.total_dim()) continue;
      auto lines = scalar_lines(hom_space(coll.items[i], cur), budget.combo_limit, "sub layer");
      if (!lines) {
        exhaustive = false;
        continue;
      }
      for (RepMap<K>& f : *lines) {
        if (!is_mono(f)) continue;
        if (!seen.insert(image_key(f)).second) continue;
        bool deep = true;
        for (size_t v = 0; v < f.blocks.size(); ++v)
          if (!span_contains(soc[v], f.blocks[v])) deep = false;
        singles.push_back({i, std::move(f), deep});
      }
    }
  }
  std::stable_sort(singles.begin(), singles.end(), [](const Single& a, const Single& b) {
    if (a.deep != b.deep) return a.deep;
    return a.piece < b.piece;
  });
  std::vector<LayerCand<K>> out;
  int s = static_cast<int>(singles.size());
  if (s == 0) return out;
  std::set<std::vector<int>> subsets;
  bool complete = s <= 60 && ((1LL << s) - 1) <= budget.subset_limit;
  if (complete) {
    for (std::int64_t mask = 1; mask < (1LL << s); ++mask) {
      std::vector<int> idx;
      for (int b = 0; b < s; ++b)
        if (mask >> b & 1) idx.push_back(b);
      subsets.insert(std::move(idx));
    }
  } else {
    exhaustive = false;
    std::vector<int> stack;
    std::vector<std::pair<int, const RepMap<K>*>> chosen;
    for (int b = 0; b < s; ++b) {
      chosen.push_back({singles[b].piece, &singles[b].f});
      if (is_mono(joint_mono(coll, cur, chosen).map)) {
        stack.push_back(b);
        subsets.insert(stack);
      } else {
        chosen.pop_back();
      }
    }
    for (size_t drop = 0; drop + 1 < stack.size(); ++drop) {
      std::vector<int> idx;
      for (size_t t = 0; t < stack.size(); ++t)
        if (t != drop) idx.push_back(stack[t]);
      subsets.insert(std::move(idx));
    }
    for (int b = 0; b < s && b < 64; ++b) subsets.insert(std::vector<int>{b});
  }
  std::set<std::string> seen_layers;
  for (const std::vector<int>& idx : subsets) {
    std::vector<std::pair<int, const RepMap<K>*>> chosen;
    for (int b : idx) chosen.push_back({singles[b].piece, &singles[b].f});
    LayerCand<K> cand = joint_mono(coll, cur, chosen);
    if (!is_mono(cand.map)) continue;
    if (!seen_layers.insert(image_key(cand.map)).second) continue;
    out.push_back(std::move(cand));
  }
  std::stable_sort(out.begin(), out.end(), [](const LayerCand<K>& a, const LayerCand<K>& b) {
    return a.map.src.total_dim() > b.map.src.total_dim();
  });
  return out;
}

/* Candidate top layers: epimorphisms onto direct sums of collection members,
   deduplicated by kernel. Radical-killing singles are preferred. */
template <class K>
std::vector<LayerCand<K>> quo_layers(const Rep<K>& cur, const Collection<K>& coll,
                                     const ExBudget& budget, bool& exhaustive) {
  if (all_simple(coll)) return quo_layers_simple(cur, coll);
  struct Single {
    int piece;
    RepMap<K> f;
    bool flat_top;
  };
  std::vector<Single> singles;
  {
    std::set<std::string> seen;
    std::vector<Matrix<K>> rad = radical_spans(cur);
    for (int i = 0; i < coll.size(); ++i) {
      if (coll.items[i].total_dim() > cur.total_dim()) continue;
      auto lines = scalar_lines(hom_space(cur, coll.items[i]), budget.combo_limit, "quotient layer");
      if (!lines) {
        exhaustive = false;
        continue;
      }
      for (RepMap<K>& f : *lines) {
        if (!is_epi(f)) continue;
        if (!seen.insert(kernel_key(f)).second) continue;
        bool flat_top = true;
        for (size_t v = 0; v < f.blocks.size(); ++v)
          if (!(f.blocks[v] * rad[v]).is_zero()) flat_top = false;
        singles.push_back({i, std::move(f), flat_top});
      }
    }
  }
  std::stable_sort(singles.begin(), singles.end(), [](const Single& a, const Single& b) {
    if (a.flat_top != b.flat_top) return a.flat_top;
    return a.piece < b.piece;
  });
  std::vector<LayerCand<K>> out;
  int s = static_cast<int>(singles.size());
  if (s == 0) return out;
  std::set<std::vector<int>> subsets;
  bool complete = s <= 60 && ((1LL << s) - 1) <= budget.subset_limit;
  if (complete) {
    for (std::int64_t mask = 1; mask < (1LL << s); ++mask) {
      std::vector<int> idx;
      for (int b = 0; b < s; ++b)
        if (mask >> b & 1) idx.push_back(b);
      subsets.insert(std::move(idx));
    }
  } else {
    exhaustive = false;
    std::vector<int> stack;
    std::vector<std::pair<int, const RepMap<K>*>> chosen;
    for (int b = 0; b < s; ++b) {
      chosen.push_back({singles[b].piece, &singles[b].f});
      if (is_epi(joint_epi(coll, cur, chosen).map)) {
        stack.push_back(b);
        subsets.insert(stack);
      } else {
        chosen.pop_back();
      }
    }
    for (size_t drop = 0; drop + 1 < stack.size(); ++drop) {
      std::vector<int> idx;
      for (size_t t = 0; t < stack.size(); ++t)
        if (t != drop) idx.push_back(stack[t]);
      subsets.insert(std::move(idx));
    }
    for (int b = 0; b < s && b < 64; ++b) subsets.insert(std::vector<int>{b});
  }
  std::set<std::string> seen_layers;
  for (const std::vector<int>& idx : subsets) {
    std::vector<std::pair<int, const RepMap<K>*>> chosen;
    for (int b : idx) chosen.push_back({singles[b].piece, &singles[b].f});
    LayerCand<K> cand = joint_epi(coll, cur, chosen);
    if (!is_epi(cand.map)) continue;
    if (!seen_layers.insert(kernel_key(cand.map)).second) continue;
    out.push_back(std::move(cand));
  }
  std::stable_sort(out.begin(), out.end(), [](const LayerCand<K>& a, const LayerCand<K>& b) {
    return a.map.tgt.total_dim() > b.map.tgt.total_dim();
  });
  return out;
}

template <class K>
std::string state_key(const Rep<K>& m, size_t t) {
  std::string k = std::to_string(t) + "#";
  for (int d : m.dims) k += std::to_string(d) + ",";
  for (const Matrix<K>& a : m.act) k += matrix_key(a);
  return k;
}

template <class K>
bool bottom_up_rec(const Rep<K>& cur, const std::vector<Collection<K>>& layers, size_t t,
                   std::vector<ExStep<K>>& steps, long& nodes, const ExBudget& budget,
                   bool& exhaustive, std::set<std::string>& visited) {
  if (cur.total_dim() == 0) return true;
  if (t == layers.size()) return false;
  if (++nodes > budget.node_limit) {
    exhaustive = false;
    return false;
  }
  if (!visited.insert(state_key(cur, t)).second) return false;
  for (LayerCand<K>& cand : sub_layers(cur, layers[t], budget, exhaustive)) {
    QuotRep<K> q = quotient_by_spans(cur, cand.map.blocks);
    steps.push_back(ExStep<K>{std::move(cand.pieces), std::move(cand.map), q.quo});
    if (bottom_up_rec(q.quo, layers, t + 1, steps, nodes, budget, exhaustive, visited)) return true;
    steps.pop_back();
  }
  // the layer may be left empty
  return bottom_up_rec(cur, layers, t + 1, steps, nodes, budget, exhaustive, visited);
}

template <class K>
bool top_down_rec(const Rep<K>& cur, const std::vector<Collection<K>>& layers, size_t left,
                  long& nodes, const ExBudget& budget, bool& exhaustive,
                  std::set<std::string>& visited) {
  if (cur.total_dim() == 0) return true;
  if (left == 0) return false;
  if (++nodes > budget.node_limit) {
    exhaustive = false;
    return false;
  }
  if (!visited.insert(state_key(cur, left)).second) return false;
  for (LayerCand<K>& cand : quo_layers(cur, layers[left - 1], budget, exhaustive)) {
    SubRep<K> ker = kernel_rep(cand.map);
    if (top_down_rec(ker.sub, layers, left - 1, nodes, budget, exhaustive, visited)) return true;
  }
  return top_down_rec(cur, layers, left - 1, nodes, budget, exhaustive, visited);
}

}  // namespace detail_ex

/* Filtration search peeling submodule layers: layer t must be a direct sum of
   members of layers[t], bottom first. A positive verdict carries a
   certificate; a negative one is certified only when exhaustive. */
template <class K>
ExResult<K> star_membership_bottom_up(const Rep<K>& m, const std::vector<Collection<K>>& layers,
                                      const ExBudget& budget = ExBudget{}) {
  validate_rep(m);
  for (const Collection<K>& c : layers)
    if (!c.base->same_as(*m.base)) throw input_error("membership: collection over a different base");
  ExResult<K> out;
  std::vector<ExStep<K>> steps;
  long nodes = 0;
  std::set<std::string> visited;
  out.member =
      detail_ex::bottom_up_rec(m, layers, 0, steps, nodes, budget, out.exhaustive, visited);
  if (out.member) out.cert = ExCert<K>{std::move(steps)};
  return out;
}

/* Same predicate evaluated by peeling quotient layers, top first. */
template <class K>
ExResult<K> star_membership_top_down(const Rep<K>& m, const std::vector<Collection<K>>& layers,
                                     const ExBudget& budget = ExBudget{}) {
  validate_rep(m);
  for (const Collection<K>& c : layers)
    if (!c.base->same_as(*m.base)) throw input_error("membership: collection over a different base");
  ExResult<K> out;
  long nodes = 0;
  std::set<std::string> visited;
  out.member =
      detail_ex::top_down_rec(m, layers, layers.size(), nodes, budget, out.exhaustive, visited);
  return out;
}

/* Membership in the k-fold extension closure of the collection: a filtration
   with at most k+1 layers from add of the collection. */
template <class K>
ExResult<K> ex_membership(const Rep<K>& m, const Collection<K>& coll, int k,
                          const ExBudget& budget = ExBudget{}) {
  if (k < 0) throw input_error("membership depth must be nonnegative");
  std::vector<Collection<K>> layers(static_cast<size_t>(k) + 1, coll);
  return star_membership_bottom_up(m, layers, budget);
}

namespace detail_ex {

template <class K>
bool reps_match(const Rep<K>& a, const Rep<K>& b) {
  if (a.dims != b.dims) return false;
  for (size_t i = 0; i < a.act.size(); ++i)
    if (matrix_key(a.act[i]) != matrix_key(b.act[i])) return false;
  return true;
}

}  // namespace detail_ex

/* Re-run the quotient chain of a certificate and confirm every step. */
template <class K>
bool replay_ex_cert(const Rep<K>& m, const Collection<K>& coll, const ExCert<K>& cert) {
  Rep<K> cur = m;
  for (const ExStep<K>& st : cert.steps) {
    std::vector<Rep<K>> parts;
    for (int i : st.pieces) {
      if (i < 0 || i >= coll.size()) return false;
      parts.push_back(coll.items[i]);
    }
    if (parts.empty()) return false;
    SumRep<K> sum = direct_sum(coll.base, parts);
    if (!detail_ex::reps_match(st.inc.src, sum.sum)) return false;
    if (!detail_ex::reps_match(st.inc.tgt, cur)) return false;
    if (st.inc.blocks.size() != cur.dims.size()) return false;
    for (size_t v = 0; v < cur.dims.size(); ++v)
      if (st.inc.blocks[v].rows() != cur.dims[v] || st.inc.blocks[v].cols() != sum.sum.dims[v])
        return false;
    if (!repmap_commutes(st.inc) || !is_mono(st.inc)) return false;
    QuotRep<K> q = quotient_by_spans(cur, st.inc.blocks);
    if (!detail_ex::reps_match(q.quo, st.quo)) return false;
    cur = st.quo;
  }
  return cur.total_dim() == 0;
}

/* ------------------------------------------------------------------ */
/* flat structures on the canonical induced carrier                     */

/* Carrier sum_i A e_i (x) V_i with the left regular action and the evident
   reduction onto (+)_i V_i. The structure blocks for the target arrows that
   commute with the left action and lift the collection action form an affine
   space, solved once here. Structures picked from it have projective carrier
   by construction, but target relations still have to be checked per point. */
template <class K>
struct FlatFamily {
  std::shared_ptr<const PathAlgebra<K>> alg;
  Collection<K> sigma;                      // one member per algebra vertex
  SumRep<K> sigma_sum;
  std::vector<std::vector<int>> src_basis;  // algebra basis ids by source vertex
  std::vector<int> dims;                    // carrier dimension per target vertex
  std::vector<std::vector<Matrix<K>>> rho;  // per algebra basis element, per target vertex
  std::vector<Matrix<K>> pi;                // reduction blocks per target vertex
  std::vector<Matrix<K>> particular;        // per target arrow
  std::vector<std::vector<Matrix<K>>> homogeneous;  // parameter directions
  std::vector<std::vector<Matrix<K>>> gauge;        // reduction-fixing endomorphism directions

  int param_dim() const { return static_cast<int>(homogeneous.size()); }
  int gauge_dim() const { return static_cast<int>(gauge.size()); }

  Rep<K> carrier_at(const std::vector<K>& coeffs) const {
    check_internal(static_cast<int>(coeffs.size()) == param_dim(),
                   "flat family: coefficient count mismatch");
    Rep<K> m;
    m.base = sigma.base;
    m.dims = dims;
    m.act = particular;
    for (size_t a = 0; a < m.act.size(); ++a)
      for (int r = 0; r < param_dim(); ++r)
        if (!f_is_zero(coeffs[r])) m.act[a] = m.act[a] + homogeneous[r][a].scaled(coeffs[r]);
    return m;
  }

  AObject<K> object_of(Rep<K> carrier) const {
    AObject<K> z;
    z.alg = alg;
    z.carrier = std::move(carrier);
    for (int g = 0; g < alg->dim(); ++g) z.rho.push_back(RepMap<K>{z.carrier, z.carrier, rho[g]});
    return z;
  }

  AObject<K> object_at(const std::vector<K>& coeffs) const { return object_of(carrier_at(coeffs)); }

  RepMap<K> reduction_of(const AObject<K>& z) const {
    return RepMap<K>{z.carrier, sigma_sum.sum, pi};
  }
};

template <class K>
FlatFamily<K> flat_family(std::shared_ptr<const PathAlgebra<K>> alg, Collection<K> sigma,
                          const std::string& at = "") {
  FlatFamily<K> fam;
  fam.alg = std::move(alg);
  const PathAlgebra<K>& A = *fam.alg;
  if (static_cast<int>(sigma.items.size()) != A.n_vertices())
    throw input_error("flat family: collection needs one member per algebra vertex", at);
  if (f_characteristic(A.proto()) != f_characteristic(sigma.base->proto()))
    throw input_error("flat family: mismatched coefficient fields", at);
  fam.sigma = std::move(sigma);
  const BasePtr<K>& tb = fam.sigma.base;
  const Quiver& rq = tb->quiver();
  const K proto = f_zero(A.proto());
  int n = A.n_vertices(), nw = rq.n_vertices();

  fam.src_basis.assign(n, {});
  std::vector<std::pair<int, int>> pos(A.dim());  // basis id -> (source vertex, position)
  for (int b = 0; b < A.dim(); ++b) {
    int i = A.basis_source(b);
    pos[b] = {i, static_cast<int>(fam.src_basis[i].size())};
    fam.src_basis[i].push_back(b);
  }

  // carrier layout: (source vertex, path position, member coordinate)
  std::vector<std::vector<int>> voff(nw, std::vector<int>(n, 0));
  fam.dims.assign(nw, 0);
  for (int w = 0; w < nw; ++w) {
    int off = 0;
    for (int i = 0; i < n; ++i) {
      voff[w][i] = off;
      off += static_cast<int>(fam.src_basis[i].size()) * fam.sigma.items[i].dims[w];
    }
    fam.dims[w] = off;
  }
  auto coord = [&](int w, int i, int ppos, int t) {
    return voff[w][i] + ppos * fam.sigma.items[i].dims[w] + t;
  };

  // left action of every algebra basis element
  for (int g = 0; g < A.dim(); ++g) {
    std::vector<Matrix<K>> blocks;
    for (int w = 0; w < nw; ++w) blocks.emplace_back(fam.dims[w], fam.dims[w], proto);
    for (int i = 0; i < n; ++i)
      for (int ppos = 0; ppos < static_cast<int>(fam.src_basis[i].size()); ++ppos) {
        auto prod = A.mul(A.basis_elt(g), A.basis_elt(fam.src_basis[i][ppos]));
        for (int b = 0; b < A.dim(); ++b) {
          if (f_is_zero(prod[b])) continue;
          check_internal(pos[b].first == i, "flat family: action left the source block");
          for (int w = 0; w < nw; ++w)
            for (int t = 0; t < fam.sigma.items[i].dims[w]; ++t)
              blocks[w].at(coord(w, i, pos[b].second, t), coord(w, i, ppos, t)) = prod[b];
        }
      }
    fam.rho.push_back(std::move(blocks));
  }

  // reduction onto the member sum: idempotent coordinates survive
  fam.sigma_sum = direct_sum(tb, fam.sigma.items);
  for (int w = 0; w < nw; ++w) {
    Matrix<K> b(fam.sigma_sum.sum.dims[w], fam.dims[w], proto);
    int soff = 0;
    for (int i = 0; i < n; ++i) {
      int epos = pos[A.idempotent_index(i)].second;
      for (int t = 0; t < fam.sigma.items[i].dims[w]; ++t)
        b.at(soff + t, coord(w, i, epos, t)) = f_one(proto);
      soff += fam.sigma.items[i].dims[w];
    }
    fam.pi.push_back(std::move(b));
  }

  std::vector<int> gens;
  for (int v = 0; v < n; ++v) gens.push_back(A.idempotent_index(v));
  for (int a = 0; a < A.quiver().n_arrows(); ++a) gens.push_back(A.arrow_basis_index(a));
  const K neg = f_zero(proto) - f_one(proto);

  // affine constraints on the target arrow blocks
  LinSystem<K> sys(proto);
  std::vector<int> hx;
  for (int a = 0; a < rq.n_arrows(); ++a)
    hx.push_back(sys.add_block(fam.dims[rq.arrow(a).src], fam.dims[rq.arrow(a).dst]));
  for (int a = 0; a < rq.n_arrows(); ++a) {
    int u = rq.arrow(a).src, v = rq.arrow(a).dst;
    for (int g : gens) {
      std::vector<typename LinSystem<K>::Term> terms;
      terms.push_back({fam.rho[g][u], hx[a], Matrix<K>::identity(fam.dims[v], proto)});
      terms.push_back({Matrix<K>::identity(fam.dims[u], proto).scaled(neg), hx[a], fam.rho[g][v]});
      sys.add_equation(terms, Matrix<K>(fam.dims[u], fam.dims[v], proto));
    }
    std::vector<typename LinSystem<K>::Term> red;
    red.push_back({fam.pi[u], hx[a], Matrix<K>::identity(fam.dims[v], proto)});
    sys.add_equation(red, fam.sigma_sum.sum.act[a] * fam.pi[v]);
  }
  typename LinSystem<K>::Solution sol = sys.solve_all();
  check_internal(sol.solvable, "flat family: induced structure missing");
  fam.particular = std::move(sol.particular);
  fam.homogeneous = std::move(sol.homogeneous);

  // left-linear endomorphism directions killed by the reduction; adding the
  // identity gives exactly the automorphisms that fix the reduction
  LinSystem<K> gsys(proto);
  std::vector<int> hh;
  for (int w = 0; w < nw; ++w) hh.push_back(gsys.add_block(fam.dims[w], fam.dims[w]));
  for (int w = 0; w < nw; ++w) {
    for (int g : gens) {
      std::vector<typename LinSystem<K>::Term> terms;
      terms.push_back({fam.rho[g][w], hh[w], Matrix<K>::identity(fam.dims[w], proto)});
      terms.push_back({Matrix<K>::identity(fam.dims[w], proto).scaled(neg), hh[w], fam.rho[g][w]});
      gsys.add_equation(terms, Matrix<K>(fam.dims[w], fam.dims[w], proto));
    }
    std::vector<typename LinSystem<K>::Term> red;
    red.push_back({fam.pi[w], hh[w], Matrix<K>::identity(fam.dims[w], proto)});
    gsys.add_equation(red, Matrix<K>(fam.sigma_sum.sum.dims[w], fam.dims[w], proto));
  }
  typename LinSystem<K>::Solution gsol = gsys.solve_all();
  check_internal(gsol.solvable, "flat family: gauge system");
  fam.gauge = std::move(gsol.homogeneous);
  return fam;
}

/* ------------------------------------------------------------------ */
/* exhaustive deformation enumeration over a finite coefficient field   */

template <class K>
struct NcdefOrbit {
  long size = 0;
  long rep_index = 0;  // index into elements of the key-least member
  DeformationElement<K> elem;
};

template <class K>
struct NcdefResult {
  long raw = 0;
  int param_dim = 0;
  int gauge_dim = 0;
  std::vector<AObject<K>> elements;   // structures satisfying the target relations
  std::vector<NcdefOrbit<K>> orbits;  // gauge orbits in order of first appearance
  FlatFamily<K> family;
};

template <class K>
NcdefResult<K> ncdef_enumerate(std::shared_ptr<const PathAlgebra<K>> alg, Collection<K> sigma,
                               long budget, const std::string& at = "") {
  NcdefResult<K> out{};
  out.family = flat_family(std::move(alg), std::move(sigma), at);
  FlatFamily<K>& fam = out.family;
  const K proto = f_zero(fam.alg->proto());
  std::int64_t p = f_characteristic(proto);
  if (p == 0) throw input_error("deformation enumeration needs a finite coefficient field", at);
  out.param_dim = fam.param_dim();
  out.gauge_dim = fam.gauge_dim();
  auto pow_checked = [&](int e, const char* what) {
    long t = 1;
    for (int r = 0; r < e; ++r) {
      if (t > budget / p) throw input_error(std::string(what) + " exceeds the enumeration budget", at);
      t *= p;
    }
    return t;
  };
  pow_checked(out.param_dim, "parameter space");
  pow_checked(out.gauge_dim, "gauge group");
  std::vector<K> sc;
  for (long v = 0; v < p; ++v) sc.push_back(f_from_int(v, proto));
  const Quiver& rq = fam.sigma.base->quiver();
  auto key_of = [](const std::vector<Matrix<K>>& act) {
    std::string k;
    for (const Matrix<K>& m : act) k += matrix_key(m);
    return k;
  };

  std::map<std::string, long> index_of;
  std::vector<std::vector<Matrix<K>>> acts;
  std::vector<std::string> keys;
  {
    std::vector<int> digits(out.param_dim, 0);
    do {
      std::vector<K> coeffs;
      for (int r = 0; r < out.param_dim; ++r) coeffs.push_back(sc[digits[r]]);
      Rep<K> carrier = fam.carrier_at(coeffs);
      if (!relations_hold(carrier)) continue;
      std::string k = key_of(carrier.act);
      index_of[k] = static_cast<long>(out.elements.size());
      keys.push_back(std::move(k));
      acts.push_back(carrier.act);
      out.elements.push_back(fam.object_of(std::move(carrier)));
    } while (detail_ex::bump(digits, p));
  }
  out.raw = static_cast<long>(out.elements.size());

  struct GaugeElt {
    std::vector<Matrix<K>> g, ginv;
  };
  std::vector<GaugeElt> group;
  {
    std::vector<int> digits(out.gauge_dim, 0);
    do {
      GaugeElt ge;
      for (int w = 0; w < rq.n_vertices(); ++w) {
        Matrix<K> m = Matrix<K>::identity(fam.dims[w], proto);
        for (int r = 0; r < out.gauge_dim; ++r)
          if (digits[r] != 0) m = m + fam.gauge[r][w].scaled(sc[digits[r]]);
        std::optional<Matrix<K>> inv = inverse(m);
        check_internal(inv.has_value(), "ncdef: gauge element not invertible");
        ge.g.push_back(std::move(m));
        ge.ginv.push_back(std::move(*inv));
      }
      group.push_back(std::move(ge));
    } while (detail_ex::bump(digits, p));
  }

  std::vector<char> claimed(out.elements.size(), 0);
  long covered = 0;
  for (long e = 0; e < out.raw; ++e) {
    if (claimed[e]) continue;
    std::set<long> orbit;
    long best = e;
    std::string best_key = keys[e];
    for (const GaugeElt& ge : group) {
      std::vector<Matrix<K>> moved;
      for (int a = 0; a < rq.n_arrows(); ++a) {
        int u = rq.arrow(a).src, v = rq.arrow(a).dst;
        moved.push_back(ge.g[u] * acts[e][a] * ge.ginv[v]);
      }
      std::string k = key_of(moved);
      auto it = index_of.find(k);
      check_internal(it != index_of.end(), "ncdef: gauge image escaped the solution set");
      orbit.insert(it->second);
      if (k < best_key) {
        best_key = k;
        best = it->second;
      }
    }
    NcdefOrbit<K> orb;
    orb.size = static_cast<long>(orbit.size());
    orb.rep_index = best;
    orb.elem = make_deformation_element(out.elements[best], fam.reduction_of(out.elements[best]), at);
    for (long idx : orbit) claimed[idx] = 1;
    covered += orb.size;
    out.orbits.push_back(std::move(orb));
  }
  check_internal(covered == out.raw, "ncdef: orbits do not partition the solutions");
  return out;
}

/* ------------------------------------------------------------------ */
/* fully faithful test for the functor attached to a flat structure     */

enum class FfStatus { FullyFaithful, FailsHom, FailsExtInjectivity };

template <class K>
struct FfReport {
  FfStatus status = FfStatus::FullyFaithful;
  int i = -1, j = -1;      // offending vertex pair
  std::vector<K> witness;  // extension class coordinates sent to zero
};

/* Full faithfulness on the module category reduces to the fibres of the
   simples: scalar endomorphisms, no cross homs, and injective transport on
   first extensions. */
template <class K>
FfReport<K> ff_criterion(const AObject<K>& z, const std::string& at = "") {
  FlatCheck<K> fc = is_flat(z);
  if (!fc.flat) throw input_error("fully faithful test needs a flat structure: " + fc.detail, at);
  BasePtr<K> ba = RepBase<K>::of_algebra(z.alg);
  const K proto = f_zero(z.proto());
  int n = z.alg->n_vertices();
  std::vector<Rep<K>> fib;
  for (int i = 0; i < n; ++i) fib.push_back(tensor_apply(z, simple_rep(ba, i)).out);
  FfReport<K> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (hom_dim(fib[i], fib[j]) != (i == j ? 1 : 0)) {
        out.status = FfStatus::FailsHom;
        out.i = i;
        out.j = j;
        return out;
      }
  for (int i = 0; i < n; ++i) {
    Rep<K> si = simple_rep(ba, i);
    auto ctx = make_syzygy_context(si);
    for (int j = 0; j < n; ++j) {
      Ext1<K> ea(si, simple_rep(ba, j), ctx);
      int da = ea.dim();
      if (da == 0) continue;
      Ext1<K> er(fib[i], fib[j]);
      Matrix<K> phi(er.dim(), da, proto);
      for (int c = 0; c < da; ++c) {
        std::vector<K> cls(da, f_zero(proto));
        cls[c] = f_one(proto);
        Ses<K> s = ea.ses_of_class(cls);
        RepMap<K> ti = tensor_map(z, s.inc);
        RepMap<K> tp = tensor_map(z, s.prj);
        tp.src = ti.tgt;  // shared middle, recomputed identically
        std::vector<K> img = er.class_of_ses(Ses<K>{std::move(ti), std::move(tp)});
        for (int r = 0; r < er.dim(); ++r) phi.at(r, c) = img[r];
      }
      if (static_cast<int>(rref(phi).pivots.size()) < da) {
        out.status = FfStatus::FailsExtInjectivity;
        out.i = i;
        out.j = j;
        Matrix<K> kb = kernel_basis(phi);
        for (int r = 0; r < kb.rows(); ++r) out.witness.push_back(kb.at(r, 0));
        return out;
      }
    }
  }
  return out;
}

}  // namespace qalg
