#pragma once

/* Deterministic random instances for property tests. Every generator draws
   from a caller-owned engine so each test controls its own stream and stays
   reproducible under a fixed seed. */

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qalg/aobject.hpp"
#include "qalg/deform.hpp"

namespace qalg::testsupport {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

inline std::vector<std::string> vertex_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

/* Acyclic quiver: arrows run from higher to lower vertex index, so the path
   algebra is finite dimensional without relations. */
inline Quiver random_acyclic_quiver(Rng& rng, int max_vertices, int max_arrows) {
  int n = pick(rng, 2, max_vertices);
  int m = pick(rng, 1, max_arrows);
  std::vector<Arrow> arrows;
  for (int a = 0; a < m; ++a) {
    int src = pick(rng, 1, n - 1);
    int dst = pick(rng, 0, src - 1);
    arrows.push_back(Arrow{"a" + std::to_string(a), src, dst});
  }
  return Quiver(vertex_names(n), arrows);
}

/* Arbitrary quiver, cycles allowed; for bare relation-free bases. */
inline Quiver random_quiver(Rng& rng, int max_vertices, int max_arrows) {
  int n = pick(rng, 1, max_vertices);
  int m = pick(rng, 1, max_arrows);
  std::vector<Arrow> arrows;
  for (int a = 0; a < m; ++a)
    arrows.push_back(Arrow{"a" + std::to_string(a), pick(rng, 0, n - 1), pick(rng, 0, n - 1)});
  return Quiver(vertex_names(n), arrows);
}

/* Path algebra on a random acyclic quiver, sometimes with one monomial
   relation killing a length-two basis path. Resamples until dim <= max_dim. */
template <class K>
std::shared_ptr<const PathAlgebra<K>> random_algebra(Rng& rng, const K& proto, int max_vertices,
                                                     int max_arrows, int max_dim) {
  for (int tries = 0; tries < 500; ++tries) {
    Quiver q = random_acyclic_quiver(rng, max_vertices, max_arrows);
    auto alg = PathAlgebra<K>::build(q, {}, proto);
    if (alg->dim() > max_dim) continue;
    std::vector<int> len2;
    for (int b = 0; b < alg->dim(); ++b)
      if (alg->basis_length(b) == 2) len2.push_back(b);
    if (!len2.empty() && pick(rng, 0, 2) == 0) {
      Relation<K> r;
      r.terms.push_back({f_one(proto), alg->basis_path(len2[pick(rng, 0, (int)len2.size() - 1)])});
      alg = PathAlgebra<K>::build(q, {r}, proto);
    }
    if (alg->dim() <= max_dim) return alg;
  }
  throw internal_error("random_algebra: resample limit hit");
}

template <class K>
Matrix<K> random_matrix(Rng& rng, int rows, int cols, const K& proto) {
  Matrix<K> m(rows, cols, proto);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = f_random(rng, proto);
  return m;
}

/* Module over a bare relation-free base: random dims and arbitrary arrow
   matrices. */
template <class K>
Rep<K> random_bare_module(Rng& rng, const BasePtr<K>& base, int max_at_vertex) {
  const Quiver& q = base->quiver();
  Rep<K> m;
  m.base = base;
  const K& proto = base->proto();
  for (int v = 0; v < q.n_vertices(); ++v) m.dims.push_back(pick(rng, 0, max_at_vertex));
  for (int a = 0; a < q.n_arrows(); ++a)
    m.act.push_back(random_matrix(rng, m.dims[q.arrow(a).src], m.dims[q.arrow(a).dst], proto));
  validate_rep(m);
  return m;
}

/* Module over an algebra base: cokernel of a random map between random
   projective sums. Resamples until 0 < total dim <= max_total. */
template <class K>
Rep<K> random_algebra_module(Rng& rng, const BasePtr<K>& base, int max_total) {
  int nv = base->quiver().n_vertices();
  for (int tries = 0; tries < 200; ++tries) {
    std::vector<Rep<K>> gens, rels;
    int ng = pick(rng, 1, 2);
    for (int i = 0; i < ng; ++i) gens.push_back(projective_rep(base, pick(rng, 0, nv - 1)));
    int nr = pick(rng, 0, 2);
    for (int i = 0; i < nr; ++i) rels.push_back(projective_rep(base, pick(rng, 0, nv - 1)));
    SumRep<K> p0 = direct_sum(base, gens);
    SumRep<K> p1 = direct_sum(base, rels);
    std::vector<RepMap<K>> hs = hom_space(p1.sum, p0.sum);
    RepMap<K> f = zero_map(p1.sum, p0.sum);
    for (const RepMap<K>& h : hs) f = add_maps(f, scale_map(f_random(rng, base->proto()), h));
    Rep<K> m = cokernel_rep(f).quo;
    int total = 0;
    for (int d : m.dims) total += d;
    if (total > 0 && total <= max_total) return m;
  }
  throw internal_error("random_algebra_module: resample limit hit");
}

/* Random element of Hom(m, n); zero when the hom space is. */
template <class K>
RepMap<K> random_hom(Rng& rng, const Rep<K>& m, const Rep<K>& n) {
  RepMap<K> f = zero_map(m, n);
  for (const RepMap<K>& h : hom_space(m, n)) {
    f = add_maps(f, scale_map(f_random(rng, m.proto()), h));
  }
  return f;
}

/* Unit of a path algebra: nonzero coefficient on every vertex idempotent plus
   a random radical part. */
template <class K>
typename PathAlgebra<K>::Elt random_unit(Rng& rng, const PathAlgebra<K>& alg) {
  const K& proto = alg.proto();
  typename PathAlgebra<K>::Elt u = alg.zero_elt();
  for (int v = 0; v < alg.n_vertices(); ++v) {
    K c = f_zero(proto);
    while (f_is_zero(c)) c = f_random(rng, proto);
    u[alg.idempotent_index(v)] = c;
  }
  for (int b = 0; b < alg.dim(); ++b)
    if (alg.basis_length(b) >= 1) u[b] = f_random(rng, proto);
  check_internal(alg.is_unit(u), "random_unit: vertex coefficients must be nonzero");
  return u;
}

/* Random collection of bare modules indexed by the acting algebra's vertices,
   sized to keep flat-family solves small. */
template <class K>
Collection<K> random_attachment(Rng& rng, std::shared_ptr<const PathAlgebra<K>> alg,
                                const BasePtr<K>& target, int max_at_vertex) {
  std::vector<Rep<K>> parts;
  for (int i = 0; i < alg->n_vertices(); ++i) {
    for (int tries = 0;; ++tries) {
      Rep<K> m = random_bare_module(rng, target, max_at_vertex);
      if (!m.is_zero()) {
        parts.push_back(std::move(m));
        break;
      }
      check_internal(tries < 200, "random_attachment: resample limit hit");
    }
  }
  return make_collection(target, parts);
}

/* Random flat object: a point of the flat family over a random attachment. */
template <class K>
AObject<K> random_flat_object(Rng& rng, std::shared_ptr<const PathAlgebra<K>> alg,
                              const Collection<K>& sigma) {
  FlatFamily<K> fam = flat_family(alg, sigma);
  std::vector<K> coeffs;
  for (int i = 0; i < fam.param_dim(); ++i) coeffs.push_back(f_random(rng, alg->proto()));
  return fam.object_at(coeffs);
}

}  // namespace qalg::testsupport
