#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qalg/algebra.hpp"
#include "qalg/algebra_hom.hpp"
#include "qalg/ext.hpp"
#include "qalg/invertible.hpp"
#include "qalg/linsys.hpp"
#include "qalg/rep.hpp"

namespace qalg {

/* An object of the target module category carrying a left action of a second
   basic algebra. The carrier is a representation Z of the target base; the
   action assigns to every basis element of the acting algebra an endomorphism
   of Z, unital and multiplicative against the algebra's structure constants. */
template <class K>
struct AObject {
  std::shared_ptr<const PathAlgebra<K>> alg;
  Rep<K> carrier;
  std::vector<RepMap<K>> rho;  // one endomorphism of the carrier per algebra basis element

  const K& proto() const { return carrier.proto(); }
};

template <class K>
RepMap<K> rho_of(const AObject<K>& z, const typename PathAlgebra<K>::Elt& x) {
  RepMap<K> out = zero_map(z.carrier, z.carrier);
  for (size_t b = 0; b < z.rho.size(); ++b) {
    if (f_is_zero(x[b])) continue;
    out = add_maps(out, scale_map(x[b], z.rho[b]));
  }
  return out;
}

template <class K>
void validate_aobject(const AObject<K>& z, const std::string& at = "") {
  if (!z.alg) throw input_error("object has no acting algebra", at);
  validate_rep(z.carrier, at);
  const PathAlgebra<K>& A = *z.alg;
  if (static_cast<int>(z.rho.size()) != A.dim())
    throw input_error("action table size differs from the algebra dimension", at);
  const Quiver& rq = z.carrier.base->quiver();
  for (int b = 0; b < A.dim(); ++b) {
    if (static_cast<int>(z.rho[b].blocks.size()) != rq.n_vertices())
      throw input_error("action block count differs from the carrier base", at);
    for (int v = 0; v < rq.n_vertices(); ++v)
      if (z.rho[b].blocks[v].rows() != z.carrier.dims[v] ||
          z.rho[b].blocks[v].cols() != z.carrier.dims[v])
        throw input_error("action block shape differs from the carrier dimensions", at);
    RepMap<K> f{z.carrier, z.carrier, z.rho[b].blocks};
    if (!repmap_commutes(f))
      throw input_error("action of a basis element is not a carrier endomorphism", at);
  }
  RepMap<K> unit = zero_map(z.carrier, z.carrier);
  for (int v = 0; v < A.n_vertices(); ++v)
    unit = add_maps(unit, z.rho[A.idempotent_index(v)]);
  if (!maps_equal(unit, identity_map(z.carrier)))
    throw input_error("vertex idempotents do not act as a resolution of the identity", at);
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      RepMap<K> lhs = compose_maps(z.rho[i], z.rho[j]);
      RepMap<K> rhs = rho_of(z, A.mul(A.basis_elt(i), A.basis_elt(j)));
      if (!maps_equal(lhs, rhs))
        throw input_error("action is not multiplicative on the basis", at);
    }
}

/* Generate the full action table from idempotent and arrow actions: the image
   of a basis path is the function-style composite of its arrow actions. */
template <class K>
AObject<K> aobject_from_generators(std::shared_ptr<const PathAlgebra<K>> alg, Rep<K> carrier,
                                   const std::vector<RepMap<K>>& idem_actions,
                                   const std::vector<RepMap<K>>& arrow_actions,
                                   const std::string& at = "") {
  AObject<K> z;
  z.alg = std::move(alg);
  z.carrier = std::move(carrier);
  const PathAlgebra<K>& A = *z.alg;
  if (static_cast<int>(idem_actions.size()) != A.n_vertices())
    throw input_error("one idempotent action per algebra vertex is required", at);
  if (static_cast<int>(arrow_actions.size()) != A.quiver().n_arrows())
    throw input_error("one arrow action per algebra arrow is required", at);
  for (int b = 0; b < A.dim(); ++b) {
    const Path& p = A.basis_path(b);
    RepMap<K> acc = idem_actions[path_source(A.quiver(), p)];
    for (int a : p.arrows) acc = compose_maps(arrow_actions[a], acc);
    acc.src = z.carrier;
    acc.tgt = z.carrier;
    z.rho.push_back(std::move(acc));
  }
  validate_aobject(z, at);
  return z;
}

/* Spans of rad(A) . Z per carrier vertex. */
template <class K>
std::vector<Matrix<K>> action_radical_spans(const AObject<K>& z) {
  const Quiver& rq = z.carrier.base->quiver();
  std::vector<Matrix<K>> spans;
  for (int v = 0; v < rq.n_vertices(); ++v) {
    Matrix<K> s(z.carrier.dims[v], 0, z.proto());
    for (int b = 0; b < z.alg->dim(); ++b)
      if (z.alg->basis_length(b) >= 1) s = Matrix<K>::hstack(s, z.rho[b].blocks[v]);
    spans.push_back(std::move(s));
  }
  return spans;
}

/* Semisimple reduction: the carrier modulo the radical action, as a quotient
   object of the target category. */
template <class K>
QuotRep<K> semisimple_reduction(const AObject<K>& z) {
  return quotient_by_spans(z.carrier, action_radical_spans(z));
}

/* The subobject e_i . Z of the carrier cut out by a vertex idempotent. */
template <class K>
SubRep<K> left_part(const AObject<K>& z, int i) {
  return sub_from_spans(z.carrier, z.rho[z.alg->idempotent_index(i)].blocks);
}

template <class K>
struct FlatCheck {
  bool flat = false;
  int witness_vertex = -1;  // acting-algebra vertex of the failing simple
  std::vector<int> top_mults;
  std::string detail;
};

/* Projectivity of the carrier as a left module over the acting algebra:
   compute the top multiplicities, compare against the dimensions of the
   matching projective cover, and check that the evident cover map built from
   top lifts is bijective. */
template <class K>
FlatCheck<K> is_flat(const AObject<K>& z) {
  const PathAlgebra<K>& A = *z.alg;
  const Quiver& rq = z.carrier.base->quiver();
  int n = A.n_vertices(), nw = rq.n_vertices();
  FlatCheck<K> out;
  std::vector<Matrix<K>> rad = action_radical_spans(z);
  /* top lifts per (algebra vertex, carrier vertex): columns completing a basis
     of e_i . rad(A)Z inside e_i . Z */
  std::vector<std::vector<Matrix<K>>> lifts(n);
  out.top_mults.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const RepMap<K>& ei = z.rho[A.idempotent_index(i)];
    for (int w = 0; w < nw; ++w) {
      Matrix<K> part = column_space_basis(ei.blocks[w]);
      Matrix<K> radpart = column_space_basis(ei.blocks[w] * rad[w]);
      /* pivot columns of [radpart | part] beyond the radical block are lifts
         of a top basis */
      Matrix<K> cand = Matrix<K>::hstack(radpart, part);
      RrefResult<K> e = rref(cand);
      Matrix<K> lift(z.carrier.dims[w], 0, z.proto());
      for (int p : e.pivots)
        if (p >= radpart.cols()) lift = Matrix<K>::hstack(lift, part.col(p - radpart.cols()));
      out.top_mults[i] += lift.cols();
      lifts[i].push_back(std::move(lift));
    }
  }
  /* dimension audit per acting-algebra vertex */
  for (int j = 0; j < n; ++j) {
    int have = 0;
    for (int w = 0; w < nw; ++w) have += rank(z.rho[A.idempotent_index(j)].blocks[w]);
    int want = 0;
    for (int b = 0; b < A.dim(); ++b)
      if (A.basis_target(b) == j) want += out.top_mults[A.basis_source(b)];
    if (have != want) {
      out.flat = false;
      out.witness_vertex = j;
      out.detail = "vertex component dimension " + std::to_string(have) +
                   " differs from the projective cover dimension " + std::to_string(want);
      return out;
    }
  }
  /* cover map: one column per (vertex, top lift, basis path from that vertex) */
  for (int w = 0; w < nw; ++w) {
    Matrix<K> cov(z.carrier.dims[w], 0, z.proto());
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < lifts[i][w].cols(); ++c) {
        Matrix<K> l = lifts[i][w].col(c);
        for (int b = 0; b < A.dim(); ++b)
          if (A.basis_source(b) == i) cov = Matrix<K>::hstack(cov, z.rho[b].blocks[w] * l);
      }
    if (cov.cols() != z.carrier.dims[w] || rank(cov) != z.carrier.dims[w]) {
      out.flat = false;
      out.witness_vertex = -1;
      for (int i = 0; i < n; ++i)
        if (lifts[i][w].cols() > 0) {
          out.witness_vertex = i;
          break;
        }
      out.detail = "cover map is not bijective on carrier vertex " + std::to_string(w);
      return out;
    }
  }
  out.flat = true;
  return out;
}

/* ---------------- projective presentations and the tensor functor ------- */

template <class K>
struct ProjSum {
  SumRep<K> sum;
  std::vector<int> verts;    // algebra vertex per summand
  std::vector<int> gen_row;  // row of the summand generator inside its own vertex component
};

template <class K>
int proj_generator_pos(const PathAlgebra<K>& A, int v) {
  int idem = A.idempotent_index(v), pos = 0;
  for (int b = 0; b < idem; ++b)
    if (A.basis_target(b) == v && A.basis_source(b) == v) ++pos;
  return pos;
}

template <class K>
ProjSum<K> projective_sum(const BasePtr<K>& base, std::vector<int> verts) {
  if (!base->is_algebra()) throw input_error("projective sums need an algebra base");
  ProjSum<K> out;
  std::vector<Rep<K>> parts;
  for (int v : verts) {
    parts.push_back(projective_rep(base, v));
    out.gen_row.push_back(proj_generator_pos(*base->algebra(), v));
  }
  out.sum = direct_sum(base, parts);
  out.verts = std::move(verts);
  return out;
}

/* Global coordinate of the generator of summand k inside the sum's component
   at the summand's vertex. */
template <class K>
int gen_coord(const ProjSum<K>& ps, int k) {
  int v = ps.verts[k];
  const Matrix<K>& inc = ps.sum.inc[k].blocks[v];
  for (int r = 0; r < inc.rows(); ++r)
    if (!f_is_zero(inc.at(r, ps.gen_row[k]))) return r;
  check_internal(false, "gen_coord: generator column is zero");
  return -1;
}

template <class K>
struct Presentation {
  ProjSum<K> p1, p0;
  RepMap<K> d;      // p1 -> p0
  RepMap<K> cover;  // p0 -> m
};

template <class K>
std::vector<int> cover_vertex_list(const CoverRep<K>& c) {
  std::vector<int> verts;
  for (size_t v = 0; v < c.tops.size(); ++v)
    for (int s = 0; s < c.tops[v]; ++s) verts.push_back(static_cast<int>(v));
  return verts;
}

template <class K>
Presentation<K> presentation_of(const Rep<K>& m) {
  Presentation<K> out;
  CoverRep<K> c0 = projective_cover(m);
  out.p0 = projective_sum(m.base, cover_vertex_list(c0));
  check_internal(equal_rep(out.p0.sum.sum, c0.proj), "presentation_of: cover layout drift");
  out.cover = c0.cover;
  SubRep<K> syz = kernel_rep(c0.cover);
  CoverRep<K> c1 = projective_cover(syz.sub);
  out.p1 = projective_sum(m.base, cover_vertex_list(c1));
  check_internal(equal_rep(out.p1.sum.sum, c1.proj), "presentation_of: syzygy layout drift");
  out.d = compose_maps(syz.inc, c1.cover);
  return out;
}

/* Entries of a map between projective sums as algebra elements: component
   (l, k) lies in e_{verts0[l]} A e_{verts1[k]} and is read off the image of
   the k-th generator. */
template <class K>
std::vector<std::vector<typename PathAlgebra<K>::Elt>> elt_matrix(
    const PathAlgebra<K>& A, const RepMap<K>& f, const ProjSum<K>& src, const ProjSum<K>& tgt) {
  size_t n1 = src.verts.size(), n0 = tgt.verts.size();
  std::vector<std::vector<typename PathAlgebra<K>::Elt>> x(
      n0, std::vector<typename PathAlgebra<K>::Elt>(n1, A.zero_elt()));
  for (size_t k = 0; k < n1; ++k) {
    int v = src.verts[k];
    Matrix<K> img = f.blocks[v].col(gen_coord(src, static_cast<int>(k)));
    for (size_t l = 0; l < n0; ++l) {
      Matrix<K> seg = tgt.sum.prj[l].blocks[v] * img;
      int row = 0;
      for (int b = 0; b < A.dim(); ++b)
        if (A.basis_target(b) == tgt.verts[l] && A.basis_source(b) == v)
          x[l][k][b] = seg.at(row++, 0);
      check_internal(row == seg.rows(), "elt_matrix: component size drift");
    }
  }
  return x;
}

template <class K>
struct TensorResult {
  Rep<K> out;                     // the tensored module
  QuotRep<K> coker;               // projection from the tensored degree-zero part
  SumRep<K> t0;                   // direct sum of carrier parts over p0
  std::vector<SubRep<K>> parts0;  // carrier part per p0 summand
};

/* Apply the carrier-valued tensor functor to a presentation: projective
   summands turn into idempotent parts of the carrier, the differential into
   action blocks, and the module into the cokernel. */
template <class K>
TensorResult<K> tensor_of_presentation(const AObject<K>& z, const Presentation<K>& pres) {
  const PathAlgebra<K>& A = *z.alg;
  TensorResult<K> out;
  std::vector<Rep<K>> reps0, reps1;
  std::vector<SubRep<K>> parts1;
  for (int v : pres.p0.verts) {
    out.parts0.push_back(left_part(z, v));
    reps0.push_back(out.parts0.back().sub);
  }
  for (int v : pres.p1.verts) {
    parts1.push_back(left_part(z, v));
    reps1.push_back(parts1.back().sub);
  }
  out.t0 = direct_sum(z.carrier.base, reps0);
  SumRep<K> t1 = direct_sum(z.carrier.base, reps1);
  auto x = elt_matrix(A, pres.d, pres.p1, pres.p0);
  RepMap<K> td = zero_map(t1.sum, out.t0.sum);
  for (size_t l = 0; l < pres.p0.verts.size(); ++l)
    for (size_t k = 0; k < pres.p1.verts.size(); ++k) {
      if (A.elt_is_zero(x[l][k])) continue;
      RepMap<K> block =
          factor_through_sub(out.parts0[l], compose_maps(rho_of(z, x[l][k]), parts1[k].inc));
      td = add_maps(td, compose_maps(out.t0.inc[l], compose_maps(block, t1.prj[k])));
    }
  out.coker = cokernel_rep(td);
  out.out = out.coker.quo;
  return out;
}

template <class K>
TensorResult<K> tensor_apply(const AObject<K>& z, const Rep<K>& m) {
  if (!m.base->is_algebra() || !m.base->algebra()->quiver().same_shape(z.alg->quiver()) ||
      m.base->algebra()->dim() != z.alg->dim())
    throw input_error("tensor: module is not over the acting algebra");
  return tensor_of_presentation(z, presentation_of(m));
}

/* Functoriality: lift a module map to the covers, tensor the lift, descend to
   the cokernels. Presentations are deterministic, so the endpoints agree with
   separate tensor_apply calls. */
template <class K>
RepMap<K> tensor_map(const AObject<K>& z, const RepMap<K>& f) {
  Presentation<K> pa = presentation_of(f.src), pb = presentation_of(f.tgt);
  const Quiver& q = f.src.base->quiver();
  const K& proto = f.src.proto();
  K neg = f_zero(proto) - f_one(proto);
  LinSystem<K> sys(proto);
  std::vector<int> h;
  for (int v = 0; v < q.n_vertices(); ++v)
    h.push_back(sys.add_block(pb.p0.sum.sum.dims[v], pa.p0.sum.sum.dims[v]));
  for (int a = 0; a < q.n_arrows(); ++a) {
    int u = q.arrow(a).src, v = q.arrow(a).dst;
    typename LinSystem<K>::Term t1{Matrix<K>::identity(pb.p0.sum.sum.dims[u], proto), h[u],
                                   pa.p0.sum.sum.act[a]};
    typename LinSystem<K>::Term t2{pb.p0.sum.sum.act[a].scaled(neg), h[v],
                                   Matrix<K>::identity(pa.p0.sum.sum.dims[v], proto)};
    sys.add_equation({t1, t2}, Matrix<K>(pb.p0.sum.sum.dims[u], pa.p0.sum.sum.dims[v], proto));
  }
  for (int v = 0; v < q.n_vertices(); ++v) {
    typename LinSystem<K>::Term t{pb.cover.blocks[v], h[v],
                                  Matrix<K>::identity(pa.p0.sum.sum.dims[v], proto)};
    sys.add_equation({t}, f.blocks[v] * pa.cover.blocks[v]);
  }
  typename LinSystem<K>::Solution sol = sys.solve_all();
  check_internal(sol.solvable, "tensor_map: projective lift failed");
  RepMap<K> f0{pa.p0.sum.sum, pb.p0.sum.sum, sol.particular};
  TensorResult<K> ta = tensor_of_presentation(z, pa), tb = tensor_of_presentation(z, pb);
  auto x = elt_matrix(*z.alg, f0, pa.p0, pb.p0);
  RepMap<K> tf0 = zero_map(ta.t0.sum, tb.t0.sum);
  for (size_t l = 0; l < pb.p0.verts.size(); ++l)
    for (size_t k = 0; k < pa.p0.verts.size(); ++k) {
      if (z.alg->elt_is_zero(x[l][k])) continue;
      RepMap<K> block =
          factor_through_sub(tb.parts0[l], compose_maps(rho_of(z, x[l][k]), ta.parts0[k].inc));
      tf0 = add_maps(tf0, compose_maps(tb.t0.inc[l], compose_maps(block, ta.t0.prj[k])));
    }
  return factor_through_quotient(ta.coker, compose_maps(tb.coker.prj, tf0));
}

/* The right-adjoint-side module: Hom(Z, Z') with the right action through the
   carrier endomorphisms. Component at an algebra vertex v is Hom(e_v Z, Z'). */
template <class K>
Rep<K> h_functor(const AObject<K>& z, const Rep<K>& zprime) {
  if (!z.carrier.base->same_as(*zprime.base))
    throw input_error("hom functor: objects over different bases");
  const PathAlgebra<K>& A = *z.alg;
  const Quiver& aq = A.quiver();
  std::vector<SubRep<K>> parts;
  std::vector<std::vector<RepMap<K>>> bases;
  Rep<K> out;
  out.base = RepBase<K>::of_algebra(z.alg);
  for (int v = 0; v < aq.n_vertices(); ++v) {
    parts.push_back(left_part(z, v));
    bases.push_back(hom_space(parts.back().sub, zprime));
    out.dims.push_back(static_cast<int>(bases.back().size()));
  }
  for (int a = 0; a < aq.n_arrows(); ++a) {
    int u = aq.arrow(a).src, v = aq.arrow(a).dst;
    RepMap<K> act_a = factor_through_sub(
        parts[v], compose_maps(rho_of(z, A.arrow_elt(a)), parts[u].inc));
    Matrix<K> block(out.dims[u], out.dims[v], z.proto());
    for (int j = 0; j < out.dims[v]; ++j) {
      RepMap<K> g = compose_maps(bases[v][j], act_a);
      std::optional<std::vector<K>> c = coords_in_hom_basis(g, bases[u]);
      check_internal(c.has_value(), "h_functor: composite escapes the hom space");
      for (int i = 0; i < out.dims[u]; ++i) block.at(i, j) = (*c)[i];
    }
    out.act.push_back(std::move(block));
  }
  validate_rep(out);
  return out;
}

/* Restriction of a right module along an algebra map: same underlying space,
   action through the images of the source algebra's arrows. */
template <class K>
Rep<K> module_restrict(const AlgebraHom<K>& al, const Rep<K>& m) {
  if (!m.base->is_algebra() || m.base->algebra()->dim() != al.tgt->dim() ||
      !m.base->algebra()->quiver().same_shape(al.tgt->quiver()))
    throw input_error("restrict: module is not over the map's target algebra");
  const PathAlgebra<K>& B = *al.tgt;
  const Quiver& aq = al.src->quiver();
  Rep<K> out;
  out.base = RepBase<K>::of_algebra(al.src);
  std::vector<std::vector<int>> slots(aq.n_vertices());
  std::vector<std::vector<int>> offs(aq.n_vertices());
  for (int v = 0; v < aq.n_vertices(); ++v) {
    int d = 0;
    for (int w : al.vertex_map[v]) {
      slots[v].push_back(w);
      offs[v].push_back(d);
      d += m.dims[w];
    }
    out.dims.push_back(d);
  }
  for (int a = 0; a < aq.n_arrows(); ++a) {
    int u = aq.arrow(a).src, v = aq.arrow(a).dst;
    Matrix<K> block(out.dims[u], out.dims[v], m.proto());
    typename PathAlgebra<K>::Elt img = al.image_of(al.src->arrow_elt(a));
    for (int b = 0; b < B.dim(); ++b) {
      if (f_is_zero(img[b])) continue;
      int ws = B.basis_source(b), wt = B.basis_target(b);
      int su = -1, sv = -1;
      for (size_t s = 0; s < slots[u].size(); ++s)
        if (slots[u][s] == ws) su = static_cast<int>(s);
      for (size_t s = 0; s < slots[v].size(); ++s)
        if (slots[v][s] == wt) sv = static_cast<int>(s);
      check_internal(su >= 0 && sv >= 0, "module_restrict: image path escapes the vertex fibers");
      Matrix<K> part = act_of_path(m, B.basis_path(b)).scaled(img[b]);
      Matrix<K> cur = block.block(offs[u][su], offs[v][sv], part.rows(), part.cols());
      block.set_block(offs[u][su], offs[v][sv], cur + part);
    }
    out.act.push_back(std::move(block));
  }
  validate_rep(out);
  return out;
}

/* Base change along an algebra map: tensor the target algebra against the
   carrier over the source, i.e. one carrier copy per target basis element
   modulo the bimodule relations; the new action is left multiplication. */
template <class K>
AObject<K> pullback_aobject(const AlgebraHom<K>& al, const AObject<K>& z,
                            const std::string& at = "") {
  if (z.alg->dim() != al.src->dim() || !z.alg->quiver().same_shape(al.src->quiver()))
    throw input_error("pullback: object is not over the map's source algebra", at);
  const PathAlgebra<K>& B = *al.tgt;
  const Quiver& rq = z.carrier.base->quiver();
  int nb = B.dim();
  K neg = f_zero(z.proto()) - f_one(z.proto());
  std::vector<Rep<K>> copies(nb, z.carrier);
  SumRep<K> big = direct_sum(z.carrier.base, copies);
  std::vector<Matrix<K>> spans;
  for (int w = 0; w < rq.n_vertices(); ++w) {
    Matrix<K> s(big.sum.dims[w], 0, z.proto());
    for (int b = 0; b < nb; ++b)
      for (int a = 0; a < z.alg->dim(); ++a) {
        typename PathAlgebra<K>::Elt ba = B.mul(B.basis_elt(b), al.image_of_basis(a));
        Matrix<K> chunk = big.inc[b].blocks[w] * z.rho[a].blocks[w];
        chunk = chunk.scaled(neg);
        for (int bp = 0; bp < nb; ++bp)
          if (!f_is_zero(ba[bp])) chunk = chunk + big.inc[bp].blocks[w].scaled(ba[bp]);
        s = Matrix<K>::hstack(s, chunk);
      }
    spans.push_back(std::move(s));
  }
  QuotRep<K> quot = quotient_by_spans(big.sum, spans);
  AObject<K> out;
  out.alg = al.tgt;
  out.carrier = quot.quo;
  for (int beta = 0; beta < nb; ++beta) {
    RepMap<K> lm = zero_map(big.sum, big.sum);
    for (int b = 0; b < nb; ++b) {
      typename PathAlgebra<K>::Elt prod = B.mul(B.basis_elt(beta), B.basis_elt(b));
      for (int bp = 0; bp < nb; ++bp) {
        if (f_is_zero(prod[bp])) continue;
        lm = add_maps(lm, scale_map(prod[bp], compose_maps(big.inc[bp], big.prj[b])));
      }
    }
    out.rho.push_back(factor_through_quotient(quot, compose_maps(quot.prj, lm)));
  }
  validate_aobject(out, at);
  return out;
}

/* Restriction of the action along an algebra map: same carrier. */
template <class K>
AObject<K> pushforward_aobject(const AlgebraHom<K>& al, const AObject<K>& z,
                               const std::string& at = "") {
  if (z.alg->dim() != al.tgt->dim() || !z.alg->quiver().same_shape(al.tgt->quiver()))
    throw input_error("pushforward: object is not over the map's target algebra", at);
  AObject<K> out;
  out.alg = al.src;
  out.carrier = z.carrier;
  for (int b = 0; b < al.src->dim(); ++b) out.rho.push_back(rho_of(z, al.image_of_basis(b)));
  validate_aobject(out, at);
  return out;
}

/* Bimodule homomorphisms: carrier maps intertwining both structures. */
template <class K>
std::vector<RepMap<K>> aobject_hom_space(const AObject<K>& z, const AObject<K>& zp) {
  if (!z.carrier.base->same_as(*zp.carrier.base))
    throw input_error("object homs: carriers over different bases");
  if (z.alg->dim() != zp.alg->dim() || !z.alg->quiver().same_shape(zp.alg->quiver()))
    throw input_error("object homs: different acting algebras");
  const Quiver& rq = z.carrier.base->quiver();
  const PathAlgebra<K>& A = *z.alg;
  LinSystem<K> sys(z.proto());
  std::vector<int> h;
  for (int w = 0; w < rq.n_vertices(); ++w)
    h.push_back(sys.add_block(zp.carrier.dims[w], z.carrier.dims[w]));
  K neg = f_zero(z.proto()) - f_one(z.proto());
  for (int a = 0; a < rq.n_arrows(); ++a) {
    int u = rq.arrow(a).src, v = rq.arrow(a).dst;
    typename LinSystem<K>::Term t1{Matrix<K>::identity(zp.carrier.dims[u], z.proto()), h[u],
                                   z.carrier.act[a]};
    typename LinSystem<K>::Term t2{zp.carrier.act[a].scaled(neg), h[v],
                                   Matrix<K>::identity(z.carrier.dims[v], z.proto())};
    sys.add_equation({t1, t2}, Matrix<K>(zp.carrier.dims[u], z.carrier.dims[v], z.proto()));
  }
  std::vector<typename PathAlgebra<K>::Elt> gens;
  for (int v = 0; v < A.n_vertices(); ++v) gens.push_back(A.idem_elt(v));
  for (int a = 0; a < A.quiver().n_arrows(); ++a) gens.push_back(A.arrow_elt(a));
  for (const auto& g : gens) {
    RepMap<K> rg = rho_of(z, g), rgp = rho_of(zp, g);
    for (int w = 0; w < rq.n_vertices(); ++w) {
      typename LinSystem<K>::Term t1{Matrix<K>::identity(zp.carrier.dims[w], z.proto()), h[w],
                                     rg.blocks[w]};
      typename LinSystem<K>::Term t2{rgp.blocks[w].scaled(neg), h[w],
                                     Matrix<K>::identity(z.carrier.dims[w], z.proto())};
      sys.add_equation({t1, t2}, Matrix<K>(zp.carrier.dims[w], z.carrier.dims[w], z.proto()));
    }
  }
  typename LinSystem<K>::Solution sol = sys.solve_all();
  check_internal(sol.solvable, "aobject_hom_space: homogeneous system unsolvable");
  std::vector<RepMap<K>> basis;
  for (const auto& hom : sol.homogeneous) basis.push_back(RepMap<K>{z.carrier, zp.carrier, hom});
  return basis;
}

template <class K>
RepIso<K> is_isomorphic_aobject(const AObject<K>& z, const AObject<K>& zp,
                                const SearchBudget& budget, std::mt19937_64& rng) {
  RepIso<K> out;
  if (z.carrier.dims != zp.carrier.dims) {
    out.status = IsoVerdict::No;
    return out;
  }
  if (z.carrier.total_dim() == 0) {
    out.status = IsoVerdict::Yes;
    out.witness = zero_map(z.carrier, zp.carrier);
    return out;
  }
  std::vector<RepMap<K>> basis = aobject_hom_space(z, zp);
  int d = static_cast<int>(basis.size());
  if (d == 0) {
    out.status = IsoVerdict::No;
    return out;
  }
  auto assemble = [&](const std::vector<K>& c) {
    RepMap<K> f = zero_map(z.carrier, zp.carrier);
    for (int k = 0; k < d; ++k)
      for (size_t v = 0; v < f.blocks.size(); ++v)
        f.blocks[v] = f.blocks[v] + basis[k].blocks[v].scaled(c[k]);
    return f;
  };
  auto accept = [&](const std::vector<K>& c) {
    RepMap<K> f = assemble(c);
    for (size_t v = 0; v < f.blocks.size(); ++v)
      if (rank(f.blocks[v]) != z.carrier.dims[v]) return false;
    return true;
  };
  ComboResult<K> res =
      search_combo<K>(d, z.proto(), z.carrier.total_dim() + 1, budget, rng, accept);
  if (res.status == ComboStatus::Found) {
    out.status = IsoVerdict::Yes;
    out.witness = assemble(res.coeffs);
    return out;
  }
  out.status =
      res.status == ComboStatus::NoneCertified ? IsoVerdict::No : IsoVerdict::ProbablyNot;
  return out;
}

/* ------------------------- deformation elements ------------------------- */

/* A flat object together with a chosen identification of its semisimple
   reduction with the deformed collection. */
template <class K>
struct DeformationElement {
  AObject<K> obj;
  RepMap<K> phi;  // semisimple_reduction(obj).quo -> (+) collection members
};

/* Package an object with a carrier-level reduction map pi (which must kill
   the radical action) into a deformation element. */
template <class K>
DeformationElement<K> make_deformation_element(AObject<K> z, const RepMap<K>& pi,
                                               const std::string& at = "") {
  FlatCheck<K> fc = is_flat(z);
  if (!fc.flat) throw input_error("deformation element must be flat: " + fc.detail, at);
  QuotRep<K> red = semisimple_reduction(z);
  RepMap<K> phi = factor_through_quotient(red, pi);
  for (size_t v = 0; v < phi.blocks.size(); ++v)
    if (phi.blocks[v].rows() != phi.blocks[v].cols() ||
        rank(phi.blocks[v]) != phi.blocks[v].rows())
      throw input_error("reduction identification is not an isomorphism", at);
  return DeformationElement<K>{std::move(z), std::move(phi)};
}

template <class K>
struct EquivCheck {
  IsoVerdict status = IsoVerdict::ProbablyNot;
  std::optional<RepMap<K>> witness;
};

/* Equivalence in the deformation groupoid: a bimodule isomorphism between the
   carriers whose semisimple reduction matches the chosen identifications.
   The constraint system is affine; absence of any solution certifies No. */
template <class K>
EquivCheck<K> deformations_equivalent(const DeformationElement<K>& d1,
                                      const DeformationElement<K>& d2,
                                      const SearchBudget& budget, std::mt19937_64& rng) {
  EquivCheck<K> out;
  if (!equal_rep(d1.phi.tgt, d2.phi.tgt))
    throw input_error("deformation elements identify different collections");
  const AObject<K>& z = d1.obj;
  const AObject<K>& zp = d2.obj;
  if (z.carrier.dims != zp.carrier.dims) {
    out.status = IsoVerdict::No;
    return out;
  }
  const Quiver& rq = z.carrier.base->quiver();
  const PathAlgebra<K>& A = *z.alg;
  QuotRep<K> red1 = semisimple_reduction(z), red2 = semisimple_reduction(zp);
  LinSystem<K> sys(z.proto());
  std::vector<int> h;
  for (int w = 0; w < rq.n_vertices(); ++w)
    h.push_back(sys.add_block(zp.carrier.dims[w], z.carrier.dims[w]));
  K neg = f_zero(z.proto()) - f_one(z.proto());
  for (int a = 0; a < rq.n_arrows(); ++a) {
    int u = rq.arrow(a).src, v = rq.arrow(a).dst;
    typename LinSystem<K>::Term t1{Matrix<K>::identity(zp.carrier.dims[u], z.proto()), h[u],
                                   z.carrier.act[a]};
    typename LinSystem<K>::Term t2{zp.carrier.act[a].scaled(neg), h[v],
                                   Matrix<K>::identity(z.carrier.dims[v], z.proto())};
    sys.add_equation({t1, t2}, Matrix<K>(zp.carrier.dims[u], z.carrier.dims[v], z.proto()));
  }
  std::vector<typename PathAlgebra<K>::Elt> gens;
  for (int v = 0; v < A.n_vertices(); ++v) gens.push_back(A.idem_elt(v));
  for (int a = 0; a < A.quiver().n_arrows(); ++a) gens.push_back(A.arrow_elt(a));
  for (const auto& g : gens) {
    RepMap<K> rg = rho_of(z, g), rgp = rho_of(zp, g);
    for (int w = 0; w < rq.n_vertices(); ++w) {
      typename LinSystem<K>::Term t1{Matrix<K>::identity(zp.carrier.dims[w], z.proto()), h[w],
                                     rg.blocks[w]};
      typename LinSystem<K>::Term t2{rgp.blocks[w].scaled(neg), h[w],
                                     Matrix<K>::identity(z.carrier.dims[w], z.proto())};
      sys.add_equation({t1, t2}, Matrix<K>(zp.carrier.dims[w], z.carrier.dims[w], z.proto()));
    }
  }
  for (int w = 0; w < rq.n_vertices(); ++w) {
    typename LinSystem<K>::Term t{d2.phi.blocks[w] * red2.prj.blocks[w], h[w],
                                  Matrix<K>::identity(z.carrier.dims[w], z.proto())};
    sys.add_equation({t}, d1.phi.blocks[w] * red1.prj.blocks[w]);
  }
  typename LinSystem<K>::Solution sol = sys.solve_all();
  if (!sol.solvable) {
    out.status = IsoVerdict::No;
    return out;
  }
  auto assemble = [&](const std::vector<K>& c) {
    RepMap<K> f{z.carrier, zp.carrier, sol.particular};
    for (size_t k = 0; k < sol.homogeneous.size(); ++k)
      for (size_t v = 0; v < f.blocks.size(); ++v)
        f.blocks[v] = f.blocks[v] + sol.homogeneous[k][v].scaled(c[k]);
    return f;
  };
  auto accept = [&](const std::vector<K>& c) {
    RepMap<K> f = assemble(c);
    for (size_t v = 0; v < f.blocks.size(); ++v)
      if (rank(f.blocks[v]) != z.carrier.dims[v]) return false;
    return true;
  };
  std::vector<K> zero_coeffs(sol.homogeneous.size(), f_zero(z.proto()));
  if (accept(zero_coeffs)) {
    out.status = IsoVerdict::Yes;
    out.witness = assemble(zero_coeffs);
    return out;
  }
  if (sol.homogeneous.empty()) {
    out.status = IsoVerdict::No;
    return out;
  }
  ComboResult<K> res = search_combo<K>(static_cast<int>(sol.homogeneous.size()), z.proto(),
                                       z.carrier.total_dim() + 1, budget, rng, accept);
  if (res.status == ComboStatus::Found) {
    out.status = IsoVerdict::Yes;
    out.witness = assemble(res.coeffs);
    return out;
  }
  out.status =
      res.status == ComboStatus::NoneCertified ? IsoVerdict::No : IsoVerdict::ProbablyNot;
  return out;
}

/* The algebra as a right module over itself: direct sum of the projectives. */
template <class K>
SumRep<K> regular_module(const BasePtr<K>& base) {
  if (!base->is_algebra()) throw input_error("regular module needs an algebra base");
  std::vector<Rep<K>> parts;
  for (int v = 0; v < base->algebra()->n_vertices(); ++v)
    parts.push_back(projective_rep(base, v));
  return direct_sum(base, parts);
}

}  // namespace qalg
