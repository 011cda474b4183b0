#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qalg/algebra.hpp"
#include "qalg/invertible.hpp"
#include "qalg/linsys.hpp"

namespace qalg {

/* Base category of a representation: either a finite-dimensional path
   algebra, or a bare quiver with (possibly empty) relations for target
   categories whose path algebra may be infinite-dimensional. */
template <class K>
class RepBase {
public:
  static std::shared_ptr<const RepBase> of_algebra(std::shared_ptr<const PathAlgebra<K>> a) {
    auto b = std::make_shared<RepBase>();
    b->algebra_ = std::move(a);
    return b;
  }
  static std::shared_ptr<const RepBase> bare(Quiver q, RelationSet<K> rels, const K& proto) {
    auto b = std::make_shared<RepBase>();
    b->quiver_ = std::move(q);
    b->rels_ = std::move(rels);
    b->proto_ = f_zero(proto);
    return b;
  }

  bool is_algebra() const { return algebra_ != nullptr; }
  const std::shared_ptr<const PathAlgebra<K>>& algebra() const { return algebra_; }
  const Quiver& quiver() const { return algebra_ ? algebra_->quiver() : quiver_; }
  const RelationSet<K>& relations() const { return algebra_ ? algebra_->relations() : rels_; }
  const K& proto() const { return algebra_ ? algebra_->proto() : proto_; }
  bool relation_free() const { return relations().empty(); }

  bool same_as(const RepBase& o) const {
    if (this == &o) return true;
    if (is_algebra() != o.is_algebra()) return false;
    if (!quiver().same_shape(o.quiver())) return false;
    return relations().size() == o.relations().size();
  }

private:
  std::shared_ptr<const PathAlgebra<K>> algebra_;
  Quiver quiver_;
  RelationSet<K> rels_;
  K proto_;
};

template <class K>
using BasePtr = std::shared_ptr<const RepBase<K>>;

/* Right module as a quiver representation. Arrow a: u -> v acts by a matrix
   from the v-component to the u-component (dims[u] x dims[v]); relations
   evaluate to zero along their paths. */
template <class K>
struct Rep {
  BasePtr<K> base;
  std::vector<int> dims;
  std::vector<Matrix<K>> act;  // one per arrow

  int total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
  }
  int offset(int v) const {
    int t = 0;
    for (int i = 0; i < v; ++i) t += dims[i];
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }
  const K& proto() const { return base->proto(); }
};

/* act(p): component at target(p) -> component at source(p); matrices multiply
   in traversal order, so act is an anti-homomorphism. */
template <class K>
Matrix<K> act_of_path(const Rep<K>& m, const Path& p) {
  const Quiver& q = m.base->quiver();
  check_internal(path_valid(q, p), "act_of_path: invalid path");
  /* act(p) = M_{a_1} ... M_{a_k} over the traversal order. */
  Matrix<K> out = Matrix<K>::identity(m.dims[path_target(q, p)], m.proto());
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) out = m.act[*it] * out;
  return out;
}

template <class K>
void validate_rep(const Rep<K>& m, const std::string& at = "") {
  const Quiver& q = m.base->quiver();
  if (static_cast<int>(m.dims.size()) != q.n_vertices())
    throw input_error("module dims length mismatch", at);
  if (static_cast<int>(m.act.size()) != q.n_arrows())
    throw input_error("module action count mismatch", at);
  for (int a = 0; a < q.n_arrows(); ++a) {
    if (m.act[a].rows() != m.dims[q.arrow(a).src] || m.act[a].cols() != m.dims[q.arrow(a).dst])
      throw input_error("action matrix for arrow '" + q.arrow(a).name + "' has wrong shape", at);
  }
  for (const auto& r : m.base->relations()) {
    int src = path_source(q, r.terms[0].path), tgt = path_target(q, r.terms[0].path);
    Matrix<K> acc(m.dims[src], m.dims[tgt], m.proto());
    for (const auto& t : r.terms) acc = acc + act_of_path(m, t.path).scaled(t.coeff);
    if (!acc.is_zero()) throw input_error("module violates a relation", at);
  }
}

template <class K>
Rep<K> zero_rep(const BasePtr<K>& base) {
  Rep<K> m;
  m.base = base;
  m.dims.assign(base->quiver().n_vertices(), 0);
  const Quiver& q = base->quiver();
  for (int a = 0; a < q.n_arrows(); ++a) m.act.push_back(Matrix<K>(0, 0, base->proto()));
  return m;
}

template <class K>
Rep<K> simple_rep(const BasePtr<K>& base, int v) {
  Rep<K> m = zero_rep(base);
  m.dims[v] = 1;
  const Quiver& q = base->quiver();
  for (int a = 0; a < q.n_arrows(); ++a)
    m.act[a] = Matrix<K>(m.dims[q.arrow(a).src], m.dims[q.arrow(a).dst], base->proto());
  return m;
}

/* P_i = e_i A: component at v is spanned by basis paths v ~> i; an arrow
   a: u -> v sends p to the reduction of p * a. */
template <class K>
Rep<K> projective_rep(const BasePtr<K>& base, int i) {
  if (!base->is_algebra())
    throw input_error("projectives need a finite-dimensional algebra base");
  const PathAlgebra<K>& A = *base->algebra();
  const Quiver& q = A.quiver();
  std::vector<std::vector<int>> comp(q.n_vertices());  // basis element ids per vertex
  for (int b = 0; b < A.dim(); ++b)
    if (A.basis_target(b) == i) comp[A.basis_source(b)].push_back(b);
  Rep<K> m;
  m.base = base;
  m.dims.resize(q.n_vertices());
  for (int v = 0; v < q.n_vertices(); ++v) m.dims[v] = static_cast<int>(comp[v].size());
  for (int a = 0; a < q.n_arrows(); ++a) {
    int u = q.arrow(a).src, v = q.arrow(a).dst;
    Matrix<K> mat(m.dims[u], m.dims[v], A.proto());
    for (int jc = 0; jc < m.dims[v]; ++jc) {
      auto img = A.mul(A.basis_elt(comp[v][jc]), A.arrow_elt(a));
      for (int ic = 0; ic < m.dims[u]; ++ic) mat.at(ic, jc) = img[comp[u][ic]];
    }
    m.act.push_back(std::move(mat));
  }
  return m;
}

template <class K>
struct RepMap {
  Rep<K> src, tgt;
  std::vector<Matrix<K>> blocks;  // per vertex: tgt.dims[v] x src.dims[v]
};

template <class K>
bool repmap_commutes(const RepMap<K>& f) {
  const Quiver& q = f.src.base->quiver();
  for (int a = 0; a < q.n_arrows(); ++a) {
    int u = q.arrow(a).src, v = q.arrow(a).dst;
    if (!(f.blocks[u] * f.src.act[a] == f.tgt.act[a] * f.blocks[v])) return false;
  }
  return true;
}

template <class K>
void validate_repmap(const RepMap<K>& f, const std::string& at = "") {
  if (!f.src.base->same_as(*f.tgt.base)) throw input_error("map endpoints over different bases", at);
  const Quiver& q = f.src.base->quiver();
  if (static_cast<int>(f.blocks.size()) != q.n_vertices())
    throw input_error("map block count mismatch", at);
  for (int v = 0; v < q.n_vertices(); ++v)
    if (f.blocks[v].rows() != f.tgt.dims[v] || f.blocks[v].cols() != f.src.dims[v])
      throw input_error("map block at vertex '" + q.vertex(v) + "' has wrong shape", at);
  if (!repmap_commutes(f)) throw input_error("map does not intertwine the arrow actions", at);
}

template <class K>
RepMap<K> identity_map(const Rep<K>& m) {
  RepMap<K> f{m, m, {}};
  for (int v = 0; v < m.base->quiver().n_vertices(); ++v)
    f.blocks.push_back(Matrix<K>::identity(m.dims[v], m.proto()));
  return f;
}

template <class K>
RepMap<K> zero_map(const Rep<K>& m, const Rep<K>& n) {
  RepMap<K> f{m, n, {}};
  for (int v = 0; v < m.base->quiver().n_vertices(); ++v)
    f.blocks.push_back(Matrix<K>(n.dims[v], m.dims[v], m.proto()));
  return f;
}

/* g after f. */
template <class K>
RepMap<K> compose_maps(const RepMap<K>& g, const RepMap<K>& f) {
  RepMap<K> h{f.src, g.tgt, {}};
  for (size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(g.blocks[v] * f.blocks[v]);
  return h;
}

template <class K>
RepMap<K> add_maps(const RepMap<K>& f, const RepMap<K>& g) {
  RepMap<K> h = f;
  for (size_t v = 0; v < f.blocks.size(); ++v) h.blocks[v] = f.blocks[v] + g.blocks[v];
  return h;
}

template <class K>
RepMap<K> scale_map(const K& c, const RepMap<K>& f) {
  RepMap<K> h = f;
  for (auto& b : h.blocks) b = b.scaled(c);
  return h;
}

template <class K>
bool map_is_zero(const RepMap<K>& f) {
  for (const auto& b : f.blocks)
    if (!b.is_zero()) return false;
  return true;
}

template <class K>
bool maps_equal(const RepMap<K>& f, const RepMap<K>& g) {
  for (size_t v = 0; v < f.blocks.size(); ++v)
    if (!(f.blocks[v] == g.blocks[v])) return false;
  return true;
}

template <class K>
bool is_mono(const RepMap<K>& f) {
  for (size_t v = 0; v < f.blocks.size(); ++v)
    if (rank(f.blocks[v]) != f.src.dims[v]) return false;
  return true;
}

template <class K>
bool is_epi(const RepMap<K>& f) {
  for (size_t v = 0; v < f.blocks.size(); ++v)
    if (rank(f.blocks[v]) != f.tgt.dims[v]) return false;
  return true;
}

/* Solution basis of the intertwining system. */
template <class K>
std::vector<RepMap<K>> hom_space(const Rep<K>& m, const Rep<K>& n) {
  if (!m.base->same_as(*n.base)) throw input_error("hom_space: different bases");
  const Quiver& q = m.base->quiver();
  LinSystem<K> sys(m.proto());
  std::vector<int> bh(q.n_vertices());
  for (int v = 0; v < q.n_vertices(); ++v) bh[v] = sys.add_block(n.dims[v], m.dims[v]);
  for (int a = 0; a < q.n_arrows(); ++a) {
    int u = q.arrow(a).src, v = q.arrow(a).dst;
    /* f_u m_a - n_a f_v = 0, an equation with values in Hom(m_v, n_u). */
    std::vector<typename LinSystem<K>::Term> terms;
    terms.push_back({Matrix<K>::identity(n.dims[u], m.proto()), bh[u], m.act[a]});
    terms.push_back({(-n.act[a]), bh[v], Matrix<K>::identity(m.dims[v], m.proto())});
    sys.add_equation(terms, Matrix<K>(n.dims[u], m.dims[v], m.proto()));
  }
  auto sol = sys.solve_all();
  std::vector<RepMap<K>> out;
  for (auto& h : sol.homogeneous) {
    RepMap<K> f{m, n, std::move(h)};
    out.push_back(std::move(f));
  }
  return out;
}

template <class K>
int hom_dim(const Rep<K>& m, const Rep<K>& n) {
  return static_cast<int>(hom_space(m, n).size());
}

/* Subrepresentation on given per-vertex column spans (auto-completed to a
   basis); requires the spans to be action-stable. */
template <class K>
struct SubRep {
  Rep<K> sub;
  RepMap<K> inc;
};

template <class K>
SubRep<K> sub_from_spans(const Rep<K>& m, const std::vector<Matrix<K>>& spans) {
  const Quiver& q = m.base->quiver();
  SubRep<K> out;
  out.sub.base = m.base;
  std::vector<Matrix<K>> bases;
  for (int v = 0; v < q.n_vertices(); ++v) {
    Matrix<K> b = column_space_basis(spans[v]);
    out.sub.dims.push_back(b.cols());
    bases.push_back(std::move(b));
  }
  for (int a = 0; a < q.n_arrows(); ++a) {
    int u = q.arrow(a).src, v = q.arrow(a).dst;
    SolveResult<K> s = solve(bases[u], m.act[a] * bases[v]);
    check_internal(s.x.has_value(), "sub_from_spans: spans are not action-stable");
    out.sub.act.push_back(*s.x);
  }
  out.inc = RepMap<K>{out.sub, m, bases};
  return out;
}

template <class K>
struct QuotRep {
  Rep<K> quo;
  RepMap<K> prj;
};

template <class K>
QuotRep<K> quotient_by_spans(const Rep<K>& m, const std::vector<Matrix<K>>& spans) {
  const Quiver& q = m.base->quiver();
  QuotRep<K> out;
  out.quo.base = m.base;
  std::vector<Matrix<K>> projs;
  for (int v = 0; v < q.n_vertices(); ++v) {
    Matrix<K> p = cokernel_projection(spans[v]).q;
    out.quo.dims.push_back(p.rows());
    projs.push_back(std::move(p));
  }
  for (int a = 0; a < q.n_arrows(); ++a) {
    int u = q.arrow(a).src, v = q.arrow(a).dst;
    /* induced X with X * p_v = p_u * act_a: transpose and solve. */
    SolveResult<K> s = solve(projs[v].transpose(), (projs[u] * m.act[a]).transpose());
    check_internal(s.x.has_value(), "quotient_by_spans: spans are not action-stable");
    out.quo.act.push_back(s.x->transpose());
  }
  out.prj = RepMap<K>{m, out.quo, projs};
  return out;
}

template <class K>
SubRep<K> kernel_rep(const RepMap<K>& f) {
  std::vector<Matrix<K>> spans;
  for (size_t v = 0; v < f.blocks.size(); ++v) spans.push_back(kernel_basis(f.blocks[v]));
  return sub_from_spans(f.src, spans);
}

template <class K>
SubRep<K> image_rep(const RepMap<K>& f) {
  std::vector<Matrix<K>> spans;
  for (size_t v = 0; v < f.blocks.size(); ++v) spans.push_back(f.blocks[v]);
  return sub_from_spans(f.tgt, spans);
}

template <class K>
QuotRep<K> cokernel_rep(const RepMap<K>& f) {
  std::vector<Matrix<K>> spans;
  for (size_t v = 0; v < f.blocks.size(); ++v) spans.push_back(f.blocks[v]);
  return quotient_by_spans(f.tgt, spans);
}

/* Radical subobject: sum of all arrow-action images. */
template <class K>
std::vector<Matrix<K>> radical_spans(const Rep<K>& m) {
  const Quiver& q = m.base->quiver();
  std::vector<Matrix<K>> spans;
  for (int u = 0; u < q.n_vertices(); ++u) {
    Matrix<K> s(m.dims[u], 0, m.proto());
    for (int a = 0; a < q.n_arrows(); ++a)
      if (q.arrow(a).src == u) s = Matrix<K>::hstack(s, m.act[a]);
    spans.push_back(std::move(s));
  }
  return spans;
}

template <class K>
SubRep<K> radical_rep(const Rep<K>& m) {
  return sub_from_spans(m, radical_spans(m));
}

template <class K>
QuotRep<K> top_rep(const Rep<K>& m) {
  return quotient_by_spans(m, radical_spans(m));
}

/* Restriction of f to radicals; well-defined because f(rad m) lies in rad n. */
template <class K>
RepMap<K> radical_on_map(const RepMap<K>& f, const SubRep<K>& rm, const SubRep<K>& rn) {
  RepMap<K> g{rm.sub, rn.sub, {}};
  for (size_t v = 0; v < f.blocks.size(); ++v) {
    SolveResult<K> s = solve(rn.inc.blocks[v], f.blocks[v] * rm.inc.blocks[v]);
    check_internal(s.x.has_value(), "radical_on_map: image escapes the radical");
    g.blocks.push_back(*s.x);
  }
  return g;
}

template <class K>
RepMap<K> radical_on_map(const RepMap<K>& f) {
  SubRep<K> rm = radical_rep(f.src), rn = radical_rep(f.tgt);
  return radical_on_map(f, rm, rn);
}

template <class K>
int loewy_length_of(const Rep<K>& m) {
  Rep<K> cur = m;
  int l = 0;
  cur = radical_rep(cur).sub;
  while (!cur.is_zero()) {
    ++l;
    cur = radical_rep(cur).sub;
  }
  return l;
}

template <class K>
struct SumRep {
  Rep<K> sum;
  std::vector<RepMap<K>> inc, prj;
};

template <class K>
SumRep<K> direct_sum(const BasePtr<K>& base, const std::vector<Rep<K>>& parts) {
  const Quiver& q = base->quiver();
  SumRep<K> out;
  out.sum.base = base;
  out.sum.dims.assign(q.n_vertices(), 0);
  std::vector<std::vector<int>> offs(parts.size(), std::vector<int>(q.n_vertices(), 0));
  for (size_t p = 0; p < parts.size(); ++p)
    for (int v = 0; v < q.n_vertices(); ++v) {
      offs[p][v] = out.sum.dims[v];
      out.sum.dims[v] += parts[p].dims[v];
    }
  for (int a = 0; a < q.n_arrows(); ++a) {
    int u = q.arrow(a).src, v = q.arrow(a).dst;
    Matrix<K> m(out.sum.dims[u], out.sum.dims[v], base->proto());
    for (size_t p = 0; p < parts.size(); ++p) m.set_block(offs[p][u], offs[p][v], parts[p].act[a]);
    out.sum.act.push_back(std::move(m));
  }
  for (size_t p = 0; p < parts.size(); ++p) {
    RepMap<K> in{parts[p], out.sum, {}}, pr{out.sum, parts[p], {}};
    for (int v = 0; v < q.n_vertices(); ++v) {
      Matrix<K> i(out.sum.dims[v], parts[p].dims[v], base->proto());
      for (int r = 0; r < parts[p].dims[v]; ++r) i.at(offs[p][v] + r, r) = i.one();
      in.blocks.push_back(i);
      pr.blocks.push_back(i.transpose());
    }
    out.inc.push_back(std::move(in));
    out.prj.push_back(std::move(pr));
  }
  return out;
}

template <class K>
struct CoverRep {
  Rep<K> proj;               // direct sum of indecomposable projectives
  RepMap<K> cover;           // surjection onto m
  std::vector<int> tops;     // multiplicity of P_i per vertex i
};

/* Columns of the identity at the non-pivot coordinates of the span complement
   lift the top; the cover sends the P_i generator over such a lift through
   the path action. */
template <class K>
CoverRep<K> projective_cover(const Rep<K>& m) {
  if (!m.base->is_algebra()) throw input_error("projective_cover needs an algebra base");
  const PathAlgebra<K>& A = *m.base->algebra();
  const Quiver& q = A.quiver();
  std::vector<Matrix<K>> rad = radical_spans(m);
  std::vector<std::vector<int>> lifts(q.n_vertices());
  for (int v = 0; v < q.n_vertices(); ++v) {
    RrefResult<K> e = rref(rad[v].transpose());
    std::vector<bool> piv(m.dims[v], false);
    for (int p : e.pivots) piv[p] = true;
    for (int j = 0; j < m.dims[v]; ++j)
      if (!piv[j]) lifts[v].push_back(j);
  }
  CoverRep<K> out;
  out.tops.resize(q.n_vertices());
  std::vector<Rep<K>> parts;
  std::vector<std::pair<int, int>> gens;  // (vertex, lift coordinate)
  for (int v = 0; v < q.n_vertices(); ++v) {
    out.tops[v] = static_cast<int>(lifts[v].size());
    for (int s = 0; s < out.tops[v]; ++s) {
      parts.push_back(projective_rep(m.base, v));
      gens.emplace_back(v, lifts[v][s]);
    }
  }
  SumRep<K> sum = direct_sum(m.base, parts);
  out.proj = sum.sum;
  RepMap<K> cov = zero_map(out.proj, m);
  for (size_t p = 0; p < parts.size(); ++p) {
    auto [i, coord] = gens[p];
    /* column basis of P_i at vertex w: basis paths w ~> i in algebra order */
    std::vector<std::vector<int>> comp(q.n_vertices());
    for (int b = 0; b < A.dim(); ++b)
      if (A.basis_target(b) == i) comp[A.basis_source(b)].push_back(b);
    Matrix<K> gen(m.dims[i], 1, m.proto());
    gen.at(coord, 0) = gen.one();
    for (int w = 0; w < q.n_vertices(); ++w) {
      Matrix<K> block(m.dims[w], static_cast<int>(comp[w].size()), m.proto());
      for (size_t c = 0; c < comp[w].size(); ++c) {
        Matrix<K> img = act_of_path(m, A.basis_path(comp[w][c])) * gen;
        block.set_block(0, static_cast<int>(c), img);
      }
      /* route through the summand projection to land in the sum's columns */
      cov.blocks[w] = cov.blocks[w] + block * sum.prj[p].blocks[w];
    }
  }
  out.cover = cov;
  check_internal(repmap_commutes(out.cover), "projective_cover: cover does not intertwine");
  check_internal(is_epi(out.cover), "projective_cover: cover not surjective");
  return out;
}

template <class K>
struct RepIso {
  IsoVerdict status = IsoVerdict::ProbablyNot;
  std::optional<RepMap<K>> witness;
};

template <class K>
RepIso<K> is_isomorphic(const Rep<K>& m, const Rep<K>& n, const SearchBudget& budget,
                        std::mt19937_64& rng) {
  RepIso<K> out;
  if (m.dims != n.dims) {
    out.status = IsoVerdict::No;
    return out;
  }
  if (m.total_dim() == 0) {
    out.status = IsoVerdict::Yes;
    out.witness = zero_map(m, n);
    return out;
  }
  std::vector<RepMap<K>> basis = hom_space(m, n);
  int d = static_cast<int>(basis.size());
  if (d == 0) {
    out.status = IsoVerdict::No;
    return out;
  }
  auto assemble = [&](const std::vector<K>& c) {
    RepMap<K> f = zero_map(m, n);
    for (int k = 0; k < d; ++k)
      for (size_t v = 0; v < f.blocks.size(); ++v)
        f.blocks[v] = f.blocks[v] + basis[k].blocks[v].scaled(c[k]);
    return f;
  };
  auto accept = [&](const std::vector<K>& c) {
    RepMap<K> f = assemble(c);
    for (size_t v = 0; v < f.blocks.size(); ++v)
      if (rank(f.blocks[v]) != m.dims[v]) return false;
    return true;
  };
  /* Per-variable degree of the product of all vertex determinants is at most
     the total dimension; grid side total_dim + 1 certifies over Q. */
  ComboResult<K> res =
      search_combo<K>(d, m.proto(), m.total_dim() + 1, budget, rng, accept);
  if (res.status == ComboStatus::Found) {
    out.status = IsoVerdict::Yes;
    out.witness = assemble(res.coeffs);
    return out;
  }
  out.status =
      res.status == ComboStatus::NoneCertified ? IsoVerdict::No : IsoVerdict::ProbablyNot;
  return out;
}

/* Coordinates of f in a hom-space basis, if it lies in the span. */
template <class K>
std::optional<std::vector<K>> coords_in_hom_basis(const RepMap<K>& f,
                                                  const std::vector<RepMap<K>>& basis) {
  int nv = static_cast<int>(f.blocks.size());
  int total = 0;
  for (int v = 0; v < nv; ++v) total += f.blocks[v].rows() * f.blocks[v].cols();
  Matrix<K> a(total, static_cast<int>(basis.size()), f.src.proto());
  Matrix<K> b(total, 1, f.src.proto());
  int row = 0;
  for (int v = 0; v < nv; ++v)
    for (int i = 0; i < f.blocks[v].rows(); ++i)
      for (int j = 0; j < f.blocks[v].cols(); ++j) {
        for (size_t k = 0; k < basis.size(); ++k)
          a.at(row, static_cast<int>(k)) = basis[k].blocks[v].at(i, j);
        b.at(row, 0) = f.blocks[v].at(i, j);
        ++row;
      }
  SolveResult<K> s = solve(a, b);
  if (!s.x) return std::nullopt;
  std::vector<K> c;
  for (size_t k = 0; k < basis.size(); ++k) c.push_back(s.x->at(static_cast<int>(k), 0));
  return c;
}

/* Strict structural equality (same dims and identical action matrices). */
template <class K>
bool equal_rep(const Rep<K>& a, const Rep<K>& b) {
  if (a.dims != b.dims) return false;
  for (size_t i = 0; i < a.act.size(); ++i)
    if (!(a.act[i] == b.act[i])) return false;
  return true;
}

template <class K>
std::string rep_key(const Rep<K>& m) {
  std::string s = "d";
  for (int d : m.dims) s += ":" + std::to_string(d);
  for (const auto& a : m.act) s += "|" + a.str();
  return s;
}

}  // namespace qalg
