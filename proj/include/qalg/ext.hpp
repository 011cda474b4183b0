#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qalg/rep.hpp"

namespace qalg {

/* Short exact sequence 0 -> sub -> mid -> quo -> 0. */
template <class K>
struct Ses {
  RepMap<K> inc;  // sub -> mid
  RepMap<K> prj;  // mid -> quo
  const Rep<K>& sub() const { return inc.src; }
  const Rep<K>& mid() const { return inc.tgt; }
  const Rep<K>& quo() const { return prj.tgt; }
};

template <class K>
void validate_ses(const Ses<K>& s, const std::string& at = "") {
  validate_repmap(s.inc, at);
  validate_repmap(s.prj, at);
  if (!equal_rep(s.inc.tgt, s.prj.src)) throw input_error("sequence maps do not share a middle", at);
  if (!is_mono(s.inc)) throw input_error("sequence: first map is not injective", at);
  if (!is_epi(s.prj)) throw input_error("sequence: second map is not surjective", at);
  if (!map_is_zero(compose_maps(s.prj, s.inc)))
    throw input_error("sequence: composite is nonzero", at);
  for (size_t v = 0; v < s.inc.blocks.size(); ++v)
    if (s.mid().dims[v] != s.sub().dims[v] + s.quo().dims[v])
      throw input_error("sequence: dimensions are not additive", at);
}

/* Factor f: X -> E through a subobject containing its image. */
template <class K>
RepMap<K> factor_through_sub(const SubRep<K>& sub, const RepMap<K>& f) {
  RepMap<K> g{f.src, sub.sub, {}};
  for (size_t v = 0; v < f.blocks.size(); ++v) {
    SolveResult<K> s = solve(sub.inc.blocks[v], f.blocks[v]);
    check_internal(s.x.has_value(), "factor_through_sub: image escapes the subobject");
    g.blocks.push_back(*s.x);
  }
  return g;
}

/* Factor f: E -> Y through a quotient that f kills. */
template <class K>
RepMap<K> factor_through_quotient(const QuotRep<K>& quot, const RepMap<K>& f) {
  RepMap<K> g{quot.quo, f.tgt, {}};
  for (size_t v = 0; v < f.blocks.size(); ++v) {
    SolveResult<K> s = solve(quot.prj.blocks[v].transpose(), f.blocks[v].transpose());
    check_internal(s.x.has_value(), "factor_through_quotient: map does not kill the kernel");
    g.blocks.push_back(s.x->transpose());
  }
  return g;
}

/* Pushforward of 0 -> n -> E -> m -> 0 along g: n -> n2, as the pushout
   (n2 (+) E) / (g, -inc)(n). */
template <class K>
Ses<K> ses_pushforward(const Ses<K>& s, const RepMap<K>& g) {
  const Rep<K>&n = s.sub(), &n2 = g.tgt;
  SumRep<K> sum = direct_sum(n.base, {n2, s.mid()});
  std::vector<Matrix<K>> spans;
  for (size_t v = 0; v < g.blocks.size(); ++v)
    spans.push_back(sum.inc[0].blocks[v] * g.blocks[v] -
                    sum.inc[1].blocks[v] * s.inc.blocks[v]);
  QuotRep<K> quot = quotient_by_spans(sum.sum, spans);
  Ses<K> out{compose_maps(quot.prj, sum.inc[0]),
             factor_through_quotient(quot, compose_maps(s.prj, sum.prj[1]))};
  check_internal(is_mono(out.inc) && is_epi(out.prj), "ses_pushforward: degenerate result");
  return out;
}

/* Pullback of 0 -> n -> E -> m -> 0 along h: m2 -> m, as the fiber product
   ker(E (+) m2 -> m). */
template <class K>
Ses<K> ses_pullback(const Ses<K>& s, const RepMap<K>& h) {
  const Rep<K>&m2 = h.src, &n = s.sub();
  SumRep<K> sum = direct_sum(n.base, {s.mid(), m2});
  RepMap<K> big{sum.sum, s.quo(), {}};
  for (size_t v = 0; v < h.blocks.size(); ++v)
    big.blocks.push_back(s.prj.blocks[v] * sum.prj[0].blocks[v] -
                         h.blocks[v] * sum.prj[1].blocks[v]);
  SubRep<K> fib = kernel_rep(big);
  RepMap<K> n_in = compose_maps(sum.inc[0], s.inc);  // n -> E (+) m2, lands in the fiber
  Ses<K> out{factor_through_sub(fib, n_in), compose_maps(sum.prj[1], fib.inc)};
  check_internal(is_mono(out.inc) && is_epi(out.prj), "ses_pullback: degenerate result");
  return out;
}

namespace detail {

template <class K>
Matrix<K> vec_blocks(const std::vector<Matrix<K>>& blocks, int total, const K& proto) {
  Matrix<K> v(total, 1, proto);
  int r = 0;
  for (const auto& b : blocks)
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) v.at(r++, 0) = b.at(i, j);
  check_internal(r == total, "vec_blocks: size mismatch");
  return v;
}

template <class K>
std::vector<Matrix<K>> unvec_blocks(const Matrix<K>& v,
                                    const std::vector<std::pair<int, int>>& shapes,
                                    const K& proto) {
  std::vector<Matrix<K>> out;
  int r = 0;
  for (auto [rows, cols] : shapes) {
    Matrix<K> b(rows, cols, proto);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b.at(i, j) = v.at(r++, 0);
    out.push_back(std::move(b));
  }
  check_internal(r == v.rows(), "unvec_blocks: size mismatch");
  return out;
}

}  // namespace detail

/* Middle term of a one-cocycle extension: E_a = [[N_a, xi_a], [0, M_a]].
   Only valid when the result satisfies the base relations; intended for
   relation-free bases. */
template <class K>
Ses<K> extension_of_cocycle(const Rep<K>& m, const Rep<K>& n,
                            const std::vector<Matrix<K>>& xi) {
  SumRep<K> sum = direct_sum(n.base, {n, m});
  Rep<K> e = sum.sum;
  const Quiver& q = n.base->quiver();
  for (int a = 0; a < q.n_arrows(); ++a) e.act[a].set_block(0, n.dims[q.arrow(a).dst], xi[a]);
  validate_rep(e);
  RepMap<K> inc{n, e, sum.inc[0].blocks}, prj{e, m, sum.prj[1].blocks};
  check_internal(repmap_commutes(inc) && repmap_commutes(prj),
                 "extension_of_cocycle: structure maps broken");
  return Ses<K>{inc, prj};
}

/* Shared projective cover data for one source module. */
template <class K>
struct SyzygyContext {
  CoverRep<K> cover;
  SubRep<K> syz;  // kernel of the cover with its inclusion
};

template <class K>
std::shared_ptr<const SyzygyContext<K>> make_syzygy_context(const Rep<K>& m) {
  auto ctx = std::make_shared<SyzygyContext<K>>();
  ctx->cover = projective_cover(m);
  ctx->syz = kernel_rep(ctx->cover.cover);
  return ctx;
}

/* Pushout extension from a syzygy representative lambda: Omega -> n. */
template <class K>
Ses<K> extension_of_syzygy_hom(const SyzygyContext<K>& ctx, const Rep<K>& n,
                               const RepMap<K>& lambda) {
  const Rep<K>& p0 = ctx.cover.proj;
  SumRep<K> sum = direct_sum(n.base, {n, p0});
  std::vector<Matrix<K>> spans;
  for (size_t v = 0; v < lambda.blocks.size(); ++v)
    spans.push_back(sum.inc[0].blocks[v] * lambda.blocks[v] -
                    sum.inc[1].blocks[v] * ctx.syz.inc.blocks[v]);
  QuotRep<K> quot = quotient_by_spans(sum.sum, spans);
  Ses<K> out{compose_maps(quot.prj, sum.inc[0]),
             factor_through_quotient(quot, compose_maps(ctx.cover.cover, sum.prj[1]))};
  check_internal(is_mono(out.inc) && is_epi(out.prj),
                 "extension_of_syzygy_hom: degenerate result");
  return out;
}

/* First extension group with canonical coordinates.

   Relation-free bare base: cochain model with C0 = (+)_v Hom(m_v, n_v),
   C1 = (+)_a Hom(m_v, n_u) for a: u -> v, boundary f |-> (n_a f_v - f_u m_a).

   Algebra base: syzygy model Ext1 = coker(Hom(P0, n) -> Hom(Omega, n)) for a
   projective cover 0 -> Omega -> P0 -> m -> 0.

   Coordinates are rows of the cokernel projection of the boundary map, so a
   class vector determines and is determined by its representative modulo
   boundaries. */
template <class K>
class Ext1 {
public:
  enum class Mode { ArrowComplex, ViaSyzygy };

  Ext1(Rep<K> m, Rep<K> n, std::shared_ptr<const SyzygyContext<K>> ctx = nullptr)
      : m_(std::move(m)), n_(std::move(n)), ctx_(std::move(ctx)) {
    if (!m_.base->same_as(*n_.base)) throw input_error("ext: modules over different bases");
    if (m_.base->is_algebra()) {
      mode_ = Mode::ViaSyzygy;
      if (!ctx_) ctx_ = make_syzygy_context(m_);
      build_syzygy();
    } else if (m_.base->relation_free()) {
      mode_ = Mode::ArrowComplex;
      build_arrow_complex();
    } else {
      throw input_error("ext over a bare base requires it to be relation-free");
    }
  }

  Mode mode() const { return mode_; }
  int dim() const { return q_.rows(); }
  const Rep<K>& source() const { return m_; }
  const Rep<K>& target() const { return n_; }
  const std::shared_ptr<const SyzygyContext<K>>& context() const { return ctx_; }

  /* --- cocycle interface (ArrowComplex) --- */

  std::vector<K> class_of_cocycle(const std::vector<Matrix<K>>& xi) const {
    check_internal(mode_ == Mode::ArrowComplex, "class_of_cocycle: wrong mode");
    Matrix<K> v = detail::vec_blocks(xi, c1_dim_, m_.proto());
    return column_to_vector(q_ * v);
  }

  std::vector<Matrix<K>> cocycle_of_class(const std::vector<K>& c) const {
    check_internal(mode_ == Mode::ArrowComplex, "cocycle_of_class: wrong mode");
    return detail::unvec_blocks(reps_ * vector_to_column(c), cell_shapes_, m_.proto());
  }

  /* --- syzygy interface (ViaSyzygy) --- */

  std::vector<K> class_of_syzygy_hom(const RepMap<K>& lambda) const {
    check_internal(mode_ == Mode::ViaSyzygy, "class_of_syzygy_hom: wrong mode");
    auto coords = coords_in_hom_basis(lambda, hom_syz_);
    check_internal(coords.has_value(), "class_of_syzygy_hom: not in the hom space");
    return column_to_vector(q_ * vector_to_column(*coords));
  }

  RepMap<K> syzygy_hom_of_class(const std::vector<K>& c) const {
    check_internal(mode_ == Mode::ViaSyzygy, "syzygy_hom_of_class: wrong mode");
    Matrix<K> coords = reps_ * vector_to_column(c);
    RepMap<K> lambda = zero_map(ctx_->syz.sub, n_);
    for (int k = 0; k < coords.rows(); ++k)
      if (!f_is_zero(coords.at(k, 0)))
        lambda = add_maps(lambda, scale_map(coords.at(k, 0), hom_syz_[k]));
    return lambda;
  }

  /* --- sequence interface (both modes) --- */

  Ses<K> ses_of_class(const std::vector<K>& c) const {
    if (mode_ == Mode::ArrowComplex) return extension_of_cocycle(m_, n_, cocycle_of_class(c));
    return extension_of_syzygy_hom(*ctx_, n_, syzygy_hom_of_class(c));
  }

  std::vector<K> class_of_ses(const Ses<K>& s) const {
    if (!equal_rep(s.quo(), m_) || !equal_rep(s.sub(), n_))
      throw input_error("class_of_ses: sequence ends do not match the extension group");
    if (mode_ == Mode::ArrowComplex) {
      const Quiver& quiv = m_.base->quiver();
      std::vector<Matrix<K>> sec, xi;
      for (size_t v = 0; v < s.prj.blocks.size(); ++v) {
        SolveResult<K> sv =
            solve(s.prj.blocks[v], Matrix<K>::identity(m_.dims[v], m_.proto()));
        check_internal(sv.x.has_value(), "class_of_ses: projection is not surjective");
        sec.push_back(*sv.x);
      }
      for (int a = 0; a < quiv.n_arrows(); ++a) {
        int u = quiv.arrow(a).src, v = quiv.arrow(a).dst;
        Matrix<K> defect = s.mid().act[a] * sec[v] - sec[u] * m_.act[a];
        SolveResult<K> sv = solve(s.inc.blocks[u], defect);
        check_internal(sv.x.has_value(), "class_of_ses: section defect escapes the kernel");
        xi.push_back(*sv.x);
      }
      return class_of_cocycle(xi);
    }
    /* Lift the cover through the sequence, then read off the syzygy map. */
    const Rep<K>& p0 = ctx_->cover.proj;
    const Quiver& quiv = m_.base->quiver();
    LinSystem<K> sys(m_.proto());
    std::vector<int> bh;
    for (size_t v = 0; v < s.prj.blocks.size(); ++v)
      bh.push_back(sys.add_block(s.mid().dims[v], p0.dims[v]));
    for (int a = 0; a < quiv.n_arrows(); ++a) {
      int u = quiv.arrow(a).src, v = quiv.arrow(a).dst;
      std::vector<typename LinSystem<K>::Term> terms;
      terms.push_back({Matrix<K>::identity(s.mid().dims[u], m_.proto()), bh[u], p0.act[a]});
      terms.push_back({-s.mid().act[a], bh[v],
                       Matrix<K>::identity(p0.dims[v], m_.proto())});
      sys.add_equation(terms, Matrix<K>(s.mid().dims[u], p0.dims[v], m_.proto()));
    }
    for (size_t v = 0; v < s.prj.blocks.size(); ++v) {
      std::vector<typename LinSystem<K>::Term> terms;
      terms.push_back({s.prj.blocks[v], bh[v],
                       Matrix<K>::identity(p0.dims[v], m_.proto())});
      sys.add_equation(terms, ctx_->cover.cover.blocks[v]);
    }
    auto sol = sys.solve_all();
    check_internal(sol.solvable, "class_of_ses: projective lift failed");
    RepMap<K> lift{p0, s.mid(), sol.particular};
    RepMap<K> lambda{ctx_->syz.sub, n_, {}};
    for (size_t v = 0; v < s.prj.blocks.size(); ++v) {
      SolveResult<K> sv =
          solve(s.inc.blocks[v], lift.blocks[v] * ctx_->syz.inc.blocks[v]);
      check_internal(sv.x.has_value(), "class_of_ses: syzygy image escapes the kernel");
      lambda.blocks.push_back(*sv.x);
    }
    return class_of_syzygy_hom(lambda);
  }

  std::vector<K> zero_class() const { return std::vector<K>(dim(), f_zero(m_.proto())); }

  static Matrix<K> vector_to_column_static(const std::vector<K>& c, const K& proto) {
    Matrix<K> v(static_cast<int>(c.size()), 1, proto);
    for (size_t i = 0; i < c.size(); ++i) v.at(static_cast<int>(i), 0) = c[i];
    return v;
  }

private:
  Matrix<K> vector_to_column(const std::vector<K>& c) const {
    return vector_to_column_static(c, m_.proto());
  }
  static std::vector<K> column_to_vector(const Matrix<K>& v) {
    std::vector<K> c;
    for (int i = 0; i < v.rows(); ++i) c.push_back(v.at(i, 0));
    return c;
  }

  void build_arrow_complex() {
    const Quiver& q = m_.base->quiver();
    c1_dim_ = 0;
    for (int a = 0; a < q.n_arrows(); ++a) {
      int u = q.arrow(a).src, v = q.arrow(a).dst;
      cell_shapes_.emplace_back(n_.dims[u], m_.dims[v]);
      c1_dim_ += n_.dims[u] * m_.dims[v];
    }
    int c0_dim = 0;
    for (size_t v = 0; v < m_.dims.size(); ++v) c0_dim += n_.dims[v] * m_.dims[v];
    Matrix<K> boundary(c1_dim_, c0_dim, m_.proto());
    int col = 0;
    for (size_t v = 0; v < m_.dims.size(); ++v)
      for (int i = 0; i < n_.dims[v]; ++i)
        for (int j = 0; j < m_.dims[v]; ++j) {
          /* boundary of the elementary cochain E_{ij} at vertex v */
          std::vector<Matrix<K>> df;
          for (int a = 0; a < q.n_arrows(); ++a) {
            int au = q.arrow(a).src, av = q.arrow(a).dst;
            Matrix<K> cell(n_.dims[au], m_.dims[av], m_.proto());
            if (static_cast<int>(v) == av)
              for (int ii = 0; ii < n_.dims[au]; ++ii)
                cell.at(ii, j) = cell.at(ii, j) + n_.act[a].at(ii, i);
            if (static_cast<int>(v) == au)
              for (int jj = 0; jj < m_.dims[av]; ++jj)
                cell.at(i, jj) = cell.at(i, jj) - m_.act[a].at(j, jj);
            df.push_back(std::move(cell));
          }
          boundary.set_block(0, col, detail::vec_blocks(df, c1_dim_, m_.proto()));
          ++col;
        }
    finish_coordinates(boundary);
  }

  void build_syzygy() {
    hom_p0_ = hom_space(ctx_->cover.proj, n_);
    hom_syz_ = hom_space(ctx_->syz.sub, n_);
    Matrix<K> boundary(static_cast<int>(hom_syz_.size()), static_cast<int>(hom_p0_.size()),
                       m_.proto());
    for (size_t k = 0; k < hom_p0_.size(); ++k) {
      RepMap<K> restricted = compose_maps(hom_p0_[k], ctx_->syz.inc);
      auto coords = coords_in_hom_basis(restricted, hom_syz_);
      check_internal(coords.has_value(), "ext: restriction not in hom basis span");
      for (size_t j = 0; j < coords->size(); ++j)
        boundary.at(static_cast<int>(j), static_cast<int>(k)) = (*coords)[j];
    }
    c1_dim_ = static_cast<int>(hom_syz_.size());
    finish_coordinates(boundary);
  }

  void finish_coordinates(const Matrix<K>& boundary) {
    CokernelResult<K> ck = cokernel_projection(boundary);
    q_ = ck.q;
    if (q_.rows() == 0) {
      reps_ = Matrix<K>(c1_dim_, 0, m_.proto());
      return;
    }
    SolveResult<K> s = solve(q_, Matrix<K>::identity(q_.rows(), m_.proto()));
    check_internal(s.x.has_value(), "ext: coordinate section failed");
    reps_ = *s.x;
  }

  Rep<K> m_, n_;
  Mode mode_ = Mode::ArrowComplex;
  std::shared_ptr<const SyzygyContext<K>> ctx_;
  std::vector<RepMap<K>> hom_p0_, hom_syz_;
  std::vector<std::pair<int, int>> cell_shapes_;
  int c1_dim_ = 0;
  Matrix<K> q_{0, 0, K{}};     // class coordinates: ext_dim x c1_dim
  Matrix<K> reps_{0, 0, K{}};  // representative section: c1_dim x ext_dim
};

/* g_* at class level; e2 must be the extension group of (source, g.tgt). */
template <class K>
std::vector<K> push_class(const Ext1<K>& e1, const Ext1<K>& e2, const RepMap<K>& g,
                          const std::vector<K>& c) {
  if (e1.mode() == Ext1<K>::Mode::ArrowComplex) {
    std::vector<Matrix<K>> xi = e1.cocycle_of_class(c), out;
    const Quiver& q = e1.source().base->quiver();
    for (int a = 0; a < q.n_arrows(); ++a) out.push_back(g.blocks[q.arrow(a).src] * xi[a]);
    return e2.class_of_cocycle(out);
  }
  check_internal(equal_rep(e1.context()->syz.sub, e2.context()->syz.sub),
                 "push_class: mismatched syzygies; share the context");
  return e2.class_of_syzygy_hom(compose_maps(g, e1.syzygy_hom_of_class(c)));
}

/* h^* at class level; e2 must be the extension group of (h.src, target). */
template <class K>
std::vector<K> pull_class(const Ext1<K>& e1, const Ext1<K>& e2, const RepMap<K>& h,
                          const std::vector<K>& c) {
  if (e1.mode() == Ext1<K>::Mode::ArrowComplex) {
    std::vector<Matrix<K>> xi = e1.cocycle_of_class(c), out;
    const Quiver& q = e1.source().base->quiver();
    for (int a = 0; a < q.n_arrows(); ++a) out.push_back(xi[a] * h.blocks[q.arrow(a).dst]);
    return e2.class_of_cocycle(out);
  }
  return e2.class_of_ses(ses_pullback(e1.ses_of_class(c), h));
}

/* Universal extension of m by a collection: realizes a basis of every
   Ext1(m, sigma_j) at once in 0 -> (+) sigma_j^{d_j} -> E -> m -> 0. */
template <class K>
struct UnivExt {
  Ses<K> ses;
  std::vector<int> mults;              // d_j per collection member
  std::vector<RepMap<K>> part_inc;     // sigma_j copy -> socle sum, one per (j, s)
  std::vector<int> part_member;        // collection index per (j, s)
};

template <class K>
UnivExt<K> universal_extension(const Rep<K>& m, const std::vector<Rep<K>>& sigma) {
  UnivExt<K> out;
  std::shared_ptr<const SyzygyContext<K>> ctx;
  if (m.base->is_algebra()) ctx = make_syzygy_context(m);
  std::vector<Ext1<K>> exts;
  for (const auto& s : sigma) exts.emplace_back(m, s, ctx);
  std::vector<Rep<K>> parts;
  for (size_t j = 0; j < sigma.size(); ++j) {
    out.mults.push_back(exts[j].dim());
    for (int s = 0; s < exts[j].dim(); ++s) {
      parts.push_back(sigma[j]);
      out.part_member.push_back(static_cast<int>(j));
    }
  }
  SumRep<K> sum = direct_sum(m.base, parts);
  out.part_inc = sum.inc;
  if (parts.empty()) {
    /* no extensions: E = m with zero socle */
    out.ses = Ses<K>{zero_map(sum.sum, m), identity_map(m)};
    return out;
  }
  if (m.base->is_algebra()) {
    /* stack syzygy representatives of each basis class */
    RepMap<K> lambda = zero_map(ctx->syz.sub, sum.sum);
    int part = 0;
    for (size_t j = 0; j < sigma.size(); ++j)
      for (int s = 0; s < exts[j].dim(); ++s) {
        std::vector<K> c(exts[j].dim(), f_zero(m.proto()));
        c[s] = f_one(m.proto());
        lambda = add_maps(lambda,
                          compose_maps(sum.inc[part], exts[j].syzygy_hom_of_class(c)));
        ++part;
      }
    out.ses = extension_of_syzygy_hom(*ctx, sum.sum, lambda);
    return out;
  }
  /* arrow-complex: stack cocycles */
  const Quiver& q = m.base->quiver();
  std::vector<Matrix<K>> xi;
  for (int a = 0; a < q.n_arrows(); ++a)
    xi.push_back(Matrix<K>(sum.sum.dims[q.arrow(a).src], m.dims[q.arrow(a).dst], m.proto()));
  int part = 0;
  for (size_t j = 0; j < sigma.size(); ++j)
    for (int s = 0; s < exts[j].dim(); ++s) {
      std::vector<K> c(exts[j].dim(), f_zero(m.proto()));
      c[s] = f_one(m.proto());
      std::vector<Matrix<K>> part_xi = exts[j].cocycle_of_class(c);
      for (int a = 0; a < q.n_arrows(); ++a)
        xi[a] = xi[a] + sum.inc[part].blocks[q.arrow(a).src] * part_xi[a];
      ++part;
    }
  out.ses = extension_of_cocycle(m, sum.sum, xi);
  return out;
}

/* Endomorphism algebra with structure constants in a fixed hom basis. */
template <class K>
struct EndAlgebra {
  std::vector<RepMap<K>> basis;
  std::vector<std::vector<std::vector<K>>> table;  // table[i][j] = coords of basis_i o basis_j
  std::vector<K> id_coords;
  int dim() const { return static_cast<int>(basis.size()); }
};

template <class K>
EndAlgebra<K> end_algebra(const Rep<K>& m) {
  EndAlgebra<K> e;
  e.basis = hom_space(m, m);
  for (size_t i = 0; i < e.basis.size(); ++i) {
    e.table.emplace_back();
    for (size_t j = 0; j < e.basis.size(); ++j) {
      auto c = coords_in_hom_basis(compose_maps(e.basis[i], e.basis[j]), e.basis);
      check_internal(c.has_value(), "end_algebra: composite not in the hom space");
      e.table.back().push_back(*c);
    }
  }
  if (m.total_dim() > 0) {
    auto c = coords_in_hom_basis(identity_map(m), e.basis);
    check_internal(c.has_value(), "end_algebra: identity not in the hom space");
    e.id_coords = *c;
  }
  return e;
}

/* Searches for f with f^dim = 0 whose powers 1, f, ..., f^{dim-1} span the
   endomorphism algebra, certifying End = k[x]/(x^dim). */
template <class K>
std::optional<RepMap<K>> truncated_polynomial_generator(const Rep<K>& m,
                                                        const EndAlgebra<K>& e,
                                                        std::mt19937_64& rng) {
  int d = e.dim();
  if (d == 0) return std::nullopt;
  auto powers_work = [&](const RepMap<K>& f) -> bool {
    std::vector<RepMap<K>> pw;
    pw.push_back(identity_map(m));
    for (int k = 1; k <= d; ++k) pw.push_back(compose_maps(f, pw.back()));
    if (!map_is_zero(pw[d])) return false;
    /* rank of the vectorized powers 0..d-1 must be d */
    std::vector<std::vector<K>> coords;
    for (int k = 0; k < d; ++k) {
      auto c = coords_in_hom_basis(pw[k], e.basis);
      if (!c) return false;
      coords.push_back(*c);
    }
    Matrix<K> mat(d, d, m.proto());
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) mat.at(j, k) = coords[k][j];
    return rank(mat) == d;
  };
  std::vector<RepMap<K>> candidates = e.basis;
  for (int t = 0; t < 40; ++t) {
    RepMap<K> f = zero_map(m, m);
    for (const auto& b : e.basis) f = add_maps(f, scale_map(f_random(rng, m.proto()), b));
    candidates.push_back(f);
  }
  std::vector<K> shifts;
  shifts.push_back(f_zero(m.proto()));
  if constexpr (field_kind<K>::finite) {
    int64_t p = reinterpret_side(m.proto());
    for (int64_t s = 1; s < p && s <= 60; ++s) shifts.push_back(f_from_int(s, m.proto()));
  } else {
    for (int s = 1; s <= 12; ++s) {
      shifts.push_back(f_from_int(s, m.proto()));
      shifts.push_back(-f_from_int(s, m.proto()));
    }
  }
  RepMap<K> idm = identity_map(m);
  for (const auto& cand : candidates)
    for (const auto& lam : shifts) {
      K neg = f_zero(m.proto()) - lam;
      RepMap<K> f = add_maps(cand, scale_map(neg, idm));
      if (powers_work(f)) return f;
    }
  return std::nullopt;
}

/* Iterated universal extensions against a fixed collection. */
template <class K>
struct TowerLevel {
  Rep<K> module;
  EndAlgebra<K> endo;
};

template <class K>
std::vector<TowerLevel<K>> df_tower(const BasePtr<K>& base, const std::vector<Rep<K>>& sigma,
                                    int levels) {
  std::vector<TowerLevel<K>> out;
  Rep<K> cur = direct_sum(base, sigma).sum;
  for (int l = 0; l <= levels; ++l) {
    TowerLevel<K> lvl{cur, end_algebra(cur)};
    out.push_back(std::move(lvl));
    if (l < levels) cur = universal_extension(cur, sigma).ses.mid();
  }
  return out;
}

}  // namespace qalg
