#pragma once

#include <optional>

#include "qalg/algebra.hpp"
#include "qalg/invertible.hpp"

namespace qalg {

/* q-compatible algebra homomorphism: carries a declared vertex correspondence
   (each source vertex maps to a set of target vertices, jointly partitioning
   them) and the images of all source basis elements. */
template <class K>
struct AlgebraHom {
  std::shared_ptr<const PathAlgebra<K>> src, tgt;
  std::vector<std::vector<int>> vertex_map;  // per source vertex: target vertices
  Matrix<K> images;                          // tgt.dim x src.dim

  typename PathAlgebra<K>::Elt image_of(const typename PathAlgebra<K>::Elt& x) const {
    typename PathAlgebra<K>::Elt out = tgt->zero_elt();
    for (int j = 0; j < src->dim(); ++j) {
      if (f_is_zero(x[j])) continue;
      for (int i = 0; i < tgt->dim(); ++i) out[i] = out[i] + images.at(i, j) * x[j];
    }
    return out;
  }
  typename PathAlgebra<K>::Elt image_of_basis(int j) const {
    typename PathAlgebra<K>::Elt out = tgt->zero_elt();
    for (int i = 0; i < tgt->dim(); ++i) out[i] = images.at(i, j);
    return out;
  }
};

/* Build a hom from arrow images (arrow a is sent to `arrow_images[a]`, an
   element supported on paths between the corresponding vertex sets). Basis
   images are the function-style products of arrow images. */
template <class K>
AlgebraHom<K> hom_from_arrows(std::shared_ptr<const PathAlgebra<K>> src,
                              std::shared_ptr<const PathAlgebra<K>> tgt,
                              std::vector<std::vector<int>> vertex_map,
                              const std::vector<typename PathAlgebra<K>::Elt>& arrow_images) {
  check_internal(static_cast<int>(vertex_map.size()) == src->n_vertices(),
                 "hom_from_arrows: vertex map size");
  check_internal(static_cast<int>(arrow_images.size()) == src->quiver().n_arrows(),
                 "hom_from_arrows: arrow image count");
  AlgebraHom<K> h;
  h.src = src;
  h.tgt = tgt;
  h.vertex_map = std::move(vertex_map);
  h.images = Matrix<K>(tgt->dim(), src->dim(), tgt->proto());
  for (int j = 0; j < src->dim(); ++j) {
    const Path& p = src->basis_path(j);
    typename PathAlgebra<K>::Elt acc = tgt->zero_elt();
    for (int w : h.vertex_map[p.base]) acc = tgt->add(acc, tgt->idem_elt(w));
    for (int a : p.arrows) acc = tgt->mul(arrow_images[a], acc);
    for (int i = 0; i < tgt->dim(); ++i) h.images.at(i, j) = acc[i];
  }
  return h;
}

template <class K>
AlgebraHom<K> identity_hom(std::shared_ptr<const PathAlgebra<K>> a) {
  AlgebraHom<K> h;
  h.src = h.tgt = a;
  h.vertex_map.resize(a->n_vertices());
  for (int v = 0; v < a->n_vertices(); ++v) h.vertex_map[v] = {v};
  h.images = Matrix<K>::identity(a->dim(), a->proto());
  return h;
}

/* u * alpha(-) * u^{-1} for a unit u of the target. */
template <class K>
AlgebraHom<K> conjugated_hom(const AlgebraHom<K>& a, const typename PathAlgebra<K>::Elt& u) {
  auto uinv = a.tgt->unit_inverse(u);
  check_internal(uinv.has_value(), "conjugated_hom: u is not a unit");
  AlgebraHom<K> h = a;
  for (int j = 0; j < a.src->dim(); ++j) {
    auto img = a.tgt->mul(u, a.tgt->mul(a.image_of_basis(j), *uinv));
    for (int i = 0; i < a.tgt->dim(); ++i) h.images.at(i, j) = img[i];
  }
  return h;
}

struct HomCheck {
  bool ok = true;
  std::string violation;  // first violated identity, empty when ok
};

template <class K>
HomCheck check_hom(const AlgebraHom<K>& h) {
  const auto& A = *h.src;
  const auto& B = *h.tgt;
  if (h.images.rows() != B.dim() || h.images.cols() != A.dim())
    throw input_error("hom image matrix has wrong shape");
  if (static_cast<int>(h.vertex_map.size()) != A.n_vertices())
    throw input_error("hom vertex map has wrong length");
  std::vector<int> covered(B.n_vertices(), 0);
  for (const auto& ws : h.vertex_map)
    for (int w : ws) {
      if (w < 0 || w >= B.n_vertices()) throw input_error("hom vertex map is out of range");
      covered[w]++;
    }
  for (int w = 0; w < B.n_vertices(); ++w)
    if (covered[w] != 1)
      return {false, "vertex correspondence is not a partition of the target vertices"};

  /* unit preservation */
  {
    auto img = h.image_of(A.one_elt());
    if (!B.elt_is_zero(B.sub(img, B.one_elt()))) return {false, "alpha(1) != 1"};
  }
  /* q-compatibility: alpha(e_v) = sum of matched idempotents modulo rad B */
  for (int v = 0; v < A.n_vertices(); ++v) {
    auto img = h.image_of(A.idem_elt(v));
    for (int w = 0; w < B.n_vertices(); ++w) {
      bool matched = false;
      for (int x : h.vertex_map[v]) matched |= (x == w);
      K want = matched ? f_one(B.proto()) : f_zero(B.proto());
      if (!(img[B.idempotent_index(w)] == want))
        return {false, "q-compatibility fails at source vertex " + A.quiver().vertex(v)};
    }
  }
  /* multiplicativity on all basis pairs */
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      auto lhs = h.image_of(A.mul(A.basis_elt(i), A.basis_elt(j)));
      auto rhs = B.mul(h.image_of_basis(i), h.image_of_basis(j));
      if (!B.elt_is_zero(B.sub(lhs, rhs)))
        return {false, "multiplicativity fails on basis pair (" +
                           path_str(A.quiver(), A.basis_path(i)) + ", " +
                           path_str(A.quiver(), A.basis_path(j)) + ")"};
    }
  return {};
}

template <class K>
struct ConjVerdict {
  IsoVerdict status = IsoVerdict::ProbablyNot;
  std::optional<typename PathAlgebra<K>::Elt> witness;  // unit u with u a(-) u^{-1} = b
};

/* Solves the linear intertwining system on generators; a unit solution is a
   conjugacy witness (multiplicativity propagates the identity to all
   products). Units in a basic algebra are exactly the elements with all
   vertex coefficients nonzero, so absence of a unit in the solution space is
   decided exactly by per-vertex functionals over Q and by exhaustive scan
   over small finite fields. */
template <class K>
ConjVerdict<K> are_conjugate(const AlgebraHom<K>& a, const AlgebraHom<K>& b, int trials,
                             const SearchBudget& budget, std::mt19937_64& rng) {
  if (a.src.get() != b.src.get() || a.tgt.get() != b.tgt.get())
    throw input_error("are_conjugate: homs must share source and target");
  if (!check_hom(a).ok || !check_hom(b).ok)
    throw input_error("are_conjugate: inputs must be valid homs");
  const auto& B = *a.tgt;
  const auto& A = *a.src;
  int n = B.dim();

  std::vector<typename PathAlgebra<K>::Elt> gens;
  for (int v = 0; v < A.n_vertices(); ++v) gens.push_back(A.idem_elt(v));
  for (int r = 0; r < A.quiver().n_arrows(); ++r) gens.push_back(A.arrow_elt(r));

  Matrix<K> sys(0, n, B.proto());
  for (const auto& g : gens) {
    Matrix<K> m = B.right_mult(a.image_of(g)) - B.left_mult(b.image_of(g));
    sys = Matrix<K>::vstack(sys, m);
  }
  Matrix<K> ker = kernel_basis(sys);
  int d = ker.cols();

  ConjVerdict<K> out;
  if (d == 0) {
    out.status = IsoVerdict::No;
    return out;
  }
  /* If some vertex functional vanishes on the whole solution space, no
     solution is a unit. */
  for (int v = 0; v < B.n_vertices(); ++v) {
    bool all_zero = true;
    for (int k = 0; k < d && all_zero; ++k)
      all_zero = f_is_zero(ker.at(B.idempotent_index(v), k));
    if (all_zero) {
      out.status = IsoVerdict::No;
      return out;
    }
  }

  auto assemble = [&](const std::vector<K>& c) {
    typename PathAlgebra<K>::Elt u = B.zero_elt();
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < n; ++i) u[i] = u[i] + c[k] * ker.at(i, k);
    return u;
  };
  auto accept = [&](const std::vector<K>& c) { return B.is_unit(assemble(c)); };

  SearchBudget eff = budget;
  eff.trials = std::max(budget.trials, trials);
  /* Unit-ness is one linear form per vertex; grid side 2 would do over Q, but
     vertex count + 1 keeps the scan comfortably certifying. */
  ComboResult<K> res =
      search_combo<K>(d, B.proto(), B.n_vertices() + 1, eff, rng, accept);
  if (res.status == ComboStatus::Found) {
    auto u = assemble(res.coeffs);
    auto uinv = B.unit_inverse(u);
    check_internal(uinv.has_value(), "are_conjugate: witness not invertible");
    for (const auto& g : gens)
      check_internal(
          B.elt_is_zero(B.sub(B.mul(u, a.image_of(g)), B.mul(b.image_of(g), u))),
          "are_conjugate: witness fails intertwining");
    out.status = IsoVerdict::Yes;
    out.witness = u;
    return out;
  }
  out.status =
      res.status == ComboStatus::NoneCertified ? IsoVerdict::No : IsoVerdict::ProbablyNot;
  return out;
}

}  // namespace qalg
