#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qalg/matrix.hpp"
#include "qalg/quiver.hpp"

namespace qalg {

template <class K>
struct RelationTerm {
  K coeff;
  Path path;
};

/* One relation: a k-linear combination of parallel paths, each of length >= 2. */
template <class K>
struct Relation {
  std::vector<RelationTerm<K>> terms;
};

template <class K>
using RelationSet = std::vector<Relation<K>>;

namespace detail {

inline std::string path_key(const Path& p) {
  std::string s = "v" + std::to_string(p.base);
  for (int a : p.arrows) s += "." + std::to_string(a);
  return s;
}

}  // namespace detail

/* Finite-dimensional quotient of a path algebra by admissible relations.
   Basis elements are residue paths; the multiplication table is exact and
   certified (associativity, relation annihilation, radical nilpotency) at
   construction time. Products are function-style: mul(p, q) = "q then p",
   nonzero only when target(q) = source(p); so basis paths q: i ~> j span
   e_j A e_i. */
template <class K>
class PathAlgebra {
public:
  using Elt = std::vector<K>;

  static std::shared_ptr<const PathAlgebra> build(Quiver q, RelationSet<K> rels, const K& proto,
                                                  int cap = 32, const std::string& at = "");

  const Quiver& quiver() const { return q_; }
  const K& proto() const { return proto_; }
  const RelationSet<K>& relations() const { return rels_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int n_vertices() const { return q_.n_vertices(); }

  const Path& basis_path(int i) const { return basis_[i]; }
  int basis_source(int i) const { return path_source(q_, basis_[i]); }
  int basis_target(int i) const { return path_target(q_, basis_[i]); }
  int basis_length(int i) const { return basis_[i].length(); }
  int idempotent_index(int v) const { return idem_idx_[v]; }
  int arrow_basis_index(int a) const { return arrow_idx_[a]; }
  std::optional<int> basis_index(const Path& p) const {
    auto it = lookup_.find(detail::path_key(p));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  Elt zero_elt() const { return Elt(basis_.size(), f_zero(proto_)); }
  Elt one_elt() const {
    Elt e = zero_elt();
    for (int v = 0; v < q_.n_vertices(); ++v) e[idem_idx_[v]] = f_one(proto_);
    return e;
  }
  Elt idem_elt(int v) const {
    Elt e = zero_elt();
    e[idem_idx_[v]] = f_one(proto_);
    return e;
  }
  Elt arrow_elt(int a) const {
    Elt e = zero_elt();
    e[arrow_idx_[a]] = f_one(proto_);
    return e;
  }
  Elt basis_elt(int i) const {
    Elt e = zero_elt();
    e[i] = f_one(proto_);
    return e;
  }

  /* Residue class of an arbitrary valid path. */
  Elt path_class(const Path& p) const {
    check_internal(path_valid(q_, p), "path_class: invalid path");
    Elt acc = idem_elt(path_source(q_, p));
    for (int a : p.arrows) acc = mul(arrow_elt(a), acc);
    return acc;
  }

  Elt eval_relation(const Relation<K>& r) const {
    Elt acc = zero_elt();
    for (const auto& t : r.terms) {
      Elt pc = path_class(t.path);
      for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + t.coeff * pc[i];
    }
    return acc;
  }

  Elt mul(const Elt& a, const Elt& b) const {
    Elt out = zero_elt();
    for (int i = 0; i < dim(); ++i) {
      if (f_is_zero(a[i])) continue;
      for (int j = 0; j < dim(); ++j) {
        if (f_is_zero(b[j])) continue;
        const Elt& t = table(i, j);
        K c = a[i] * b[j];
        for (int k = 0; k < dim(); ++k) out[k] = out[k] + c * t[k];
      }
    }
    return out;
  }
  Elt add(const Elt& a, const Elt& b) const {
    Elt out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] + b[i];
    return out;
  }
  Elt sub(const Elt& a, const Elt& b) const {
    Elt out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] - b[i];
    return out;
  }
  Elt scale(const K& c, const Elt& a) const {
    Elt out = a;
    for (auto& x : out) x = c * x;
    return out;
  }
  bool elt_is_zero(const Elt& a) const {
    for (const auto& x : a)
      if (!f_is_zero(x)) return false;
    return true;
  }

  Matrix<K> left_mult(const Elt& a) const {
    Matrix<K> m(dim(), dim(), proto_);
    for (int j = 0; j < dim(); ++j) {
      Elt col = mul(a, basis_elt(j));
      for (int i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
  }
  Matrix<K> right_mult(const Elt& a) const {
    Matrix<K> m(dim(), dim(), proto_);
    for (int j = 0; j < dim(); ++j) {
      Elt col = mul(basis_elt(j), a);
      for (int i = 0; i < dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  /* Units are exactly the elements invertible modulo the radical: all vertex
     coefficients nonzero. */
  bool is_unit(const Elt& a) const {
    for (int v = 0; v < q_.n_vertices(); ++v)
      if (f_is_zero(a[idem_idx_[v]])) return false;
    return true;
  }
  std::optional<Elt> unit_inverse(const Elt& a) const {
    if (!is_unit(a)) return std::nullopt;
    Matrix<K> one(dim(), 1, proto_);
    Elt e = one_elt();
    for (int i = 0; i < dim(); ++i) one.at(i, 0) = e[i];
    SolveResult<K> s = solve(left_mult(a), one);
    check_internal(s.x.has_value(), "unit_inverse: unit not invertible");
    Elt inv(dim(), f_zero(proto_));
    for (int i = 0; i < dim(); ++i) inv[i] = s.x->at(i, 0);
    check_internal(elt_is_zero(sub(mul(inv, a), e)) && elt_is_zero(sub(mul(a, inv), e)),
                   "unit_inverse: verification failed");
    return inv;
  }

  int loewy_length() const { return loewy_; }

  /* Honest radical powers computed from the multiplication table; for
     homogeneous relations this is the span of basis paths of length >= k. */
  std::vector<Elt> radical_power_basis(int k) const {
    if (k <= 0) {
      std::vector<Elt> all;
      for (int i = 0; i < dim(); ++i) all.push_back(basis_elt(i));
      return all;
    }
    if (k >= static_cast<int>(rad_bases_.size())) return {};
    return rad_bases_[k];
  }
  int radical_power_dim(int k) const { return static_cast<int>(radical_power_basis(k).size()); }

  std::string elt_str(const Elt& a) const {
    std::string s;
    for (int i = 0; i < dim(); ++i) {
      if (f_is_zero(a[i])) continue;
      if (!s.empty()) s += " + ";
      s += f_str(a[i]) + "*" + path_str(q_, basis_[i]);
    }
    return s.empty() ? "0" : s;
  }

private:
  PathAlgebra() = default;

  const Elt& table(int i, int j) const { return mult_[static_cast<size_t>(i) * dim() + j]; }

  Quiver q_;
  RelationSet<K> rels_;
  K proto_;
  std::vector<Path> basis_;
  std::map<std::string, int> lookup_;
  std::vector<int> idem_idx_, arrow_idx_;
  std::vector<Elt> mult_;
  int loewy_ = 0;
  std::vector<std::vector<Elt>> rad_bases_;  // index k >= 1, up to first zero power
};

namespace detail {

/* Row-echelon store over path ids; ids are ordered by (length, enumeration),
   leading term = largest id. Rows kept fully reduced against each other. */
template <class K>
class PathEchelon {
public:
  PathEchelon(int npaths, const K& proto) : n_(npaths), proto_(f_zero(proto)) {}

  void insert(std::vector<K> v) {
    while (true) {
      int lead = leading(v);
      if (lead < 0) return;
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        K inv = f_inv(v[lead]);
        for (auto& x : v) x = inv * x;
        for (auto& [l, row] : rows_) {
          if (f_is_zero(row[lead])) continue;
          K c = row[lead];
          for (int i = 0; i <= lead; ++i) row[i] = row[i] - c * v[i];
        }
        rows_.emplace(lead, std::move(v));
        return;
      }
      K c = v[lead];
      const std::vector<K>& row = it->second;
      for (int i = 0; i <= lead; ++i) v[i] = v[i] - c * row[i];
    }
  }

  bool is_leader(int id) const { return rows_.count(id) != 0; }

  /* Fully reduce; afterwards no coordinate is a leader. */
  std::vector<K> reduce(std::vector<K> v) const {
    for (int id = leading(v); id >= 0; id = next_lower(v, id)) {
      auto it = rows_.find(id);
      if (it == rows_.end()) continue;
      K c = v[id];
      const std::vector<K>& row = it->second;
      for (int i = 0; i <= id; ++i) v[i] = v[i] - c * row[i];
    }
    return v;
  }

private:
  int leading(const std::vector<K>& v) const {
    for (int i = n_ - 1; i >= 0; --i)
      if (!f_is_zero(v[i])) return i;
    return -1;
  }
  int next_lower(const std::vector<K>& v, int below) const {
    for (int i = below - 1; i >= 0; --i)
      if (!f_is_zero(v[i])) return i;
    return -1;
  }

  int n_;
  K proto_;
  std::map<int, std::vector<K>> rows_;
};

/* Echelon span of coefficient vectors; used for radical powers. */
template <class K>
class VecSpan {
public:
  explicit VecSpan(int n, const K& proto) : n_(n), proto_(f_zero(proto)) {}
  bool insert(std::vector<K> v) {
    for (auto& [lead, row] : rows_)
      if (!f_is_zero(v[lead])) {
        K c = v[lead];
        for (int i = 0; i < n_; ++i) v[i] = v[i] - c * row[i];
      }
    int lead = -1;
    for (int i = 0; i < n_; ++i)
      if (!f_is_zero(v[i])) {
        lead = i;
        break;
      }
    if (lead < 0) return false;
    K inv = f_inv(v[lead]);
    for (auto& x : v) x = inv * x;
    rows_.emplace_back(lead, std::move(v));
    return true;
  }
  int dim() const { return static_cast<int>(rows_.size()); }
  std::vector<std::vector<K>> basis() const {
    std::vector<std::vector<K>> b;
    for (const auto& [lead, row] : rows_) b.push_back(row);
    return b;
  }

private:
  int n_;
  K proto_;
  std::vector<std::pair<int, std::vector<K>>> rows_;
};

}  // namespace detail

template <class K>
std::shared_ptr<const PathAlgebra<K>> PathAlgebra<K>::build(Quiver q, RelationSet<K> rels,
                                                            const K& proto, int cap,
                                                            const std::string& at) {
  /* Validate and normalize relations. */
  RelationSet<K> clean;
  for (size_t ri = 0; ri < rels.size(); ++ri) {
    Relation<K> r;
    int src = -1, tgt = -1;
    for (const auto& t : rels[ri].terms) {
      if (f_is_zero(t.coeff)) continue;
      if (!path_valid(q, t.path))
        throw input_error("relation term is not a composable path", at);
      if (t.path.length() < 2)
        throw input_error("non-admissible relation: a term has length < 2", at);
      int s = path_source(q, t.path), g = path_target(q, t.path);
      if (src < 0) {
        src = s;
        tgt = g;
      } else if (s != src || g != tgt) {
        throw input_error("ill-typed relation: terms are not parallel", at);
      }
      r.terms.push_back(t);
    }
    if (!r.terms.empty()) clean.push_back(std::move(r));
  }

  int max_rel_len = 2;
  for (const auto& r : clean)
    for (const auto& t : r.terms) max_rel_len = std::max(max_rel_len, t.path.length());

  constexpr int kPathLimit = 20000;

  auto attempt = [&](int ell, int margin) -> std::shared_ptr<const PathAlgebra<K>> {
    int depth = std::max(2 * ell - 2, ell + max_rel_len) + margin;
    std::vector<std::vector<Path>> grouped = paths_by_length(q, depth, kPathLimit);
    std::vector<Path> all;
    std::map<std::string, int> ids;
    for (const auto& grp : grouped)
      for (const Path& p : grp) {
        ids[detail::path_key(p)] = static_cast<int>(all.size());
        all.push_back(p);
      }
    int npaths = static_cast<int>(all.size());

    detail::PathEchelon<K> ech(npaths, proto);
    /* Two-sided paddings u * r * w with every padded term within depth. */
    for (const auto& r : clean) {
      int rsrc = path_source(q, r.terms[0].path);
      int rtgt = path_target(q, r.terms[0].path);
      int rmax = 0;
      for (const auto& t : r.terms) rmax = std::max(rmax, t.path.length());
      for (const Path& u : all) {
        if (path_target(q, u) != rsrc) continue;
        if (u.length() + rmax > depth) continue;
        for (const Path& w : all) {
          if (path_source(q, w) != rtgt) continue;
          if (u.length() + rmax + w.length() > depth) continue;
          std::vector<K> vec(npaths, f_zero(proto));
          for (const auto& t : r.terms) {
            Path padded = path_then(q, path_then(q, u, t.path), w);
            vec[ids.at(detail::path_key(padded))] = vec[ids.at(detail::path_key(padded))] + t.coeff;
          }
          ech.insert(std::move(vec));
        }
      }
    }

    if (ell <= depth)
      for (const Path& p : grouped[ell])
        if (!ech.is_leader(ids.at(detail::path_key(p)))) return nullptr;

    /* Candidate basis: non-leader paths of length < ell. */
    auto pa = std::shared_ptr<PathAlgebra<K>>(new PathAlgebra<K>());
    pa->q_ = q;
    pa->rels_ = clean;
    pa->proto_ = f_zero(proto);
    for (int len = 0; len < ell && len < static_cast<int>(grouped.size()); ++len)
      for (const Path& p : grouped[len])
        if (!ech.is_leader(ids.at(detail::path_key(p)))) {
          pa->lookup_[detail::path_key(p)] = static_cast<int>(pa->basis_.size());
          pa->basis_.push_back(p);
        }
    int dim = pa->dim();

    pa->idem_idx_.assign(q.n_vertices(), -1);
    for (int v = 0; v < q.n_vertices(); ++v) {
      auto it = pa->lookup_.find(detail::path_key(Path{v, {}}));
      check_internal(it != pa->lookup_.end(), "build_algebra: vertex idempotent eliminated");
      pa->idem_idx_[v] = it->second;
    }
    pa->arrow_idx_.assign(q.n_arrows(), -1);
    for (int a = 0; a < q.n_arrows(); ++a) {
      Path ap{q.arrow(a).src, {a}};
      auto it = pa->lookup_.find(detail::path_key(ap));
      check_internal(it != pa->lookup_.end(), "build_algebra: arrow eliminated (non-admissible)");
      pa->arrow_idx_[a] = it->second;
    }

    /* Multiplication table via echelon reduction of concatenated paths.
       If a reduction leaves support on a non-basis path, the margin was too
       small: fail the attempt. */
    bool clean_tables = true;
    pa->mult_.assign(static_cast<size_t>(dim) * dim, Elt(dim, f_zero(proto)));
    for (int i = 0; i < dim && clean_tables; ++i)
      for (int j = 0; j < dim && clean_tables; ++j) {
        const Path& pi = pa->basis_[i];
        const Path& pj = pa->basis_[j];
        if (path_target(q, pj) != path_source(q, pi)) continue;  // product is zero
        Path prod = path_then(q, pj, pi);
        std::vector<K> vec(npaths, f_zero(proto));
        vec[ids.at(detail::path_key(prod))] = f_one(proto);
        vec = ech.reduce(std::move(vec));
        Elt& cell = pa->mult_[static_cast<size_t>(i) * dim + j];
        for (int t = 0; t < npaths; ++t) {
          if (f_is_zero(vec[t])) continue;
          auto it = pa->lookup_.find(detail::path_key(all[t]));
          if (it == pa->lookup_.end()) {
            clean_tables = false;
            break;
          }
          cell[it->second] = vec[t];
        }
      }
    if (!clean_tables) return nullptr;

    /* Certification: with these checks passing, the table is exactly the
       universal quotient (surjection from the relation quotient both ways). */
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          Elt l = pa->mul(pa->mul(pa->basis_elt(i), pa->basis_elt(j)), pa->basis_elt(k));
          Elt r = pa->mul(pa->basis_elt(i), pa->mul(pa->basis_elt(j), pa->basis_elt(k)));
          if (!pa->elt_is_zero(pa->sub(l, r))) return nullptr;
        }
    for (const auto& r : clean)
      if (!pa->elt_is_zero(pa->eval_relation(r))) return nullptr;
    for (int i = 0; i < dim; ++i) {
      Elt via_arrows = pa->path_class(pa->basis_[i]);
      if (!(via_arrows == pa->basis_elt(i))) return nullptr;
    }

    /* Radical powers and nilpotency. Non-nilpotent radical means the
       presentation is not admissible. */
    {
      std::vector<Elt> prev;
      for (int i = 0; i < dim; ++i)
        if (pa->basis_[i].length() >= 1) prev.push_back(pa->basis_elt(i));
      std::vector<Elt> arrows = prev;
      int prev_dim = static_cast<int>(prev.size());
      pa->rad_bases_.assign(1, {});  // index 0 unused
      if (!prev.empty()) pa->rad_bases_.push_back(prev);
      while (!prev.empty()) {
        detail::VecSpan<K> span(dim, proto);
        for (const Elt& x : arrows)
          for (const Elt& y : prev) span.insert(pa->mul(x, y));
        std::vector<Elt> next;
        for (auto& b : span.basis()) next.push_back(b);
        if (static_cast<int>(next.size()) == prev_dim && prev_dim > 0)
          throw input_error("non-admissible relations: the arrow ideal is not nilpotent", at);
        prev = next;
        prev_dim = static_cast<int>(next.size());
        if (!prev.empty()) pa->rad_bases_.push_back(prev);
      }
      pa->loewy_ = static_cast<int>(pa->rad_bases_.size()) - 1;
    }
    return pa;
  };

  for (int ell = 1; ell <= cap; ++ell) {
    for (int margin : {0, 2, 4}) {
      auto pa = attempt(ell, margin);
      if (pa) return pa;
      if (clean.empty()) break;  // margins cannot matter without relations
    }
  }
  throw input_error(
      "algebra is not finite-dimensional within the path-length cap of " + std::to_string(cap),
      at);
}

}  // namespace qalg
