#pragma once

/* Workspace (de)serialization. A workspace is one JSON document that names
   quivers, algebras, modules, maps, collections, algebra homs and algebra
   objects; commands reference the entries by name. Scalars are integers or
   strings ("n" over a prime field, "n" or "n/d" over the rationals); matrices
   are row-major nested arrays; a missing matrix means zero. */

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qalg/aobject.hpp"
#include "qalg/deform.hpp"

namespace qalg {

using Json = nlohmann::json;

inline const Json& jfield(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) throw input_error("expected an object", at);
  auto it = j.find(key);
  if (it == j.end()) throw input_error(std::string("missing field '") + key + "'", at);
  return *it;
}

inline std::string jstring(const Json& j, const std::string& at) {
  if (!j.is_string()) throw input_error("expected a string", at);
  return j.get<std::string>();
}

inline int jint(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) throw input_error("expected an integer", at);
  return j.get<int>();
}

template <class K>
K scalar_from_json(const Json& j, const K& proto, const std::string& at) {
  if (j.is_number_integer()) return f_from_int(j.get<std::int64_t>(), proto);
  if (j.is_string()) return f_parse(j.get<std::string>(), proto, at);
  throw input_error("scalar must be an integer or a string", at);
}

template <class K>
Matrix<K> matrix_from_json(const Json& j, int rows, int cols, const K& proto,
                           const std::string& at) {
  Matrix<K> m(rows, cols, proto);
  if (j.is_null()) return m;
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw input_error("matrix needs " + std::to_string(rows) + " rows", at);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw input_error("matrix row needs " + std::to_string(cols) + " entries",
                        at + "/" + std::to_string(r));
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = scalar_from_json(row[c], proto, at + "/" + std::to_string(r));
  }
  return m;
}

inline int vertex_index(const Quiver& q, const std::string& name, const std::string& at) {
  for (int v = 0; v < q.n_vertices(); ++v)
    if (q.vertex(v) == name) return v;
  throw input_error("unknown vertex '" + name + "'", at);
}

inline int arrow_index(const Quiver& q, const std::string& name, const std::string& at) {
  for (int a = 0; a < q.n_arrows(); ++a)
    if (q.arrow(a).name == name) return a;
  throw input_error("unknown arrow '" + name + "'", at);
}

/* ["a", "b", ...] in traversal order; the path starts at the first arrow's
   source. */
inline Path path_from_json(const Quiver& q, const Json& j, const std::string& at) {
  if (!j.is_array() || j.empty()) throw input_error("path needs at least one arrow", at);
  Path p;
  p.arrows.reserve(j.size());
  for (const Json& e : j) p.arrows.push_back(arrow_index(q, jstring(e, at), at));
  p.base = q.arrow(p.arrows.front()).src;
  if (!path_valid(q, p)) throw input_error("arrows do not compose", at);
  return p;
}

template <class K>
struct Workspace {
  K proto;
  std::map<std::string, Quiver> quivers;
  std::map<std::string, std::shared_ptr<const PathAlgebra<K>>> algebras;
  std::map<std::string, BasePtr<K>> bases;  // keyed "quiver:NAME" / "algebra:NAME"
  std::map<std::string, Rep<K>> modules;
  std::map<std::string, RepMap<K>> homs;
  std::map<std::string, Collection<K>> collections;
  std::map<std::string, AlgebraHom<K>> algebra_homs;
  std::map<std::string, AObject<K>> aobjects;

  template <class T>
  static const T& named(const std::map<std::string, T>& table, const std::string& name,
                        const char* what) {
    auto it = table.find(name);
    if (it == table.end())
      throw input_error(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
  }

  const Quiver& quiver(const std::string& n) const { return named(quivers, n, "quiver"); }
  const std::shared_ptr<const PathAlgebra<K>>& algebra(const std::string& n) const {
    return named(algebras, n, "algebra");
  }
  const Rep<K>& module(const std::string& n) const { return named(modules, n, "module"); }
  const RepMap<K>& hom(const std::string& n) const { return named(homs, n, "hom"); }
  const Collection<K>& collection(const std::string& n) const {
    return named(collections, n, "collection");
  }
  const AlgebraHom<K>& algebra_hom(const std::string& n) const {
    return named(algebra_homs, n, "algebra hom");
  }
  const AObject<K>& aobject(const std::string& n) const {
    return named(aobjects, n, "object");
  }

  /* Loewy length of whatever the name denotes: algebra or module. */
  int loewy_of(const std::string& n) const {
    if (auto it = algebras.find(n); it != algebras.end()) return it->second->loewy_length();
    if (auto it = modules.find(n); it != modules.end()) return loewy_length_of(it->second);
    throw input_error("unknown algebra or module '" + n + "'");
  }
};

namespace detail_json {

template <class K>
Relation<K> relation_from_json(const Quiver& q, const Json& j, const K& proto,
                               const std::string& at) {
  if (!j.is_array() || j.empty()) throw input_error("relation needs at least one term", at);
  Relation<K> r;
  for (size_t t = 0; t < j.size(); ++t) {
    std::string tat = at + "/" + std::to_string(t);
    const Json& term = j[t];
    K c = scalar_from_json(jfield(term, "coeff", tat), proto, tat + "/coeff");
    Path p = path_from_json(q, jfield(term, "path", tat), tat + "/path");
    r.terms.push_back({std::move(c), std::move(p)});
  }
  return r;
}

/* {"coeff": c, "path": [...]} or {"coeff": c, "vertex": "w"} summands. */
template <class K>
typename PathAlgebra<K>::Elt elt_from_json(const PathAlgebra<K>& alg, const Json& j,
                                           const std::string& at) {
  if (!j.is_array()) throw input_error("element needs a term list", at);
  typename PathAlgebra<K>::Elt acc = alg.zero_elt();
  for (size_t t = 0; t < j.size(); ++t) {
    std::string tat = at + "/" + std::to_string(t);
    const Json& term = j[t];
    K c = scalar_from_json(jfield(term, "coeff", tat), alg.proto(), tat + "/coeff");
    typename PathAlgebra<K>::Elt part;
    if (term.contains("vertex")) {
      int v = vertex_index(alg.quiver(), jstring(term["vertex"], tat + "/vertex"),
                           tat + "/vertex");
      part = alg.idem_elt(v);
    } else {
      part = alg.path_class(path_from_json(alg.quiver(), jfield(term, "path", tat),
                                           tat + "/path"));
    }
    for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + c * part[i];
  }
  return acc;
}

template <class K>
BasePtr<K> base_from_json(Workspace<K>& ws, const Json& j, const std::string& at) {
  if (j.contains("algebra")) {
    std::string n = jstring(j["algebra"], at + "/algebra");
    std::string key = "algebra:" + n;
    if (!ws.bases.count(key)) ws.bases[key] = RepBase<K>::of_algebra(ws.algebra(n));
    return ws.bases[key];
  }
  if (j.contains("quiver")) {
    std::string n = jstring(j["quiver"], at + "/quiver");
    std::string key = "quiver:" + n;
    if (!ws.bases.count(key)) ws.bases[key] = RepBase<K>::bare(ws.quiver(n), {}, ws.proto);
    return ws.bases[key];
  }
  throw input_error("base needs an 'algebra' or 'quiver' reference", at);
}

template <class K>
Rep<K> rep_from_json(Workspace<K>& ws, const Json& j, const std::string& at) {
  Rep<K> m;
  m.base = base_from_json(ws, jfield(j, "base", at), at + "/base");
  const Quiver& q = m.base->quiver();
  const Json& dims = jfield(j, "dims", at);
  if (!dims.is_array() || static_cast<int>(dims.size()) != q.n_vertices())
    throw input_error("dims needs one entry per vertex", at + "/dims");
  for (const Json& d : dims) m.dims.push_back(jint(d, at + "/dims"));
  Json arrows = j.value("arrows", Json::object());
  for (auto it = arrows.begin(); it != arrows.end(); ++it)
    arrow_index(q, it.key(), at + "/arrows");  // reject unknown names early
  for (int a = 0; a < q.n_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    Json cell = arrows.contains(ar.name) ? arrows[ar.name] : Json();
    m.act.push_back(matrix_from_json(cell, m.dims[ar.src], m.dims[ar.dst], ws.proto,
                                     at + "/arrows/" + ar.name));
  }
  validate_rep(m, at);
  return m;
}

/* Blocks of a map between modules: one matrix per vertex, shaped
   tgt.dims[v] x src.dims[v]. */
template <class K>
std::vector<Matrix<K>> blocks_from_json(const Json& j, const Rep<K>& src, const Rep<K>& tgt,
                                        const K& proto, const std::string& at) {
  int nv = src.base->quiver().n_vertices();
  if (!j.is_array() || static_cast<int>(j.size()) != nv)
    throw input_error("blocks need one matrix per vertex", at);
  std::vector<Matrix<K>> blocks;
  for (int v = 0; v < nv; ++v)
    blocks.push_back(matrix_from_json(j[v], tgt.dims[v], src.dims[v], proto,
                                      at + "/" + std::to_string(v)));
  return blocks;
}

}  // namespace detail_json

template <class K>
Workspace<K> parse_workspace(const Json& j, const K& proto) {
  using namespace detail_json;
  Workspace<K> ws;
  ws.proto = f_zero(proto);
  if (!j.is_object()) throw input_error("workspace must be a JSON object");
  FieldSpec fs = FieldSpec::parse(jstring(jfield(j, "field", ""), "field"), "field");
  std::int64_t p = f_characteristic(proto);
  if ((p == 0) != (fs.kind == FieldSpec::Kind::Rationals) || (p != 0 && p != fs.p))
    throw input_error("workspace field '" + fs.str() + "' does not match the session field",
                      "field");

  Json quivers = j.value("quivers", Json::object());
  for (auto it = quivers.begin(); it != quivers.end(); ++it) {
    std::string at = "quivers/" + it.key();
    const Json& spec = it.value();
    std::vector<std::string> verts;
    for (const Json& v : jfield(spec, "vertices", at)) verts.push_back(jstring(v, at));
    Quiver probe(verts, {});
    std::vector<Arrow> arrows;
    for (const Json& a : jfield(spec, "arrows", at)) {
      std::string name = jstring(jfield(a, "name", at), at);
      arrows.push_back(Arrow{name, vertex_index(probe, jstring(jfield(a, "src", at), at), at),
                             vertex_index(probe, jstring(jfield(a, "dst", at), at), at)});
    }
    ws.quivers.emplace(it.key(), Quiver(verts, arrows, at));
  }

  Json algebras = j.value("algebras", Json::object());
  for (auto it = algebras.begin(); it != algebras.end(); ++it) {
    std::string at = "algebras/" + it.key();
    const Json& spec = it.value();
    const Quiver& q = ws.quiver(jstring(jfield(spec, "quiver", at), at + "/quiver"));
    RelationSet<K> rels;
    Json rj = spec.value("relations", Json::array());
    for (size_t r = 0; r < rj.size(); ++r)
      rels.push_back(relation_from_json(q, rj[r], proto, at + "/relations/" + std::to_string(r)));
    int cap = spec.contains("cap") ? jint(spec["cap"], at + "/cap") : 32;
    ws.algebras.emplace(it.key(), PathAlgebra<K>::build(q, rels, proto, cap, at));
  }

  Json modules = j.value("modules", Json::object());
  for (auto it = modules.begin(); it != modules.end(); ++it)
    ws.modules.emplace(it.key(), rep_from_json(ws, it.value(), "modules/" + it.key()));

  Json homs = j.value("homs", Json::object());
  for (auto it = homs.begin(); it != homs.end(); ++it) {
    std::string at = "homs/" + it.key();
    const Json& spec = it.value();
    const Rep<K>& src = ws.module(jstring(jfield(spec, "src", at), at + "/src"));
    const Rep<K>& tgt = ws.module(jstring(jfield(spec, "tgt", at), at + "/tgt"));
    if (!src.base->same_as(*tgt.base))
      throw input_error("hom endpoints live over different bases", at);
    RepMap<K> f{src, tgt,
                blocks_from_json(jfield(spec, "blocks", at), src, tgt, proto, at + "/blocks")};
    validate_repmap(f, at);
    ws.homs.emplace(it.key(), std::move(f));
  }

  Json colls = j.value("collections", Json::object());
  for (auto it = colls.begin(); it != colls.end(); ++it) {
    std::string at = "collections/" + it.key();
    if (!it.value().is_array() || it.value().empty())
      throw input_error("collection needs a nonempty module list", at);
    std::vector<Rep<K>> items;
    for (const Json& n : it.value()) items.push_back(ws.module(jstring(n, at)));
    ws.collections.emplace(it.key(), make_collection(items.front().base, items, at));
  }

  Json ahoms = j.value("algebra_homs", Json::object());
  for (auto it = ahoms.begin(); it != ahoms.end(); ++it) {
    std::string at = "algebra_homs/" + it.key();
    const Json& spec = it.value();
    auto src = ws.algebra(jstring(jfield(spec, "src", at), at + "/src"));
    auto tgt = ws.algebra(jstring(jfield(spec, "tgt", at), at + "/tgt"));
    std::vector<std::vector<int>> vmap(src->n_vertices());
    const Json& vj = jfield(spec, "vertices", at);
    for (auto v = vj.begin(); v != vj.end(); ++v) {
      int sv = vertex_index(src->quiver(), v.key(), at + "/vertices");
      for (const Json& w : v.value())
        vmap[sv].push_back(vertex_index(tgt->quiver(), jstring(w, at), at + "/vertices"));
    }
    std::vector<typename PathAlgebra<K>::Elt> imgs;
    Json aj = spec.value("arrows", Json::object());
    for (int a = 0; a < src->quiver().n_arrows(); ++a) {
      const std::string& name = src->quiver().arrow(a).name;
      imgs.push_back(aj.contains(name)
                         ? detail_json::elt_from_json(*tgt, aj[name], at + "/arrows/" + name)
                         : tgt->zero_elt());
    }
    AlgebraHom<K> h = hom_from_arrows(src, tgt, vmap, imgs);
    HomCheck chk = check_hom(h);
    if (!chk.ok) throw input_error("not an algebra hom: " + chk.violation, at);
    ws.algebra_homs.emplace(it.key(), std::move(h));
  }

  Json objs = j.value("a_objects", Json::object());
  for (auto it = objs.begin(); it != objs.end(); ++it) {
    std::string at = "a_objects/" + it.key();
    const Json& spec = it.value();
    auto alg = ws.algebra(jstring(jfield(spec, "algebra", at), at + "/algebra"));
    const Rep<K>& carrier = ws.module(jstring(jfield(spec, "carrier", at), at + "/carrier"));
    const Json& idj = jfield(spec, "idempotents", at);
    if (!idj.is_array() || static_cast<int>(idj.size()) != alg->n_vertices())
      throw input_error("idempotent actions need one entry per algebra vertex",
                        at + "/idempotents");
    std::vector<RepMap<K>> idem, arr;
    for (int v = 0; v < alg->n_vertices(); ++v)
      idem.push_back(RepMap<K>{carrier, carrier,
                               blocks_from_json(idj[v], carrier, carrier, proto,
                                                at + "/idempotents/" + std::to_string(v))});
    Json aj = spec.value("arrows", Json::object());
    for (int a = 0; a < alg->quiver().n_arrows(); ++a) {
      const std::string& name = alg->quiver().arrow(a).name;
      std::vector<Matrix<K>> blocks;
      if (aj.contains(name)) {
        blocks = blocks_from_json(aj[name], carrier, carrier, proto, at + "/arrows/" + name);
      } else {
        for (int v = 0; v < carrier.base->quiver().n_vertices(); ++v)
          blocks.push_back(Matrix<K>(carrier.dims[v], carrier.dims[v], proto));
      }
      arr.push_back(RepMap<K>{carrier, carrier, std::move(blocks)});
    }
    ws.aobjects.emplace(it.key(), aobject_from_generators(alg, carrier, idem, arr, at));
  }

  return ws;
}

/* Serialization: scalars render through f_str so output is uniform across
   fields and round-trips through scalar_from_json. */

template <class K>
Json matrix_json(const Matrix<K>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(f_str(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class K>
Json rep_json(const Rep<K>& m) {
  const Quiver& q = m.base->quiver();
  Json out;
  out["dims"] = m.dims;
  Json arrows = Json::object();
  for (int a = 0; a < q.n_arrows(); ++a)
    if (m.act[a].rows() > 0 && m.act[a].cols() > 0) arrows[q.arrow(a).name] = matrix_json(m.act[a]);
  out["arrows"] = std::move(arrows);
  return out;
}

template <class K>
Json blocks_json(const RepMap<K>& f) {
  Json out = Json::array();
  for (const Matrix<K>& b : f.blocks) out.push_back(matrix_json(b));
  return out;
}

template <class K>
Json coords_json(const std::vector<K>& v) {
  Json out = Json::array();
  for (const K& x : v) out.push_back(f_str(x));
  return out;
}

}  // namespace qalg
