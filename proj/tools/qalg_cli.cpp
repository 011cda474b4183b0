/* Command-line front end. A workspace is a JSON document naming quivers,
   algebras, modules, maps, collections, algebra homs and algebra objects;
   commands reference entries by name. Output is text by default, a JSON
   report with --format json. Exit codes: 0 success or positive verdict,
   1 negative mathematical verdict, 2 bad input, 70 broken invariant. */

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qalg/counterexample.hpp"
#include "qalg/json_io.hpp"

namespace qalg {
namespace {

struct Printer {
  bool as_json = false;
  Json payload = Json::object();
  std::vector<std::string> lines;

  void put(const std::string& key, Json value) { payload[key] = std::move(value); }
  void say(std::string line) { lines.push_back(std::move(line)); }
  int finish(int code) const {
    if (as_json)
      std::cout << payload.dump(2) << "\n";
    else
      for (const auto& l : lines) std::cout << l << "\n";
    return code;
  }
};

std::string dims_str(const std::vector<int>& dims) {
  std::string s = "(";
  for (size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + ")";
}

template <class K>
std::string coords_str(const std::vector<K>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + f_str(v[i]);
  return s + "]";
}

long ncdef_budget_from_env() {
  const char* e = std::getenv("NCDEF_BUDGET");
  if (!e) return 200000;
  std::string text(e);
  try {
    size_t pos = 0;
    long b = std::stol(text, &pos);
    if (pos != text.size() || b <= 0) throw std::invalid_argument(text);
    return b;
  } catch (const std::exception&) {
    throw input_error("NCDEF_BUDGET must be a positive integer, got '" + text + "'");
  }
}

struct Args {
  std::string cmd;
  std::string input;
  std::string format = "text";
  std::uint64_t seed = 2026;
  std::string name, second;
  int levels = 3;
  int depth = 0;
  std::string field = "Q";
};

template <class K>
int run_verify(const Args& a, const K& proto) {
  Printer out{a.format == "json"};
  CheckReport rep = run_counterexample_checks(proto);
  Json steps = Json::array();
  for (const CheckStep& st : rep.steps) {
    Json js;
    js["id"] = st.id;
    js["title"] = st.title;
    js["pass"] = st.pass;
    Json det = Json::object();
    for (const auto& [k, v] : st.details) det[k] = v;
    js["details"] = std::move(det);
    steps.push_back(std::move(js));
    out.say(std::string(st.pass ? "[ ok ] " : "[fail] ") + st.id + "  " + st.title);
    for (const auto& [k, v] : st.details) out.say("    " + k + ": " + v);
  }
  out.put("steps", std::move(steps));
  out.put("warnings", rep.warnings);
  out.put("pass", rep.pass);
  for (const auto& w : rep.warnings) out.say("warning: " + w);
  out.say(std::string("verdict: ") + (rep.pass ? "pass" : "fail"));
  return out.finish(rep.pass ? 0 : 1);
}

template <class K>
int run_cmds(const Args& a, const Json& doc, const K& proto) {
  Workspace<K> ws = parse_workspace(doc, proto);
  Printer out{a.format == "json"};
  std::mt19937_64 rng(a.seed);

  auto abase = [&ws](const std::string& n) -> BasePtr<K> {
    std::string key = "algebra:" + n;
    if (!ws.bases.count(key)) ws.bases[key] = RepBase<K>::of_algebra(ws.algebra(n));
    return ws.bases.at(key);
  };

  if (a.cmd == "check-algebra") {
    const auto& alg = ws.algebra(a.name);
    out.put("name", a.name);
    out.put("dim", alg->dim());
    out.put("loewy", alg->loewy_length());
    out.put("n_vertices", alg->n_vertices());
    out.put("n_arrows", alg->quiver().n_arrows());
    Json basis = Json::array();
    std::string bl = "basis:";
    for (int i = 0; i < alg->dim(); ++i) {
      std::string p = path_str(alg->quiver(), alg->basis_path(i));
      basis.push_back(p);
      bl += " " + p;
    }
    out.put("basis", std::move(basis));
    out.say("algebra " + a.name + ": dim " + std::to_string(alg->dim()) + ", loewy length " +
            std::to_string(alg->loewy_length()));
    out.say(bl);
    return out.finish(0);
  }

  if (a.cmd == "loewy") {
    int l = ws.loewy_of(a.name);
    out.put("name", a.name);
    out.put("loewy", l);
    out.say("loewy(" + a.name + ") = " + std::to_string(l));
    return out.finish(0);
  }

  if (a.cmd == "simples" || a.cmd == "projectives") {
    BasePtr<K> base = abase(a.name);
    const Quiver& q = base->quiver();
    Json arr = Json::array();
    for (int v = 0; v < q.n_vertices(); ++v) {
      Rep<K> m = a.cmd == "simples" ? simple_rep(base, v) : projective_rep(base, v);
      Json e;
      e["vertex"] = q.vertex(v);
      e["dims"] = m.dims;
      e["total"] = m.total_dim();
      arr.push_back(std::move(e));
      out.say((a.cmd == "simples" ? "simple at " : "projective at ") + q.vertex(v) + ": dims " +
              dims_str(m.dims) + ", total " + std::to_string(m.total_dim()));
    }
    out.put(a.cmd, std::move(arr));
    return out.finish(0);
  }

  if (a.cmd == "hom") {
    const Rep<K>& m = ws.module(a.name);
    const Rep<K>& n = ws.module(a.second);
    if (!m.base->same_as(*n.base)) throw input_error("hom endpoints live over different bases");
    std::vector<RepMap<K>> hs = hom_space(m, n);
    out.put("dim", static_cast<int>(hs.size()));
    Json basis = Json::array();
    for (const auto& h : hs) basis.push_back(blocks_json(h));
    out.put("basis", std::move(basis));
    out.say("hom(" + a.name + ", " + a.second + ") has dimension " + std::to_string(hs.size()));
    return out.finish(0);
  }

  if (a.cmd == "ext1") {
    const Rep<K>& m = ws.module(a.name);
    const Rep<K>& n = ws.module(a.second);
    Ext1<K> e(m, n);
    out.put("dim", e.dim());
    out.put("mode", e.mode() == Ext1<K>::Mode::ViaSyzygy ? "syzygy" : "arrow-complex");
    out.say("ext1(" + a.name + ", " + a.second + ") has dimension " + std::to_string(e.dim()));
    return out.finish(0);
  }

  if (a.cmd == "class-of-ses") {
    Ses<K> s{ws.hom(a.name), ws.hom(a.second)};
    validate_ses(s, "ses");
    Ext1<K> e(s.quo(), s.sub());
    std::vector<K> c = e.class_of_ses(s);
    bool split = true;
    for (const K& x : c) split = split && f_is_zero(x);
    out.put("dim", e.dim());
    out.put("coords", coords_json(c));
    out.put("split", split);
    out.say("class " + coords_str(c) + " in an extension group of dimension " +
            std::to_string(e.dim()));
    out.say(split ? "the sequence splits" : "the sequence does not split");
    return out.finish(0);
  }

  if (a.cmd == "univ-ext") {
    const Rep<K>& m = ws.module(a.name);
    const Collection<K>& coll = ws.collection(a.second);
    UnivExt<K> u = universal_extension(m, coll.items);
    out.put("mults", u.mults);
    out.put("middle_dims", u.ses.mid().dims);
    out.put("middle_total", u.ses.mid().total_dim());
    out.say("multiplicities " + dims_str(u.mults));
    out.say("middle term dims " + dims_str(u.ses.mid().dims) + ", total " +
            std::to_string(u.ses.mid().total_dim()));
    return out.finish(0);
  }

  if (a.cmd == "df-tower") {
    if (a.levels < 0) throw input_error("--levels must be nonnegative");
    const Collection<K>& coll = ws.collection(a.name);
    std::vector<TowerLevel<K>> tower = df_tower(coll.base, coll.items, a.levels);
    Json lv = Json::array();
    for (size_t l = 0; l < tower.size(); ++l) {
      Json e;
      e["dims"] = tower[l].module.dims;
      e["total"] = tower[l].module.total_dim();
      e["endo_dim"] = tower[l].endo.dim();
      lv.push_back(std::move(e));
      out.say("level " + std::to_string(l) + ": dims " + dims_str(tower[l].module.dims) +
              ", endo dim " + std::to_string(tower[l].endo.dim()));
    }
    out.put("levels", std::move(lv));
    return out.finish(0);
  }

  if (a.cmd == "conjugate") {
    const AlgebraHom<K>& h1 = ws.algebra_hom(a.name);
    const AlgebraHom<K>& h2 = ws.algebra_hom(a.second);
    SearchBudget bud;
    ConjVerdict<K> v = are_conjugate(h1, h2, bud.trials, bud, rng);
    out.put("status", std::string(iso_verdict_str(v.status)));
    out.say("conjugacy: " + std::string(iso_verdict_str(v.status)));
    if (v.witness) {
      out.put("witness", coords_json(*v.witness));
      out.say("witness unit " + coords_str(*v.witness));
    }
    return out.finish(v.status == IsoVerdict::Yes ? 0 : 1);
  }

  if (a.cmd == "flat-check") {
    const AObject<K>& z = ws.aobject(a.name);
    auto fc = is_flat(z);
    out.put("flat", fc.flat);
    out.put("top_mults", fc.top_mults);
    if (fc.flat) {
      out.say("flat; top multiplicities " + dims_str(fc.top_mults));
    } else {
      out.put("witness_vertex", z.alg->quiver().vertex(fc.witness_vertex));
      out.put("detail", fc.detail);
      out.say("not flat at vertex " + z.alg->quiver().vertex(fc.witness_vertex) + ": " +
              fc.detail);
    }
    return out.finish(fc.flat ? 0 : 1);
  }

  if (a.cmd == "tensor") {
    const AObject<K>& z = ws.aobject(a.name);
    const Rep<K>& m = ws.module(a.second);
    TensorResult<K> t = tensor_apply(z, m);
    out.put("out", rep_json(t.out));
    out.say("tensor output dims " + dims_str(t.out.dims) + ", total " +
            std::to_string(t.out.total_dim()));
    return out.finish(0);
  }

  if (a.cmd == "simple-collection") {
    const Collection<K>& coll = ws.collection(a.name);
    std::optional<SimpleDefect> d = simple_collection_defect(coll);
    out.put("simple", !d.has_value());
    if (d) {
      Json e;
      e["i"] = d->i;
      e["j"] = d->j;
      e["dim"] = d->dim;
      out.put("defect", std::move(e));
      out.say("not simple: hom between members " + std::to_string(d->i) + " and " +
              std::to_string(d->j) + " has dimension " + std::to_string(d->dim));
    } else {
      out.say("the collection behaves like a set of simples");
    }
    return out.finish(d ? 1 : 0);
  }

  if (a.cmd == "ex-member") {
    const Rep<K>& m = ws.module(a.name);
    const Collection<K>& coll = ws.collection(a.second);
    ExResult<K> r = ex_membership(m, coll, a.depth);
    out.put("member", r.member);
    out.put("exhaustive", r.exhaustive);
    if (r.member) {
      check_internal(r.cert.has_value() && replay_ex_cert(m, coll, *r.cert),
                     "ex-member: certificate replay failed");
      out.put("depth", r.cert->depth());
      Json layers = Json::array();
      for (const auto& st : r.cert->steps) layers.push_back(st.pieces);
      out.put("layers", std::move(layers));
      out.say("member within depth " + std::to_string(r.cert->depth()));
      for (size_t t = 0; t < r.cert->steps.size(); ++t) {
        std::string line = "layer " + std::to_string(t) + ": pieces";
        for (int p : r.cert->steps[t].pieces) line += " " + std::to_string(p);
        out.say(line);
      }
    } else {
      out.say(r.exhaustive ? "not a member (exhaustive search)"
                           : "no witness found (search was not exhaustive)");
    }
    return out.finish(r.member ? 0 : 1);
  }

  if (a.cmd == "ncdef") {
    auto alg = ws.algebra(a.name);
    const Collection<K>& coll = ws.collection(a.second);
    NcdefResult<K> r = ncdef_enumerate(alg, coll, ncdef_budget_from_env());
    out.put("raw", r.raw);
    out.put("param_dim", r.param_dim);
    out.put("gauge_dim", r.gauge_dim);
    out.put("n_structures", static_cast<long>(r.elements.size()));
    out.put("n_orbits", static_cast<int>(r.orbits.size()));
    Json orbits = Json::array();
    for (const auto& o : r.orbits) {
      Json e;
      e["size"] = o.size;
      e["rep_index"] = o.rep_index;
      orbits.push_back(std::move(e));
    }
    out.put("orbits", std::move(orbits));
    out.say("parameter dimension " + std::to_string(r.param_dim) + ", gauge dimension " +
            std::to_string(r.gauge_dim));
    out.say("raw points " + std::to_string(r.raw) + ", structures " +
            std::to_string(r.elements.size()) + ", orbits " + std::to_string(r.orbits.size()));
    return out.finish(0);
  }

  if (a.cmd == "ff-check") {
    const AObject<K>& z = ws.aobject(a.name);
    FfReport<K> r = ff_criterion(z);
    const char* names[] = {"fully-faithful", "hom-mismatch", "ext-degenerate"};
    out.put("status", names[static_cast<int>(r.status)]);
    if (r.status == FfStatus::FullyFaithful) {
      out.say("fully faithful");
    } else {
      const Quiver& q = z.alg->quiver();
      out.put("i", q.vertex(r.i));
      out.put("j", q.vertex(r.j));
      out.say(std::string(names[static_cast<int>(r.status)]) + " at the pair (" + q.vertex(r.i) +
              ", " + q.vertex(r.j) + ")");
      if (r.status == FfStatus::FailsExtInjectivity) {
        out.put("witness", coords_json(r.witness));
        out.say("class sent to zero: " + coords_str(r.witness));
      }
    }
    return out.finish(r.status == FfStatus::FullyFaithful ? 0 : 1);
  }

  throw internal_error("unhandled command " + a.cmd);
}

int dispatch(const Args& args) {
  if (args.cmd == "verify-54") {
    FieldSpec fs = FieldSpec::parse(args.field, "--field");
    return fs.finite() ? run_verify(args, Fp(0, fs.p)) : run_verify(args, Rat(0));
  }
  if (args.input.empty()) throw input_error("a workspace file is required (--input PATH)");
  std::ifstream in(args.input);
  if (!in) throw input_error("cannot open workspace '" + args.input + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw input_error(std::string("workspace is not valid JSON: ") + e.what());
  }
  FieldSpec fs = FieldSpec::parse(jstring(jfield(doc, "field", ""), "field"), "field");
  return fs.finite() ? run_cmds(args, doc, Fp(0, fs.p)) : run_cmds(args, doc, Rat(0));
}

}  // namespace
}  // namespace qalg

int main(int argc, char** argv) {
  CLI::App app{"exact module-category computations for basic algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  qalg::Args args;

  app.add_option("--input", args.input, "workspace JSON file");
  app.add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", args.seed, "seed for randomized searches");

  auto one = [&](const char* name, const char* desc, const char* arg) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option(arg, args.name, "")->required();
    return c;
  };
  auto two = [&](const char* name, const char* desc, const char* arg1, const char* arg2) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option(arg1, args.name, "")->required();
    c->add_option(arg2, args.second, "")->required();
    return c;
  };

  one("check-algebra", "basis, dimension and loewy length of an algebra", "algebra");
  one("loewy", "loewy length of an algebra or module", "name");
  one("simples", "simple modules of an algebra", "algebra");
  one("projectives", "indecomposable projectives of an algebra", "algebra");
  two("hom", "basis of the hom space between two modules", "src", "tgt");
  two("ext1", "dimension of the first extension group", "src", "tgt");
  two("class-of-ses", "extension class of a short exact sequence", "inc", "prj");
  two("univ-ext", "universal extension of a module by a collection", "module", "collection");
  CLI::App* tower = one("df-tower", "iterated universal extensions of a collection", "collection");
  tower->add_option("--levels", args.levels, "number of extension steps");
  two("conjugate", "decide conjugacy of two algebra homs", "hom1", "hom2");
  one("flat-check", "projectivity of an object over its acting algebra", "object");
  two("tensor", "apply the functor attached to an object to a module", "object", "module");
  one("simple-collection", "hom test for a collection of modules", "collection");
  CLI::App* exm = two("ex-member", "iterated-extension membership with certificate", "module",
                      "collection");
  exm->add_option("--depth", args.depth, "maximal extension depth")->required();
  two("ncdef", "enumerate flat structures over a finite field", "algebra", "collection");
  one("ff-check", "fully-faithful test for the functor of a flat object", "object");
  CLI::App* ver = app.add_subcommand("verify-54", "run the bundled obstruction example checks");
  ver->add_option("--field", args.field, "coefficient field, Q or F:<p>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  args.cmd = app.get_subcommands().front()->get_name();

  try {
    return qalg::dispatch(args);
  } catch (const qalg::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qalg::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
