#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qalg/counterexample.hpp"
#include "qalg/deform.hpp"
#include "qalg/rep.hpp"

using namespace qalg;

/* ------------------------------------------------------------------------
   Brute-force oracle, kept independent of the enumeration code under test.

   Setup: the acting algebra is k[t]/(t^2) over F2, presented on the one-loop
   quiver; the target is the bare one-loop quiver; the fibre collection is the
   one dimensional module with zero loop action. A flat structure lives on the
   two dimensional carrier with basis (unit coordinate, radical coordinate),
   the fixed left action sends the unit coordinate to the radical one, and the
   reduction is the projection onto the unit coordinate. The loop action is an
   arbitrary 2x2 matrix subject to commuting with the left action and to
   vanishing under the reduction. We enumerate all 16 candidates directly.
   ------------------------------------------------------------------------ */

namespace {

using M2 = std::array<int, 4>;  // row-major 2x2 over F2

M2 mul2(const M2& a, const M2& b) {
  M2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c[i * 2 + j] = (a[i * 2] * b[j] + a[i * 2 + 1] * b[2 + j]) % 2;
  return c;
}

std::vector<M2> oracle_loop_solutions() {
  const M2 left{0, 0, 1, 0};  // unit coordinate -> radical coordinate
  std::vector<M2> sols;
  for (int bits = 0; bits < 16; ++bits) {
    M2 x{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1};
    if (mul2(x, left) != mul2(left, x)) continue;
    if (x[0] != 0 || x[1] != 0) continue;  // reduction row must vanish
    sols.push_back(x);
  }
  return sols;
}

/* Gauge maps: g = 1 + h with h commuting with the left action and killed by
   the reduction; over F2 that gives exactly two group elements. */
std::vector<M2> oracle_loop_gauge() {
  const M2 left{0, 0, 1, 0};
  std::vector<M2> gs;
  for (int bits = 0; bits < 16; ++bits) {
    M2 h{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1};
    if (mul2(h, left) != mul2(left, h)) continue;
    if (h[0] != 0 || h[1] != 0) continue;
    M2 g{(1 + h[0]) % 2, h[1], h[2], (1 + h[3]) % 2};
    gs.push_back(g);
  }
  return gs;
}

std::optional<M2> inv2(const M2& g) {
  int det = (g[0] * g[3] - g[1] * g[2]) % 2;
  if (det == 0) return std::nullopt;
  return M2{g[3], g[1], g[2], g[0]};  // adjugate equals inverse over F2
}

std::vector<std::vector<M2>> oracle_loop_orbits() {
  std::vector<M2> sols = oracle_loop_solutions();
  std::vector<M2> gauge = oracle_loop_gauge();
  std::vector<std::vector<M2>> orbits;
  std::set<M2> seen;
  for (const M2& x : sols) {
    if (seen.count(x)) continue;
    std::set<M2> orbit;
    for (const M2& g : gauge) {
      auto gi = inv2(g);
      REQUIRE(gi.has_value());
      orbit.insert(mul2(g, mul2(x, *gi)));
    }
    for (const M2& y : orbit) {
      REQUIRE(std::find(sols.begin(), sols.end(), y) != sols.end());
      seen.insert(y);
    }
    orbits.emplace_back(orbit.begin(), orbit.end());
  }
  return orbits;
}

}  // namespace

TEST_CASE("oracle: loop enumeration over F2 has two rigid solutions") {
  std::vector<M2> sols = oracle_loop_solutions();
  REQUIRE(sols.size() == 2);
  CHECK(sols[0] == M2{0, 0, 0, 0});
  CHECK(sols[1] == M2{0, 0, 1, 0});  // the left action itself

  std::vector<M2> gauge = oracle_loop_gauge();
  CHECK(gauge.size() == 2);

  auto orbits = oracle_loop_orbits();
  REQUIRE(orbits.size() == 2);
  CHECK(orbits[0].size() == 1);
  CHECK(orbits[1].size() == 1);
}

/* ------------------------------------------------------------------ */

namespace {

Quiver loop_quiver() { return Quiver({"1"}, {Arrow{"t", 0, 0}}); }

std::shared_ptr<const PathAlgebra<Fp>> loop_algebra_f2() {
  Relation<Fp> r;
  r.terms.push_back({Fp(1, 2), Path{0, {0, 0}}});
  return PathAlgebra<Fp>::build(loop_quiver(), {r}, Fp(0, 2));
}

std::shared_ptr<const PathAlgebra<Fp>> line_algebra_f5() {
  return PathAlgebra<Fp>::build(Quiver({"1", "2"}, {Arrow{"a", 1, 0}}), {}, Fp(0, 5));
}

}  // namespace

TEST_CASE("collections: vertex simples pass the hom test, the cyclic quotient does not") {
  Counterexample<Rat> cx = build_counterexample(Rat(0));
  Collection<Rat> simples = make_collection<Rat>(cx.base, {cx.l1, cx.l2, cx.l3});
  CHECK(is_simple_collection(simples));

  Collection<Rat> sigma = make_collection<Rat>(cx.base, {cx.l1, cx.quo, cx.l3});
  auto defect = simple_collection_defect(sigma);
  REQUIRE(defect.has_value());
  CHECK(defect->i == 1);
  CHECK(defect->j == 2);
  CHECK(defect->dim == 1);

  CHECK_THROWS_AS(make_collection<Rat>(cx.base, {}), input_error);
  CHECK_THROWS_AS(make_collection<Rat>(cx.base, {zero_rep(cx.base)}), input_error);
}

TEST_CASE("membership: layer depth of the length-three uniserial over the rationals") {
  Counterexample<Rat> cx = build_counterexample(Rat(0));
  Collection<Rat> simples = make_collection<Rat>(cx.base, {cx.l1, cx.l2, cx.l3});

  ExResult<Rat> one = ex_membership(cx.mid, simples, 1);
  CHECK_FALSE(one.member);
  CHECK(one.exhaustive);

  ExResult<Rat> two = ex_membership(cx.mid, simples, 2);
  REQUIRE(two.member);
  REQUIRE(two.cert.has_value());
  CHECK(two.cert->depth() == 2);
  CHECK(replay_ex_cert(cx.mid, simples, *two.cert));

  ExCert<Rat> truncated = *two.cert;
  truncated.steps.pop_back();
  CHECK_FALSE(replay_ex_cert(cx.mid, simples, truncated));

  ExResult<Rat> q1 = ex_membership(cx.quo, simples, 1);
  REQUIRE(q1.member);
  REQUIRE(q1.cert.has_value());
  CHECK(q1.cert->depth() == 1);
  CHECK(replay_ex_cert(cx.quo, simples, *q1.cert));

  CHECK_THROWS_AS(ex_membership(cx.mid, simples, -1), input_error);
}

TEST_CASE("membership: bottom-up and top-down peeling agree on layered lists") {
  Counterexample<Rat> cx = build_counterexample(Rat(0));
  Collection<Rat> simples = make_collection<Rat>(cx.base, {cx.l1, cx.l2, cx.l3});
  std::vector<Collection<Rat>> two = {simples, simples};
  std::vector<Collection<Rat>> three = {simples, simples, simples};

  CHECK_FALSE(star_membership_bottom_up(cx.mid, two).member);
  CHECK_FALSE(star_membership_top_down(cx.mid, two).member);
  CHECK(star_membership_bottom_up(cx.mid, three).member);
  CHECK(star_membership_top_down(cx.mid, three).member);
  CHECK(star_membership_bottom_up(cx.quo, two).member);
  CHECK(star_membership_top_down(cx.quo, two).member);
}

TEST_CASE("membership: multiplicity-free searches work over the rationals, others refuse") {
  Counterexample<Rat> cx = build_counterexample(Rat(0));

  // the defining sequence exhibits the middle term at depth one
  Collection<Rat> sigma = make_collection<Rat>(cx.base, {cx.l1, cx.quo, cx.l3});
  ExResult<Rat> r = ex_membership(cx.mid, sigma, 1);
  REQUIRE(r.member);
  REQUIRE(r.cert.has_value());
  CHECK(r.cert->depth() == 1);
  CHECK(replay_ex_cert(cx.mid, sigma, *r.cert));

  // a two dimensional endomorphism algebra has no finite line enumeration
  Collection<Rat> just_mid = make_collection<Rat>(cx.base, {cx.mid});
  CHECK_THROWS_AS(ex_membership(cx.mid, just_mid, 0), input_error);
}

TEST_CASE("flat family: loop carrier reproduces the regular bimodule") {
  Fp proto(0, 2);
  auto alg = loop_algebra_f2();
  BasePtr<Fp> base = RepBase<Fp>::of_algebra(alg);
  Collection<Fp> sigma = make_collection<Fp>(base, {simple_rep(base, 0)});
  FlatFamily<Fp> fam = flat_family(alg, sigma);

  CHECK(fam.dims == std::vector<int>{2});
  REQUIRE(fam.param_dim() == 1);
  CHECK(fam.gauge_dim() == 1);

  // the loop generator moves the unit coordinate onto the radical one
  const Matrix<Fp>& rt = fam.rho[1][0];
  CHECK(rt.at(1, 0).v == 1);
  CHECK(rt.at(0, 0).v == 0);
  CHECK(rt.at(0, 1).v == 0);
  CHECK(rt.at(1, 1).v == 0);

  // the reduction keeps exactly the unit coordinate
  REQUIRE(fam.pi[0].rows() == 1);
  CHECK(fam.pi[0].at(0, 0).v == 1);
  CHECK(fam.pi[0].at(0, 1).v == 0);

  AObject<Fp> z = fam.object_at({Fp(1, 2)});
  validate_aobject(z);
  CHECK(is_flat(z).flat);
  CHECK(relations_hold(z.carrier));
}

TEST_CASE("ncdef: loop algebra over F2 agrees with the brute-force oracle") {
  auto alg = loop_algebra_f2();
  BasePtr<Fp> base = RepBase<Fp>::of_algebra(alg);
  Collection<Fp> sigma = make_collection<Fp>(base, {simple_rep(base, 0)});
  NcdefResult<Fp> res = ncdef_enumerate(alg, sigma, 1000);

  CHECK(res.param_dim == 1);
  CHECK(res.gauge_dim == 1);
  REQUIRE(res.raw == 2);

  std::set<M2> got;
  for (const AObject<Fp>& z : res.elements) {
    REQUIRE(z.carrier.dims == std::vector<int>{2});
    const Matrix<Fp>& x = z.carrier.act[0];
    got.insert(M2{static_cast<int>(x.at(0, 0).v), static_cast<int>(x.at(0, 1).v),
                  static_cast<int>(x.at(1, 0).v), static_cast<int>(x.at(1, 1).v)});
    validate_aobject(z);
    CHECK(is_flat(z).flat);
  }
  std::vector<M2> osol = oracle_loop_solutions();
  std::set<M2> want(osol.begin(), osol.end());
  CHECK(got == want);

  REQUIRE(res.orbits.size() == 2);
  long covered = 0;
  for (const NcdefOrbit<Fp>& orb : res.orbits) {
    CHECK(orb.size == 1);
    covered += orb.size;
  }
  CHECK(covered == res.raw);
}

TEST_CASE("ncdef: rejects rational coefficients and undersized budgets") {
  Counterexample<Rat> cq = build_counterexample(Rat(0));
  CHECK_THROWS_AS(
      ncdef_enumerate(cq.alg_b, make_collection<Rat>(cq.base, {cq.l1, cq.quo, cq.l3}), 1000),
      input_error);

  Counterexample<Fp> cf = build_counterexample(Fp(0, 5));
  CHECK_THROWS_AS(
      ncdef_enumerate(cf.alg_b, make_collection<Fp>(cf.base, {cf.l1, cf.quo, cf.l3}), 3),
      input_error);
}

TEST_CASE("ncdef: ladder enumeration over F5 separates the three attached structures") {
  Counterexample<Fp> cx = build_counterexample(Fp(0, 5));
  Collection<Fp> sigma = make_collection<Fp>(cx.base, {cx.l1, cx.quo, cx.l3});
  NcdefResult<Fp> res = ncdef_enumerate(cx.alg_b, sigma, 10000);

  CHECK(res.param_dim == 3);
  CHECK(res.gauge_dim == 1);
  REQUIRE(res.raw == 125);

  long covered = 0;
  std::map<long, int> size_counts;
  for (const NcdefOrbit<Fp>& orb : res.orbits) {
    covered += orb.size;
    ++size_counts[orb.size];
  }
  CHECK(covered == res.raw);
  REQUIRE(res.orbits.size() == 45);
  CHECK(size_counts[1] == 25);
  CHECK(size_counts[5] == 20);

  // the reduction constraint rules out the split structure
  for (const AObject<Fp>& z : res.elements) {
    bool all_zero = true;
    for (const Matrix<Fp>& m : z.carrier.act) all_zero = all_zero && m.is_zero();
    CHECK_FALSE(all_zero);
  }

  std::vector<Fp> mixed = cx.quo_lift;
  for (size_t r = 0; r < mixed.size(); ++r) mixed[r] = mixed[r] + cx.sub_push[r];
  ThetaData<Fp> th_push = theta(cx, cx.sub_push);
  ThetaData<Fp> th_lift = theta(cx, cx.quo_lift);
  ThetaData<Fp> th_mixed = theta(cx, mixed);

  SearchBudget sb;
  std::mt19937_64 rng(2026);
  auto orbit_of = [&](const DeformationElement<Fp>& d) {
    int found = -1;
    for (size_t o = 0; o < res.orbits.size(); ++o) {
      EquivCheck<Fp> eq = deformations_equivalent(d, res.orbits[o].elem, sb, rng);
      if (eq.status == IsoVerdict::Yes) {
        REQUIRE(found == -1);  // orbits are pairwise inequivalent
        found = static_cast<int>(o);
      }
    }
    REQUIRE(found >= 0);
    return found;
  };
  int o_push = orbit_of(th_push.elem);
  int o_lift = orbit_of(th_lift.elem);
  int o_mixed = orbit_of(th_mixed.elem);
  CHECK(o_lift == o_mixed);
  CHECK(o_push != o_lift);
}

TEST_CASE("ncdef: every enumerated structure restricts to an iterated extension") {
  {
    auto alg = loop_algebra_f2();
    BasePtr<Fp> base = RepBase<Fp>::of_algebra(alg);
    Collection<Fp> sigma = make_collection<Fp>(base, {simple_rep(base, 0)});
    NcdefResult<Fp> res = ncdef_enumerate(alg, sigma, 1000);
    Rep<Fp> reg = regular_module(base).sum;
    int bound = alg->loewy_length();
    REQUIRE(bound == 1);
    for (const AObject<Fp>& z : res.elements) {
      Rep<Fp> t = tensor_apply(z, reg).out;
      ExResult<Fp> mem = ex_membership(t, sigma, bound);
      REQUIRE(mem.member);
      REQUIRE(mem.cert.has_value());
      CHECK(mem.cert->depth() <= bound);
      CHECK(replay_ex_cert(t, sigma, *mem.cert));
    }
  }
  {
    Counterexample<Fp> cx = build_counterexample(Fp(0, 5));
    Collection<Fp> sigma = make_collection<Fp>(cx.base, {cx.l1, cx.quo, cx.l3});
    NcdefResult<Fp> res = ncdef_enumerate(cx.alg_b, sigma, 10000);
    BasePtr<Fp> ab = RepBase<Fp>::of_algebra(cx.alg_b);
    Rep<Fp> reg = regular_module(ab).sum;
    int bound = cx.alg_b->loewy_length();
    REQUIRE(bound == 2);
    ExBudget ex_budget;
    ex_budget.node_limit = 2000;
    for (const AObject<Fp>& z : res.elements) {
      Rep<Fp> t = tensor_apply(z, reg).out;
      ExResult<Fp> mem = ex_membership(t, sigma, bound, ex_budget);
      REQUIRE(mem.member);
      REQUIRE(mem.cert.has_value());
      CHECK(mem.cert->depth() <= bound);
      CHECK(replay_ex_cert(t, sigma, *mem.cert));
    }
  }
}

TEST_CASE("ff: the two-vertex family is fully faithful away from the degenerate fibre") {
  auto alg = line_algebra_f5();
  BasePtr<Fp> base = RepBase<Fp>::of_algebra(alg);
  Collection<Fp> simples =
      make_collection<Fp>(base, {simple_rep(base, 0), simple_rep(base, 1)});
  FlatFamily<Fp> fam = flat_family(alg, simples);
  REQUIRE(fam.param_dim() == 1);

  FfReport<Fp> good = ff_criterion(fam.object_at({Fp(1, 5)}));
  CHECK(good.status == FfStatus::FullyFaithful);

  FfReport<Fp> bad = ff_criterion(fam.object_at({Fp(0, 5)}));
  REQUIRE(bad.status == FfStatus::FailsExtInjectivity);
  CHECK(bad.i == 0);
  CHECK(bad.j == 1);
  REQUIRE(bad.witness.size() == 1);
  CHECK_FALSE(f_is_zero(bad.witness[0]));
}

TEST_CASE("ff: a fibre with endomorphisms is caught by the hom test") {
  Fp proto(0, 5);
  auto alg = line_algebra_f5();
  BasePtr<Fp> base = RepBase<Fp>::of_algebra(alg);

  Rep<Fp> m;
  m.base = base;
  m.dims = {1, 1};
  m.act = {Matrix<Fp>(1, 1, proto)};
  m.act[0].at(0, 0) = Fp(1, 5);
  validate_rep(m);

  Collection<Fp> mixed = make_collection<Fp>(base, {simple_rep(base, 0), m});
  FlatFamily<Fp> fam = flat_family(alg, mixed);
  AObject<Fp> z = fam.object_at(std::vector<Fp>(static_cast<size_t>(fam.param_dim()), proto));
  FfReport<Fp> rep = ff_criterion(z);
  REQUIRE(rep.status == FfStatus::FailsHom);
  CHECK(rep.i == 1);
  CHECK(rep.j == 0);
}
