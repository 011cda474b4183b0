#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qalg/counterexample.hpp"

using namespace qalg;

namespace {

std::mt19937_64 rng(2024);
const SearchBudget budget;

Counterexample<Rat>& cxq() {
  static Counterexample<Rat> cx = build_counterexample(Rat(0));
  return cx;
}

bool iso_reps(const Rep<Rat>& a, const Rep<Rat>& b) {
  return is_isomorphic(a, b, budget, rng).status == IsoVerdict::Yes;
}

}  // namespace

TEST_CASE("bundled example data is internally consistent") {
  auto& cx = cxq();
  CHECK(cx.mid.total_dim() == 3);
  CHECK(cx.quo.total_dim() == 2);
  CHECK(end_algebra(cx.mid).dim() == 2);
  CHECK(hom_dim(cx.quo, cx.l3) == 1);
  CHECK(hom_dim(cx.l3, cx.quo) == 0);

  CHECK(cx.ext_sub->dim() == 1);
  CHECK(cx.ext_mid->dim() == 2);
  CHECK(cx.ext_quo->dim() == 1);

  CHECK_FALSE(map_is_zero(cx.nil));
  CHECK(map_is_zero(compose_maps(cx.nil, cx.nil)));

  auto on_push = push_class(*cx.ext_mid, *cx.ext_mid, cx.nil, cx.sub_push);
  auto on_lift = push_class(*cx.ext_mid, *cx.ext_mid, cx.nil, cx.quo_lift);
  for (const auto& x : on_push) CHECK(f_is_zero(x));
  CHECK(on_lift == cx.sub_push);

  // The two witness classes span the middle extension group.
  auto coords = in_witness_basis(cx, cx.ext_mid->zero_class());
  CHECK(f_is_zero(coords.first));
  CHECK(f_is_zero(coords.second));
}

TEST_CASE("rho_of is multiplicative on the flat object") {
  auto& cx = cxq();
  const auto& A = *cx.alg_a;
  auto one = rho_of(cx.flat_obj, A.one_elt());
  CHECK(maps_equal(one, identity_map(cx.flat_obj.carrier)));
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      auto lhs = compose_maps(cx.flat_obj.rho[i], cx.flat_obj.rho[j]);
      auto rhs = rho_of(cx.flat_obj, A.mul(A.basis_elt(i), A.basis_elt(j)));
      CHECK(maps_equal(lhs, rhs));
    }
}

TEST_CASE("flatness verdicts and the monomorphism criterion agree") {
  auto& cx = cxq();
  FlatCheck<Rat> f1 = is_flat(cx.flat_obj);
  CHECK(f1.flat);
  CHECK(f1.top_mults == std::vector<int>{1, 2, 1});

  FlatCheck<Rat> f2 = is_flat(cx.cut_obj);
  CHECK_FALSE(f2.flat);
  CHECK(f2.witness_vertex == 1);

  FlatCheck<Rat> f3 = is_flat(cx.split_obj);
  CHECK_FALSE(f3.flat);

  auto mono_crit = [&](const AObject<Rat>& z) {
    SumRep<Rat> reg = regular_module(RepBase<Rat>::of_algebra(z.alg));
    SubRep<Rat> rad = radical_rep(reg.sum);
    return is_mono(tensor_map(z, rad.inc));
  };
  CHECK(mono_crit(cx.flat_obj));
  CHECK_FALSE(mono_crit(cx.cut_obj));
  CHECK_FALSE(mono_crit(cx.split_obj));
}

TEST_CASE("tensor recovers the fibres of the flat object") {
  auto& cx = cxq();
  Rep<Rat> s1 = simple_rep(cx.base_a, 0);
  Rep<Rat> s2 = simple_rep(cx.base_a, 1);
  Rep<Rat> s3 = simple_rep(cx.base_a, 2);

  CHECK(iso_reps(tensor_apply(cx.flat_obj, s1).out, cx.l1));
  CHECK(iso_reps(tensor_apply(cx.flat_obj, s2).out, cx.quo));
  CHECK(iso_reps(tensor_apply(cx.flat_obj, s3).out, cx.l3));

  Rep<Rat> p2 = projective_rep(cx.base_a, 1);
  CHECK(iso_reps(tensor_apply(cx.flat_obj, p2).out, cx.mid));

  SumRep<Rat> reg = regular_module(cx.base_a);
  CHECK(iso_reps(tensor_apply(cx.flat_obj, reg.sum).out, cx.flat_obj.carrier));

  CHECK(tensor_apply(cx.flat_obj, zero_rep(cx.base_a)).out.total_dim() == 0);
}

TEST_CASE("tensor_map sends the projective inclusion to the sequence inclusion") {
  auto& cx = cxq();
  Rep<Rat> p2 = projective_rep(cx.base_a, 1);
  Rep<Rat> p3 = projective_rep(cx.base_a, 2);
  auto fs = hom_space(p3, p2);
  REQUIRE(fs.size() == 1);
  RepMap<Rat> tf = tensor_map(cx.flat_obj, fs[0]);
  CHECK(is_mono(tf));
  CHECK(iso_reps(tf.src, cx.l3));
  CHECK(iso_reps(tf.tgt, cx.mid));
  CHECK(iso_reps(cokernel_rep(tf).quo, cx.quo));

  // Functoriality and additivity.
  auto gs = hom_space(p2, p2);
  REQUIRE(gs.size() == 1);  // e2 A e2 is spanned by the idempotent
  RepMap<Rat> lhs = tensor_map(cx.flat_obj, compose_maps(gs[0], fs[0]));
  RepMap<Rat> rhs = compose_maps(tensor_map(cx.flat_obj, gs[0]), tensor_map(cx.flat_obj, fs[0]));
  CHECK(maps_equal(lhs, rhs));
  CHECK(maps_equal(tensor_map(cx.flat_obj, add_maps(fs[0], fs[0])), add_maps(tf, tf)));
}

TEST_CASE("hom functor is right adjoint to the tensor on dimensions") {
  auto& cx = cxq();
  std::vector<Rep<Rat>> probes = {simple_rep(cx.base_a, 0), simple_rep(cx.base_a, 1),
                                  simple_rep(cx.base_a, 2), projective_rep(cx.base_a, 1),
                                  regular_module(cx.base_a).sum};
  std::vector<Rep<Rat>> targets = {cx.mid, cx.l3, cx.quo, cx.flat_obj.carrier};
  for (const auto& m : probes)
    for (const auto& t : targets) {
      Rep<Rat> h = h_functor(cx.flat_obj, t);
      CHECK(hom_dim(tensor_apply(cx.flat_obj, m).out, t) == hom_dim(m, h));
    }
}

TEST_CASE("pullback along the identity is the identity") {
  auto& cx = cxq();
  AObject<Rat> pb = pullback_aobject(identity_hom(cx.alg_a), cx.flat_obj);
  CHECK(pb.carrier.total_dim() == cx.flat_obj.carrier.total_dim());
  CHECK(is_isomorphic_aobject(pb, cx.flat_obj, budget, rng).status == IsoVerdict::Yes);
}

TEST_CASE("ladder structures collapse onto the flat object") {
  auto& cx = cxq();
  ThetaData<Rat> tp = theta(cx, cx.sub_push);
  ThetaData<Rat> tl = theta(cx, cx.quo_lift);
  CHECK(tp.obj.carrier.total_dim() == 8);
  CHECK(is_flat(tp.obj).flat);
  CHECK(is_flat(tl.obj).flat);

  AObject<Rat> pb1 = pullback_aobject(cx.collapse, tp.obj);
  AObject<Rat> pb2 = pullback_aobject(cx.collapse, tl.obj);
  CHECK(pb1.carrier.total_dim() == 5);
  CHECK(is_isomorphic_aobject(pb1, cx.flat_obj, budget, rng).status == IsoVerdict::Yes);
  CHECK(is_isomorphic_aobject(pb2, cx.flat_obj, budget, rng).status == IsoVerdict::Yes);

  // Pushforward along the collapse restricts the action; valid but no longer flat.
  AObject<Rat> pf = pushforward_aobject(cx.collapse, cx.flat_obj);
  CHECK(pf.carrier.total_dim() == 5);
  CHECK_FALSE(is_flat(pf).flat);
}

TEST_CASE("pullback and restriction are adjoint on the tensor") {
  auto& cx = cxq();
  ThetaData<Rat> tl = theta(cx, cx.quo_lift);
  AObject<Rat> pb = pullback_aobject(cx.collapse, tl.obj);
  std::vector<Rep<Rat>> probes = {simple_rep(cx.base_a, 1), projective_rep(cx.base_a, 1),
                                  regular_module(cx.base_a).sum};
  for (const auto& m : probes) {
    Rep<Rat> lhs = tensor_apply(pb, m).out;
    Rep<Rat> rhs = tensor_apply(tl.obj, module_restrict(cx.collapse, m)).out;
    CHECK(iso_reps(lhs, rhs));
  }
}

TEST_CASE("the two ladder structures are distinct but related by a unipotent") {
  auto& cx = cxq();
  ThetaData<Rat> tp = theta(cx, cx.sub_push);
  ThetaData<Rat> tl = theta(cx, cx.quo_lift);
  std::vector<Rat> mixed = cx.quo_lift;
  for (size_t i = 0; i < mixed.size(); ++i) mixed[i] = mixed[i] + cx.sub_push[i];
  ThetaData<Rat> tm = theta(cx, mixed);

  // Certification below scans a grid of size (dim + 1)^d; keep d small.
  CHECK(aobject_hom_space(tp.obj, tl.obj).size() <= 4);

  CHECK(is_isomorphic_aobject(tp.obj, tl.obj, budget, rng).status == IsoVerdict::No);
  CHECK(is_isomorphic_aobject(tl.obj, tm.obj, budget, rng).status == IsoVerdict::Yes);

  EquivCheck<Rat> eq = deformations_equivalent(tl.elem, tm.elem, budget, rng);
  CHECK(eq.status == IsoVerdict::Yes);
  REQUIRE(eq.witness.has_value());
  for (int b = 0; b < cx.alg_b->dim(); ++b)
    CHECK(maps_equal(compose_maps(*eq.witness, tl.obj.rho[b]),
                     compose_maps(tm.obj.rho[b], *eq.witness)));

  EquivCheck<Rat> neq = deformations_equivalent(tp.elem, tl.elem, budget, rng);
  CHECK(neq.status == IsoVerdict::No);
}

TEST_CASE("classes are recovered from ladder structures up to the unipotent ambiguity") {
  auto& cx = cxq();
  ThetaData<Rat> tp = theta(cx, cx.sub_push);
  ThetaData<Rat> tl = theta(cx, cx.quo_lift);

  auto cp = in_witness_basis(cx, recovered_class(cx, tp.obj));
  CHECK_FALSE(f_is_zero(cp.first));
  CHECK(f_is_zero(cp.second));

  auto cl = in_witness_basis(cx, recovered_class(cx, tl.obj));
  CHECK_FALSE(f_is_zero(cl.second));
}

TEST_CASE("deformation elements reject bad input") {
  auto& cx = cxq();
  RepMap<Rat> pi = detail54::sum_map(cx.flat_parts, cx.sigma,
                                     {identity_map(cx.l1), cx.seq.prj, identity_map(cx.l3)});
  CHECK_THROWS_AS(make_deformation_element(cx.cut_obj, pi), input_error);
  RepMap<Rat> zero_pi = zero_map(cx.flat_parts.sum, cx.sigma.sum);
  CHECK_THROWS_AS(make_deformation_element(cx.flat_obj, zero_pi), input_error);
}

TEST_CASE("full report passes over the rationals") {
  CheckReport rep = run_counterexample_checks(Rat(0));
  for (const auto& st : rep.steps) {
    INFO(st.id);
    CHECK(st.pass);
  }
  CHECK(rep.pass);
  CHECK(rep.warnings.empty());
  CHECK(rep.steps.size() == 10);
}
