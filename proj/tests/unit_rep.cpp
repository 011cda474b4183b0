#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qalg/rep.hpp"

using namespace qalg;

namespace {

/* 1 <-b1- 2 <-b2- 3 */
BasePtr<Rat> ladder_base() {
  auto alg = PathAlgebra<Rat>::build(Quiver({"1", "2", "3"}, {{"b1", 1, 0}, {"b2", 2, 1}}),
                                     {}, Rat(0));
  return RepBase<Rat>::of_algebra(alg);
}

BasePtr<Rat> loop3_base() {
  Quiver q({"v"}, {{"x", 0, 0}});
  Relation<Rat> r;
  r.terms.push_back({Rat(1), Path{0, {0, 0, 0}}});
  return RepBase<Rat>::of_algebra(PathAlgebra<Rat>::build(std::move(q), {r}, Rat(0)));
}

Rep<Rat> jordan(const BasePtr<Rat>& base, int n) {
  Rep<Rat> m;
  m.base = base;
  m.dims = {n};
  Matrix<Rat> j(n, n, Rat(0));
  for (int i = 0; i + 1 < n; ++i) j.at(i + 1, i) = Rat(1);
  m.act = {j};
  return m;
}

}  // namespace

TEST_CASE("projective representations of the ladder") {
  auto base = ladder_base();
  Rep<Rat> p1 = projective_rep(base, 0);
  CHECK(p1.dims == std::vector<int>{1, 1, 1});
  Rep<Rat> p2 = projective_rep(base, 1);
  CHECK(p2.dims == std::vector<int>{0, 1, 1});
  Rep<Rat> p3 = projective_rep(base, 2);
  CHECK(p3.dims == std::vector<int>{0, 0, 1});
  validate_rep(p1);
  validate_rep(p2);

  /* radical and top of P_1 */
  SubRep<Rat> rad = radical_rep(p1);
  CHECK(rad.sub.dims == std::vector<int>{0, 1, 1});
  QuotRep<Rat> top = top_rep(p1);
  CHECK(top.quo.dims == std::vector<int>{1, 0, 0});
  CHECK(loewy_length_of(p1) == 2);
  CHECK(loewy_length_of(p3) == 0);

  /* rad P_1 is isomorphic to P_2 */
  std::mt19937_64 rng(3);
  SearchBudget budget;
  auto iso = is_isomorphic(rad.sub, p2, budget, rng);
  CHECK(iso.status == IsoVerdict::Yes);
  REQUIRE(iso.witness.has_value());
  CHECK(is_mono(*iso.witness));
  CHECK(is_epi(*iso.witness));
}

TEST_CASE("path action is an anti-homomorphism") {
  auto base = ladder_base();
  Rep<Rat> p1 = projective_rep(base, 0);
  const Quiver& q = base->quiver();
  Path b2b1{2, {1, 0}};
  CHECK(path_valid(q, b2b1));
  Matrix<Rat> via_path = act_of_path(p1, b2b1);
  CHECK(via_path == p1.act[0] * p1.act[1]);
}

TEST_CASE("hom spaces over the ladder") {
  auto base = ladder_base();
  Rep<Rat> p1 = projective_rep(base, 0);
  Rep<Rat> p2 = projective_rep(base, 1);
  Rep<Rat> p3 = projective_rep(base, 2);
  Rep<Rat> s1 = simple_rep(base, 0);

  CHECK(hom_dim(p1, p1) == 1);
  CHECK(hom_dim(p3, p1) == 1);  // paths 3 ~> 1
  CHECK(hom_dim(p1, p3) == 0);
  CHECK(hom_dim(p1, s1) == 1);
  CHECK(hom_dim(p2, s1) == 0);

  /* the nonzero map P_3 -> P_1 is injective */
  auto maps = hom_space(p3, p1);
  REQUIRE(maps.size() == 1);
  CHECK(is_mono(maps[0]));
  CHECK(!is_epi(maps[0]));

  /* kernel / image / cokernel of the cover P_1 -> S_1 */
  auto covers = hom_space(p1, s1);
  REQUIRE(covers.size() == 1);
  RepMap<Rat> c = covers[0];
  CHECK(is_epi(c));
  SubRep<Rat> ker = kernel_rep(c);
  CHECK(ker.sub.dims == std::vector<int>{0, 1, 1});
  SubRep<Rat> img = image_rep(c);
  CHECK(img.sub.dims == std::vector<int>{1, 0, 0});
  QuotRep<Rat> cok = cokernel_rep(c);
  CHECK(cok.quo.is_zero());
}

TEST_CASE("direct sums come with inclusions and projections") {
  auto base = ladder_base();
  Rep<Rat> p2 = projective_rep(base, 1);
  Rep<Rat> s1 = simple_rep(base, 0);
  SumRep<Rat> sum = direct_sum(base, {p2, s1, p2});
  CHECK(sum.sum.dims == std::vector<int>{1, 2, 2});
  validate_rep(sum.sum);
  for (int p = 0; p < 3; ++p) {
    validate_repmap(sum.inc[p]);
    validate_repmap(sum.prj[p]);
    CHECK(maps_equal(compose_maps(sum.prj[p], sum.inc[p]), identity_map(sum.inc[p].src)));
  }
  CHECK(map_is_zero(compose_maps(sum.prj[0], sum.inc[2])));
}

TEST_CASE("projective covers") {
  auto base = ladder_base();
  Rep<Rat> s1 = simple_rep(base, 0);
  CoverRep<Rat> c1 = projective_cover(s1);
  CHECK(c1.tops == std::vector<int>{1, 0, 0});
  CHECK(c1.proj.dims == std::vector<int>{1, 1, 1});

  /* rad P_1 has top S_2, so its cover is P_2 and is an isomorphism */
  Rep<Rat> p1 = projective_rep(base, 0);
  SubRep<Rat> rad = radical_rep(p1);
  CoverRep<Rat> c2 = projective_cover(rad.sub);
  CHECK(c2.tops == std::vector<int>{0, 1, 0});
  CHECK(is_mono(c2.cover));

  /* cover of a decomposable module */
  SumRep<Rat> sum = direct_sum(base, {s1, rad.sub});
  CoverRep<Rat> c3 = projective_cover(sum.sum);
  CHECK(c3.tops == std::vector<int>{1, 1, 0});
  SubRep<Rat> syz = kernel_rep(c3.cover);
  CHECK(syz.sub.dims == std::vector<int>{0, 1, 1});
}

TEST_CASE("jordan shapes over the truncated loop") {
  auto base = loop3_base();
  Rep<Rat> j1 = jordan(base, 1);
  Rep<Rat> j2 = jordan(base, 2);
  Rep<Rat> j3 = jordan(base, 3);
  validate_rep(j3);
  /* x^3 kills everything only up to J_3; J_4 violates the relation */
  CHECK_THROWS_AS(validate_rep(jordan(base, 4)), input_error);

  CHECK(loewy_length_of(j3) == 2);
  CHECK(hom_dim(j2, j2) == 2);
  CHECK(hom_dim(j1, j3) == 1);
  CHECK(hom_dim(j3, j1) == 1);

  CoverRep<Rat> c = projective_cover(j2);
  CHECK(c.proj.dims == std::vector<int>{3});
  SubRep<Rat> syz = kernel_rep(c.cover);
  CHECK(syz.sub.dims == std::vector<int>{1});

  /* J_2 is not a sum of two simples */
  std::mt19937_64 rng(5);
  SearchBudget budget;
  Rep<Rat> ss = direct_sum(base, {j1, j1}).sum;
  CHECK(is_isomorphic(j2, ss, budget, rng).status == IsoVerdict::No);
  CHECK(is_isomorphic(j2, j2, budget, rng).status == IsoVerdict::Yes);
}

TEST_CASE("coordinates in a hom basis") {
  auto base = loop3_base();
  Rep<Rat> j2 = jordan(base, 2);
  auto basis = hom_space(j2, j2);
  REQUIRE(basis.size() == 2);
  RepMap<Rat> mix = add_maps(scale_map(Rat(3), basis[0]), scale_map(Rat(-2), basis[1]));
  auto coords = coords_in_hom_basis(mix, basis);
  REQUIRE(coords.has_value());
  CHECK((*coords)[0] == Rat(3));
  CHECK((*coords)[1] == Rat(-2));
  /* a non-equivariant matrix pattern is outside the span */
  RepMap<Rat> alien = mix;
  alien.blocks[0].at(0, 1) = alien.blocks[0].at(0, 1) + Rat(1);
  if (!repmap_commutes(alien)) CHECK(!coords_in_hom_basis(alien, basis).has_value());
}

TEST_CASE("prime field representations") {
  Quiver q({"v"}, {{"x", 0, 0}});
  Relation<Fp> r;
  r.terms.push_back({Fp(1, 2), Path{0, {0, 0}}});
  auto base =
      RepBase<Fp>::of_algebra(PathAlgebra<Fp>::build(std::move(q), {r}, Fp(0, 2)));
  Rep<Fp> s;
  s.base = base;
  s.dims = {2};
  Matrix<Fp> j(2, 2, Fp(0, 2));
  j.at(1, 0) = Fp(1, 2);
  s.act = {j};
  validate_rep(s);
  CHECK(hom_dim(s, s) == 2);
  SubRep<Fp> rad = radical_rep(s);
  CHECK(rad.sub.dims == std::vector<int>{1});
}
