#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace matlis;
using namespace testing;

TEST_CASE("injective hull of k") {
  for (const auto& a : {r3(), kxy(), v2()}) {
    const auto e = injective_hull_of_residue_field(a);
    CHECK(e.dim() == a->dim());
    CHECK(socle(e).dim() == 1);
    CHECK(hom_space(residue_field(a), e).dim() == 1);
    CHECK_NOTHROW(DualityContext<Q>{a});
  }
  // E has simple socle but R has two-dimensional socle on V2
  CHECK(socle(regular_module(v2())).dim() == 2);
  CHECK(top_dim(injective_hull_of_residue_field(v2())) == 2);
  const auto f = r4();
  CHECK(find_isomorphism(regular_module(f), injective_hull_of_residue_field(f)).first == IsoResult::Isomorphic);
}

TEST_CASE("dual of cyclic modules") {
  // (R/J)° is E[J] = {f in E | J f = 0}
  const auto b = kxy();
  const auto e = injective_hull_of_residue_field(b);
  for (const auto& gens : std::vector<std::vector<std::vector<int>>>{{{1, 0}}, {{1, 1}}, {{1, 0}, {0, 1}}}) {
    const auto j = ideal(b, gens);
    const auto ej = annihilator_submodule(e, j);
    const auto d = matlis_dual(cyclic(b, gens));
    CHECK(d.dim() == ej.dim());
    CHECK(find_isomorphism(d, submodule_as_module(e, ej).module).first == IsoResult::Isomorphic);
  }
  CHECK(find_isomorphism(matlis_dual(residue_field(b)), residue_field(b)).first == IsoResult::Isomorphic);
}

TEST_CASE_TEMPLATE_DEFINE("duality laws", S, duality_laws) {
  std::vector<AlgebraPtr<S>> rings;
  if constexpr (std::is_same_v<S, Q>) {
    rings = {r3(), kxy(), v2()};
  } else {
    rings = {r4(), ring<Fp>(PrimeField{3}, {mono<Fp>({2, 0}), mono<Fp>({1, 1}), mono<Fp>({0, 2})}, 2, 2)};
  }
  Lcg rng(5);
  for (const auto& a : rings) {
    for (int t = 0; t < 40; ++t) {
      const auto m = random_module(a, rng);
      const auto n = random_module(a, rng);
      const auto d = matlis_dual(m);
      // M -> M°° is an isomorphism
      const auto ev = evaluation_map(m);
      CHECK(is_equivariant(ev, m, matlis_dual(d)));
      CHECK(d.dim() == m.dim());
      // socle and top swap
      CHECK(socle(d).dim() == top_dim(m));
      CHECK(ann_ring(d) == ann_ring(m));
      // Hom(M, N) = Hom(N°, M°)
      const auto h = hom_space(m, n);
      CHECK(h.dim() == hom_space(matlis_dual(n), d).dim());
      for (const auto& f : h.basis) CHECK(is_equivariant(dual_map(f), matlis_dual(n), d));
      // U -> Ann(U): dimension complement, order reversing, involutive
      const auto u = random_submodule(m, rng);
      const auto v = submodule_sum(u, random_submodule(m, rng));
      const auto au = annihilator_in_dual(m, u);
      CHECK(au.dim() == m.dim() - u.dim());
      CHECK(is_action_closed(d, au.space()));
      CHECK(au.contains(annihilator_in_dual(m, v)));
      CHECK(annihilator_in_dual(d, au) == u);
      // Ann(U + V) = Ann U meet Ann V, Ann(U meet V) = Ann U + Ann V
      const auto w = random_submodule(m, rng);
      CHECK(annihilator_in_dual(m, submodule_sum(u, w)) ==
            submodule_intersection(annihilator_in_dual(m, u), annihilator_in_dual(m, w)));
      CHECK(annihilator_in_dual(m, submodule_intersection(u, w)) ==
            submodule_sum(annihilator_in_dual(m, u), annihilator_in_dual(m, w)));
      // 0 -> U -> M -> M/U -> 0 dualizes to an exact sequence
      const auto inc = submodule_as_module(m, u);
      const auto q = quotient_module(m, u);
      const auto inc_d = dual_map(inc.inclusion);
      const auto q_d = dual_map(q.projection);
      CHECK(is_surjective(inc_d));
      CHECK(is_injective(q_d));
      CHECK(image(q_d) == kernel(inc_d));
      CHECK(image(q_d) == au);
    }
  }
}
TEST_CASE_TEMPLATE_INVOKE(duality_laws, Q, Fp);

TEST_CASE("annihilator_in_dual rejects non-submodules") {
  const auto a = kxy();
  const auto r = regular_module(a);
  CHECK_THROWS_AS(annihilator_in_dual(r, Submodule<Q>(Subspace<Q>::span_vectors({a->one()}, 4))), Error);
}
