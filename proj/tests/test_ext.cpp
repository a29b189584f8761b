#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace matlis;
using namespace testing;

namespace {

template <typename S>
void check_exact(const Extension<S>& x, const FModule<S>& a, const FModule<S>& c) {
  CHECK(x.b.dim() == a.dim() + c.dim());
  CHECK(is_equivariant(x.iota, a, x.b));
  CHECK(is_equivariant(x.pi, x.b, c));
  CHECK(is_injective(x.iota));
  CHECK(is_surjective(x.pi));
  CHECK(image(x.iota) == kernel(x.pi));
}

}  // namespace

TEST_CASE("frozen Ext^1 dimensions") {
  // from tests/oracles/derive.py
  const auto a = r3();
  const auto k = residue_field(a);
  const auto r = regular_module(a);
  CHECK(ext1(k, k).dim() == 1);
  CHECK(ext1(k, r).dim() == 0);
  CHECK(ext1(k, cyclic(a, {{2}})).dim() == 1);
  CHECK(ext1(cyclic(a, {{2}}), k).dim() == 1);
  CHECK(ext1(k, injective_hull_of_residue_field(a)).dim() == 0);

  const auto b = kxy();
  CHECK(ext1(residue_field(b), residue_field(b)).dim() == 2);
  CHECK(ext1(residue_field(b), regular_module(b)).dim() == 0);

  const auto v = v2();
  CHECK(ext1(residue_field(v), residue_field(v)).dim() == 2);
  CHECK(ext1(residue_field(v), regular_module(v)).dim() == 3);
}

TEST_CASE("nonsplit extension of k by k on k[x]/(x^3)") {
  const auto a = r3();
  const auto k = residue_field(a);
  const auto e = ext1(k, k);
  REQUIRE(e.dim() == 1);
  const auto x = extension_from_class(e, e.representatives[0]);
  check_exact(x, k, k);
  CHECK_FALSE(find_retraction(x, k).has_value());
  CHECK(find_isomorphism(x.b, cyclic(a, {{2}})).first == IsoResult::Isomorphic);
  // the zero class splits
  const ModuleMap<Q> zero{Matrix<Q>::Zero(k.dim(), e.syzygy.module.dim())};
  CHECK(is_coboundary(e, zero));
  const auto s = extension_from_class(e, zero);
  check_exact(s, k, k);
  const auto ret = find_retraction(s, k);
  REQUIRE(ret.has_value());
  CHECK(equal_matrices(Matrix<Q>(ret->matrix * s.iota.matrix), Matrix<Q>::Identity(1, 1)));
  CHECK(find_isomorphism(s.b, direct_power(k, 2)).first == IsoResult::Isomorphic);
}

TEST_CASE("non-equivariant cocycle") {
  const auto a = r3();
  const auto k = residue_field(a);
  const auto e = ext1(k, cyclic(a, {{2}}));
  // K = (x) has dim 2; send x -> 1 and x^2 -> 0 in R/(x^2): not a module map
  Matrix<Q> bad = Matrix<Q>::Zero(2, e.syzygy.module.dim());
  bad(1, 0) = 1;
  bad(0, 0) = 1;
  CHECK_THROWS_WITH_AS(extension_from_class(e, ModuleMap<Q>{bad}), doctest::Contains("NotEquivariant"), Error);
}

TEST_CASE_TEMPLATE_DEFINE("Ext laws", S, ext_laws) {
  std::vector<AlgebraPtr<S>> rings;
  if constexpr (std::is_same_v<S, Q>) {
    rings = {r3(), kxy(), v2()};
  } else {
    rings = {r4(), ring<Fp>(PrimeField{2}, {mono<Fp>({2, 0}), mono<Fp>({0, 2})}, 2, 3)};
  }
  Lcg rng(13);
  for (const auto& a : rings) {
    const auto e_inj = injective_hull_of_residue_field(a);
    for (int t = 0; t < 12; ++t) {
      const auto c = random_module(a, rng);
      const auto m = random_module(a, rng);
      if (c.is_zero()) continue;
      // free modules are projective, E is injective
      CHECK(ext1(regular_module(a), m).dim() == 0);
      CHECK(ext1(c, e_inj).dim() == 0);
      const auto e = ext1(c, m);
      // a redundant generator does not change the class group
      auto gens = e.cover.generators;
      gens.push_back(random_vector<S>(a->field(), c.dim(), rng));
      CHECK(ext1(c, m, cover_from_generators(c, gens)).dim() == e.dim());
      // every representative gives an exact, nonsplit sequence
      for (const auto& rep : e.representatives) {
        CHECK_FALSE(is_coboundary(e, rep));
        const auto x = extension_from_class(e, rep);
        check_exact(x, m, c);
        CHECK_FALSE(find_retraction(x, m).has_value());
      }
      // a coboundary splits
      if (!e.syzygy.module.is_zero() && !m.is_zero()) {
        const auto h = hom_space(e.cover.free, m);
        for (const auto& f : h.basis) {
          const ModuleMap<S> restricted = compose(f, e.syzygy.inclusion);
          CHECK(is_coboundary(e, restricted));
          const auto x = extension_from_class(e, restricted);
          check_exact(x, m, c);
          CHECK(find_retraction(x, m).has_value());
          break;
        }
      }
    }
  }
}
TEST_CASE_TEMPLATE_INVOKE(ext_laws, Q, Fp);

TEST_CASE("extension search") {
  const auto a = r3();
  {
    const ClassContext<Q> ctx(ideal(a, {{1}}));
    for (auto kind : {ClassKind::P, ClassKind::S}) {
      const auto res = search_extension_counterexample(ctx, kind);
      CHECK(res.verdict == ExtensionVerdict::Witness);
      REQUIRE(res.witness.has_value());
      const auto& w = *res.witness;
      check_exact(w.extension, w.a, w.c);
      const bool in_a = kind == ClassKind::P ? is_p_member(ctx, w.a) : is_s_member(ctx, w.a);
      const bool in_c = kind == ClassKind::P ? is_p_member(ctx, w.c) : is_s_member(ctx, w.c);
      const bool in_b = kind == ClassKind::P ? is_p_member(ctx, w.extension.b) : is_s_member(ctx, w.extension.b);
      CHECK(in_a);
      CHECK(in_c);
      CHECK_FALSE(in_b);
      CHECK(res.constructions >= 1);
    }
    // same seed, same witness
    const auto r1 = search_extension_counterexample(ctx, ClassKind::P);
    const auto r2 = search_extension_counterexample(ctx, ClassKind::P);
    CHECK(r1.witness->c_index == r2.witness->c_index);
    CHECK(r1.witness->a_index == r2.witness->a_index);
    CHECK(r1.witness->class_index == r2.witness->class_index);
    CHECK(equal_matrices(r1.witness->extension.b.variable_action(0), r2.witness->extension.b.variable_action(0)));
    // no budget, no witness
    ExtensionSearchOptions none;
    none.budget = 0;
    CHECK(search_extension_counterexample(ctx, ClassKind::P, none).verdict == ExtensionVerdict::SearchExhausted);
  }
  CHECK(search_extension_counterexample(ClassContext<Q>(zero_ideal(a)), ClassKind::P).verdict ==
        ExtensionVerdict::ClosedTrivially);
  CHECK(search_extension_counterexample(ClassContext<Q>(unit_ideal(a)), ClassKind::S).verdict ==
        ExtensionVerdict::ClosedTrivially);
  // (1 + x) is the unit ideal in disguise
  Vector<Q> g = a->one() + elem(a, {1});
  CHECK(search_extension_counterexample(ClassContext<Q>(ideal_from_generators(a, {g})), ClassKind::P).verdict ==
        ExtensionVerdict::ClosedTrivially);

  const auto f = r4();
  const ClassContext<Fp> ctx4(ideal(f, {{1}}));
  CHECK(search_extension_counterexample(ctx4, ClassKind::P).verdict == ExtensionVerdict::Witness);
  CHECK(search_extension_counterexample(ctx4, ClassKind::S).verdict == ExtensionVerdict::Witness);
}
