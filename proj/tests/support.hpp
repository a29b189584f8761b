#pragma once

#include <string>
#include <vector>

#include "matlis/classes.hpp"
#include "matlis/ext.hpp"
#include "matlis/random.hpp"

namespace testing {

using matlis::Fp;
using matlis::Rational;
using Q = Rational;

template <typename S>
matlis::Polynomial<S> mono(std::vector<int> e, S c = S(1)) {
  return {matlis::Term<S>{c, std::move(e)}};
}

template <typename S>
matlis::AlgebraPtr<S> ring(typename S::Field f, std::vector<matlis::Polynomial<S>> rels, int nvars, int n) {
  matlis::Presentation<S> p;
  p.field = f;
  const char* names[] = {"x", "y", "z", "w"};
  for (int i = 0; i < nvars; ++i) p.variables.push_back(names[i]);
  for (auto& rel : rels)
    for (auto& t : rel) t.coeff = t.coeff * f.make(1);
  p.relations = std::move(rels);
  p.nilpotency = n;
  return matlis::Algebra<S>::build(p);
}

/// k[x]/(x^n)
template <typename S>
matlis::AlgebraPtr<S> truncated(typename S::Field f, int n) {
  return ring<S>(f, {mono<S>({n})}, 1, n);
}

inline matlis::AlgebraPtr<Q> r3() { return truncated<Q>(matlis::RationalField{}, 3); }
inline matlis::AlgebraPtr<Fp> r4() { return truncated<Fp>(matlis::PrimeField{5}, 4); }

/// Q[x,y]/(x^2, y^2)
inline matlis::AlgebraPtr<Q> kxy() { return ring<Q>({}, {mono<Q>({2, 0}), mono<Q>({0, 2})}, 2, 3); }

/// Q[x,y]/(x,y)^2
inline matlis::AlgebraPtr<Q> v2() {
  return ring<Q>({}, {mono<Q>({2, 0}), mono<Q>({1, 1}), mono<Q>({0, 2})}, 2, 2);
}

/// The element x_1^e_1 ... as coordinates.
template <typename S>
matlis::Vector<S> elem(const matlis::AlgebraPtr<S>& a, std::vector<int> e) {
  return a->monomial(e);
}

template <typename S>
matlis::Ideal<S> ideal(const matlis::AlgebraPtr<S>& a, const std::vector<std::vector<int>>& gens) {
  std::vector<matlis::Vector<S>> g;
  for (const auto& e : gens) g.push_back(a->monomial(e));
  return matlis::ideal_from_generators(a, g);
}

/// R/J
template <typename S>
matlis::FModule<S> cyclic(const matlis::AlgebraPtr<S>& a, const std::vector<std::vector<int>>& gens) {
  const auto r = matlis::regular_module(a);
  return matlis::quotient_module(r, matlis::Submodule<S>(ideal(a, gens).space())).module;
}

template <typename S>
matlis::Submodule<S> ideal_sub(const matlis::Ideal<S>& i) {
  return matlis::Submodule<S>(i.space());
}

}  // namespace testing
