#pragma once

// Seeded generators for randomized checks.
//
// The engine is the 64-bit LCG  x <- 6364136223846793005 x + 1442695040888963407
// (mod 2^64). Every draw uses bits 33..63 of the new state, reduced mod n.
// Scalars are uniform in {-2,...,2} over Q and uniform in F_p.
//
// random_module: the cokernel of a random presentation R^r -> R^g with
// g = 1 + draw(g_max) where g_max = max(1, min(2, 8 / dim R)), r = draw(4),
// every matrix entry a random algebra element whose coordinates are nonzero
// with probability 1/2; with probability 1/2 the result is then replaced by
// its Matlis dual.

#include <cstdint>
#include <random>
#include <vector>

#include "matlis/algebra.hpp"
#include "matlis/duality.hpp"
#include "matlis/module.hpp"

namespace matlis {

using Lcg = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL>;

inline std::uint64_t draw(Lcg& rng, std::uint64_t n) {
  if (n == 0) return 0;
  return (rng() >> 33) % n;
}

inline bool coin(Lcg& rng) { return draw(rng, 2) == 1; }

template <typename Field>
typename Field::Scalar random_scalar(const Field& f, Lcg& rng) {
  if constexpr (requires { f.p; }) {
    return f.element(static_cast<std::uint32_t>(draw(rng, f.p)));
  } else {
    return f.make(static_cast<std::int64_t>(draw(rng, 5)) - 2);
  }
}

template <typename Field>
typename Field::Scalar random_nonzero_scalar(const Field& f, Lcg& rng) {
  for (;;) {
    auto s = random_scalar(f, rng);
    if (!is_zero(s)) return s;
  }
}

/// Coordinates nonzero with probability 1/2 each.
template <typename Scalar>
Vector<Scalar> random_element(const Algebra<Scalar>& a, Lcg& rng) {
  Vector<Scalar> v = a.zero();
  for (Index i = 0; i < a.dim(); ++i)
    if (coin(rng)) v(i) = random_scalar(a.field(), rng);
  return v;
}

/// Random element of the maximal ideal (no constant term).
template <typename Scalar>
Vector<Scalar> random_max_ideal_element(const Algebra<Scalar>& a, Lcg& rng) {
  Vector<Scalar> v = random_element(a, rng);
  if (v.size() > 0) v(0) = Scalar(0);
  return v;
}

template <typename Scalar>
Vector<Scalar> random_vector(const typename Scalar::Field& f, Index n, Lcg& rng) {
  Vector<Scalar> v = Vector<Scalar>::Zero(n);
  for (Index i = 0; i < n; ++i)
    if (coin(rng)) v(i) = random_scalar(f, rng);
  return v;
}

/// One or two generators in m; one time in eight the unit ideal and one time
/// in sixteen the zero ideal.
template <typename Scalar>
Ideal<Scalar> random_ideal(const AlgebraPtr<Scalar>& a, Lcg& rng) {
  const auto roll = draw(rng, 16);
  if (roll == 0) return zero_ideal(a);
  if (roll <= 2) return unit_ideal(a);
  std::vector<Vector<Scalar>> gens;
  const auto count = 1 + draw(rng, 2);
  for (std::uint64_t i = 0; i < count; ++i) gens.push_back(random_max_ideal_element(*a, rng));
  return ideal_from_generators(a, gens);
}

/// Cokernel of a random presentation matrix, dualized half the time.
template <typename Scalar>
FModule<Scalar> random_module(const AlgebraPtr<Scalar>& a, Lcg& rng) {
  const Index d = a->dim();
  const int gmax = std::max<int>(1, std::min<int>(2, static_cast<int>(8 / std::max<Index>(d, 1))));
  const int g = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(gmax)));
  const int r = static_cast<int>(draw(rng, 4));
  const auto f = free_module(a, g);
  std::vector<Vector<Scalar>> relations;
  for (int j = 0; j < r; ++j) {
    Vector<Scalar> col(g * d);
    for (int k = 0; k < g; ++k) col.segment(k * d, d) = random_element(*a, rng);
    relations.push_back(std::move(col));
  }
  const auto rel = generated_submodule(f, relations);
  auto m = quotient_module(f, rel).module;
  if (coin(rng)) return matlis_dual(m);
  return m;
}

/// Submodule generated by zero to two random vectors.
template <typename Scalar>
Submodule<Scalar> random_submodule(const FModule<Scalar>& m, Lcg& rng) {
  std::vector<Vector<Scalar>> gens;
  const auto count = draw(rng, 3);
  for (std::uint64_t i = 0; i < count; ++i) gens.push_back(random_vector<Scalar>(m.algebra().field(), m.dim(), rng));
  return generated_submodule(m, gens);
}

}  // namespace matlis
