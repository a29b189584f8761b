#pragma once

// Free covers F = R^t -> M and their syzygies.

#include "matlis/module.hpp"

namespace matlis {

template <typename Scalar>
struct FreeCover {
  FModule<Scalar> free;
  ModuleMap<Scalar> epi;             // free -> M
  Submodule<Scalar> syzygy;          // kernel of epi
  std::vector<Vector<Scalar>> generators;  // images of the free generators

  int rank() const { return static_cast<int>(generators.size()); }
};

/// F = R^t -> M sending the j-th free generator to gens[j]. Coordinates of F
/// are (generator j, algebra basis b) at index j * dim R + b.
template <typename Scalar>
FreeCover<Scalar> cover_from_generators(const FModule<Scalar>& m, std::vector<Vector<Scalar>> gens) {
  const Index d = m.algebra().dim();
  const Index t = static_cast<Index>(gens.size());
  Matrix<Scalar> epi(m.dim(), t * d);
  for (Index j = 0; j < t; ++j)
    for (Index b = 0; b < d; ++b) epi.col(j * d + b) = m.action(b) * gens[static_cast<std::size_t>(j)];
  if (rank(epi) != m.dim()) throw Error(Errc::DomainError, "cover generators do not generate the module");
  FreeCover<Scalar> out;
  out.free = free_module(m.parent(), static_cast<int>(t));
  out.syzygy = Submodule<Scalar>(nullspace(epi));
  out.epi = {std::move(epi)};
  out.generators = std::move(gens);
  return out;
}

/// Minimal cover: t = dim M/mM, generators are the unit vectors spanning a
/// complement of the radical.
template <typename Scalar>
FreeCover<Scalar> free_cover(const FModule<Scalar>& m) {
  std::vector<Vector<Scalar>> gens;
  for (Index c : radical(m).space().free_columns()) gens.push_back(m.unit_vector(c));
  return cover_from_generators(m, std::move(gens));
}

}  // namespace matlis
