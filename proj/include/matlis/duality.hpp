#pragma once

// Matlis duality at finite length. With E = Hom_k(R, k) the injective hull of
// k, Hom_R(M, E) is naturally Hom_k(M, k); in the dual basis the action of r
// is the transpose of its action on M.

#include "matlis/module.hpp"

namespace matlis {

/// M° with actions A(b)^T.
template <typename Scalar>
FModule<Scalar> matlis_dual(const FModule<Scalar>& m) {
  std::vector<Matrix<Scalar>> acts;
  for (const auto& a : m.actions()) acts.push_back(a.transpose());
  return FModule<Scalar>::from_basis_actions(m.parent(), m.dim(), std::move(acts));
}

/// f: M -> N gives f°: N° -> M°.
template <typename Scalar>
ModuleMap<Scalar> dual_map(const ModuleMap<Scalar>& f) {
  return {Matrix<Scalar>(f.matrix.transpose())};
}

/// The canonical map M -> M°°, v -> (f -> f(v)). In double-dual coordinates
/// it is the identity; equivariance and bijectivity are checked.
template <typename Scalar>
ModuleMap<Scalar> evaluation_map(const FModule<Scalar>& m) {
  ModuleMap<Scalar> ev{Matrix<Scalar>::Identity(m.dim(), m.dim())};
  const auto dd = matlis_dual(matlis_dual(m));
  if (!is_equivariant(ev, m, dd) || !is_injective(ev))
    throw Error(Errc::NotEquivariant, "evaluation map is not an isomorphism");
  return ev;
}

/// Ann_{M°}(U) = {f | f(U) = 0}, a submodule of M° of dimension dim M - dim U.
template <typename Scalar>
Submodule<Scalar> annihilator_in_dual(const FModule<Scalar>& m, const Submodule<Scalar>& u) {
  require_submodule(m, u);
  return Submodule<Scalar>(orthogonal_complement(u.space()));
}

/// E = R°, the injective hull of the residue field.
template <typename Scalar>
FModule<Scalar> injective_hull_of_residue_field(const AlgebraPtr<Scalar>& a) {
  return matlis_dual(regular_module(a));
}

template <typename Scalar>
struct DualityContext {
  AlgebraPtr<Scalar> parent;
  FModule<Scalar> injective_hull;

  explicit DualityContext(AlgebraPtr<Scalar> a)
      : parent(std::move(a)), injective_hull(injective_hull_of_residue_field(parent)) {
    if (socle(injective_hull).dim() != 1 || injective_hull.dim() != parent->dim())
      throw Error(Errc::NotInjectiveAmbient, "R° does not have a simple socle");
  }
};

}  // namespace matlis
