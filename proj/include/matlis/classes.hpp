#pragma once

// The class P of I-generated modules and the class S of I°-cogenerated
// modules, with the trace gamma and the reject kappa.
//
//   gamma(M) = sum of f(I) over f in Hom(I, M)      largest submodule in P
//   kappa(M) = intersection of ker g, g in Hom(M, I°) smallest V with M/V in S
//
// Images of all maps are spanned by images of basis maps, and the common
// kernel of all maps is the common kernel of basis maps, so a Hom basis
// suffices for both. The trace is a quotient of a finite sum of copies of I,
// hence in P, and the image of any I^n -> U with U in P is U, so every
// I-generated submodule lies in the trace. Dually M/kappa(M) embeds in a
// finite power of I°, and M/V in S forces every g with kernel containing V
// to factor, so kappa(M) lies in V.

#include <optional>
#include <stdexcept>
#include <utility>

#include "matlis/cover.hpp"
#include "matlis/duality.hpp"
#include "matlis/module.hpp"

namespace matlis {

template <typename Scalar>
class ClassContext {
 public:
  /// cross_check: also run the Hom computation when the inclusion bounds
  /// coincide, and fail loudly on any disagreement.
  explicit ClassContext(Ideal<Scalar> ideal, bool cross_check = false)
      : ideal_(std::move(ideal)),
        ann_(annihilator(ideal_)),
        closure_(annihilator(ann_)),
        ideal_module_(ideal_as_module(ideal_)),
        ideal_dual_(matlis_dual(ideal_module_)),
        cross_check_(cross_check) {}

  const AlgebraPtr<Scalar>& parent() const { return ideal_.parent(); }
  const Algebra<Scalar>& algebra() const { return ideal_.algebra(); }
  const Ideal<Scalar>& ideal() const { return ideal_; }
  /// Ann_R(I)
  const Ideal<Scalar>& ann() const { return ann_; }
  /// Ann_R Ann_R(I)
  const Ideal<Scalar>& closure() const { return closure_; }
  const FModule<Scalar>& ideal_module() const { return ideal_module_; }
  /// I° = Hom_R(I, E)
  const FModule<Scalar>& ideal_dual() const { return ideal_dual_; }
  bool cross_check() const { return cross_check_; }

 private:
  Ideal<Scalar> ideal_;
  Ideal<Scalar> ann_;
  Ideal<Scalar> closure_;
  FModule<Scalar> ideal_module_;
  FModule<Scalar> ideal_dual_;
  bool cross_check_;
};

/// sum of images of a basis of Hom(I, M)
template <typename Scalar>
Submodule<Scalar> trace(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  const auto h = hom_space(ctx.ideal_module(), m);
  std::vector<Vector<Scalar>> vs;
  for (const auto& f : h.basis)
    for (Index j = 0; j < f.matrix.cols(); ++j) vs.push_back(f.matrix.col(j));
  return Submodule<Scalar>(Subspace<Scalar>::span_vectors(vs, m.dim()));
}

/// intersection of kernels of a basis of Hom(M, I°)
template <typename Scalar>
Submodule<Scalar> reject(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  const auto h = hom_space(m, ctx.ideal_dual());
  if (h.basis.empty()) return whole_module(m);
  std::vector<Matrix<Scalar>> blocks;
  for (const auto& g : h.basis) blocks.push_back(g.matrix);
  return Submodule<Scalar>(nullspace(vstack(blocks, m.dim())));
}

/// Largest submodule of M in P. Uses I M <= gamma(M) <= M[Ann I] as a
/// shortcut when the two bounds agree.
template <typename Scalar>
Submodule<Scalar> gamma(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  require_same_parent(ctx.parent(), m.parent());
  const auto lower = ideal_times_module(ctx.ideal(), m);
  const auto upper = annihilator_submodule(m, ctx.ann());
  if (lower == upper && !ctx.cross_check()) return lower;
  auto t = trace(ctx, m);
  if (ctx.cross_check() && (!t.contains(lower) || !upper.contains(t)))
    throw std::logic_error("trace violates I M <= gamma(M) <= M[Ann I]");
  return t;
}

/// Smallest V in M with M/V in S. Uses Ann(I) M <= kappa(M) <= M[I].
template <typename Scalar>
Submodule<Scalar> kappa(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  require_same_parent(ctx.parent(), m.parent());
  const auto lower = ideal_times_module(ctx.ann(), m);
  const auto upper = annihilator_submodule(m, ctx.ideal());
  if (lower == upper && !ctx.cross_check()) return lower;
  auto r = reject(ctx, m);
  if (ctx.cross_check() && (!r.contains(lower) || !upper.contains(r)))
    throw std::logic_error("reject violates Ann(I) M <= kappa(M) <= M[I]");
  return r;
}

template <typename Scalar>
bool is_p_member(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  return gamma(ctx, m).dim() == m.dim();
}

template <typename Scalar>
bool is_s_member(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  return kappa(ctx, m).is_zero();
}

/// (M in P  <=>  M° in S,  M in S  <=>  M° in P); both must hold.
template <typename Scalar>
std::pair<bool, bool> duality_transfer(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  const auto d = matlis_dual(m);
  return {is_p_member(ctx, m) == is_s_member(ctx, d), is_s_member(ctx, m) == is_p_member(ctx, d)};
}

// ---------------------------------------------------------------------------
// Epimorphisms I -> R/Ann(I)

/// A surjection I -> R/Ann(I), if one exists. R/Ann(I) is cyclic with
/// simple top, so f is onto iff its image leaves the radical; some basis map
/// does that iff some map does.
template <typename Scalar>
std::optional<ModuleMap<Scalar>> find_epi_onto_r_mod_ann(const ClassContext<Scalar>& ctx) {
  const auto r = regular_module(ctx.parent());
  const auto q = quotient_module(r, Submodule<Scalar>(ctx.ann().space()));
  if (q.module.dim() == 0) return ModuleMap<Scalar>{Matrix<Scalar>(0, ctx.ideal_module().dim())};
  const auto rad = radical(q.module);
  for (const auto& f : hom_space(ctx.ideal_module(), q.module).basis)
    if (!rad.contains(image(f))) return f;
  return std::nullopt;
}

template <typename Scalar>
bool epi_onto_r_mod_ann_exists(const ClassContext<Scalar>& ctx) {
  return find_epi_onto_r_mod_ann(ctx).has_value();
}

template <typename Scalar>
struct SubmoduleCounterexample {
  FModule<Scalar> ambient;             // I^n
  Submodule<Scalar> submodule;         // R (r_1, ..., r_n)
  Vector<Scalar> generator;            // (r_1, ..., r_n) in ambient coordinates
  std::vector<Vector<Scalar>> ideal_generators;
  bool ambient_in_p = false;
  bool submodule_in_p = true;
};

/// When no epimorphism I -> R/Ann(I) exists, the cyclic submodule of I^n
/// generated by the tuple of minimal generators of I is isomorphic to
/// R/Ann(I) and is not in P although I^n is.
template <typename Scalar>
std::optional<SubmoduleCounterexample<Scalar>> submodule_counterexample(const ClassContext<Scalar>& ctx) {
  if (epi_onto_r_mod_ann_exists(ctx)) return std::nullopt;
  SubmoduleCounterexample<Scalar> out;
  out.ideal_generators = minimal_generators(ctx.ideal());
  const int n = static_cast<int>(out.ideal_generators.size());
  const Index k = ctx.ideal_module().dim();
  out.ambient = direct_power(ctx.ideal_module(), n);
  out.generator = Vector<Scalar>::Zero(out.ambient.dim());
  for (int j = 0; j < n; ++j)
    out.generator.segment(j * k, k) = ctx.ideal().space().coordinates(out.ideal_generators[static_cast<std::size_t>(j)]);
  out.submodule = generated_submodule(out.ambient, {out.generator});
  out.ambient_in_p = is_p_member(ctx, out.ambient);
  out.submodule_in_p = is_p_member(ctx, submodule_as_module(out.ambient, out.submodule).module);
  return out;
}

// ---------------------------------------------------------------------------
// Star operators

template <typename Scalar>
struct InjectiveEmbedding {
  FModule<Scalar> injective;  // E^t
  ModuleMap<Scalar> embedding;
  int copies = 0;
};

/// M -> (F)° where F -> M° is a free cover: the dual of the cover composed
/// with the evaluation isomorphism M -> M°°. F° is a sum of copies of E.
template <typename Scalar>
InjectiveEmbedding<Scalar> embed_into_injective(const FModule<Scalar>& m) {
  const auto cover = free_cover(matlis_dual(m));
  InjectiveEmbedding<Scalar> out;
  out.injective = matlis_dual(cover.free);
  out.embedding = compose(dual_map(cover.epi), evaluation_map(m));
  out.copies = cover.rank();
  return out;
}

/// W is injective iff W° is free iff dim W = dim soc(W) * dim R.
template <typename Scalar>
bool is_injective_module(const FModule<Scalar>& w) {
  return w.dim() == socle(w).dim() * w.algebra().dim();
}

/// M is free iff dim M = dim(M/mM) * dim R.
template <typename Scalar>
bool is_free_module(const FModule<Scalar>& a) {
  return a.dim() == top_dim(a) * a.algebra().dim();
}

/// I (e(M) :_W I) pulled back along the monomorphism e: M -> W, W injective.
template <typename Scalar>
Submodule<Scalar> lower_star(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m, const FModule<Scalar>& w,
                             const ModuleMap<Scalar>& e) {
  require_same_parent(m, w);
  if (!is_injective_module(w)) throw Error(Errc::NotInjectiveAmbient, "ambient module is not injective");
  if (!is_equivariant(e, m, w)) throw Error(Errc::NotEquivariant, "embedding is not a module map");
  if (!is_injective(e)) throw Error(Errc::DomainError, "embedding is not injective");
  const auto n = image(e);
  const auto c = colon(n, ctx.ideal(), w);
  const auto l = ideal_times_submodule(ctx.ideal(), w, c);
  return Submodule<Scalar>(preimage(e.matrix, l.space()));
}

/// (I B :_A I) for B inside a free module A.
template <typename Scalar>
Submodule<Scalar> upper_star(const ClassContext<Scalar>& ctx, const FModule<Scalar>& a, const Submodule<Scalar>& b) {
  require_same_parent(ctx.parent(), a.parent());
  if (!is_free_module(a)) throw Error(Errc::NotFree, "ambient module is not free");
  require_submodule(a, b);
  const auto ib = ideal_times_submodule(ctx.ideal(), a, b);
  return colon(ib, ctx.ideal(), a);
}

// ---------------------------------------------------------------------------
// Uniserial modules

template <typename Scalar>
struct UniserialFormula {
  int length = 0;  // n
  int s = 0;       // least s with m^s I <= Ann(M) I
  std::vector<Submodule<Scalar>> chain;  // M_0 .. M_n
  Submodule<Scalar> gamma;  // M_{n-s}
  Submodule<Scalar> kappa;  // M_s
};

/// For M uniserial of length n >= 1: gamma(M) = M_{n-s}, kappa(M) = M_s,
/// with s the least integer such that m^s I lies in Ann_R(M) I.
template <typename Scalar>
UniserialFormula<Scalar> uniserial_s(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  UniserialFormula<Scalar> out;
  out.chain = uniserial_chain(m);
  out.length = static_cast<int>(out.chain.size()) - 1;
  if (out.length < 1) throw Error(Errc::NotUniserial, "the zero module has no uniserial chain of length >= 1");
  const auto target = ideal_product(ann_ring(m), ctx.ideal());
  const auto mx = maximal_ideal(ctx.parent());
  Ideal<Scalar> power = ctx.ideal();
  while (!target.contains(power)) {
    power = ideal_product(mx, power);
    ++out.s;
    if (out.s > out.length) throw std::logic_error("s exceeds the length of a uniserial module");
  }
  out.gamma = out.chain[static_cast<std::size_t>(out.length - out.s)];
  out.kappa = out.chain[static_cast<std::size_t>(out.s)];
  return out;
}

/// gamma(M°) = Ann_{M°}(kappa(M)) and kappa(M°) = Ann_{M°}(gamma(M)).
template <typename Scalar>
std::pair<bool, bool> uniserial_duality(const ClassContext<Scalar>& ctx, const FModule<Scalar>& m) {
  uniserial_chain(m);
  const auto d = matlis_dual(m);
  return {gamma(ctx, d) == annihilator_in_dual(m, kappa(ctx, m)),
          kappa(ctx, d) == annihilator_in_dual(m, gamma(ctx, m))};
}

}  // namespace matlis
