#pragma once

// Ext^1 through a free cover 0 -> K -> F -> C -> 0:
//   Ext^1(C, A) = Hom(K, A) / {restrictions of maps F -> A},
// extensions built as pushouts, and a bounded search for extensions that
// leave P (or S).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matlis/classes.hpp"
#include "matlis/cover.hpp"
#include "matlis/random.hpp"

namespace matlis {

template <typename Scalar>
struct Ext1Space {
  FModule<Scalar> c;
  FModule<Scalar> a;
  FreeCover<Scalar> cover;
  SubmoduleModule<Scalar> syzygy;          // K with its inclusion into F
  HomSpace<Scalar> cocycles;               // Hom(K, A)
  Subspace<Scalar> coboundaries;           // restrictions, as vec(matrix)
  std::vector<ModuleMap<Scalar>> representatives;  // cocycles spanning a complement of the coboundaries

  Index dim() const { return static_cast<Index>(representatives.size()); }
};

template <typename Scalar>
Vector<Scalar> vectorize(const Matrix<Scalar>& m) {
  return m.reshaped();
}

template <typename Scalar>
Ext1Space<Scalar> ext1(const FModule<Scalar>& c, const FModule<Scalar>& a, FreeCover<Scalar> cover) {
  require_same_parent(c, a);
  Ext1Space<Scalar> out;
  out.c = c;
  out.a = a;
  out.syzygy = submodule_as_module(cover.free, cover.syzygy);
  out.cover = std::move(cover);
  out.cocycles = hom_space(out.syzygy.module, a);
  const Index width = a.dim() * out.syzygy.module.dim();
  std::vector<Vector<Scalar>> restricted;
  for (const auto& f : hom_space(out.cover.free, a).basis)
    restricted.push_back(vectorize(Matrix<Scalar>(f.matrix * out.syzygy.inclusion.matrix)));
  out.coboundaries = Subspace<Scalar>::span_vectors(restricted, width);
  Subspace<Scalar> current = out.coboundaries;
  for (const auto& z : out.cocycles.basis) {
    const Vector<Scalar> v = vectorize(z.matrix);
    if (current.contains(v)) continue;
    out.representatives.push_back(z);
    current = sum(current, Subspace<Scalar>::span_vectors({v}, width));
  }
  return out;
}

template <typename Scalar>
Ext1Space<Scalar> ext1(const FModule<Scalar>& c, const FModule<Scalar>& a) {
  return ext1(c, a, free_cover(c));
}

template <typename Scalar>
bool is_coboundary(const Ext1Space<Scalar>& e, const ModuleMap<Scalar>& cocycle) {
  return e.coboundaries.contains(vectorize(cocycle.matrix));
}

template <typename Scalar>
struct Extension {
  FModule<Scalar> b;
  ModuleMap<Scalar> iota;  // A -> B
  ModuleMap<Scalar> pi;    // B -> C
};

/// B = (A + F) / {(-z(w), w) | w in K}; checks that 0 -> A -> B -> C -> 0 is exact.
template <typename Scalar>
Extension<Scalar> extension_from_class(const Ext1Space<Scalar>& e, const ModuleMap<Scalar>& cocycle) {
  const auto& kmod = e.syzygy.module;
  if (!is_equivariant(cocycle, kmod, e.a)) throw Error(Errc::NotEquivariant, "cocycle is not a module map K -> A");
  const auto sum_af = direct_sum(e.a, e.cover.free);
  const Index da = e.a.dim();
  const Index df = e.cover.free.dim();
  std::vector<Vector<Scalar>> rel;
  for (Index k = 0; k < kmod.dim(); ++k) {
    Vector<Scalar> v(da + df);
    v.head(da) = -cocycle.matrix.col(k);
    v.tail(df) = e.syzygy.inclusion.matrix.col(k);
    rel.push_back(std::move(v));
  }
  const auto d = checked_submodule(sum_af.module, Subspace<Scalar>::span_vectors(rel, da + df));
  auto q = quotient_module(sum_af.module, d);

  Extension<Scalar> out;
  out.iota = compose(q.projection, sum_af.injections[0]);
  const Matrix<Scalar> to_c = e.cover.epi.matrix * sum_af.projections[1].matrix;
  Matrix<Scalar> pi(e.c.dim(), q.module.dim());
  for (std::size_t k = 0; k < q.representatives.size(); ++k) pi.col(static_cast<Index>(k)) = to_c.col(q.representatives[k]);
  out.pi = {std::move(pi)};
  out.b = std::move(q.module);

  if (!is_injective(out.iota) || !is_surjective(out.pi) || image(out.iota) != kernel(out.pi) ||
      out.b.dim() != e.a.dim() + e.c.dim() || !is_equivariant(out.iota, e.a, out.b) ||
      !is_equivariant(out.pi, out.b, e.c))
    throw std::logic_error("constructed extension is not exact");
  return out;
}

/// r: B -> A with r iota = id_A, if any. The condition is linear in the
/// coefficients over a basis of Hom(B, A), so this decides splitting.
template <typename Scalar>
std::optional<ModuleMap<Scalar>> find_retraction(const Extension<Scalar>& ext, const FModule<Scalar>& a) {
  const auto h = hom_space(ext.b, a);
  const Index n = a.dim();
  Matrix<Scalar> sys(n * n, static_cast<Index>(h.basis.size()));
  for (std::size_t i = 0; i < h.basis.size(); ++i)
    sys.col(static_cast<Index>(i)) = vectorize(Matrix<Scalar>(h.basis[i].matrix * ext.iota.matrix));
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(n, n);
  const auto c = solve(sys, vectorize(id));
  if (!c) return std::nullopt;
  std::vector<Scalar> coeffs(c->data(), c->data() + c->size());
  return combine(h, coeffs, n, ext.b.dim());
}

// ---------------------------------------------------------------------------
// Search for extensions leaving P or S

enum class ClassKind { P, S };

enum class ExtensionVerdict { ClosedTrivially, Witness, SearchExhausted };

inline const char* verdict_name(ExtensionVerdict v) {
  switch (v) {
    case ExtensionVerdict::ClosedTrivially: return "ClosedTrivially";
    case ExtensionVerdict::Witness: return "Witness";
    case ExtensionVerdict::SearchExhausted: return "SearchExhausted";
  }
  return "";
}

template <typename Scalar>
struct ExtensionWitness {
  FModule<Scalar> a;
  FModule<Scalar> c;
  Extension<Scalar> extension;
  std::size_t c_index = 0;
  std::size_t a_index = 0;
  std::size_t class_index = 0;
};

template <typename Scalar>
struct ExtensionSearchResult {
  ExtensionVerdict verdict = ExtensionVerdict::SearchExhausted;
  std::optional<ExtensionWitness<Scalar>> witness;
  int constructions = 0;
};

struct ExtensionSearchOptions {
  int budget = 500;
  std::uint64_t seed = 1;
  int random_quotients = 3;     // per power I^j
  int random_combinations = 100;  // over Q
};

/// Members of P: k when k is in P, then I^j / U for j = 1, 2 with U = 0
/// followed by `random_quotients` random submodules. For S the Matlis duals.
template <typename Scalar>
std::vector<FModule<Scalar>> extension_search_pool(const ClassContext<Scalar>& ctx, ClassKind kind,
                                                   const ExtensionSearchOptions& opt) {
  Lcg rng(opt.seed);
  std::vector<FModule<Scalar>> pool;
  const auto k = residue_field(ctx.parent());
  if (is_p_member(ctx, k)) pool.push_back(k);
  for (int j = 1; j <= 2; ++j) {
    const auto power = direct_power(ctx.ideal_module(), j);
    pool.push_back(power);
    for (int t = 0; t < opt.random_quotients; ++t) {
      const auto u = random_submodule(power, rng);
      if (u.is_zero()) continue;
      pool.push_back(quotient_module(power, u).module);
    }
  }
  std::vector<FModule<Scalar>> out;
  for (auto& m : pool) {
    if (m.dim() == 0) continue;
    if (kind == ClassKind::S) m = matlis_dual(m);
    const bool member = kind == ClassKind::P ? is_p_member(ctx, m) : is_s_member(ctx, m);
    if (member) out.push_back(std::move(m));
  }
  return out;
}

/// Cocycles tried for one Ext space: the representatives, then every scalar
/// combination over F_p with p <= 5, or seeded random small-integer
/// combinations otherwise.
template <typename Scalar>
std::vector<ModuleMap<Scalar>> extension_classes(const Ext1Space<Scalar>& e, const ExtensionSearchOptions& opt,
                                                 Lcg& rng) {
  std::vector<ModuleMap<Scalar>> out = e.representatives;
  const auto& field = e.a.algebra().field();
  const Index rows = e.a.dim();
  const Index cols = e.syzygy.module.dim();
  HomSpace<Scalar> reps{e.representatives};
  if (e.dim() < 2) return out;
  if constexpr (requires { field.p; }) {
    if (field.p <= 5) {
      std::uint64_t total = 1;
      for (Index r = 0; r < e.dim() && total <= static_cast<std::uint64_t>(opt.budget) * 4; ++r) total *= field.p;
      for (std::uint64_t code = 1; code < total && out.size() < static_cast<std::size_t>(opt.budget); ++code) {
        std::vector<Scalar> coeffs;
        std::uint64_t c = code;
        int nonzero = 0;
        for (Index r = 0; r < e.dim(); ++r, c /= field.p) {
          coeffs.push_back(field.element(static_cast<std::uint32_t>(c % field.p)));
          nonzero += (c % field.p) != 0;
        }
        if (nonzero >= 2) out.push_back(combine(reps, coeffs, rows, cols));
      }
      return out;
    }
  }
  for (int t = 0; t < opt.random_combinations; ++t) {
    std::vector<Scalar> coeffs;
    for (Index r = 0; r < e.dim(); ++r) coeffs.push_back(random_scalar(field, rng));
    out.push_back(combine(reps, coeffs, rows, cols));
  }
  return out;
}

/// Looks for 0 -> A -> B -> C -> 0 with A, C in the class and B outside it.
/// When I = 0 or I = R both classes are extension-closed and nothing is
/// searched. Pairs are visited C-major in pool order, so the first witness
/// is deterministic.
template <typename Scalar>
ExtensionSearchResult<Scalar> search_extension_counterexample(const ClassContext<Scalar>& ctx, ClassKind kind,
                                                              const ExtensionSearchOptions& opt = {}) {
  ExtensionSearchResult<Scalar> out;
  if (ctx.ideal().is_zero() || is_iso_to_regular(ctx.ideal())) {
    out.verdict = ExtensionVerdict::ClosedTrivially;
    return out;
  }
  const auto pool = extension_search_pool(ctx, kind, opt);
  Lcg rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  auto member = [&](const FModule<Scalar>& m) {
    return kind == ClassKind::P ? is_p_member(ctx, m) : is_s_member(ctx, m);
  };
  for (std::size_t ci = 0; ci < pool.size(); ++ci) {
    for (std::size_t ai = 0; ai < pool.size(); ++ai) {
      const auto e = ext1(pool[ci], pool[ai]);
      if (e.dim() == 0) continue;
      const auto classes = extension_classes(e, opt, rng);
      for (std::size_t k = 0; k < classes.size(); ++k) {
        if (out.constructions >= opt.budget) return out;
        if (is_coboundary(e, classes[k])) continue;
        auto ext = extension_from_class(e, classes[k]);
        ++out.constructions;
        if (!member(ext.b)) {
          out.verdict = ExtensionVerdict::Witness;
          out.witness = ExtensionWitness<Scalar>{pool[ai], pool[ci], std::move(ext), ci, ai, k};
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace matlis
