#pragma once

// Finite-length modules over an Artinian local algebra, given by one action
// matrix per algebra basis element (column-vector convention: r.v = A(r) v),
// plus the submodule calculus built on top of them.
//
// Composition length equals k-dimension here: the residue field of every
// algebra is k itself, so k is the unique simple module.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "matlis/algebra.hpp"
#include "matlis/error.hpp"
#include "matlis/linalg.hpp"

namespace matlis {

template <typename Scalar>
class FModule {
 public:
  FModule() = default;

  /// Actions of the variables x_1..x_n; the actions of all basis monomials
  /// are derived and the representation law is verified.
  static FModule from_variable_actions(AlgebraPtr<Scalar> a, Index dim, const std::vector<Matrix<Scalar>>& vars) {
    if (static_cast<int>(vars.size()) != a->num_variables())
      throw Error(Errc::ValidationError, "expected one action matrix per variable");
    for (const auto& m : vars)
      if (m.rows() != dim || m.cols() != dim) throw Error(Errc::DimensionMismatch, "action matrix has wrong size");
    std::vector<Matrix<Scalar>> acts;
    for (const auto& e : a->basis()) {
      Matrix<Scalar> m = Matrix<Scalar>::Identity(dim, dim);
      for (std::size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) m = Matrix<Scalar>(m * vars[v]);
      acts.push_back(std::move(m));
    }
    FModule out(std::move(a), dim, std::move(acts));
    // x_v acts on every basis monomial b as the normal form of x_v b does;
    // by induction every monomial then acts as its normal form.
    const auto& alg = out.algebra();
    for (int v = 0; v < alg.num_variables(); ++v) {
      for (Index b = 0; b < alg.dim(); ++b) {
        Exponent e = alg.basis()[static_cast<std::size_t>(b)];
        e[static_cast<std::size_t>(v)] += 1;
        const Matrix<Scalar> lhs = vars[static_cast<std::size_t>(v)] * out.action(b);
        if (!equal_matrices(lhs, out.action_of(alg.monomial(e))))
          throw Error(Errc::ValidationError, "variable actions violate a relation of the algebra");
      }
    }
    out.verify();
    return out;
  }

  /// Actions of every basis element, verified against the structure constants.
  static FModule from_basis_actions(AlgebraPtr<Scalar> a, Index dim, std::vector<Matrix<Scalar>> acts) {
    if (static_cast<Index>(acts.size()) != a->dim())
      throw Error(Errc::ValidationError, "expected one action matrix per basis element");
    FModule out(std::move(a), dim, std::move(acts));
    out.verify();
    return out;
  }

  const AlgebraPtr<Scalar>& parent() const { return parent_; }
  const Algebra<Scalar>& algebra() const { return *parent_; }
  Index dim() const { return dim_; }
  bool is_zero() const { return dim_ == 0; }

  const Matrix<Scalar>& action(Index basis_index) const { return actions_[static_cast<std::size_t>(basis_index)]; }
  const std::vector<Matrix<Scalar>>& actions() const { return actions_; }

  /// Action of an arbitrary algebra element.
  Matrix<Scalar> action_of(const Vector<Scalar>& r) const {
    if (r.size() != algebra().dim()) throw Error(Errc::DimensionMismatch, "algebra element has wrong length");
    Matrix<Scalar> out = Matrix<Scalar>::Zero(dim_, dim_);
    for (Index i = 0; i < r.size(); ++i)
      if (!matlis::is_zero(r(i))) out += r(i) * action(i);
    return out;
  }

  Matrix<Scalar> variable_action(int v) const { return action_of(algebra().variable(v)); }

  std::vector<Matrix<Scalar>> variable_actions() const {
    std::vector<Matrix<Scalar>> out;
    for (int v = 0; v < algebra().num_variables(); ++v) out.push_back(variable_action(v));
    return out;
  }

  Vector<Scalar> unit_vector(Index i) const {
    Vector<Scalar> v = Vector<Scalar>::Zero(dim_);
    v(i) = algebra().field().make(1);
    return v;
  }

 private:
  FModule(AlgebraPtr<Scalar> a, Index dim, std::vector<Matrix<Scalar>> acts)
      : parent_(std::move(a)), dim_(dim), actions_(std::move(acts)) {}

  void verify() const {
    const auto& alg = algebra();
    if (!equal_matrices(action(0), Matrix<Scalar>::Identity(dim_, dim_)))
      throw Error(Errc::ValidationError, "the unit does not act as the identity");
    for (Index i = 0; i < alg.dim(); ++i)
      for (Index j = i; j < alg.dim(); ++j) {
        const Matrix<Scalar> lhs = action(i) * action(j);
        if (!equal_matrices(lhs, action_of(Vector<Scalar>(alg.mult_matrix(i).col(j)))))
          throw Error(Errc::ValidationError, "actions violate the representation law");
      }
  }

  AlgebraPtr<Scalar> parent_;
  Index dim_ = 0;
  std::vector<Matrix<Scalar>> actions_;
};

/// An action-closed subspace of an FModule, in canonical form.
template <typename Scalar>
class Submodule {
 public:
  Submodule() = default;
  explicit Submodule(Subspace<Scalar> s) : space_(std::move(s)) {}

  const Subspace<Scalar>& space() const { return space_; }
  const Matrix<Scalar>& basis() const { return space_.basis(); }
  Index dim() const { return space_.dim(); }
  Index ambient_dim() const { return space_.ambient_dim(); }
  bool is_zero() const { return space_.is_zero(); }
  bool contains(const Submodule& o) const { return space_.contains(o.space_); }
  bool contains(const Vector<Scalar>& v) const { return space_.contains(v); }

  friend bool operator==(const Submodule& a, const Submodule& b) { return a.space_ == b.space_; }
  friend bool operator!=(const Submodule& a, const Submodule& b) { return !(a == b); }

 private:
  Subspace<Scalar> space_;
};

template <typename Scalar>
struct ModuleMap {
  Matrix<Scalar> matrix;  // target_dim x source_dim

  Index source_dim() const { return matrix.cols(); }
  Index target_dim() const { return matrix.rows(); }
  Vector<Scalar> operator()(const Vector<Scalar>& v) const { return matrix * v; }
};

template <typename Scalar>
ModuleMap<Scalar> compose(const ModuleMap<Scalar>& g, const ModuleMap<Scalar>& f) {
  if (g.source_dim() != f.target_dim()) throw Error(Errc::DimensionMismatch, "compose: size mismatch");
  return {Matrix<Scalar>(g.matrix * f.matrix)};
}

template <typename Scalar>
struct HomSpace {
  std::vector<ModuleMap<Scalar>> basis;
  Index dim() const { return static_cast<Index>(basis.size()); }
};

template <typename Scalar>
struct QuotientModule {
  FModule<Scalar> module;
  ModuleMap<Scalar> projection;
  std::vector<Index> representatives;  // ambient unit vectors lifting the quotient basis
};

template <typename Scalar>
struct DirectSum {
  FModule<Scalar> module;
  std::vector<ModuleMap<Scalar>> injections;
  std::vector<ModuleMap<Scalar>> projections;
};

template <typename Scalar>
struct SubmoduleModule {
  FModule<Scalar> module;
  ModuleMap<Scalar> inclusion;
};

// ---------------------------------------------------------------------------
// Constructors

template <typename Scalar>
FModule<Scalar> regular_module(const AlgebraPtr<Scalar>& a) {
  std::vector<Matrix<Scalar>> acts;
  for (Index i = 0; i < a->dim(); ++i) acts.push_back(a->mult_matrix(i));
  return FModule<Scalar>::from_basis_actions(a, a->dim(), std::move(acts));
}

template <typename Scalar>
FModule<Scalar> zero_module(const AlgebraPtr<Scalar>& a) {
  return FModule<Scalar>::from_basis_actions(a, 0, std::vector<Matrix<Scalar>>(static_cast<std::size_t>(a->dim()), Matrix<Scalar>(0, 0)));
}

/// k = R/m.
template <typename Scalar>
FModule<Scalar> residue_field(const AlgebraPtr<Scalar>& a) {
  std::vector<Matrix<Scalar>> acts(static_cast<std::size_t>(a->dim()), Matrix<Scalar>::Zero(1, 1));
  acts[0] = Matrix<Scalar>::Constant(1, 1, a->field().make(1));
  return FModule<Scalar>::from_basis_actions(a, 1, std::move(acts));
}

template <typename Scalar>
void require_same_parent(const FModule<Scalar>& m, const FModule<Scalar>& n) {
  require_same_parent(m.parent(), n.parent());
}

template <typename Scalar>
Submodule<Scalar> zero_submodule(const FModule<Scalar>& m) {
  return Submodule<Scalar>(Subspace<Scalar>::zero(m.dim()));
}

template <typename Scalar>
Submodule<Scalar> whole_module(const FModule<Scalar>& m) {
  return Submodule<Scalar>(Subspace<Scalar>::full(m.dim()));
}

template <typename Scalar>
bool is_action_closed(const FModule<Scalar>& m, const Subspace<Scalar>& s) {
  if (s.ambient_dim() != m.dim()) return false;
  for (int v = 0; v < m.algebra().num_variables(); ++v) {
    const Matrix<Scalar> a = m.variable_action(v);
    for (Index i = 0; i < s.dim(); ++i)
      if (!s.contains(Vector<Scalar>(a * s.basis_vector(i)))) return false;
  }
  return true;
}

/// Wraps a subspace after checking it is a submodule of m.
template <typename Scalar>
Submodule<Scalar> checked_submodule(const FModule<Scalar>& m, Subspace<Scalar> s) {
  if (!is_action_closed(m, s)) throw Error(Errc::NotASubmodule, "subspace is not closed under the action");
  return Submodule<Scalar>(std::move(s));
}

template <typename Scalar>
void require_submodule(const FModule<Scalar>& m, const Submodule<Scalar>& u) {
  if (u.ambient_dim() != m.dim() || !is_action_closed(m, u.space()))
    throw Error(Errc::NotASubmodule, "not a submodule of the given module");
}

/// R v_1 + ... + R v_k
template <typename Scalar>
Submodule<Scalar> generated_submodule(const FModule<Scalar>& m, const std::vector<Vector<Scalar>>& gens) {
  std::vector<Vector<Scalar>> vs;
  for (const auto& g : gens) {
    if (g.size() != m.dim()) throw Error(Errc::DimensionMismatch, "generator has wrong length");
    for (Index b = 0; b < m.algebra().dim(); ++b) vs.push_back(m.action(b) * g);
  }
  return Submodule<Scalar>(Subspace<Scalar>::span_vectors(vs, m.dim()));
}

template <typename Scalar>
Submodule<Scalar> submodule_sum(const Submodule<Scalar>& u, const Submodule<Scalar>& v) {
  return Submodule<Scalar>(sum(u.space(), v.space()));
}

template <typename Scalar>
Submodule<Scalar> submodule_intersection(const Submodule<Scalar>& u, const Submodule<Scalar>& v) {
  return Submodule<Scalar>(intersect(u.space(), v.space()));
}

/// I U, spanned by g u over basis elements g of I and u of U.
template <typename Scalar>
Submodule<Scalar> ideal_times_submodule(const Ideal<Scalar>& i, const FModule<Scalar>& m, const Submodule<Scalar>& u) {
  require_same_parent(i.parent(), m.parent());
  std::vector<Vector<Scalar>> vs;
  for (Index r = 0; r < i.dim(); ++r) {
    const Matrix<Scalar> a = m.action_of(i.space().basis_vector(r));
    for (Index s = 0; s < u.dim(); ++s) vs.push_back(a * u.space().basis_vector(s));
  }
  return Submodule<Scalar>(Subspace<Scalar>::span_vectors(vs, m.dim()));
}

/// I M
template <typename Scalar>
Submodule<Scalar> ideal_times_module(const Ideal<Scalar>& i, const FModule<Scalar>& m) {
  require_same_parent(i.parent(), m.parent());
  Matrix<Scalar> stacked(m.dim(), i.dim() * m.dim());
  for (Index r = 0; r < i.dim(); ++r) stacked.middleCols(r * m.dim(), m.dim()) = m.action_of(i.space().basis_vector(r));
  return Submodule<Scalar>(image(stacked));
}

/// M[a] = {v | a v = 0}
template <typename Scalar>
Submodule<Scalar> annihilator_submodule(const FModule<Scalar>& m, const Ideal<Scalar>& a) {
  require_same_parent(a.parent(), m.parent());
  if (a.is_zero()) return whole_module(m);
  std::vector<Matrix<Scalar>> blocks;
  for (Index r = 0; r < a.dim(); ++r) blocks.push_back(m.action_of(a.space().basis_vector(r)));
  return Submodule<Scalar>(nullspace(vstack(blocks, m.dim())));
}

/// (N :_M I) = {v in M | I v in N}
template <typename Scalar>
Submodule<Scalar> colon(const Submodule<Scalar>& n, const Ideal<Scalar>& i, const FModule<Scalar>& m) {
  require_same_parent(i.parent(), m.parent());
  require_submodule(m, n);
  if (i.is_zero()) return whole_module(m);
  const Matrix<Scalar> perp = orthogonal_complement(n.space()).basis();
  std::vector<Matrix<Scalar>> blocks;
  for (Index r = 0; r < i.dim(); ++r) blocks.push_back(perp * m.action_of(i.space().basis_vector(r)));
  return Submodule<Scalar>(nullspace(vstack(blocks, m.dim())));
}

/// Ann_R(M) = {r | r M = 0}
template <typename Scalar>
Ideal<Scalar> ann_ring(const FModule<Scalar>& m) {
  const Index d = m.algebra().dim();
  Matrix<Scalar> sys(m.dim() * m.dim(), d);
  for (Index b = 0; b < d; ++b) sys.col(b) = m.action(b).reshaped();
  return Ideal<Scalar>(m.parent(), nullspace(sys));
}

/// Ann_R(U) for a submodule.
template <typename Scalar>
Ideal<Scalar> ann_ring(const FModule<Scalar>& m, const Submodule<Scalar>& u) {
  const Index d = m.algebra().dim();
  Matrix<Scalar> sys(m.dim() * u.dim(), d);
  for (Index b = 0; b < d; ++b) sys.col(b) = Matrix<Scalar>(m.action(b) * u.basis().transpose()).reshaped();
  return Ideal<Scalar>(m.parent(), nullspace(sys));
}

template <typename Scalar>
Submodule<Scalar> socle(const FModule<Scalar>& m) {
  return annihilator_submodule(m, maximal_ideal(m.parent()));
}

template <typename Scalar>
Submodule<Scalar> radical(const FModule<Scalar>& m) {
  return ideal_times_module(maximal_ideal(m.parent()), m);
}

/// dim of M / m M: the minimal number of generators.
template <typename Scalar>
Index top_dim(const FModule<Scalar>& m) {
  return m.dim() - radical(m).dim();
}

// ---------------------------------------------------------------------------
// Maps

template <typename Scalar>
bool is_equivariant(const ModuleMap<Scalar>& f, const FModule<Scalar>& m, const FModule<Scalar>& n) {
  if (f.source_dim() != m.dim() || f.target_dim() != n.dim()) return false;
  for (int v = 0; v < m.algebra().num_variables(); ++v)
    if (!equal_matrices(Matrix<Scalar>(f.matrix * m.variable_action(v)), Matrix<Scalar>(n.variable_action(v) * f.matrix)))
      return false;
  return true;
}

template <typename Scalar>
Submodule<Scalar> image(const ModuleMap<Scalar>& f) {
  return Submodule<Scalar>(image(f.matrix));
}

template <typename Scalar>
Submodule<Scalar> kernel(const ModuleMap<Scalar>& f) {
  return Submodule<Scalar>(nullspace(f.matrix));
}

template <typename Scalar>
bool is_injective(const ModuleMap<Scalar>& f) {
  return rank(f.matrix) == f.source_dim();
}

template <typename Scalar>
bool is_surjective(const ModuleMap<Scalar>& f) {
  return rank(f.matrix) == f.target_dim();
}

/// Hom_R(M, N): kernel of the linear system X A_M(x_v) = A_N(x_v) X over the
/// variables x_v, with X vectorised column-major. Basis order is the reduced
/// echelon order of that kernel.
template <typename Scalar>
HomSpace<Scalar> hom_space(const FModule<Scalar>& m, const FModule<Scalar>& n) {
  require_same_parent(m, n);
  const Index dm = m.dim();
  const Index dn = n.dim();
  HomSpace<Scalar> out;
  if (dm == 0 || dn == 0) return out;
  const int nv = m.algebra().num_variables();
  const Index unknowns = dm * dn;
  auto idx = [dn](Index row, Index col) { return col * dn + row; };
  Matrix<Scalar> sys = Matrix<Scalar>::Zero(nv * unknowns, unknowns);
  for (int v = 0; v < nv; ++v) {
    const Matrix<Scalar> am = m.variable_action(v);
    const Matrix<Scalar> an = n.variable_action(v);
    for (Index i = 0; i < dn; ++i)
      for (Index j = 0; j < dm; ++j) {
        const Index eq = v * unknowns + idx(i, j);
        // (X A_M)(i, j) = sum_k X(i, k) A_M(k, j)
        for (Index k = 0; k < dm; ++k)
          if (!is_zero(am(k, j))) sys(eq, idx(i, k)) += am(k, j);
        // (A_N X)(i, j) = sum_k A_N(i, k) X(k, j)
        for (Index k = 0; k < dn; ++k)
          if (!is_zero(an(i, k))) sys(eq, idx(k, j)) -= an(i, k);
      }
  }
  const auto ker = nullspace(sys);
  for (Index r = 0; r < ker.dim(); ++r) {
    Matrix<Scalar> x(dn, dm);
    for (Index j = 0; j < dm; ++j)
      for (Index i = 0; i < dn; ++i) x(i, j) = ker.basis()(r, idx(i, j));
    out.basis.push_back({std::move(x)});
  }
  return out;
}

template <typename Scalar>
ModuleMap<Scalar> combine(const HomSpace<Scalar>& h, const std::vector<Scalar>& coeffs, Index rows, Index cols) {
  Matrix<Scalar> x = Matrix<Scalar>::Zero(rows, cols);
  for (std::size_t i = 0; i < h.basis.size() && i < coeffs.size(); ++i)
    if (!is_zero(coeffs[i])) x += coeffs[i] * h.basis[i].matrix;
  return {std::move(x)};
}

// ---------------------------------------------------------------------------
// Quotients, sums, restriction to submodules

/// M/U with basis the unit vectors of M at the non-pivot columns of U.
template <typename Scalar>
QuotientModule<Scalar> quotient_module(const FModule<Scalar>& m, const Submodule<Scalar>& u) {
  require_submodule(m, u);
  const auto reps = u.space().free_columns();
  const Index q = static_cast<Index>(reps.size());
  Matrix<Scalar> proj = Matrix<Scalar>::Zero(q, m.dim());
  for (Index c = 0; c < m.dim(); ++c) {
    const Vector<Scalar> r = u.space().reduce(m.unit_vector(c));
    for (Index k = 0; k < q; ++k) proj(k, c) = r(reps[static_cast<std::size_t>(k)]);
  }
  std::vector<Matrix<Scalar>> acts;
  for (Index b = 0; b < m.algebra().dim(); ++b) {
    Matrix<Scalar> a(q, q);
    for (Index k = 0; k < q; ++k) a.col(k) = proj * m.action(b).col(reps[static_cast<std::size_t>(k)]);
    acts.push_back(std::move(a));
  }
  return {FModule<Scalar>::from_basis_actions(m.parent(), q, std::move(acts)), {std::move(proj)}, reps};
}

/// U as a module in its own right, with basis the reduced basis of U.
template <typename Scalar>
SubmoduleModule<Scalar> submodule_as_module(const FModule<Scalar>& m, const Submodule<Scalar>& u) {
  require_submodule(m, u);
  const Index k = u.dim();
  const Matrix<Scalar> incl = u.basis().transpose();
  std::vector<Matrix<Scalar>> acts;
  for (Index b = 0; b < m.algebra().dim(); ++b) {
    Matrix<Scalar> a(k, k);
    for (Index j = 0; j < k; ++j) a.col(j) = u.space().coordinates(Vector<Scalar>(m.action(b) * incl.col(j)));
    acts.push_back(std::move(a));
  }
  return {FModule<Scalar>::from_basis_actions(m.parent(), k, std::move(acts)), {incl}};
}

template <typename Scalar>
FModule<Scalar> ideal_as_module(const Ideal<Scalar>& i) {
  const auto r = regular_module(i.parent());
  return submodule_as_module(r, Submodule<Scalar>(i.space())).module;
}

template <typename Scalar>
DirectSum<Scalar> direct_sum(const std::vector<FModule<Scalar>>& parts) {
  if (parts.empty()) throw Error(Errc::DimensionMismatch, "direct sum of no modules");
  for (const auto& p : parts) require_same_parent(parts.front(), p);
  Index total = 0;
  for (const auto& p : parts) total += p.dim();
  const auto& alg = parts.front().algebra();
  std::vector<Matrix<Scalar>> acts(static_cast<std::size_t>(alg.dim()), Matrix<Scalar>::Zero(total, total));
  DirectSum<Scalar> out;
  Index off = 0;
  for (const auto& p : parts) {
    for (Index b = 0; b < alg.dim(); ++b) acts[static_cast<std::size_t>(b)].block(off, off, p.dim(), p.dim()) = p.action(b);
    Matrix<Scalar> inj = Matrix<Scalar>::Zero(total, p.dim());
    inj.block(off, 0, p.dim(), p.dim()) = Matrix<Scalar>::Identity(p.dim(), p.dim());
    out.projections.push_back({Matrix<Scalar>(inj.transpose())});
    out.injections.push_back({std::move(inj)});
    off += p.dim();
  }
  out.module = FModule<Scalar>::from_basis_actions(parts.front().parent(), total, std::move(acts));
  return out;
}

template <typename Scalar>
DirectSum<Scalar> direct_sum(const FModule<Scalar>& m, const FModule<Scalar>& n) {
  return direct_sum(std::vector<FModule<Scalar>>{m, n});
}

/// M^j (j >= 0; M^0 is the zero module).
template <typename Scalar>
FModule<Scalar> direct_power(const FModule<Scalar>& m, int j) {
  if (j <= 0) return zero_module(m.parent());
  return direct_sum(std::vector<FModule<Scalar>>(static_cast<std::size_t>(j), m)).module;
}

/// R^t
template <typename Scalar>
FModule<Scalar> free_module(const AlgebraPtr<Scalar>& a, int t) {
  return direct_power(regular_module(a), t);
}

// ---------------------------------------------------------------------------
// Essential and small submodules
//
// Over a local algebra every nonzero finite-length module has a nonzero
// socle, so U is essential in W iff soc(W) is contained in U. Dually every
// proper submodule lies in a maximal one and those all contain m W, so U is
// small in W iff U lies in m W.

template <typename Scalar>
bool is_essential_in(const Submodule<Scalar>& u, const Submodule<Scalar>& w, const FModule<Scalar>& m) {
  require_submodule(m, u);
  require_submodule(m, w);
  if (!w.contains(u)) throw Error(Errc::NotASubmodule, "U is not contained in W");
  const auto soc_w = submodule_intersection(w, socle(m));
  return u.contains(soc_w);
}

template <typename Scalar>
bool is_essential(const Submodule<Scalar>& u, const FModule<Scalar>& m) {
  return is_essential_in(u, whole_module(m), m);
}

template <typename Scalar>
bool is_small(const Submodule<Scalar>& u, const FModule<Scalar>& m) {
  require_submodule(m, u);
  return radical(m).contains(u);
}

/// V/W small in M/W, for W contained in V.
template <typename Scalar>
bool is_small_modulo(const Submodule<Scalar>& v, const Submodule<Scalar>& w, const FModule<Scalar>& m) {
  require_submodule(m, v);
  if (!v.contains(w)) throw Error(Errc::NotASubmodule, "W is not contained in V");
  return submodule_sum(radical(m), w).contains(v);
}

// ---------------------------------------------------------------------------
// Uniserial modules
//
// At finite length over a local algebra, M is uniserial iff every radical
// layer m^i M / m^(i+1) M is one-dimensional: then each m^i M is cyclic with
// simple top, so any submodule not contained in m^(i+1) M contains m^i M.

/// M = M_0 > M_1 > ... > M_n = 0 with M_i = m^i M. Throws NotUniserial.
template <typename Scalar>
std::vector<Submodule<Scalar>> uniserial_chain(const FModule<Scalar>& m) {
  const auto mx = maximal_ideal(m.parent());
  std::vector<Submodule<Scalar>> chain{whole_module(m)};
  while (!chain.back().is_zero()) {
    auto next = ideal_times_submodule(mx, m, chain.back());
    if (chain.back().dim() - next.dim() != 1)
      throw Error(Errc::NotUniserial, "radical layer " + std::to_string(chain.size() - 1) + " has dimension " +
                                          std::to_string(chain.back().dim() - next.dim()));
    chain.push_back(std::move(next));
  }
  return chain;
}

template <typename Scalar>
bool is_uniserial(const FModule<Scalar>& m) {
  try {
    uniserial_chain(m);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotUniserial) return false;
    throw;
  }
}

// ---------------------------------------------------------------------------
// Isomorphism search

enum class IsoResult { Isomorphic, NotIsomorphic, NoIsoFound };

inline const char* iso_result_name(IsoResult r) {
  switch (r) {
    case IsoResult::Isomorphic: return "isomorphic";
    case IsoResult::NotIsomorphic: return "not isomorphic";
    case IsoResult::NoIsoFound: return "no iso found";
  }
  return "";
}

/// Searches Hom(M, N) for an invertible map: the basis elements first, then
/// up to `random_trials` seeded random combinations. Over F_p with a Hom
/// space of at most 4096 elements the search is exhaustive, so a miss means
/// NotIsomorphic; otherwise a miss is reported as NoIsoFound. Cheap
/// invariants (dimension, socle, radical, annihilator) decide NotIsomorphic
/// before any search.
template <typename Scalar>
std::pair<IsoResult, std::optional<ModuleMap<Scalar>>> find_isomorphism(const FModule<Scalar>& m,
                                                                        const FModule<Scalar>& n,
                                                                        std::uint64_t seed = 1,
                                                                        int random_trials = 200) {
  require_same_parent(m, n);
  if (m.dim() != n.dim() || socle(m).dim() != socle(n).dim() || radical(m).dim() != radical(n).dim() ||
      ann_ring(m) != ann_ring(n))
    return {IsoResult::NotIsomorphic, std::nullopt};
  if (m.dim() == 0) return {IsoResult::Isomorphic, ModuleMap<Scalar>{Matrix<Scalar>(0, 0)}};
  const auto h = hom_space(m, n);
  auto invertible = [&](const ModuleMap<Scalar>& f) { return rank(f.matrix) == m.dim(); };
  for (const auto& f : h.basis)
    if (invertible(f)) return {IsoResult::Isomorphic, f};
  const auto& field = m.algebra().field();
  if constexpr (requires { field.p; }) {
    const std::uint64_t p = field.p;
    std::uint64_t total = 1;
    for (Index r = 0; r < h.dim() && total <= 4096; ++r) total *= p;
    if (total <= 4096) {
      for (std::uint64_t code = 1; code < total; ++code) {
        std::vector<Scalar> coeffs;
        std::uint64_t c = code;
        for (Index r = 0; r < h.dim(); ++r, c /= p) coeffs.push_back(field.element(static_cast<std::uint32_t>(c % p)));
        auto f = combine(h, coeffs, n.dim(), m.dim());
        if (invertible(f)) return {IsoResult::Isomorphic, f};
      }
      return {IsoResult::NotIsomorphic, std::nullopt};
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_trials; ++t) {
    std::vector<Scalar> coeffs;
    for (Index r = 0; r < h.dim(); ++r) coeffs.push_back(field.make(static_cast<std::int64_t>(rng() % 7) - 3));
    auto f = combine(h, coeffs, n.dim(), m.dim());
    if (invertible(f)) return {IsoResult::Isomorphic, f};
  }
  return {IsoResult::NoIsoFound, std::nullopt};
}

}  // namespace matlis
