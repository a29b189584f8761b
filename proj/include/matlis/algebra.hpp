#pragma once

// Artinian local k-algebras given by a polynomial presentation, and ideal
// arithmetic on the regular module.
//
// The algebra is the local ring at the origin of k[x_1..x_n]/(relations),
// computed inside the truncation of degree <= N. Monomials are ordered by
// total degree, then lexicographically with x_1 > x_2 > ... ; the basis is
// the set of monomials that are not leading terms (lowest column in that
// order) of the span of {monomial * relation}. No Groebner bases are needed:
// once every degree-N monomial lies in that span, m^N = 0 and the truncated
// quotient is exact.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "matlis/error.hpp"
#include "matlis/linalg.hpp"

namespace matlis {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded-lex comparison: lower degree first, then x_1^a > x_1^b for a > b.
inline bool graded_lex_less(const Exponent& a, const Exponent& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

template <typename Scalar>
struct Term {
  Scalar coeff;
  Exponent exponent;
};

template <typename Scalar>
using Polynomial = std::vector<Term<Scalar>>;

template <typename Scalar>
struct Presentation {
  typename Scalar::Field field{};
  std::vector<std::string> variables;
  std::vector<Polynomial<Scalar>> relations;
  int nilpotency = 1;
};

/// All exponent vectors in `nvars` variables of degree <= max_degree, graded-lex.
inline std::vector<Exponent> monomials_up_to(int nvars, int max_degree) {
  std::vector<Exponent> out;
  Exponent e(static_cast<std::size_t>(nvars), 0);
  // enumerate degree by degree
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Exponent> layer;
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == nvars - 1) {
        e[static_cast<std::size_t>(var)] = left;
        layer.push_back(e);
        return;
      }
      for (int a = left; a >= 0; --a) {
        e[static_cast<std::size_t>(var)] = a;
        rec(var + 1, left - a);
      }
    };
    if (nvars == 0) {
      if (d == 0) layer.push_back({});
    } else {
      rec(0, d);
    }
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

template <typename Scalar>
class Algebra {
 public:
  using Field = typename Scalar::Field;

  /// Throws Error with NotLocal, BoundNotCertified, InconsistentPresentation
  /// or ValidationError.
  static std::shared_ptr<const Algebra> build(const Presentation<Scalar>& p) {
    return std::shared_ptr<const Algebra>(new Algebra(p));
  }

  const Field& field() const { return field_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  int nilpotency() const { return nilpotency_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  const std::vector<std::string>& variables() const { return variables_; }

  /// Basis monomials, graded-lex, basis()[0] = 1.
  const std::vector<Exponent>& basis() const { return basis_; }

  /// Left multiplication by the i-th basis element.
  const Matrix<Scalar>& mult_matrix(Index i) const { return mult_[static_cast<std::size_t>(i)]; }

  /// Structure constant c_{ijk}: b_i b_j = sum_k c_{ijk} b_k.
  const Scalar& structure_constant(Index i, Index j, Index k) const { return mult_matrix(i)(k, j); }

  Vector<Scalar> zero() const { return Vector<Scalar>::Zero(dim()); }
  Vector<Scalar> one() const { return basis_vector(0); }
  Vector<Scalar> basis_vector(Index i) const {
    Vector<Scalar> v = Vector<Scalar>::Zero(dim());
    v(i) = field_.make(1);
    return v;
  }

  /// Normal form of an arbitrary monomial.
  Vector<Scalar> monomial(const Exponent& e) const {
    if (static_cast<int>(e.size()) != num_variables())
      throw Error(Errc::DimensionMismatch, "exponent tuple has wrong length");
    if (total_degree(e) >= nilpotency_) return zero();
    return normal_forms_[static_cast<std::size_t>(monomial_index_.at(e))];
  }

  Vector<Scalar> variable(int v) const {
    Exponent e(static_cast<std::size_t>(num_variables()), 0);
    e[static_cast<std::size_t>(v)] = 1;
    return monomial(e);
  }

  Vector<Scalar> element(const Polynomial<Scalar>& poly) const {
    Vector<Scalar> out = zero();
    for (const auto& t : poly) out += t.coeff * monomial(t.exponent);
    return out;
  }

  /// Matrix of v -> u v.
  Matrix<Scalar> left_multiplication(const Vector<Scalar>& u) const {
    check(u);
    Matrix<Scalar> out = Matrix<Scalar>::Zero(dim(), dim());
    for (Index i = 0; i < dim(); ++i)
      if (!is_zero(u(i))) out += u(i) * mult_matrix(i);
    return out;
  }

  Vector<Scalar> multiply(const Vector<Scalar>& u, const Vector<Scalar>& v) const {
    check(v);
    return left_multiplication(u) * v;
  }

  /// Exponent of the leading (smallest) monomial of every relation row that
  /// was eliminated. Exposed for diagnostics.
  const std::vector<Exponent>& leading_terms() const { return leading_; }

 private:
  explicit Algebra(const Presentation<Scalar>& p)
      : field_(p.field), variables_(p.variables), nilpotency_(p.nilpotency) {
    const int n = num_variables();
    if (nilpotency_ < 1) throw Error(Errc::ValidationError, "nilpotency bound must be >= 1");
    for (const auto& rel : p.relations) {
      for (const auto& t : rel) {
        if (static_cast<int>(t.exponent.size()) != n)
          throw Error(Errc::ValidationError, "exponent tuple length differs from the number of variables");
        for (int a : t.exponent)
          if (a < 0) throw Error(Errc::ValidationError, "negative exponent");
        if (total_degree(t.exponent) == 0 && !is_zero(t.coeff))
          throw Error(Errc::ValidationError,
                      "residue field: relation has a degree-0 term, so R/m would differ from k");
      }
    }

    // Truncation of degree <= N.
    const auto mons = monomials_up_to(n, nilpotency_);
    std::map<Exponent, Index> col;
    for (std::size_t i = 0; i < mons.size(); ++i) col[mons[i]] = static_cast<Index>(i);
    const Index ncols = static_cast<Index>(mons.size());

    std::vector<Vector<Scalar>> rows;
    for (const auto& rel : p.relations) {
      int mindeg = nilpotency_ + 1;
      for (const auto& t : rel)
        if (!is_zero(t.coeff)) mindeg = std::min(mindeg, total_degree(t.exponent));
      if (mindeg > nilpotency_) continue;
      for (const auto& u : mons) {
        if (total_degree(u) + mindeg > nilpotency_) continue;
        Vector<Scalar> row = Vector<Scalar>::Zero(ncols);
        for (const auto& t : rel) {
          Exponent prod = u;
          for (int k = 0; k < n; ++k) prod[static_cast<std::size_t>(k)] += t.exponent[static_cast<std::size_t>(k)];
          if (total_degree(prod) > nilpotency_) continue;
          row(col.at(prod)) += t.coeff;
        }
        if (!is_zero_matrix(row)) rows.push_back(std::move(row));
      }
    }
    const auto span = Subspace<Scalar>::span_vectors(rows, ncols);

    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    std::vector<Index> pivot_row(static_cast<std::size_t>(ncols), -1);
    for (std::size_t i = 0; i < span.pivots().size(); ++i) {
      is_pivot[static_cast<std::size_t>(span.pivots()[i])] = true;
      pivot_row[static_cast<std::size_t>(span.pivots()[i])] = static_cast<Index>(i);
      leading_.push_back(mons[static_cast<std::size_t>(span.pivots()[i])]);
    }
    if (is_pivot[0]) throw Error(Errc::InconsistentPresentation, "1 reduces to 0");
    for (Index c = 0; c < ncols; ++c) {
      if (total_degree(mons[static_cast<std::size_t>(c)]) == nilpotency_ && !is_pivot[static_cast<std::size_t>(c)])
        throw Error(Errc::BoundNotCertified,
                    "a monomial of degree " + std::to_string(nilpotency_) + " does not reduce to 0");
    }

    std::vector<Index> basis_col;  // column of each basis monomial
    for (Index c = 0; c < ncols; ++c) {
      if (is_pivot[static_cast<std::size_t>(c)]) continue;
      basis_col.push_back(c);
      basis_.push_back(mons[static_cast<std::size_t>(c)]);
    }
    std::vector<Index> basis_pos(static_cast<std::size_t>(ncols), -1);
    for (std::size_t i = 0; i < basis_col.size(); ++i) basis_pos[static_cast<std::size_t>(basis_col[i])] = static_cast<Index>(i);

    const Index d = dim();
    for (Index c = 0; c < ncols; ++c) {
      if (total_degree(mons[static_cast<std::size_t>(c)]) >= nilpotency_) break;
      monomial_index_[mons[static_cast<std::size_t>(c)]] = static_cast<Index>(normal_forms_.size());
      Vector<Scalar> nf = Vector<Scalar>::Zero(d);
      if (!is_pivot[static_cast<std::size_t>(c)]) {
        nf(basis_pos[static_cast<std::size_t>(c)]) = field_.make(1);
      } else {
        const Index r = pivot_row[static_cast<std::size_t>(c)];
        for (Index b = 0; b < d; ++b) nf(b) = -span.basis()(r, basis_col[static_cast<std::size_t>(b)]);
      }
      normal_forms_.push_back(std::move(nf));
    }

    mult_.assign(static_cast<std::size_t>(d), Matrix<Scalar>::Zero(d, d));
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        Exponent prod = basis_[static_cast<std::size_t>(i)];
        for (int k = 0; k < n; ++k) prod[static_cast<std::size_t>(k)] += basis_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        mult_[static_cast<std::size_t>(i)].col(j) = monomial(prod);
      }
    }
    verify();
  }

  void verify() const {
    const Index d = dim();
    if (!equal_matrices(mult_matrix(0), Matrix<Scalar>::Identity(d, d)))
      throw Error(Errc::InconsistentPresentation, "basis element 1 is not a unit");
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        // commutativity
        if (!equal_matrices(mult_matrix(i).col(j), mult_matrix(j).col(i)))
          throw Error(Errc::InconsistentPresentation, "multiplication is not commutative");
        // associativity: (b_i b_j) b_k = b_i (b_j b_k) for all k, i.e. L_{b_i b_j} = L_i L_j
        const Matrix<Scalar> lhs = left_multiplication(Vector<Scalar>(mult_matrix(i).col(j)));
        if (!equal_matrices(lhs, Matrix<Scalar>(mult_matrix(i) * mult_matrix(j))))
          throw Error(Errc::InconsistentPresentation, "multiplication is not associative");
      }
    }
    // Local: m = span{b_i : i > 0} is an ideal with m^N = 0, so every element
    // with nonzero constant term is a unit.
    for (Index i = 1; i < d; ++i) {
      for (Index j = 0; j < d; ++j)
        if (!is_zero(mult_matrix(i)(0, j)))
          throw Error(Errc::NotLocal, "the maximal ideal is not closed under multiplication");
      Matrix<Scalar> power = Matrix<Scalar>::Identity(d, d);
      for (int k = 0; k < nilpotency_; ++k) power = Matrix<Scalar>(power * mult_matrix(i));
      if (!is_zero_matrix(power)) throw Error(Errc::NotLocal, "a maximal-ideal element is not nilpotent");
    }
  }

  void check(const Vector<Scalar>& u) const {
    if (u.size() != dim()) throw Error(Errc::DimensionMismatch, "element has wrong length");
  }

  Field field_;
  std::vector<std::string> variables_;
  int nilpotency_;
  std::vector<Exponent> basis_;
  std::vector<Exponent> leading_;
  std::map<Exponent, Index> monomial_index_;
  std::vector<Vector<Scalar>> normal_forms_;
  std::vector<Matrix<Scalar>> mult_;
};

template <typename Scalar>
using AlgebraPtr = std::shared_ptr<const Algebra<Scalar>>;

// ---------------------------------------------------------------------------
// Ideals

template <typename Scalar>
class Ideal {
 public:
  Ideal() = default;
  Ideal(AlgebraPtr<Scalar> parent, Subspace<Scalar> space) : parent_(std::move(parent)), space_(std::move(space)) {
    if (space_.ambient_dim() != parent_->dim()) throw Error(Errc::DimensionMismatch, "ideal ambient dimension");
  }

  const AlgebraPtr<Scalar>& parent() const { return parent_; }
  const Algebra<Scalar>& algebra() const { return *parent_; }
  const Subspace<Scalar>& space() const { return space_; }
  const Matrix<Scalar>& basis() const { return space_.basis(); }
  Index dim() const { return space_.dim(); }
  bool is_zero() const { return space_.is_zero(); }
  bool is_unit() const { return space_.is_full(); }
  bool contains(const Ideal& o) const { return space_.contains(o.space_); }
  bool contains(const Vector<Scalar>& v) const { return space_.contains(v); }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.parent_ == b.parent_ && a.space_ == b.space_;
  }
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

 private:
  AlgebraPtr<Scalar> parent_;
  Subspace<Scalar> space_;
};

template <typename Scalar>
void require_same_parent(const AlgebraPtr<Scalar>& a, const AlgebraPtr<Scalar>& b) {
  if (a != b) throw Error(Errc::ParentMismatch, "objects belong to different algebras");
}

template <typename Scalar>
Ideal<Scalar> zero_ideal(const AlgebraPtr<Scalar>& a) {
  return Ideal<Scalar>(a, Subspace<Scalar>::zero(a->dim()));
}

template <typename Scalar>
Ideal<Scalar> unit_ideal(const AlgebraPtr<Scalar>& a) {
  return Ideal<Scalar>(a, Subspace<Scalar>::full(a->dim()));
}

/// Smallest ideal containing gens: span{b_i g}.
template <typename Scalar>
Ideal<Scalar> ideal_from_generators(const AlgebraPtr<Scalar>& a, const std::vector<Vector<Scalar>>& gens) {
  std::vector<Vector<Scalar>> vs;
  for (const auto& g : gens) {
    if (g.size() != a->dim()) throw Error(Errc::DimensionMismatch, "generator has wrong length");
    for (Index i = 0; i < a->dim(); ++i) vs.push_back(a->mult_matrix(i) * g);
  }
  return Ideal<Scalar>(a, Subspace<Scalar>::span_vectors(vs, a->dim()));
}

template <typename Scalar>
Ideal<Scalar> maximal_ideal(const AlgebraPtr<Scalar>& a) {
  std::vector<Vector<Scalar>> gens;
  for (Index i = 1; i < a->dim(); ++i) gens.push_back(a->basis_vector(i));
  return ideal_from_generators(a, gens);
}

template <typename Scalar>
Ideal<Scalar> ideal_sum(const Ideal<Scalar>& i, const Ideal<Scalar>& j) {
  require_same_parent(i.parent(), j.parent());
  return Ideal<Scalar>(i.parent(), sum(i.space(), j.space()));
}

template <typename Scalar>
Ideal<Scalar> ideal_intersection(const Ideal<Scalar>& i, const Ideal<Scalar>& j) {
  require_same_parent(i.parent(), j.parent());
  return Ideal<Scalar>(i.parent(), intersect(i.space(), j.space()));
}

/// I J, spanned by all products of basis elements.
template <typename Scalar>
Ideal<Scalar> ideal_product(const Ideal<Scalar>& i, const Ideal<Scalar>& j) {
  require_same_parent(i.parent(), j.parent());
  const auto& a = i.algebra();
  std::vector<Vector<Scalar>> vs;
  for (Index r = 0; r < i.dim(); ++r) {
    const Matrix<Scalar> l = a.left_multiplication(i.space().basis_vector(r));
    for (Index s = 0; s < j.dim(); ++s) vs.push_back(l * j.space().basis_vector(s));
  }
  return Ideal<Scalar>(i.parent(), Subspace<Scalar>::span_vectors(vs, a.dim()));
}

template <typename Scalar>
Ideal<Scalar> ideal_power(const Ideal<Scalar>& i, int e) {
  Ideal<Scalar> out = unit_ideal(i.parent());
  for (int k = 0; k < e; ++k) out = ideal_product(out, i);
  return out;
}

/// Ann_R(I) = {r | r I = 0}: kernel of the stacked maps r -> r g.
template <typename Scalar>
Ideal<Scalar> annihilator(const Ideal<Scalar>& i) {
  const auto& a = i.algebra();
  std::vector<Matrix<Scalar>> blocks;
  for (Index r = 0; r < i.dim(); ++r) blocks.push_back(a.left_multiplication(i.space().basis_vector(r)));
  if (blocks.empty()) return unit_ideal(i.parent());
  return Ideal<Scalar>(i.parent(), nullspace(vstack(blocks, a.dim())));
}

/// Ann_R Ann_R(I).
template <typename Scalar>
Ideal<Scalar> double_annihilator(const Ideal<Scalar>& i) {
  return annihilator(annihilator(i));
}

/// A minimal generating set: the reduced basis elements of I that are
/// independent modulo m I, taken in order.
template <typename Scalar>
std::vector<Vector<Scalar>> minimal_generators(const Ideal<Scalar>& i) {
  const Ideal<Scalar> mi = ideal_product(maximal_ideal(i.parent()), i);
  Subspace<Scalar> current = mi.space();
  std::vector<Vector<Scalar>> gens;
  for (Index r = 0; r < i.dim(); ++r) {
    const Vector<Scalar> v = i.space().basis_vector(r);
    if (current.contains(v)) continue;
    gens.push_back(v);
    current = sum(current, Subspace<Scalar>::span_vectors({v}, i.algebra().dim()));
  }
  return gens;
}

/// True iff I is isomorphic to R as a module: some g in I generates I and
/// has zero annihilator. Candidates: the reduced basis elements and all sums
/// of at most three of them; over small prime fields every element of I.
template <typename Scalar>
bool is_iso_to_regular(const Ideal<Scalar>& i) {
  if (i.is_zero()) return false;
  const auto& a = i.algebra();
  const Ideal<Scalar> mi = ideal_product(maximal_ideal(i.parent()), i);
  if (i.dim() - mi.dim() != 1) return false;

  auto works = [&](const Vector<Scalar>& g) {
    if (mi.contains(g)) return false;
    return nullspace(a.left_multiplication(g)).is_zero();
  };

  const Index k = i.dim();
  std::vector<Vector<Scalar>> candidates;
  for (Index r = 0; r < k; ++r) candidates.push_back(i.space().basis_vector(r));
  for (Index r = 0; r < k; ++r)
    for (Index s = r + 1; s < k; ++s) {
      candidates.push_back(i.space().basis_vector(r) + i.space().basis_vector(s));
      for (Index t = s + 1; t < k; ++t)
        candidates.push_back(i.space().basis_vector(r) + i.space().basis_vector(s) + i.space().basis_vector(t));
    }
  for (const auto& g : candidates)
    if (works(g)) return true;

  if constexpr (requires { a.field().p; }) {
    const std::uint64_t p = a.field().p;
    std::uint64_t total = 1;
    for (Index r = 0; r < k && total <= 4096; ++r) total *= p;
    if (total <= 4096) {
      for (std::uint64_t code = 1; code < total; ++code) {
        Vector<Scalar> g = a.zero();
        std::uint64_t c = code;
        for (Index r = 0; r < k; ++r, c /= p)
          if (c % p) g += a.field().element(static_cast<std::uint32_t>(c % p)) * i.space().basis_vector(r);
        if (works(g)) return true;
      }
    }
  }
  return false;
}

}  // namespace matlis
