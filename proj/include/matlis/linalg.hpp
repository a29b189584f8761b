#pragma once

// Exact dense linear algebra over a field: reduced row echelon form, kernels,
// images, preimages and a canonical Subspace type.
//
// Subspaces of k^n are stored as the nonzero rows of their reduced row
// echelon form. Pivots are chosen at the smallest available column, so two
// subspaces are equal iff their stored matrices are identical.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "matlis/error.hpp"
#include "matlis/scalar.hpp"

namespace matlis {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> rows;         // nonzero rows only
  std::vector<Index> pivots;   // pivot column of each row, increasing
};

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <typename DerivedA, typename DerivedB>
bool equal_matrices(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

/// Gauss-Jordan elimination. Zero entries are skipped, which matters for
/// rationals where every operation allocates.
template <typename Scalar>
Echelon<Scalar> row_reduce(Matrix<Scalar> m) {
  const Index nrows = m.rows();
  const Index ncols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < ncols && r < nrows; ++c) {
    Index p = r;
    while (p < nrows && is_zero(m(p, c))) ++p;
    if (p == nrows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = m(r, c).inverse();
    for (Index j = c; j < ncols; ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (Index i = 0; i < nrows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const Scalar f = m(i, c);
      for (Index j = c; j < ncols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {Matrix<Scalar>(m.topRows(r)), std::move(pivots)};
}

template <typename Scalar>
Index rank(const Matrix<Scalar>& m) {
  return static_cast<Index>(row_reduce(m).pivots.size());
}

template <typename Scalar>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index n) { return Subspace(Matrix<Scalar>(0, n), {}); }

  static Subspace full(Index n) {
    return span_rows(Matrix<Scalar>(Matrix<Scalar>::Identity(n, n)));
  }

  /// Span of the rows of `rows` (ambient dimension = rows.cols()).
  static Subspace span_rows(const Matrix<Scalar>& rows) {
    auto e = row_reduce(rows);
    return Subspace(std::move(e.rows), std::move(e.pivots));
  }

  /// Span of the columns of `cols` (ambient dimension = cols.rows()).
  static Subspace span_columns(const Matrix<Scalar>& cols) {
    return span_rows(Matrix<Scalar>(cols.transpose()));
  }

  static Subspace span_vectors(const std::vector<Vector<Scalar>>& vs, Index n) {
    Matrix<Scalar> rows(static_cast<Index>(vs.size()), n);
    for (Index i = 0; i < rows.rows(); ++i) rows.row(i) = vs[static_cast<std::size_t>(i)].transpose();
    return span_rows(rows);
  }

  Index dim() const { return basis_.rows(); }
  Index ambient_dim() const { return basis_.cols(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  /// Basis vectors as rows, reduced echelon form.
  const Matrix<Scalar>& basis() const { return basis_; }
  Vector<Scalar> basis_vector(Index i) const { return basis_.row(i).transpose(); }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// Column indices that are not pivots; the unit vectors at these indices
  /// span a complement.
  std::vector<Index> free_columns() const {
    std::vector<Index> out;
    std::size_t k = 0;
    for (Index c = 0; c < ambient_dim(); ++c) {
      if (k < pivots_.size() && pivots_[k] == c) {
        ++k;
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  /// v minus its component in the span; zero at every pivot column.
  Vector<Scalar> reduce(Vector<Scalar> v) const {
    check_ambient(v.size());
    for (Index i = 0; i < dim(); ++i) {
      const Scalar f = v(pivots_[static_cast<std::size_t>(i)]);
      if (matlis::is_zero(f)) continue;
      for (Index j = 0; j < ambient_dim(); ++j)
        if (!matlis::is_zero(basis_(i, j))) v(j) -= f * basis_(i, j);
    }
    return v;
  }

  bool contains(const Vector<Scalar>& v) const { return is_zero_matrix(reduce(v)); }

  bool contains(const Subspace& o) const {
    check_ambient(o.ambient_dim());
    if (o.dim() > dim()) return false;
    for (Index i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_vector(i))) return false;
    return true;
  }

  /// Coordinates of a vector known to lie in the span, w.r.t. basis().
  Vector<Scalar> coordinates(const Vector<Scalar>& v) const {
    Vector<Scalar> c(dim());
    for (Index i = 0; i < dim(); ++i) c(i) = v(pivots_[static_cast<std::size_t>(i)]);
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.pivots_ == b.pivots_ && equal_matrices(a.basis_, b.basis_);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Subspace(Matrix<Scalar> basis, std::vector<Index> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  void check_ambient(Index n) const {
    if (n != ambient_dim())
      throw Error(Errc::DimensionMismatch, "vector of length " + std::to_string(n) +
                                               " in ambient dimension " + std::to_string(ambient_dim()));
  }

  Matrix<Scalar> basis_;
  std::vector<Index> pivots_;
};

/// {x | a x = 0}
template <typename Scalar>
Subspace<Scalar> nullspace(const Matrix<Scalar>& a) {
  const Index n = a.cols();
  const auto e = row_reduce(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector<Scalar>> vs;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<Scalar> v = Vector<Scalar>::Zero(n);
    v(f) = Scalar(1);
    for (Index i = 0; i < e.rows.rows(); ++i) v(e.pivots[static_cast<std::size_t>(i)]) = -e.rows(i, f);
    vs.push_back(std::move(v));
  }
  return Subspace<Scalar>::span_vectors(vs, n);
}

/// Column space of a.
template <typename Scalar>
Subspace<Scalar> image(const Matrix<Scalar>& a) {
  return Subspace<Scalar>::span_columns(a);
}

/// a(U)
template <typename Scalar>
Subspace<Scalar> image(const Matrix<Scalar>& a, const Subspace<Scalar>& u) {
  if (a.cols() != u.ambient_dim()) throw Error(Errc::DimensionMismatch, "image: size mismatch");
  return Subspace<Scalar>::span_rows(Matrix<Scalar>(u.basis() * a.transpose()));
}

/// Annihilator of U under the standard pairing: {w | <w, u> = 0 for u in U}.
template <typename Scalar>
Subspace<Scalar> orthogonal_complement(const Subspace<Scalar>& u) {
  return nullspace(u.basis());
}

template <typename Scalar>
Subspace<Scalar> sum(const Subspace<Scalar>& u, const Subspace<Scalar>& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(Errc::DimensionMismatch, "sum: ambient mismatch");
  Matrix<Scalar> stacked(u.dim() + v.dim(), u.ambient_dim());
  stacked << u.basis(), v.basis();
  return Subspace<Scalar>::span_rows(stacked);
}

template <typename Scalar>
Subspace<Scalar> intersect(const Subspace<Scalar>& u, const Subspace<Scalar>& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(Errc::DimensionMismatch, "intersect: ambient mismatch");
  if (u.contains(v)) return v;
  if (v.contains(u)) return u;
  return orthogonal_complement(sum(orthogonal_complement(u), orthogonal_complement(v)));
}

/// {x | a x in W}
template <typename Scalar>
Subspace<Scalar> preimage(const Matrix<Scalar>& a, const Subspace<Scalar>& w) {
  if (a.rows() != w.ambient_dim()) throw Error(Errc::DimensionMismatch, "preimage: size mismatch");
  const auto perp = orthogonal_complement(w);
  return nullspace(Matrix<Scalar>(perp.basis() * a));
}

/// One solution of a x = b, if any.
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  if (a.rows() != b.size()) throw Error(Errc::DimensionMismatch, "solve: size mismatch");
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const auto e = row_reduce(aug);
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (Index i = 0; i < e.rows.rows(); ++i) {
    const Index p = e.pivots[static_cast<std::size_t>(i)];
    if (p == a.cols()) return std::nullopt;
    x(p) = e.rows(i, a.cols());
  }
  return x;
}

/// Vertical stack of equally wide blocks.
template <typename Scalar>
Matrix<Scalar> vstack(const std::vector<Matrix<Scalar>>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix<Scalar> out(rows, cols);
  Index r = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error(Errc::DimensionMismatch, "vstack: width mismatch");
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

}  // namespace matlis
