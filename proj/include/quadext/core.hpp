#pragma once

// Data model shared by every module: symmetric forms, inner products,
// the two-ellipsoid space and subspaces of it.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace quadext {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ErrorKind {
  invalid_input,
  not_positive_definite,
  infeasible,
  hypothesis_violated,
  degenerate_z,
  verification_failure,
  internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(ErrorKind::invalid_input, what) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what)
      : Error(ErrorKind::not_positive_definite, what) {}
};

/// Relative threshold used for both the positive-definiteness gate and the
/// rank gate on subspace bases.
inline constexpr double kRankTolerance = 1e-10;

/// A real symmetric n x n matrix standing for a 2-polynomial x -> x^T B x.
/// Any square input is replaced by its symmetric part.
class SymForm {
 public:
  explicit SymForm(const Matrix& m);

  static SymForm zero(Eigen::Index n);
  static SymForm identity(Eigen::Index n);
  static SymForm diagonal(const Vector& d);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  SymForm operator-() const { return SymForm(-m_); }
  SymForm scaled(double t) const { return SymForm(t * m_); }

  friend SymForm operator+(const SymForm& a, const SymForm& b);
  friend SymForm operator-(const SymForm& a, const SymForm& b);

 private:
  struct Trusted {};
  SymForm(Matrix m, Trusted) : m_(std::move(m)) {}
  Matrix m_;
};

/// Positive-definite form; the smallest eigenvalue is kept as a witness.
class InnerProduct {
 public:
  explicit InnerProduct(SymForm form);

  Eigen::Index dim() const { return form_.dim(); }
  const SymForm& form() const { return form_; }
  const Matrix& matrix() const { return form_.matrix(); }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  SymForm form_;
  double min_eigenvalue_;
};

/// R^n normed by sqrt(max(pi1(x,x), pi2(x,x))).
class TwoEllipsoidSpace {
 public:
  TwoEllipsoidSpace(InnerProduct pi1, InnerProduct pi2);

  Eigen::Index dim() const { return pi1_.dim(); }
  const InnerProduct& pi1() const { return pi1_; }
  const InnerProduct& pi2() const { return pi2_; }

 private:
  InnerProduct pi1_;
  InnerProduct pi2_;
};

/// Span of the rows of a k x n basis matrix. Zero-dimensional subspaces
/// (k = 0) are representable; intersections and eigenspace splits need them.
class Subspace {
 public:
  /// Throws InvalidInput if the rows are not linearly independent.
  explicit Subspace(Matrix basis);
  Subspace(Eigen::Index ambient, Matrix basis);

  static Subspace zero(Eigen::Index n);
  static Subspace whole(Eigen::Index n);

  Eigen::Index ambient_dim() const { return n_; }
  Eigen::Index dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }

  /// Same span, Euclidean-orthonormal rows.
  Subspace orthonormalized() const;

  /// Coordinates of the Euclidean projection of x onto the span, in this basis.
  Matrix coordinate_map() const;

  /// Euclidean distance from x to the span.
  double distance(const Vector& x) const;

 private:
  Eigen::Index n_;
  Matrix basis_;
};

/// A 2-polynomial on a subspace, written in the subspace's basis coordinates.
class QuadOnSubspace {
 public:
  QuadOnSubspace(Subspace subspace, SymForm form);

  const Subspace& subspace() const { return subspace_; }
  const SymForm& form() const { return form_; }

 private:
  Subspace subspace_;
  SymForm form_;
};

double evaluate_form(const SymForm& b, const Vector& x);

double max_norm(const TwoEllipsoidSpace& space, const Vector& x);

/// U A U^T for U = sub.basis().
SymForm gram_restrict(const SymForm& a, const Subspace& sub);

/// n x n form x -> bk(coords(projector * x)), where coords maps the range of
/// the projector into the basis coordinates of `sub`.
SymForm embed_form(const SymForm& bk, const Subspace& sub, const Matrix& projector);

// Small dense helpers used across modules.

double min_eigenvalue(const Matrix& symmetric);
double max_abs_eigenvalue(const Matrix& symmetric);

/// Orthonormal basis (as rows) of {x : m x = 0}, with singular values at or
/// below kRankTolerance * (largest) treated as zero.
Matrix nullspace_rows(const Matrix& m);

/// Rank of m under the same relative singular-value threshold.
Eigen::Index numerical_rank(const Matrix& m, double rel_tol = kRankTolerance);

}  // namespace quadext
