#pragma once

// Representing operators of a symmetric bilinear form with respect to an
// inner product, their sign splits, and inner-product complements.

#include "quadext/core.hpp"

namespace quadext {

/// T with B(u, v) = G(u, T v), written in the coordinates of G and B.
struct RepresentingOperator {
  /// G^{-1} B; not symmetric in general.
  Matrix matrix;
  /// Ascending, real.
  Vector eigenvalues;
  /// Columns, G-orthonormal, matching `eigenvalues`.
  Matrix eigenvectors;
};

/// Solves B v = lambda G v through the Cholesky factor of G (reduction to a
/// symmetric standard problem, then back-substitution).
RepresentingOperator representing_operator(const InnerProduct& gram, const SymForm& b);

/// Nonnegative / negative eigenspaces of T, mapped into the ambient space of
/// `y` (whose basis defines the coordinates T acts on).
struct EigenSplit {
  Subspace nonneg;
  Subspace neg;
  Vector nonneg_eigenvalues;
  Vector neg_eigenvalues;
  double zero_tol = 0.0;
  /// Eigenvalues with |lambda| <= zero_tol.
  Eigen::Index zero_count = 0;
};

/// 1e-9 * max |lambda|.
double default_zero_tol(const RepresentingOperator& op);

/// Eigenvalues >= -zero_tol go to `nonneg`. With `zeros_negative` set, the
/// eigenvalues in [-zero_tol, zero_tol] go to `neg` instead.
EigenSplit split_eigenspaces(const RepresentingOperator& op, const Subspace& y, double zero_tol,
                             bool zeros_negative = false);
EigenSplit split_eigenspaces(const RepresentingOperator& op, const Subspace& y);

/// {z : A(z, x) = 0 for all x in sub}, orthonormal basis of dimension n - dim(sub).
Subspace orthogonal_complement(const InnerProduct& a, const Subspace& sub);

/// Orthonormal basis of s1 ∩ s2.
Subspace subspace_intersection(const Subspace& s1, const Subspace& s2);

}  // namespace quadext
