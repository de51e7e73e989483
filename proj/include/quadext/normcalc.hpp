#pragma once

// Norm of a 2-polynomial with respect to the two-ellipsoid norm.
//
// By homogeneity ||P|| <= c iff |P(x)| <= c * max(A1(x), A2(x)) for all x,
// and for two ellipsoids that pointwise bound is equivalent to the pair of
// pencils c*A_alpha - B and c*A_beta + B being PSD for some alpha, beta.
// Feasibility is monotone in c, so the norm is found by bisection.

#include "quadext/core.hpp"
#include "quadext/pencil.hpp"

namespace quadext {

/// Relative bracket width at which the bisection stops.
inline constexpr double kNormRelTol = 1e-8;
inline constexpr int kNormMaxIterations = 200;

struct NormResult {
  /// Feasible end of the final bracket; within kNormRelTol of the true norm.
  double value = 0.0;
  /// Certificate for value * A1, value * A2 against B.
  SandwichCertificate certificate;
  /// Point with |B(x)| close to value and max-norm 1.
  Vector lower_witness;
  int iterations = 0;
};

/// Both pencils c*A_alpha - B and c*A_beta + B admit a parameter with
/// lambda_min >= -tol.
bool sandwich_feasible(const SymForm& b, const SymForm& a1, const SymForm& a2, double c, double tol = kPencilTol);

/// max |generalized eigenvalue| of (B, A): the norm of B when the unit ball is
/// the single ellipsoid {A(x) <= 1}.
double single_ellipsoid_norm(const SymForm& b, const SymForm& a);

/// |B(x)| / max(A1(x), A2(x)) for x != 0.
double norm_ratio(const SymForm& b, const SymForm& a1, const SymForm& a2, const Vector& x);

/// Throws NotPositiveDefinite if A1 or A2 fails the definiteness gate.
NormResult polynomial_norm(const SymForm& b, const SymForm& a1, const SymForm& a2, double tol = kPencilTol);

/// Norm of P on its subspace, which is the two-ellipsoid norm built from the
/// restricted Gram matrices. The witness is returned in ambient coordinates.
NormResult norm_on_subspace(const QuadOnSubspace& p, const TwoEllipsoidSpace& space, double tol = kPencilTol);

}  // namespace quadext
