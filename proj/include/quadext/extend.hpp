#pragma once

// Norm-preserving extension of a 2-polynomial from a subspace Y to the whole
// two-ellipsoid space.
//
// One hyperplane step: with P of norm 1 on Y, take alpha, beta such that
// -(A_beta) <= P <= A_alpha on Y and use A_alpha, A_beta as the new pair of
// inner products. Split Y by the signs of the operators representing P under
// each of them (Y1/Y2 for A_alpha, Y3/Y4 for A_beta), and pick z orthogonal
// to Y1 under A_alpha and to Y4 under A_beta. Then x -> P(x - phi(x)/phi(z) z)
// extends P without increasing its norm. Larger codimensions are handled by
// walking a flag of subspaces one dimension at a time.

#include "quadext/core.hpp"
#include "quadext/normcalc.hpp"
#include "quadext/pencil.hpp"
#include "quadext/spectral.hpp"

#include <utility>
#include <vector>

namespace quadext {

struct ExtendOptions {
  double tol = kPencilTol;
  /// Minimum |phi(z)| / (|phi| |z|) accepted for the projection direction.
  double z_tol = 1e-8;
  /// Assign numerically zero eigenvalues to the negative side of each split.
  bool zeros_negative = false;
};

class DegenerateZ : public Error {
 public:
  DegenerateZ(const std::string& what, double phi_z, Eigen::Index zero_eigs1, Eigen::Index zero_eigs2)
      : Error(ErrorKind::degenerate_z, what), phi_z_(phi_z), zero_eigs1_(zero_eigs1), zero_eigs2_(zero_eigs2) {}
  /// Best |phi(z)| / |phi| over unit z in the intersection.
  double phi_z() const { return phi_z_; }
  Eigen::Index zero_eigs1() const { return zero_eigs1_; }
  Eigen::Index zero_eigs2() const { return zero_eigs2_; }

 private:
  double phi_z_;
  Eigen::Index zero_eigs1_;
  Eigen::Index zero_eigs2_;
};

struct HyperplaneStep {
  TwoEllipsoidSpace ambient;
  Subspace y;
  Vector phi;
  Vector z;
  Matrix projector;
  SandwichCertificate renorm;
  InnerProduct renorm1;
  InnerProduct renorm2;
  RepresentingOperator op1;
  RepresentingOperator op2;
  /// Y1 (nonneg) / Y2 (neg) under renorm1, Y3 / Y4 under renorm2.
  EigenSplit split1;
  EigenSplit split2;
  Subspace m1;
  Subspace m2;
  Eigen::Index intersection_dim;
};

struct StepSummary {
  Eigen::Index dim = 0;
  double scale = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double phi_z = 0.0;
  Eigen::Index dim_y1 = 0;
  Eigen::Index dim_y2 = 0;
  Eigen::Index dim_y3 = 0;
  Eigen::Index dim_y4 = 0;
  Eigen::Index dim_m1 = 0;
  Eigen::Index dim_m2 = 0;
  Eigen::Index intersection_dim = 0;
};

struct ExtensionReport {
  SymForm extended;
  NormResult original_norm;
  NormResult extended_norm;
  std::vector<StepSummary> steps;
  double agreement_residual = 0.0;

  bool agreement_ok() const { return agreement_residual <= 1e-9; }
  bool norm_preserved() const {
    return extended_norm.value <= original_norm.value * (1.0 + 1e-6) + 1e-9;
  }
  bool invariants_hold() const { return agreement_ok() && norm_preserved(); }
};

class VerificationFailure : public Error {
 public:
  VerificationFailure(const std::string& what, ExtensionReport report)
      : Error(ErrorKind::verification_failure, what), report_(std::move(report)) {}
  const ExtensionReport& report() const { return report_; }

 private:
  ExtensionReport report_;
};

/// A_alpha and A_beta on the ambient space. Throws InvalidInput when the
/// certificate does not sandwich P on Y.
std::pair<InnerProduct, InnerProduct> renormalize(const TwoEllipsoidSpace& space, const QuadOnSubspace& p,
                                                  const SandwichCertificate& cert, double tol = kPencilTol);

/// Unit z in m1 ∩ m2 maximizing |phi(z)|, with phi(z) > 0.
Vector find_z(const Subspace& m1, const Subspace& m2, const Vector& phi, double tol = 1e-8);

/// P must have norm <= 1 on Y and Y must be a hyperplane.
std::pair<SymForm, HyperplaneStep> extend_hyperplane(const TwoEllipsoidSpace& space, const QuadOnSubspace& p,
                                                     const ExtendOptions& options = {});

/// Nested subspaces Y = W_k ⊂ ... ⊂ W_n = R^n with Euclidean-orthonormal
/// bases, each extending the previous one by one row.
std::vector<Subspace> build_flag(const Subspace& y, Eigen::Index n);

/// Throws VerificationFailure (carrying the report) if the final invariants
/// do not hold, DegenerateZ if a step has no usable direction.
ExtensionReport extend(const TwoEllipsoidSpace& space, const QuadOnSubspace& p, const ExtendOptions& options = {});

}  // namespace quadext
