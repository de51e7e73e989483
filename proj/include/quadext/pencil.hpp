#pragma once

// One-parameter symmetric pencils alpha*M1 + (1-alpha)*M0 on [0,1]. The
// smallest eigenvalue is concave in alpha, so the set where the pencil is
// positive semidefinite is a closed interval found by a 1-D search.

#include "quadext/core.hpp"

#include <functional>

namespace quadext {

inline constexpr double kPencilTol = 1e-9;

class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, double best_min_eig)
      : Error(ErrorKind::infeasible, what), best_min_eig_(best_min_eig) {}
  double best_min_eig() const { return best_min_eig_; }

 private:
  double best_min_eig_;
};

class HypothesisViolated : public Error {
 public:
  HypothesisViolated(const std::string& what, double sweep_min, bool upper_side)
      : Error(ErrorKind::hypothesis_violated, what), sweep_min_(sweep_min), upper_side_(upper_side) {}
  /// Largest smallest-eigenvalue reached along the failing pencil.
  double sweep_min() const { return sweep_min_; }
  /// True when the alpha (upper) pencil failed, false for the beta pencil.
  bool upper_side() const { return upper_side_; }

 private:
  double sweep_min_;
  bool upper_side_;
};

struct FeasibleInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
  /// Largest smallest-eigenvalue found along the pencil, with its argument.
  double best_alpha = 0.0;
  double best_value = 0.0;

  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double a) const { return !empty && a >= lo && a <= hi; }
};

struct SandwichCertificate {
  double alpha = 0.5;
  double beta = 0.5;
};

struct ConcaveMax {
  double argmax = 0.0;
  double value = 0.0;
};

/// lambda_min(alpha * m1 + (1 - alpha) * m0).
double pencil_min_eig(const SymForm& m0, const SymForm& m1, double alpha);

/// Golden-section search on [0,1] down to bracket width `tol`; the endpoints
/// are probed as well so boundary maxima are returned exactly.
ConcaveMax maximize_concave_on_unit_interval(const std::function<double(double)>& f, double tol = 1e-10);

/// Alpha in [0,1] with alpha*P + (1-alpha)*Q positive semidefinite up to tol.
/// Throws Infeasible when no such alpha exists numerically.
double lemma_a_combination(const SymForm& p, const SymForm& q, double tol = kPencilTol);

/// Grid test of max(P(x), Q(x)) >= 0 on the unit circle, refined near the
/// grid minimum. P and Q must be 2 x 2.
bool check_pointwise_max(const SymForm& p, const SymForm& q, int grid = 720, double tol = kPencilTol);

/// {alpha in [0,1] : lambda_min(alpha*A1 + (1-alpha)*A2 - B) >= -tol}.
FeasibleInterval psd_interval(const SymForm& a1, const SymForm& a2, const SymForm& b, double tol = kPencilTol);

/// Alpha, beta with -(beta*A1 + (1-beta)*A2) <= B <= alpha*A1 + (1-alpha)*A2.
/// Each is the midpoint of its feasible interval. Throws HypothesisViolated
/// when either interval is empty.
SandwichCertificate dominating_combination(const SymForm& a1, const SymForm& a2, const SymForm& b,
                                           double tol = kPencilTol);

/// Smallest eigenvalues of the two pencils a certificate claims are PSD:
/// (upper, lower) = (lambda_min(A_alpha - B), lambda_min(A_beta + B)).
std::pair<double, double> certificate_margins(const SymForm& a1, const SymForm& a2, const SymForm& b,
                                              const SandwichCertificate& cert);

}  // namespace quadext
