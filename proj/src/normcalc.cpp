#include "quadext/normcalc.hpp"

#include "quadext/verify.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace quadext {

namespace {

constexpr int kBracketSamples = 256;
constexpr std::uint64_t kBracketSeed = 0x9e3779b97f4a7c15ULL;

// Problem rescaled so that ||B||_2 = 1 and max lambda_max(A_i) = 1; the true
// norm is `factor` times the norm of the rescaled problem.
struct Normalized {
  Matrix b;
  Matrix a1;
  Matrix a2;
  double factor;
};

struct SideMax {
  double alpha;
  double value;
};

SideMax side_max(const Normalized& pr, double c, double sign) {
  const Matrix m1 = c * pr.a1 - sign * pr.b;
  const Matrix m0 = c * pr.a2 - sign * pr.b;
  const ConcaveMax top = maximize_concave_on_unit_interval(
      [&](double a) { return min_eigenvalue(a * m1 + (1.0 - a) * m0); }, 1e-10);
  return {top.argmax, top.value};
}

bool feasible_at(const Normalized& pr, double c, double tol) {
  return side_max(pr, c, 1.0).value >= -tol && side_max(pr, c, -1.0).value >= -tol;
}

double ratio(const Matrix& b, const Matrix& a1, const Matrix& a2, const Vector& x) {
  const double den = std::max(x.dot(a1 * x), x.dot(a2 * x));
  return den > 0.0 ? std::abs(x.dot(b * x)) / den : 0.0;
}

// Searches the low eigenvectors of the two optimal pencils at scale c. At the
// norm, the binding pencil is singular and its null directions (or a
// combination of two of them when lambda_min is multiple) attain the norm.
Vector witness_search(const Normalized& pr, double c, const Vector& seed_point) {
  Vector best = seed_point;
  double best_ratio = ratio(pr.b, pr.a1, pr.a2, best);
  const auto consider = [&](const Vector& x) {
    const double r = ratio(pr.b, pr.a1, pr.a2, x);
    if (r > best_ratio) {
      best_ratio = r;
      best = x;
    }
  };

  for (double sign : {1.0, -1.0}) {
    const SideMax top = side_max(pr, c, sign);
    const Matrix pencil = c * (top.alpha * pr.a1 + (1.0 - top.alpha) * pr.a2) - sign * pr.b;
    Eigen::SelfAdjointEigenSolver<Matrix> es(pencil);
    const Matrix& v = es.eigenvectors();
    consider(v.col(0));
    if (v.cols() < 2) continue;
    const Vector v0 = v.col(0);
    const Vector v1 = v.col(1);
    const auto along = [&](double theta) -> Vector { return std::cos(theta) * v0 + std::sin(theta) * v1; };
    constexpr int kGrid = 360;
    const double step = std::numbers::pi / kGrid;
    int arg = 0;
    double top_ratio = -1.0;
    for (int i = 0; i < kGrid; ++i) {
      const double r = ratio(pr.b, pr.a1, pr.a2, along(i * step));
      if (r > top_ratio) {
        top_ratio = r;
        arg = i;
      }
    }
    const double left = (arg - 1) * step;
    const ConcaveMax refined = maximize_concave_on_unit_interval(
        [&](double t) { return ratio(pr.b, pr.a1, pr.a2, along(left + 2.0 * step * t)); }, 1e-12);
    consider(along(left + 2.0 * step * refined.argmax));
    consider(along(arg * step));
  }
  return best;
}

Vector unit_in_max_norm(const Vector& x, const SymForm& a1, const SymForm& a2) {
  const double s = std::sqrt(std::max(evaluate_form(a1, x), evaluate_form(a2, x)));
  return s > 0.0 ? Vector(x / s) : x;
}

}  // namespace

bool sandwich_feasible(const SymForm& b, const SymForm& a1, const SymForm& a2, double c, double tol) {
  if (b.dim() != a1.dim() || b.dim() != a2.dim()) throw InvalidInput("sandwich_feasible: dimension mismatch");
  if (!(c > 0.0)) throw InvalidInput("sandwich_feasible: scale must be positive");
  const SymForm ca1 = a1.scaled(c);
  const SymForm ca2 = a2.scaled(c);
  return !psd_interval(ca1, ca2, b, tol).empty && !psd_interval(ca1, ca2, -b, tol).empty;
}

double single_ellipsoid_norm(const SymForm& b, const SymForm& a) {
  if (b.dim() != a.dim()) throw InvalidInput("single_ellipsoid_norm: dimension mismatch");
  Eigen::LLT<Matrix> llt(a.matrix());
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("single_ellipsoid_norm: A is not positive definite");
  const Matrix lb = llt.matrixL().solve(b.matrix());
  const Matrix reduced = llt.matrixL().solve(lb.transpose());
  return max_abs_eigenvalue(0.5 * (reduced + reduced.transpose()));
}

double norm_ratio(const SymForm& b, const SymForm& a1, const SymForm& a2, const Vector& x) {
  if (x.size() != b.dim()) throw InvalidInput("norm_ratio: dimension mismatch");
  return ratio(b.matrix(), a1.matrix(), a2.matrix(), x);
}

NormResult polynomial_norm(const SymForm& b, const SymForm& a1, const SymForm& a2, double tol) {
  if (b.dim() != a1.dim() || b.dim() != a2.dim()) throw InvalidInput("polynomial_norm: dimension mismatch");
  const InnerProduct ip1(a1);
  const InnerProduct ip2(a2);
  const Eigen::Index n = b.dim();

  NormResult result;
  const double b_fro = b.matrix().norm();
  const double a_fro = 0.5 * (a1.matrix().norm() + a2.matrix().norm());
  if (b_fro <= 1e-12 * a_fro) {
    result.lower_witness = unit_in_max_norm(Vector::Unit(n, 0), a1, a2);
    return result;
  }

  const double b_scale = max_abs_eigenvalue(b.matrix());
  const double a_scale = std::max(max_abs_eigenvalue(a1.matrix()), max_abs_eigenvalue(a2.matrix()));
  const Normalized pr{b.matrix() / b_scale, a1.matrix() / a_scale, a2.matrix() / a_scale, b_scale / a_scale};

  const SymForm nb(pr.b);
  const SymForm na1(pr.a1);
  const SymForm na2(pr.a2);
  double hi = std::min(single_ellipsoid_norm(nb, na1), single_ellipsoid_norm(nb, na2));
  const SampledBound sampled =
      sample_norm_lower_bound(nb, InnerProduct(na1), InnerProduct(na2), kBracketSamples, kBracketSeed);
  double lo = std::min(sampled.value, hi) * (1.0 - 1e-6);

  // Bisection keeps hi feasible and lo infeasible; decisions use the exact
  // sign of the pencil margin so the bracket is not blurred by tol.
  int guard = 0;
  while (!feasible_at(pr, hi, 0.0)) {
    hi *= 1.0 + 1e-9 * (1 << std::min(guard, 20));
    if (++guard > 60) throw Error(ErrorKind::internal, "polynomial_norm: upper bound is not feasible");
  }
  guard = 0;
  while (lo > 0.0 && feasible_at(pr, lo, 0.0)) {
    hi = lo;
    lo *= 0.5;
    if (++guard > 60) throw Error(ErrorKind::internal, "polynomial_norm: lower bound is feasible");
  }

  int it = 0;
  while (hi - lo > kNormRelTol * hi) {
    if (++it > kNormMaxIterations) {
      std::ostringstream os;
      os << "polynomial_norm: bisection did not converge, bracket [" << lo << ", " << hi << "]";
      throw Error(ErrorKind::internal, os.str());
    }
    const double mid = 0.5 * (lo + hi);
    if (feasible_at(pr, mid, 0.0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  result.value = hi * pr.factor;
  result.iterations = it;
  try {
    result.certificate = dominating_combination(na1.scaled(hi), na2.scaled(hi), nb, tol);
  } catch (const HypothesisViolated& e) {
    throw Error(ErrorKind::internal, std::string("polynomial_norm: no certificate at the feasible bound: ") + e.what());
  }
  result.lower_witness = unit_in_max_norm(witness_search(pr, hi, sampled.witness), a1, a2);
  return result;
}

NormResult norm_on_subspace(const QuadOnSubspace& p, const TwoEllipsoidSpace& space, double tol) {
  const Subspace& y = p.subspace();
  if (y.ambient_dim() != space.dim()) throw InvalidInput("norm_on_subspace: subspace and space differ in dimension");
  const SymForm g1 = gram_restrict(space.pi1().form(), y);
  const SymForm g2 = gram_restrict(space.pi2().form(), y);
  NormResult r = polynomial_norm(p.form(), g1, g2, tol);
  const Vector ambient = y.basis().transpose() * r.lower_witness;
  r.lower_witness = unit_in_max_norm(ambient, space.pi1().form(), space.pi2().form());
  return r;
}

}  // namespace quadext
