#include "quadext/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace quadext {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::not_positive_definite: return "not-positive-definite";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::hypothesis_violated: return "hypothesis-violated";
    case ErrorKind::degenerate_z: return "degenerate-z";
    case ErrorKind::verification_failure: return "verification-failure";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

// ---------------------------------------------------------------- SymForm

SymForm::SymForm(const Matrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << "SymForm: expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(os.str());
  }
  if (!m.allFinite()) throw InvalidInput("SymForm: non-finite entry");
  m_ = 0.5 * (m + m.transpose());
}

SymForm SymForm::zero(Eigen::Index n) { return SymForm(Matrix::Zero(n, n)); }
SymForm SymForm::identity(Eigen::Index n) { return SymForm(Matrix::Identity(n, n)); }
SymForm SymForm::diagonal(const Vector& d) { return SymForm(Matrix(d.asDiagonal())); }

SymForm operator+(const SymForm& a, const SymForm& b) {
  if (a.dim() != b.dim()) throw InvalidInput("SymForm: dimension mismatch in sum");
  return SymForm(a.m_ + b.m_, SymForm::Trusted{});
}

SymForm operator-(const SymForm& a, const SymForm& b) {
  if (a.dim() != b.dim()) throw InvalidInput("SymForm: dimension mismatch in difference");
  return SymForm(a.m_ - b.m_, SymForm::Trusted{});
}

// ----------------------------------------------------------- InnerProduct

InnerProduct::InnerProduct(SymForm form) : form_(std::move(form)) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(form_.matrix(), Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (!(hi > 0.0) || !(lo > kRankTolerance * hi)) {
    std::ostringstream os;
    os << "inner product is not positive definite (eigenvalues in [" << lo << ", " << hi << "])";
    throw NotPositiveDefinite(os.str());
  }
  min_eigenvalue_ = lo;
}

TwoEllipsoidSpace::TwoEllipsoidSpace(InnerProduct pi1, InnerProduct pi2)
    : pi1_(std::move(pi1)), pi2_(std::move(pi2)) {
  if (pi1_.dim() != pi2_.dim()) throw InvalidInput("TwoEllipsoidSpace: pi1 and pi2 differ in dimension");
}

// --------------------------------------------------------------- Subspace

Subspace::Subspace(Matrix basis) : Subspace(basis.cols(), Matrix(basis)) {}

Subspace::Subspace(Eigen::Index ambient, Matrix basis) : n_(ambient), basis_(std::move(basis)) {
  if (n_ < 1) throw InvalidInput("Subspace: ambient dimension must be positive");
  if (basis_.rows() == 0) {
    basis_.resize(0, n_);
    return;
  }
  if (basis_.cols() != n_) throw InvalidInput("Subspace: basis width does not match ambient dimension");
  if (basis_.rows() > n_) throw InvalidInput("Subspace: more basis vectors than ambient dimension");
  if (!basis_.allFinite()) throw InvalidInput("Subspace: non-finite basis entry");
  if (numerical_rank(basis_) < basis_.rows()) throw InvalidInput("Subspace: basis is rank deficient");
}

Subspace Subspace::zero(Eigen::Index n) { return Subspace(n, Matrix(0, n)); }
Subspace Subspace::whole(Eigen::Index n) { return Subspace(n, Matrix::Identity(n, n)); }

Subspace Subspace::orthonormalized() const {
  if (dim() == 0) return *this;
  Eigen::HouseholderQR<Matrix> qr(basis_.transpose());
  Matrix q = qr.householderQ() * Matrix::Identity(n_, dim());
  return Subspace(n_, q.transpose());
}

Matrix Subspace::coordinate_map() const {
  if (dim() == 0) return Matrix(0, n_);
  const Matrix gram = basis_ * basis_.transpose();
  return gram.llt().solve(basis_);
}

double Subspace::distance(const Vector& x) const {
  if (x.size() != n_) throw InvalidInput("Subspace::distance: dimension mismatch");
  if (dim() == 0) return x.norm();
  return (x - basis_.transpose() * (coordinate_map() * x)).norm();
}

QuadOnSubspace::QuadOnSubspace(Subspace subspace, SymForm form)
    : subspace_(std::move(subspace)), form_(std::move(form)) {
  if (subspace_.dim() == 0) throw InvalidInput("QuadOnSubspace: subspace must be non-trivial");
  if (form_.dim() != subspace_.dim())
    throw InvalidInput("QuadOnSubspace: form dimension does not match subspace dimension");
}

// ------------------------------------------------------------- operations

double evaluate_form(const SymForm& b, const Vector& x) {
  if (x.size() != b.dim()) throw InvalidInput("evaluate_form: dimension mismatch");
  return x.dot(b.matrix() * x);
}

double max_norm(const TwoEllipsoidSpace& space, const Vector& x) {
  if (x.size() != space.dim()) throw InvalidInput("max_norm: dimension mismatch");
  const double q1 = evaluate_form(space.pi1().form(), x);
  const double q2 = evaluate_form(space.pi2().form(), x);
  return std::sqrt(std::max({q1, q2, 0.0}));
}

SymForm gram_restrict(const SymForm& a, const Subspace& sub) {
  if (a.dim() != sub.ambient_dim()) throw InvalidInput("gram_restrict: dimension mismatch");
  if (sub.dim() == 0) throw InvalidInput("gram_restrict: zero-dimensional subspace");
  const Matrix& u = sub.basis();
  return SymForm(u * a.matrix() * u.transpose());
}

SymForm embed_form(const SymForm& bk, const Subspace& sub, const Matrix& projector) {
  const Eigen::Index n = sub.ambient_dim();
  if (bk.dim() != sub.dim()) throw InvalidInput("embed_form: form does not match subspace dimension");
  if (projector.rows() != n || projector.cols() != n)
    throw InvalidInput("embed_form: projector must be n x n");
  const Matrix coords = sub.coordinate_map() * projector;
  return SymForm(coords.transpose() * bk.matrix() * coords);
}

double min_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_abs_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::Index numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return r;
}

Matrix nullspace_rows(const Matrix& m) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    while (r < s.size() && s(r) > kRankTolerance * s(0)) ++r;
  }
  return svd.matrixV().rightCols(n - r).transpose();
}

}  // namespace quadext
