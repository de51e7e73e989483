#include "quadext/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <vector>

namespace quadext {

RepresentingOperator representing_operator(const InnerProduct& gram, const SymForm& b) {
  if (gram.dim() != b.dim()) throw InvalidInput("representing_operator: dimension mismatch");
  Eigen::LLT<Matrix> llt(gram.matrix());
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("representing_operator: Cholesky factorization failed");

  // C = L^{-1} B L^{-T} is symmetric with the same spectrum as G^{-1} B;
  // eigenvectors map back through L^{-T}.
  const auto l = llt.matrixL();
  const Matrix lb = l.solve(b.matrix());
  Matrix c = l.solve(lb.transpose());
  c = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::internal, "representing_operator: eigensolver failed");

  RepresentingOperator op;
  op.eigenvalues = es.eigenvalues();
  op.eigenvectors = llt.matrixU().solve(es.eigenvectors());
  op.matrix = llt.solve(b.matrix());
  return op;
}

double default_zero_tol(const RepresentingOperator& op) {
  return op.eigenvalues.size() == 0 ? 0.0 : 1e-9 * op.eigenvalues.cwiseAbs().maxCoeff();
}

EigenSplit split_eigenspaces(const RepresentingOperator& op, const Subspace& y) {
  return split_eigenspaces(op, y, default_zero_tol(op));
}

EigenSplit split_eigenspaces(const RepresentingOperator& op, const Subspace& y, double zero_tol,
                             bool zeros_negative) {
  const Eigen::Index k = op.eigenvalues.size();
  if (y.dim() != k) throw InvalidInput("split_eigenspaces: subspace dimension does not match operator");
  std::vector<Eigen::Index> pos_idx;
  std::vector<Eigen::Index> neg_idx;
  Eigen::Index zeros = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double lambda = op.eigenvalues(i);
    const bool is_zero = std::abs(lambda) <= zero_tol;
    if (is_zero) ++zeros;
    const bool negative = lambda < -zero_tol || (zeros_negative && is_zero);
    (negative ? neg_idx : pos_idx).push_back(i);
  }

  const auto gather = [&](const std::vector<Eigen::Index>& idx, Vector& values) {
    Matrix rows(static_cast<Eigen::Index>(idx.size()), y.ambient_dim());
    values.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      rows.row(jj) = (y.basis().transpose() * op.eigenvectors.col(idx[j])).transpose();
      values(jj) = op.eigenvalues(idx[j]);
    }
    return Subspace(y.ambient_dim(), rows).orthonormalized();
  };

  Vector pos_vals;
  Vector neg_vals;
  Subspace nonneg = gather(pos_idx, pos_vals);
  Subspace neg = gather(neg_idx, neg_vals);
  return {std::move(nonneg), std::move(neg), pos_vals, neg_vals, zero_tol, zeros};
}

Subspace orthogonal_complement(const InnerProduct& a, const Subspace& sub) {
  const Eigen::Index n = a.dim();
  if (sub.ambient_dim() != n) throw InvalidInput("orthogonal_complement: dimension mismatch");
  if (sub.dim() == 0) return Subspace::whole(n);
  const Matrix constraints = sub.basis() * a.matrix();
  if (numerical_rank(constraints) < sub.dim()) throw InvalidInput("orthogonal_complement: rank-deficient basis");
  return Subspace(n, nullspace_rows(constraints));
}

Subspace subspace_intersection(const Subspace& s1, const Subspace& s2) {
  const Eigen::Index n = s1.ambient_dim();
  if (s2.ambient_dim() != n) throw InvalidInput("subspace_intersection: dimension mismatch");
  if (s1.dim() == 0 || s2.dim() == 0) return Subspace::zero(n);
  const Matrix c1 = nullspace_rows(s1.basis());
  const Matrix c2 = nullspace_rows(s2.basis());
  Matrix stacked(c1.rows() + c2.rows(), n);
  stacked << c1, c2;
  return Subspace(n, nullspace_rows(stacked));
}

}  // namespace quadext
