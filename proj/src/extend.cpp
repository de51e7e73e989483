#include "quadext/extend.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace quadext {

namespace {

SymForm mix(const SymForm& a1, const SymForm& a2, double t) {
  return SymForm(t * a1.matrix() + (1.0 - t) * a2.matrix());
}

double restriction_residual(const QuadOnSubspace& p, const Matrix& extended) {
  const Matrix& u = p.subspace().basis();
  const Matrix diff = u * extended * u.transpose() - p.form().matrix();
  return diff.cwiseAbs().maxCoeff() / std::max(1.0, p.form().matrix().cwiseAbs().maxCoeff());
}

}  // namespace

std::pair<InnerProduct, InnerProduct> renormalize(const TwoEllipsoidSpace& space, const QuadOnSubspace& p,
                                                  const SandwichCertificate& cert, double tol) {
  if (p.subspace().ambient_dim() != space.dim()) throw InvalidInput("renormalize: dimension mismatch");
  if (cert.alpha < 0.0 || cert.alpha > 1.0 || cert.beta < 0.0 || cert.beta > 1.0)
    throw InvalidInput("renormalize: certificate parameters outside [0, 1]");
  InnerProduct upper(mix(space.pi1().form(), space.pi2().form(), cert.alpha));
  InnerProduct lower(mix(space.pi1().form(), space.pi2().form(), cert.beta));

  const SymForm g_upper = gram_restrict(upper.form(), p.subspace());
  const SymForm g_lower = gram_restrict(lower.form(), p.subspace());
  const double scale = std::max({1.0, max_abs_eigenvalue(g_upper.matrix()), max_abs_eigenvalue(g_lower.matrix())});
  const double m_upper = min_eigenvalue((g_upper - p.form()).matrix());
  const double m_lower = min_eigenvalue((g_lower + p.form()).matrix());
  if (m_upper < -10.0 * tol * scale || m_lower < -10.0 * tol * scale) {
    std::ostringstream os;
    os << "renormalize: certificate does not sandwich the form (margins " << m_upper << ", " << m_lower << ")";
    throw InvalidInput(os.str());
  }
  return {std::move(upper), std::move(lower)};
}

Vector find_z(const Subspace& m1, const Subspace& m2, const Vector& phi, double tol) {
  if (phi.size() != m1.ambient_dim()) throw InvalidInput("find_z: dimension mismatch");
  const Subspace both = subspace_intersection(m1, m2);
  if (both.dim() == 0) throw DegenerateZ("find_z: the two complements intersect trivially", 0.0, -1, -1);
  const Subspace ortho = both.orthonormalized();
  const Vector w = ortho.basis() * phi;
  const double achieved = w.norm() / phi.norm();
  if (achieved < tol) {
    std::ostringstream os;
    os << "find_z: every vector of the intersection lies in ker(phi) (|phi(z)|/|phi| = " << achieved << ")";
    throw DegenerateZ(os.str(), achieved, -1, -1);
  }
  return ortho.basis().transpose() * (w / w.norm());
}

std::pair<SymForm, HyperplaneStep> extend_hyperplane(const TwoEllipsoidSpace& space, const QuadOnSubspace& p,
                                                     const ExtendOptions& options) {
  const Eigen::Index n = space.dim();
  const Subspace& y = p.subspace();
  if (y.ambient_dim() != n) throw InvalidInput("extend_hyperplane: dimension mismatch");
  if (y.dim() != n - 1) throw InvalidInput("extend_hyperplane: subspace is not a hyperplane");

  const SymForm g1 = gram_restrict(space.pi1().form(), y);
  const SymForm g2 = gram_restrict(space.pi2().form(), y);
  const SandwichCertificate cert = dominating_combination(g1, g2, p.form(), options.tol);
  auto [upper, lower] = renormalize(space, p, cert, options.tol);

  RepresentingOperator op1 = representing_operator(InnerProduct(gram_restrict(upper.form(), y)), p.form());
  RepresentingOperator op2 = representing_operator(InnerProduct(gram_restrict(lower.form(), y)), p.form());
  EigenSplit split1 = split_eigenspaces(op1, y, default_zero_tol(op1), options.zeros_negative);
  EigenSplit split2 = split_eigenspaces(op2, y, default_zero_tol(op2), options.zeros_negative);

  Subspace m1 = orthogonal_complement(upper, split1.nonneg);
  Subspace m2 = orthogonal_complement(lower, split2.neg);

  const Matrix normal = nullspace_rows(y.basis());
  if (normal.rows() != 1) throw Error(ErrorKind::internal, "extend_hyperplane: hyperplane normal is not unique");
  const Vector phi = normal.row(0).transpose();

  Vector z;
  try {
    z = find_z(m1, m2, phi, options.z_tol);
  } catch (const DegenerateZ& e) {
    std::ostringstream os;
    os << e.what() << "; zero eigenvalues in the splits: " << split1.zero_count << ", " << split2.zero_count;
    throw DegenerateZ(os.str(), e.phi_z(), split1.zero_count, split2.zero_count);
  }

  const Matrix projector = Matrix::Identity(n, n) - z * phi.transpose() / phi.dot(z);
  SymForm extended = embed_form(p.form(), y, projector);
  const Eigen::Index inter_dim = subspace_intersection(m1, m2).dim();

  HyperplaneStep step{space,
                      y,
                      phi,
                      z,
                      projector,
                      cert,
                      std::move(upper),
                      std::move(lower),
                      std::move(op1),
                      std::move(op2),
                      std::move(split1),
                      std::move(split2),
                      std::move(m1),
                      std::move(m2),
                      inter_dim};
  return {std::move(extended), std::move(step)};
}

std::vector<Subspace> build_flag(const Subspace& y, Eigen::Index n) {
  if (y.ambient_dim() != n) throw InvalidInput("build_flag: dimension mismatch");
  if (y.dim() < 1) throw InvalidInput("build_flag: subspace must be non-trivial");
  Eigen::ColPivHouseholderQR<Matrix> qr(y.basis().transpose());
  const Matrix q = qr.householderQ();
  std::vector<Subspace> flag;
  for (Eigen::Index m = y.dim(); m <= n; ++m) flag.emplace_back(n, q.leftCols(m).transpose());
  return flag;
}

ExtensionReport extend(const TwoEllipsoidSpace& space, const QuadOnSubspace& p, const ExtendOptions& options) {
  const Eigen::Index n = space.dim();
  const Subspace& y = p.subspace();
  if (y.ambient_dim() != n) throw InvalidInput("extend: subspace and space differ in dimension");

  NormResult original = norm_on_subspace(p, space, options.tol);
  std::vector<StepSummary> summaries;
  Matrix current = Matrix::Zero(n, n);

  if (original.value > 0.0) {
    // Ambient form agreeing with P on Y; only its restriction to the current
    // flag member matters at each step.
    const Matrix coords = y.coordinate_map();
    current = coords.transpose() * p.form().matrix() * coords;

    const std::vector<Subspace> flag = build_flag(y, n);
    for (std::size_t j = 0; j + 1 < flag.size(); ++j) {
      const Matrix& outer = flag[j + 1].basis();
      const Matrix& inner = flag[j].basis();
      const Eigen::Index m = outer.rows();
      TwoEllipsoidSpace local(InnerProduct(gram_restrict(space.pi1().form(), flag[j + 1])),
                              InnerProduct(gram_restrict(space.pi2().form(), flag[j + 1])));
      const Subspace local_y(m, inner * outer.transpose());
      const SymForm local_form(inner * current * inner.transpose());

      const double c = norm_on_subspace(QuadOnSubspace(local_y, local_form), local, options.tol).value;
      if (c == 0.0) {
        current.setZero();
        break;
      }
      auto [piece, step] = extend_hyperplane(local, QuadOnSubspace(local_y, local_form.scaled(1.0 / c)), options);
      current = outer.transpose() * (c * piece.matrix()) * outer;

      StepSummary s;
      s.dim = m;
      s.scale = c;
      s.alpha = step.renorm.alpha;
      s.beta = step.renorm.beta;
      s.phi_z = std::abs(step.phi.dot(step.z)) / (step.phi.norm() * step.z.norm());
      s.dim_y1 = step.split1.nonneg.dim();
      s.dim_y2 = step.split1.neg.dim();
      s.dim_y3 = step.split2.nonneg.dim();
      s.dim_y4 = step.split2.neg.dim();
      s.dim_m1 = step.m1.dim();
      s.dim_m2 = step.m2.dim();
      s.intersection_dim = step.intersection_dim;
      summaries.push_back(s);
    }
  }

  SymForm extended(current);
  NormResult extended_norm = polynomial_norm(extended, space.pi1().form(), space.pi2().form(), options.tol);
  ExtensionReport report{extended, std::move(original), std::move(extended_norm), std::move(summaries),
                         restriction_residual(p, extended.matrix())};
  if (!report.invariants_hold()) {
    std::ostringstream os;
    os << "extend: final report invariants fail (agreement residual " << report.agreement_residual
       << ", norms " << report.original_norm.value << " -> " << report.extended_norm.value << ")";
    throw VerificationFailure(os.str(), std::move(report));
  }
  return report;
}

}  // namespace quadext
