#include "quadext/verify.hpp"

#include "quadext/normcalc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace quadext {

namespace {

using Rng = std::mt19937_64;

Matrix gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Matrix random_orthogonal(Rng& rng, Eigen::Index n) {
  const Matrix g = gaussian(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

Matrix random_spd(Rng& rng, Eigen::Index n, double conditioning) {
  const Matrix q = random_orthogonal(rng, n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(unit(rng) * std::log(conditioning));
  const Matrix m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

Matrix random_symmetric(Rng& rng, Eigen::Index n) {
  const Matrix g = gaussian(rng, n, n);
  return 0.5 * (g + g.transpose());
}

struct Ratio {
  const Matrix& b;
  const Matrix& a1;
  const Matrix& a2;
  double operator()(const Vector& x) const {
    const double den = std::max(x.dot(a1 * x), x.dot(a2 * x));
    return den > 0.0 ? std::abs(x.dot(b * x)) / den : 0.0;
  }
};

}  // namespace

SampledBound sample_norm_lower_bound(const SymForm& b, const InnerProduct& a1, const InnerProduct& a2,
                                     int samples, std::uint64_t seed) {
  const Eigen::Index n = b.dim();
  if (a1.dim() != n || a2.dim() != n) throw InvalidInput("sample_norm_lower_bound: dimension mismatch");
  if (samples < 1) throw InvalidInput("sample_norm_lower_bound: samples must be positive");

  const Ratio ratio{b.matrix(), a1.matrix(), a2.matrix()};
  Rng rng(seed);
  std::normal_distribution<double> normal;

  Vector x(n);
  Vector best = Vector::Unit(n, 0);
  double best_value = ratio(best);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = normal(rng);
    const double v = ratio(x);
    if (v > best_value) {
      best_value = v;
      best = x;
    }
  }

  // Coordinate ascent: perturb one coordinate by +-step relative to the
  // vector's largest entry, keep strict improvements, halve step per round.
  double step = 0.25;
  for (int round = 0; round < 20; ++round, step *= 0.5) {
    for (int pass = 0; pass < 5; ++pass) {
      for (Eigen::Index i = 0; i < n; ++i) {
        for (double sign : {1.0, -1.0}) {
          Vector y = best;
          y(i) += sign * step * best.cwiseAbs().maxCoeff();
          const double v = ratio(y);
          if (v > best_value) {
            best_value = v;
            best = y;
          }
        }
      }
    }
  }

  const double scale = std::sqrt(std::max(best.dot(a1.matrix() * best), best.dot(a2.matrix() * best)));
  return {best_value, best / scale};
}

double agreement_residual(const QuadOnSubspace& p, const SymForm& extended) {
  const Matrix& u = p.subspace().basis();
  if (extended.dim() != u.cols()) throw InvalidInput("agreement_residual: dimension mismatch");
  const Matrix restricted = u * extended.matrix() * u.transpose();
  const double scale = std::max(1.0, p.form().matrix().cwiseAbs().maxCoeff());
  return (restricted - p.form().matrix()).cwiseAbs().maxCoeff() / scale;
}

VerificationReport verify_extension(const TwoEllipsoidSpace& space, const QuadOnSubspace& p,
                                    const SymForm& extended, const VerifyTolerances& tol) {
  if (extended.dim() != space.dim() || p.subspace().ambient_dim() != space.dim())
    throw InvalidInput("verify_extension: dimension mismatch");
  VerificationReport r;
  r.agreement_residual = agreement_residual(p, extended);
  r.restriction_ok = r.agreement_residual <= tol.agreement;

  r.original_norm = norm_on_subspace(p, space).value;
  r.extended_norm = polynomial_norm(extended, space.pi1().form(), space.pi2().form()).value;
  r.norm_ok = r.extended_norm <= r.original_norm * (1.0 + tol.norm_rel) + tol.norm_abs;

  r.sampled_lower_bound =
      sample_norm_lower_bound(extended, space.pi1(), space.pi2(), tol.samples, tol.seed).value;
  r.sampler_ok = r.sampled_lower_bound <= r.extended_norm + tol.sampler_abs * std::max(1.0, r.extended_norm);
  return r;
}

Matrix random_spd(Eigen::Index n, double conditioning, std::uint64_t seed) {
  Rng rng(seed);
  return random_spd(rng, n, conditioning);
}

std::pair<TwoEllipsoidSpace, QuadOnSubspace> random_instance(const InstanceSpec& spec) {
  if (spec.n < 1 || spec.k < 1 || spec.k > spec.n)
    throw InvalidInput("random_instance: need 1 <= k <= n");
  if (!(spec.conditioning >= 1.0)) throw InvalidInput("random_instance: conditioning must be >= 1");

  Rng rng(spec.seed);
  const InnerProduct pi1{SymForm(random_spd(rng, spec.n, spec.conditioning))};
  const InnerProduct pi2{SymForm(random_spd(rng, spec.n, spec.conditioning))};
  TwoEllipsoidSpace space(pi1, pi2);

  Subspace y(gaussian(rng, spec.k, spec.n));
  const SymForm raw(random_symmetric(rng, spec.k));
  const double c = norm_on_subspace(QuadOnSubspace(y, raw), space).value;
  return {space, QuadOnSubspace(std::move(y), raw.scaled(1.0 / c))};
}

LemmaAInstance lemma_a_instance(const SymForm& s, const SymForm& delta, double alpha_planted) {
  if (s.dim() != 2 || delta.dim() != 2) throw InvalidInput("lemma_a_instance: forms must be 2x2");
  return {s + delta.scaled(1.0 - alpha_planted), s - delta.scaled(alpha_planted), alpha_planted};
}

LemmaAInstance lemma_a_instance(std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = gaussian(rng, 2, 2);
  const SymForm s(g * g.transpose());
  const SymForm delta(3.0 * random_symmetric(rng, 2));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return lemma_a_instance(s, delta, unit(rng));
}

SandwichInstance sandwich_instance(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix a1 = random_spd(rng, n, 1e2);
  const Matrix a2 = random_spd(rng, n, 1e2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha = unit(rng);
  const double beta = unit(rng);
  const Matrix a_alpha = alpha * a1 + (1.0 - alpha) * a2;
  const Matrix a_beta = beta * a1 + (1.0 - beta) * a2;

  const Matrix l = (a_alpha + a_beta).llt().matrixL();
  const Matrix q = random_orthogonal(rng, n);
  Vector w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = unit(rng);
  const Matrix r = l * q * w.asDiagonal() * q.transpose() * l.transpose();
  return {SymForm(a1), SymForm(a2), SymForm(a_alpha - r), alpha, beta};
}

}  // namespace quadext
