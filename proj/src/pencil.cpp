#include "quadext/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace quadext {

namespace {

void require_same_dim(const SymForm& a, const SymForm& b, const char* where) {
  if (a.dim() != b.dim()) throw InvalidInput(std::string(where) + ": dimension mismatch");
}

// Bisects for the point in [inside, outside] where f crosses `level`, given
// f(inside) >= level > f(outside).
double bisect_crossing(const std::function<double(double)>& f, double inside, double outside, double level) {
  for (int i = 0; i < 200 && std::abs(outside - inside) > 1e-12; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (f(mid) >= level) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace

double pencil_min_eig(const SymForm& m0, const SymForm& m1, double alpha) {
  require_same_dim(m0, m1, "pencil_min_eig");
  return min_eigenvalue(alpha * m1.matrix() + (1.0 - alpha) * m0.matrix());
}

ConcaveMax maximize_concave_on_unit_interval(const std::function<double(double)>& f, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("maximize_concave_on_unit_interval: tol must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ConcaveMax best{fc >= fd ? c : d, std::max(fc, fd)};
  for (double edge : {0.0, 1.0}) {
    const double fe = f(edge);
    if (fe > best.value) best = {edge, fe};
  }
  return best;
}

double lemma_a_combination(const SymForm& p, const SymForm& q, double tol) {
  if (p.dim() != 2 || q.dim() != 2) throw InvalidInput("lemma_a_combination: forms must be 2x2");
  const FeasibleInterval iv = psd_interval(p, q, SymForm::zero(2), tol);
  if (iv.empty) {
    std::ostringstream os;
    os << "no convex combination is positive semidefinite (best lambda_min " << iv.best_value << " at alpha "
       << iv.best_alpha << ")";
    throw Infeasible(os.str(), iv.best_value);
  }
  return iv.midpoint();
}

bool check_pointwise_max(const SymForm& p, const SymForm& q, int grid, double tol) {
  if (p.dim() != 2 || q.dim() != 2) throw InvalidInput("check_pointwise_max: forms must be 2x2");
  if (grid < 64) throw InvalidInput("check_pointwise_max: grid must be at least 64");
  const auto g = [&](double theta) {
    const Vector x{{std::cos(theta), std::sin(theta)}};
    return std::max(evaluate_form(p, x), evaluate_form(q, x));
  };
  const double step = std::numbers::pi / grid;
  int arg = 0;
  double lowest = g(0.0);
  for (int i = 1; i < grid; ++i) {
    const double v = g(i * step);
    if (v < lowest) {
      lowest = v;
      arg = i;
    }
  }
  // Local refinement: minimize -g is maximizing g's negation on the bracket.
  const double left = (arg - 1) * step;
  const auto neg = [&](double t) { return -g(left + 2.0 * step * t); };
  const ConcaveMax refined = maximize_concave_on_unit_interval(neg, 1e-12);
  lowest = std::min(lowest, -refined.value);
  return !(lowest < -tol);
}

FeasibleInterval psd_interval(const SymForm& a1, const SymForm& a2, const SymForm& b, double tol) {
  require_same_dim(a1, a2, "psd_interval");
  require_same_dim(a1, b, "psd_interval");
  const SymForm m0 = a2 - b;
  const SymForm m1 = a1 - b;
  const std::function<double(double)> f = [&](double alpha) { return pencil_min_eig(m0, m1, alpha); };

  const ConcaveMax top = maximize_concave_on_unit_interval(f, 1e-10);
  FeasibleInterval iv;
  iv.best_alpha = top.argmax;
  iv.best_value = top.value;
  if (top.value < -tol) return iv;

  iv.empty = false;
  const double level = -tol;
  iv.lo = f(0.0) >= level ? 0.0 : bisect_crossing(f, top.argmax, 0.0, level);
  iv.hi = f(1.0) >= level ? 1.0 : bisect_crossing(f, top.argmax, 1.0, level);
  return iv;
}

SandwichCertificate dominating_combination(const SymForm& a1, const SymForm& a2, const SymForm& b, double tol) {
  const FeasibleInterval upper = psd_interval(a1, a2, b, tol);
  if (upper.empty) {
    std::ostringstream os;
    os << "no alpha with alpha*A1 + (1-alpha)*A2 - B PSD; best lambda_min " << upper.best_value << " at alpha "
       << upper.best_alpha;
    throw HypothesisViolated(os.str(), upper.best_value, true);
  }
  const FeasibleInterval lower = psd_interval(a1, a2, -b, tol);
  if (lower.empty) {
    std::ostringstream os;
    os << "no beta with beta*A1 + (1-beta)*A2 + B PSD; best lambda_min " << lower.best_value << " at beta "
       << lower.best_alpha;
    throw HypothesisViolated(os.str(), lower.best_value, false);
  }
  return {upper.midpoint(), lower.midpoint()};
}

std::pair<double, double> certificate_margins(const SymForm& a1, const SymForm& a2, const SymForm& b,
                                              const SandwichCertificate& cert) {
  require_same_dim(a1, a2, "certificate_margins");
  require_same_dim(a1, b, "certificate_margins");
  const double upper = pencil_min_eig(a2 - b, a1 - b, cert.alpha);
  const double lower = pencil_min_eig(a2 + b, a1 + b, cert.beta);
  return {upper, lower};
}

}  // namespace quadext
