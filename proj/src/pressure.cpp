#include "meanco/pressure.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace meanco {

namespace {
constexpr double kSqrt8 = 2.8284271247461903;  // sqrt(8)
constexpr double kTwoSqrt3 = 3.4641016151377544;  // 2*sqrt(3)
}  // namespace

double PressureField::at_tag(int tag) const {
  auto it = values_by_tag.find(tag);
  if (it == values_by_tag.end())
    throw std::runtime_error("pressure value missing for tag " + std::to_string(tag));
  return it->second;
}

double PressureField::max_abs() const {
  double m = 0.0;
  for (const auto& [tag, v] : values_by_tag) m = std::max(m, std::abs(v));
  return m;
}

PressureField PressureField::island(double M) {
  PressureField f;
  f.family = PressureFamily::Island;
  f.values_by_tag = {{1, M}, {2, 0.0}};
  f.params = {{"M", M}};
  return f;
}

PressureField PressureField::insulation(double f1, double f2, double f3) {
  PressureField f;
  f.family = PressureFamily::Insulation;
  f.values_by_tag = {{1, f1}, {2, f2}, {3, f3}};
  f.params = {{"f1", f1}, {"f2", f2}, {"f3", f3}};
  return f;
}

PressureField PressureField::quadrant(double sigma, double tau) {
  PressureField f;
  f.family = PressureFamily::Quadrant;
  f.values_by_tag = {{1, -(tau + sigma)}, {2, sigma}, {3, tau - sigma}, {4, sigma}};
  f.params = {{"sigma", sigma}, {"tau", tau}};
  return f;
}

PressureField PressureField::custom(std::map<int, double> values) {
  PressureField f;
  f.family = PressureFamily::Custom;
  f.values_by_tag = std::move(values);
  return f;
}

PressureField PressureField::zero(const Mesh& mesh) {
  std::map<int, double> v;
  for (int t : mesh.distinct_tags()) v[t] = 0.0;
  return custom(std::move(v));
}

std::string to_string(GateStatus s) {
  switch (s) {
    case GateStatus::Certified: return "Certified";
    case GateStatus::Boundary: return "Boundary";
    case GateStatus::Unknown: return "Unknown";
    case GateStatus::Violated: return "Violated";
  }
  return "Unknown";
}

CoercivityVerdict gate_island(double M) {
  CoercivityVerdict v;
  const double a = std::abs(M);
  if (a < 4.0) {
    v.status = GateStatus::Certified;
    v.gamma_lower_bound = 1.0 - a / 4.0;
    v.reason = "|M| < 4";
  } else if (a == 4.0) {
    v.status = GateStatus::Boundary;
    v.reason = "|M| = 4: nonnegative but no positive constant certified";
  } else {
    v.status = GateStatus::Violated;
    v.reason = "|M| > 4: nonnegativity fails (threshold is sharp)";
  }
  return v;
}

CoercivityVerdict gate_insulation(double f1, double f2, double f3) {
  CoercivityVerdict v;
  if (std::abs(f2 - 0.5 * (f1 + f3)) > 1e-12) {
    v.status = GateStatus::Unknown;
    v.reason = "f2 != (f1+f3)/2: sufficient condition does not apply";
    return v;
  }
  const double s = std::abs(f2 - f1);
  if (s < 2.0) {
    v.status = GateStatus::Certified;
    v.gamma_lower_bound = 1.0 - s / 2.0;
    v.reason = "|f2-f1| < 2 <= c";
  } else {
    v.status = GateStatus::Unknown;
    v.reason = "c > 2 unquantified in the cited condition";
  }
  return v;
}

CoercivityVerdict gate_quadrant(double sigma, double tau) {
  CoercivityVerdict v;
  if (sigma == 0.0 && tau == 0.0) {
    v.status = GateStatus::Certified;
    v.gamma_lower_bound = 1.0;
    v.reason = "zero pressure";
    return v;
  }
  const double y = feasibility_y(sigma, tau);
  if (y < 1.0 - 1e-12) {
    // lambda strictly inside (|sigma|/2, 1-|tau|/sqrt(8)); keeping
    // |2 sigma / (lambda (1-eps))| <= 4 gives eps = 1 - |sigma|/(2 lambda).
    const double lo = std::abs(sigma) / 2.0;
    const double hi = 1.0 - std::abs(tau) / kSqrt8;
    const double lambda = 0.5 * (lo + hi);
    const double eps = 1.0 - std::abs(sigma) / (2.0 * lambda);
    v.status = GateStatus::Certified;
    v.gamma_lower_bound = lambda * eps;
    v.reason = "y < 1";
  } else if (std::abs(y - 1.0) <= 1e-12) {
    v.status = GateStatus::Boundary;
    v.reason = "y = 1: nonnegative split exists but no positive constant certified";
  } else {
    v.status = GateStatus::Unknown;
    v.reason = "y > 1: sufficient condition does not apply";
  }
  return v;
}

CoercivityVerdict gate_3d(const Eigen::Matrix3d& T0) {
  CoercivityVerdict v;
  const double n = T0.norm();
  if (n < kTwoSqrt3 - 1e-12) {
    v.status = GateStatus::Certified;
    v.gamma_lower_bound = 1.0 - n / kTwoSqrt3;
    v.reason = "|T0| < 2*sqrt(3)";
  } else if (n <= kTwoSqrt3 + 1e-12) {
    v.status = GateStatus::Boundary;
    v.reason = "|T0| = 2*sqrt(3): nonnegative but no positive constant certified";
  } else {
    v.status = GateStatus::Unknown;
    v.reason = "|T0| > 2*sqrt(3): sufficient condition does not apply";
  }
  return v;
}

CoercivityVerdict gate_for(const PressureField& f) {
  switch (f.family) {
    case PressureFamily::Island:
      return gate_island(f.params.at("M"));
    case PressureFamily::Insulation:
      return gate_insulation(f.params.at("f1"), f.params.at("f2"), f.params.at("f3"));
    case PressureFamily::Quadrant:
      return gate_quadrant(f.params.at("sigma"), f.params.at("tau"));
    case PressureFamily::Custom: {
      CoercivityVerdict v;
      bool all_zero = true;
      for (const auto& [tag, val] : f.values_by_tag) all_zero = all_zero && val == 0.0;
      if (all_zero) {
        v.status = GateStatus::Certified;
        v.gamma_lower_bound = 1.0;
        v.reason = "zero pressure";
      } else {
        v.status = GateStatus::Unknown;
        v.reason = "no gate for custom pressure";
      }
      return v;
    }
  }
  return {};
}

double quartic_h(double sigma, double tau) {
  const double t2 = tau * tau;
  const double s2 = sigma * sigma;
  return t2 * t2 - 8.0 * t2 * s2 + 32.0 * tau * sigma + 16.0 * s2 * s2;
}

double feasibility_y(double sigma, double tau) {
  return std::abs(sigma) / 2.0 + std::abs(tau) / kSqrt8;
}

namespace {

double newton_polish(double sigma, double tau) {
  for (int it = 0; it < 60; ++it) {
    const double h = quartic_h(sigma, tau);
    const double dh = -16.0 * tau * tau * sigma + 32.0 * tau + 64.0 * sigma * sigma * sigma;
    if (dh == 0.0) break;
    const double step = h / dh;
    sigma -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(sigma))) break;
  }
  return sigma;
}

}  // namespace

double tune_quadrant_branch(double tau) {
  if (tau == 0.0) throw std::invalid_argument("tune_quadrant_branch: tau must be nonzero");
  double lo = std::min(-tau / 2.0, 0.0);
  double hi = std::max(-tau / 2.0, 0.0);
  double flo = quartic_h(lo, tau);
  double fhi = quartic_h(hi, tau);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    throw std::runtime_error("tune_quadrant_branch: no sign change on [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "], h = " + std::to_string(flo) + ", " +
                             std::to_string(fhi));
  }
  const double tol = 1e-13 * std::max(1.0, tau * tau * tau * tau);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = quartic_h(mid, tau);
    if (std::abs(fm) < tol || hi - lo < 1e-15) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return newton_polish(0.5 * (lo + hi), tau);
}

std::vector<double> quadrant_branch_all_roots(double tau) {
  // h as a quartic in sigma: 16 s^4 + 0 s^3 - 8 tau^2 s^2 + 32 tau s + tau^4.
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(0, 3) = -tau * tau * tau * tau / 16.0;
  companion(1, 3) = -32.0 * tau / 16.0;
  companion(2, 3) = 8.0 * tau * tau / 16.0;
  companion(3, 3) = 0.0;
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  const Eigen::EigenSolver<Eigen::Matrix4d> es(companion);
  std::vector<double> roots;
  for (int i = 0; i < 4; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z.real())))
      roots.push_back(newton_polish(z.real(), tau));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              roots.end());
  return roots;
}

QuadrantParams QuadrantParams::from_sigma_tau(double sigma, double tau) {
  QuadrantParams q;
  q.sigma = sigma;
  q.tau = tau;
  q.alpha = 2.0 * sigma + tau;
  q.beta = tau - 2.0 * sigma;
  q.gamma = -q.beta;
  q.delta = -q.alpha;
  q.p = q.beta * q.beta * q.alpha + 4.0 * (q.beta + q.alpha);
  q.Delta = q.alpha * q.beta * q.gamma * q.delta + 4.0 * (q.beta - q.delta) * (q.alpha + q.gamma);
  return q;
}

QuadrantParams QuadrantParams::from_beta(double beta) {
  if (beta == 0.0) throw std::invalid_argument("QuadrantParams::from_beta: beta must be nonzero");
  const double alpha = 2.0 * beta / std::sqrt(beta * beta + 4.0);
  const double sigma = (alpha - beta) / 4.0;
  const double tau = (alpha + beta) / 2.0;
  return from_sigma_tau(sigma, tau);
}

}  // namespace meanco
