#include "meanco/oracles.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace meanco {

namespace {
constexpr double kPi = std::numbers::pi;
using C = std::complex<double>;
}  // namespace

ClosedFormSolution disk_disk_solution(double rho, double M) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("disk_disk_solution: rho must lie in (0,1)");
  const double denom = 4.0 + M - M * rho * rho;
  if (std::abs(denom) < 1e-12 * (4.0 + std::abs(M)))
    throw std::invalid_argument("disk_disk_solution: 4 + M - M rho^2 vanishes");
  const double zeta = 4.0 / denom;
  const double xi = (4.0 + M) / denom;

  ClosedFormSolution s;
  s.domain = DomainSpec::disk_disk(rho);
  s.params = {{"rho", rho}, {"M", M}, {"zeta", zeta}, {"xi", xi}};
  s.value = [=](const Point2& x) -> Eigen::Vector2d {
    const double r2 = x.squaredNorm();
    if (r2 < rho * rho) return zeta * x;
    return (xi + (1.0 - xi) / r2) * x;
  };
  s.gradient = [=](const Point2& x, int tag) -> Eigen::Matrix2d {
    if (tag == 1) return zeta * Eigen::Matrix2d::Identity();
    const double r2 = x.squaredNorm();
    const double c = 1.0 - xi;
    return (xi + c / r2) * Eigen::Matrix2d::Identity() - (2.0 * c / (r2 * r2)) * x * x.transpose();
  };
  s.det = [=](const Point2& x, int tag) -> double {
    if (tag == 1) return zeta * zeta;
    const double r2 = x.squaredNorm();
    return xi * xi - (1.0 - xi) * (1.0 - xi) / (r2 * r2);
  };
  return s;
}

double disk_disk_jump_value(double rho, double M) {
  const double d = M * rho * rho - M - 4.0;
  return 8.0 * M / (d * d);
}

ClosedFormSolution disk_sector_basic(double M) {
  ClosedFormSolution s;
  s.domain = DomainSpec::disk_sector();
  s.params = {{"M", M}};
  s.value = [=](const Point2& x) -> Eigen::Vector2d {
    const double th = std::atan2(x.y(), x.x());
    const double inner = std::abs(th) <= kPi / 4.0;
    const double u2 = 2.0 * x.x() * x.y();  // R^2 sin(2 theta)
    if (inner) return {1.0, u2};
    return {1.0 + 0.5 * M * (x.x() * x.x() - x.y() * x.y()), u2};
  };
  s.gradient = [=](const Point2& x, int tag) -> Eigen::Matrix2d {
    Eigen::Matrix2d g;
    if (tag == 1)
      g << 0.0, 0.0, 2.0 * x.y(), 2.0 * x.x();
    else
      g << M * x.x(), -M * x.y(), 2.0 * x.y(), 2.0 * x.x();
    return g;
  };
  s.det = [=](const Point2& x, int tag) -> double {
    if (tag == 1) return 0.0;
    return 2.0 * M * x.squaredNorm();
  };
  return s;
}

FourierSectorCoeffs FourierSectorCoeffs::basic(double M) {
  FourierSectorCoeffs c;
  c.A4k = {1.0};
  c.A4k2 = {0.0};
  c.B4k = {0.0};
  c.B4k2 = {1.0};
  c.M = M;
  return c;
}

namespace {

// u1 = sum a_j Re(z^j), u2 = sum b_j Im(z^j) over j in {4k, 4k+2}; gradients
// come from d/dz z^j = j z^(j-1).
struct HarmonicPair {
  std::vector<std::pair<int, double>> a, b;  // (power, coefficient)

  Eigen::Vector2d value(const Point2& x) const {
    const C z(x.x(), x.y());
    double u1 = 0.0, u2 = 0.0;
    for (const auto& [j, c] : a) u1 += c * std::real(std::pow(z, j));
    for (const auto& [j, c] : b) u2 += c * std::imag(std::pow(z, j));
    return {u1, u2};
  }

  Eigen::Matrix2d gradient(const Point2& x) const {
    const C z(x.x(), x.y());
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    for (const auto& [j, c] : a) {
      if (j == 0) continue;
      const C d = c * double(j) * std::pow(z, j - 1);
      g(0, 0) += std::real(d);
      g(0, 1) += -std::imag(d);
    }
    for (const auto& [j, c] : b) {
      if (j == 0) continue;
      const C d = c * double(j) * std::pow(z, j - 1);
      g(1, 0) += std::imag(d);
      g(1, 1) += std::real(d);
    }
    return g;
  }
};

std::pair<HarmonicPair, HarmonicPair> sector_branches(const FourierSectorCoeffs& c) {
  HarmonicPair inner, outer;
  const int K = c.truncation();
  if (K < 1 || static_cast<int>(c.A4k2.size()) != K || static_cast<int>(c.B4k.size()) != K ||
      static_cast<int>(c.B4k2.size()) != K)
    throw std::invalid_argument("FourierSectorCoeffs: lists must share a length K >= 1");
  for (int k = 0; k < K; ++k) {
    inner.a.emplace_back(4 * k, c.A4k[k]);
    inner.a.emplace_back(4 * k + 2, c.A4k2[k]);
    inner.b.emplace_back(4 * k, c.B4k[k]);
    inner.b.emplace_back(4 * k + 2, c.B4k2[k]);
    outer.a.emplace_back(4 * k, c.A4k[k]);
    outer.a.emplace_back(4 * k + 2, c.A4k2[k] + 0.5 * c.M * c.B4k2[k]);
    outer.b.emplace_back(4 * k, c.B4k[k] + 0.5 * c.M * c.A4k[k]);
    outer.b.emplace_back(4 * k + 2, c.B4k2[k]);
  }
  return {inner, outer};
}

}  // namespace

ClosedFormSolution disk_sector_series(const FourierSectorCoeffs& c) {
  const auto [inner, outer] = sector_branches(c);
  ClosedFormSolution s;
  s.domain = DomainSpec::disk_sector();
  s.params = {{"M", c.M}, {"K", static_cast<double>(c.truncation())}};
  s.value = [inner, outer](const Point2& x) -> Eigen::Vector2d {
    const double th = std::atan2(x.y(), x.x());
    return std::abs(th) <= kPi / 4.0 ? inner.value(x) : outer.value(x);
  };
  s.gradient = [inner, outer](const Point2& x, int tag) -> Eigen::Matrix2d {
    return tag == 1 ? inner.gradient(x) : outer.gradient(x);
  };
  s.det = [inner, outer](const Point2& x, int tag) -> double {
    return (tag == 1 ? inner.gradient(x) : outer.gradient(x)).determinant();
  };
  return s;
}

AngularTrace fit_suitably_prepared(const FourierSectorCoeffs& c) {
  const auto [inner, outer] = sector_branches(c);
  AngularTrace t;
  t.at_angle = [inner, outer](double theta) -> Eigen::Vector2d {
    const Point2 x{std::cos(theta), std::sin(theta)};
    double th = std::remainder(theta, 2.0 * kPi);
    return std::abs(th) <= kPi / 4.0 ? inner.value(x) : outer.value(x);
  };
  return t;
}

std::array<Eigen::Matrix2d, 3> insulation_matrices(const Eigen::Vector2d& xi,
                                                   const Eigen::Vector2d& eta, double f1,
                                                   double f2, double f3) {
  const Eigen::Vector2d jxi = kJ * xi;
  std::array<Eigen::Matrix2d, 3> A;
  A[1] = Eigen::Matrix2d::Zero();
  A[1].col(0) = eta;
  A[1].col(1) = xi;
  A[0] = A[1];
  A[0].col(0) = eta - 0.5 * (f2 - f1) * jxi;
  A[2] = A[1];
  A[2].col(0) = eta + 0.5 * (f3 - f2) * jxi;
  return A;
}

ClosedFormSolution insulation_affine(const Eigen::Vector2d& xi, const Eigen::Vector2d& eta,
                                     double f1, double f2, double f3) {
  const auto A = insulation_matrices(xi, eta, f1, f2, f3);
  // Continuity offsets at x1 = -1/2 and x1 = +1/2.
  const Eigen::Vector2d c1 = -0.5 * (A[1].col(0) - A[0].col(0));
  const Eigen::Vector2d c3 = 0.5 * (A[1].col(0) - A[2].col(0));
  ClosedFormSolution s;
  s.domain = DomainSpec::insulation_strip();
  s.params = {{"f1", f1}, {"f2", f2}, {"f3", f3}};
  s.value = [=](const Point2& x) -> Eigen::Vector2d {
    if (x.x() < -0.5) return A[0] * x + c1;
    if (x.x() <= 0.5) return A[1] * x;
    return A[2] * x + c3;
  };
  s.gradient = [=](const Point2&, int tag) -> Eigen::Matrix2d { return A[tag - 1]; };
  s.det = [=](const Point2&, int tag) -> double { return A[tag - 1].determinant(); };
  return s;
}

double quadrant_block_alpha(double beta) {
  if (beta == 0.0 || beta == -2.0)
    throw std::invalid_argument("quadrant_block_alpha: beta must avoid 0 and -2");
  return 2.0 * beta / (2.0 + beta);
}

std::array<Eigen::Vector2d, 4> quadrant_diagonals(double beta) {
  // Cosine/sine coefficient pairs per quadrant. Consecutive pairs share one
  // entry (continuity across the rays); the four interface conditions close
  // exactly when alpha beta = -2(alpha - beta), i.e. alpha = 2 beta/(2+beta).
  const double a = quadrant_block_alpha(beta);
  return {Eigen::Vector2d{beta, beta}, Eigen::Vector2d{a, beta}, Eigen::Vector2d{a, a},
          Eigen::Vector2d{beta, a}};
}

ClosedFormSolution quadrant_building_block(int n, double beta) {
  if (n % 2 == 0) throw std::invalid_argument("quadrant_building_block: n must be odd");
  const auto D = quadrant_diagonals(beta);
  ClosedFormSolution s;
  s.domain = DomainSpec::quadrant_square();
  s.params = {{"n", static_cast<double>(n)}, {"beta", beta}};

  // u = D_k w with w = (Re z^n, Im z^n) on quadrant Q_k.
  s.value = [=](const Point2& x) -> Eigen::Vector2d {
    const int tag = region_tag(DomainSpec::quadrant_square(), x);
    const C zn = std::pow(C(x.x(), x.y()), n);
    const Eigen::Vector2d& d = D[tag - 1];
    return {d(0) * std::real(zn), d(1) * std::imag(zn)};
  };
  s.gradient = [=](const Point2& x, int tag) -> Eigen::Matrix2d {
    const C d = double(n) * std::pow(C(x.x(), x.y()), n - 1);
    const Eigen::Vector2d& dv = D[tag - 1];
    Eigen::Matrix2d g;
    g << dv(0) * std::real(d), -dv(0) * std::imag(d), dv(1) * std::imag(d), dv(1) * std::real(d);
    return g;
  };
  s.det = [=](const Point2& x, int tag) -> double {
    const C d = double(n) * std::pow(C(x.x(), x.y()), n - 1);
    const Eigen::Vector2d& dv = D[tag - 1];
    return dv(0) * dv(1) * std::norm(d);
  };
  return s;
}

Eigen::Vector2d quadrant_building_block_complex(int n, double beta, const Point2& x) {
  // u^(k) = a_k z^n + b_k conj(z)^n with a_k = (c_k + s_k)/2, b_k = (c_k - s_k)/2.
  const auto D = quadrant_diagonals(beta);
  const int tag = region_tag(DomainSpec::quadrant_square(), x);
  const double a = 0.5 * (D[tag - 1](0) + D[tag - 1](1));
  const double b = 0.5 * (D[tag - 1](0) - D[tag - 1](1));
  const C z(x.x(), x.y());
  const C u = a * std::pow(z, n) + b * std::pow(std::conj(z), n);
  return {std::real(u), std::imag(u)};
}

Eigen::Matrix2d quadrant_transfer(double w) {
  const Eigen::Vector2d mu{1.0, 1.0};
  const Eigen::Vector2d nu{-1.0, 1.0};
  return Eigen::Matrix2d::Identity() + w * nu * mu.transpose();
}

double quadrant_recurrence_check(double alpha, double beta, double gamma, double delta,
                                 Parity parity) {
  // epsilon_21 = alpha, epsilon_32 = beta, epsilon_43 = gamma, epsilon_14 = delta
  if (parity == Parity::Even) {
    const Eigen::Matrix2d P = quadrant_transfer(delta / 4.0) * quadrant_transfer(gamma / 4.0) *
                              quadrant_transfer(-beta / 4.0) * quadrant_transfer(alpha / 4.0);
    const double zeta = (delta + gamma - beta + alpha) / 4.0;
    return (P - quadrant_transfer(zeta)).norm();
  }
  const Eigen::Matrix2d Cm = quadrant_transfer(delta / 4.0) *
                             quadrant_transfer(gamma / 4.0).transpose() *
                             quadrant_transfer(-beta / 4.0) *
                             quadrant_transfer(alpha / 4.0).transpose();
  return std::abs((Cm - Eigen::Matrix2d::Identity()).determinant());
}

std::array<Eigen::Vector2d, 4> quadrant_eigvectors(double beta) {
  const double s = std::sqrt(beta * beta + 4.0);
  const double alpha = 2.0 * beta / s;
  const double gamma = -beta;
  const double delta = -alpha;
  const double p = beta * gamma * delta + 4.0 * beta - 4.0 * delta;
  if (p == 0.0) throw std::invalid_argument("quadrant_eigvectors: p vanishes");
  const double bg = beta * gamma;
  const double gd = gamma * delta;
  return {Eigen::Vector2d{2.0 * bg - p, p + 2.0 * bg},
          Eigen::Vector2d{2.0 * gd - p, p + 2.0 * gd},
          Eigen::Vector2d{2.0 * gd + 4.0 * delta - 4.0 * beta, 2.0 * gd + 4.0 * beta - 4.0 * delta},
          Eigen::Vector2d{2.0 * bg + 4.0 * delta - 4.0 * beta, 2.0 * bg + 4.0 * beta - 4.0 * delta}};
}

Eigen::Matrix3d cof3(const Eigen::Matrix3d& A) {
  Eigen::Matrix3d c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c(i, j) = A(i1, j1) * A(i2, j2) - A(i1, j2) * A(i2, j1);
    }
  return c;
}

double cof3d_margin(const Eigen::Matrix3d& A) {
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(A);
  const Eigen::Vector3d sv = svd.singularValues();
  const double l1 = sv(0) * sv(0), l2 = sv(1) * sv(1), l3 = sv(2) * sv(2);
  return (l1 + l2 + l3) - std::sqrt(3.0) * std::sqrt(l1 * l2 + l2 * l3 + l3 * l1);
}

Eigen::Matrix3d cross_term_3d(const Eigen::Matrix3d& A, const Eigen::Matrix3d& B) {
  auto eps = [](int i, int j, int k) -> double {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
  };
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double ei = eps(i, a, b);
          if (ei == 0.0) continue;
          for (int c = 0; c < 3; ++c)
            for (int d = 0; d < 3; ++d) {
              const double ej = eps(j, c, d);
              if (ej == 0.0) continue;
              M(i, j) += ei * ej * A(a, c) * B(b, d);
            }
        }
  return M;
}

}  // namespace meanco
