// Closed-form stationary fields and the algebraic constructions they rest on.
// Every solution here is exact: value is continuous across interfaces, while
// gradient and determinant are evaluated region-wise (by subdomain tag).
#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "meanco/geometry.hpp"

namespace meanco {

// J = e2 (x) e1 - e1 (x) e2, the counterclockwise quarter turn; E = diag(1,-1).
inline const Eigen::Matrix2d kJ = (Eigen::Matrix2d() << 0.0, -1.0, 1.0, 0.0).finished();
inline const Eigen::Matrix2d kE = (Eigen::Matrix2d() << 1.0, 0.0, 0.0, -1.0).finished();

struct ClosedFormSolution {
  DomainSpec domain;
  std::map<std::string, double> params;
  std::function<Eigen::Vector2d(const Point2&)> value;
  std::function<Eigen::Matrix2d(const Point2&, int tag)> gradient;
  std::function<double(const Point2&, int tag)> det;
};

// u = zeta x on B(0,rho), u = (xi + (1-xi)/|x|^2) x outside, identity on the
// unit circle; zeta = 4/(4+M-M rho^2), xi = (4+M)/(4+M-M rho^2).
ClosedFormSolution disk_disk_solution(double rho, double M);

// The pressure-difference jump of det(grad u) across |x| = rho: 8M/(M rho^2 - M - 4)^2.
double disk_disk_jump_value(double rho, double M);

// u^s = (1, R^2 sin 2theta) in the sector |theta| <= pi/4,
// u^p = (1 + (M/2) R^2 cos 2theta, R^2 sin 2theta) outside.
ClosedFormSolution disk_sector_basic(double M);

// Truncated two-branch harmonic series on the sector geometry. The outer
// branch carries the coupled coefficients, so the jump condition holds for
// every coefficient choice.
struct FourierSectorCoeffs {
  std::vector<double> A4k, A4k2, B4k, B4k2;  // equal length K >= 1
  double M = 0.0;

  int truncation() const { return static_cast<int>(A4k.size()); }
  static FourierSectorCoeffs basic(double M);  // the concrete solution above
};

ClosedFormSolution disk_sector_series(const FourierSectorCoeffs& c);

// Boundary values at R = 1 as a function of the polar angle; branch selected
// by |theta| <= pi/4, coupled coefficients on the complement.
struct AngularTrace {
  std::function<Eigen::Vector2d(double)> at_angle;
};
AngularTrace fit_suitably_prepared(const FourierSectorCoeffs& c);

// Piecewise-affine stationary field of the insulation problem. Second columns
// of all gradients equal xi; first columns are eta -+ half the pressure jump
// times J xi, which zeroes the interface conditions identically.
std::array<Eigen::Matrix2d, 3> insulation_matrices(const Eigen::Vector2d& xi,
                                                   const Eigen::Vector2d& eta, double f1,
                                                   double f2, double f3);
ClosedFormSolution insulation_affine(const Eigen::Vector2d& xi, const Eigen::Vector2d& eta,
                                     double f1, double f2, double f3);

// Building blocks u_n(R,theta) = R^n D_k e(n theta) of the point-contact
// problem, n odd. The diagonal coefficient pairs D_k are residual-verified:
// they zero the four interface conditions exactly for the pressure
// differences alpha = f2-f1 = 2 beta/(2+beta) and beta = f3-f2, i.e.
// (sigma, tau) = ((alpha-beta)/4, (alpha+beta)/2).
double quadrant_block_alpha(double beta);
std::array<Eigen::Vector2d, 4> quadrant_diagonals(double beta);
ClosedFormSolution quadrant_building_block(int n, double beta);
// Same field straight from its complex-series form (cross-validation route).
Eigen::Vector2d quadrant_building_block_complex(int n, double beta, const Point2& x);

// A(w) = I + w nu (x) mu with mu = e1+e2, nu = e2-e1.
Eigen::Matrix2d quadrant_transfer(double w);

// Even parity: distance of the transfer-product around the four quadrants from
// its semigroup value A(sum). Odd parity: |det(C - I)| for the cycle matrix C,
// which vanishes exactly when Delta = alpha beta gamma delta + 4(beta-delta)(alpha+gamma) = 0.
enum class Parity { Even, Odd };
double quadrant_recurrence_check(double alpha, double beta, double gamma, double delta,
                                 Parity parity);

// The four coefficient vectors of the odd-mode chain, for the symmetric choice
// (gamma, delta) = (-beta, -alpha) with alpha on the Delta = 0 branch.
std::array<Eigen::Vector2d, 4> quadrant_eigvectors(double beta);

// 3x3 cofactor matrix (signed minors).
Eigen::Matrix3d cof3(const Eigen::Matrix3d& A);

// |A|^2 - sqrt(3)|cof A|, computed through singular values; nonnegative for
// every A and zero at the identity.
double cof3d_margin(const Eigen::Matrix3d& A);

// Bilinear cross term (A,B)_ij = eps_iab eps_jcd A_ac B_bd; (A,A) = 2 cof A.
Eigen::Matrix3d cross_term_3d(const Eigen::Matrix3d& A, const Eigen::Matrix3d& B);

}  // namespace meanco
