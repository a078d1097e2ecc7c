// Piecewise-constant pressure fields, sufficient-condition coercivity gates,
// and tuning of the point-contact parameters (sigma, tau).
#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meanco/geometry.hpp"

namespace meanco {

enum class PressureFamily { Island, Insulation, Quadrant, Custom };

struct PressureField {
  PressureFamily family = PressureFamily::Custom;
  std::map<int, double> values_by_tag;
  std::map<std::string, double> params;

  double at_tag(int tag) const;
  double max_abs() const;

  // f = M on tag 1, 0 on tag 2 (disk-disk / disk-sector geometries).
  static PressureField island(double M);
  // f = f_i on the strip omega_i, tags 1..3.
  static PressureField insulation(double f1, double f2, double f3);
  // f = sigma*chi_{Q2} - (tau+sigma)*chi_{Q1} + (tau-sigma)*chi_{Q3} + sigma*chi_{Q4}.
  static PressureField quadrant(double sigma, double tau);
  static PressureField custom(std::map<int, double> values);
  static PressureField zero(const Mesh& mesh);
};

enum class GateStatus { Certified, Boundary, Unknown, Violated };

std::string to_string(GateStatus s);

struct CoercivityVerdict {
  GateStatus status = GateStatus::Unknown;
  std::optional<double> gamma_lower_bound;
  std::string reason;
};

// |M| < 4 certifies with gamma = 1 - |M|/4; the threshold is sharp, so values
// beyond it are Violated rather than Unknown.
CoercivityVerdict gate_island(double M);

// Requires f2 = (f1+f3)/2 (tolerance 1e-12). Certifies only |f2-f1| < 2; the
// cited constant c > 2 is never guessed.
CoercivityVerdict gate_insulation(double f1, double f2, double f3);

// Certifies when y = |sigma|/2 + |tau|/sqrt(8) < 1; the bound is the split
// lambda*eps with lambda the midpoint of the feasible interval.
CoercivityVerdict gate_quadrant(double sigma, double tau);

// Frobenius norm |T0| < 2*sqrt(3) certifies (sufficiency only above it).
CoercivityVerdict gate_3d(const Eigen::Matrix3d& T0);

CoercivityVerdict gate_for(const PressureField& f);

// h(sigma, tau) = tau^4 - 8 tau^2 sigma^2 + 32 tau sigma + 16 sigma^4.
double quartic_h(double sigma, double tau);

// y(sigma, tau) = |sigma|/2 + |tau|/sqrt(8).
double feasibility_y(double sigma, double tau);

// Root of h(., tau) between -tau/2 and 0, located by bisection and polished by
// Newton. Throws if no sign change is bracketed.
double tune_quadrant_branch(double tau);

// All real sigma with h(sigma, tau) = 0, ascending (companion-matrix roots,
// Newton-polished).
std::vector<double> quadrant_branch_all_roots(double tau);

// Derived parameters of the point-contact pressure, always recomputed from
// (sigma, tau).
struct QuadrantParams {
  double sigma = 0.0, tau = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
  double p = 0.0, Delta = 0.0;

  static QuadrantParams from_sigma_tau(double sigma, double tau);
  // Recovers (sigma, tau) from beta on the Delta = 0 branch where
  // alpha = 2*beta/sqrt(beta^2+4).
  static QuadrantParams from_beta(double beta);
};

}  // namespace meanco
