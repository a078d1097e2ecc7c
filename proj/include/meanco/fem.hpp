// P1 assembly of the Dirichlet and pressure-cofactor forms, the linear
// stationarity solve under Dirichlet data, energies, and the discrete
// coercivity eigenvalue.
//
// Coefficients of a field are ordered (u1 at all nodes, then u2 at all
// nodes); the quadratic forms satisfy
//   u' K1 u = integral |grad u|^2,   u' K2 u = 2 integral f det(grad u),
// both exact for P1 (element gradients are constant, f constant per element).
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <map>
#include <string>

#include "meanco/geometry.hpp"
#include "meanco/oracles.hpp"
#include "meanco/pressure.hpp"

namespace meanco {

struct SparseOperator {
  Eigen::SparseMatrix<double> K;  // 2n x 2n, symmetric

  int dim() const { return static_cast<int>(K.rows()); }
  double quad(const Eigen::VectorXd& u) const { return u.dot(K * u); }
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const { return K * u; }
};

struct NodalField {
  const Mesh* mesh = nullptr;
  Eigen::VectorXd coeffs;  // length 2n

  Eigen::Vector2d at(int node) const {
    const int n = mesh->node_count();
    return {coeffs[node], coeffs[n + node]};
  }
  Eigen::Matrix2d grad(int elem) const;
  double det_grad(int elem) const { return grad(elem).determinant(); }
};

struct BoundaryData {
  std::map<int, Eigen::Vector2d> values;  // node -> prescribed value

  // Throws unless defined on exactly the mesh's boundary nodes.
  void validate(const Mesh& mesh) const;

  static BoundaryData identity(const Mesh& mesh);
  static BoundaryData from_function(const Mesh& mesh,
                                    const std::function<Eigen::Vector2d(const Point2&)>& g);
  static BoundaryData from_oracle(const Mesh& mesh, const ClosedFormSolution& s);
  static BoundaryData from_trace(const Mesh& mesh, const AngularTrace& t);

  double max_norm() const;
};

NodalField interpolate(const Mesh& mesh, const std::function<Eigen::Vector2d(const Point2&)>& u);
NodalField interpolate(const Mesh& mesh, const ClosedFormSolution& s);

// Block-diagonal pair of scalar Laplace stiffness matrices.
SparseOperator assemble_K1(const Mesh& mesh);

// Symmetric form psi' K2 u = integral f cof(grad psi) : grad u.
SparseOperator assemble_K2(const Mesh& mesh, const PressureField& f);

// F_h(u) = u'K1 u + (1/2) u'K2 u.
double energy_F(const SparseOperator& K1, const SparseOperator& K2, const Eigen::VectorXd& u);
double energy_F(const Mesh& mesh, const PressureField& f, const NodalField& u);

// D_h(u) = u'K1 u.
double energy_D(const SparseOperator& K1, const Eigen::VectorXd& u);

// a_h(u, phi) = phi' (2K1 + K2) u.
double el_bilinear(const SparseOperator& K1, const SparseOperator& K2, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& phi);

// Max |(2K1+K2)u| over interior rows.
double el_residual(const Mesh& mesh, const PressureField& f, const NodalField& u);

struct SolveReport {
  double residual = 0.0;   // interior infinity norm of (2K1+K2)u
  double energy_F = 0.0;
  double energy_D = 0.0;
  std::string gate;        // verdict of the pressure gate, for logging
};

// Solves the interior rows of (2K1+K2)u = 0 with u = g0 on the boundary, by
// symmetric sparse factorization (Dirichlet conditions eliminated, not
// penalized). Warns on stderr when the gate reports Violated.
NodalField solve_el(const Mesh& mesh, const PressureField& f, const BoundaryData& g0,
                    SolveReport* report = nullptr);

// Smallest generalized eigenvalue of (K1 + K2/2) v = gamma K1 v on interior
// degrees of freedom: the minimal discrete Rayleigh quotient F_h/D_h over
// boundary-vanishing fields. Shift-invert Lanczos from a shift below the
// spectrum (where the shifted operator is positive definite), eigenvalue
// residual tolerance 1e-10.
double min_coercivity_eig(const Mesh& mesh, const PressureField& f);

// Iterative minimization of F_h over fields matching g0 (conjugate gradients
// on the interior block; descent is monotone). Cross-checks solve_el.
NodalField minimize_energy_crosscheck(const Mesh& mesh, const PressureField& f,
                                      const BoundaryData& g0, int max_iter = 20000,
                                      std::vector<double>* energy_trace = nullptr);

}  // namespace meanco
