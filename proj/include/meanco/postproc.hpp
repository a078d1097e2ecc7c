// Post-processing of discrete solutions: per-element determinants, interface
// jump extraction, stationarity residuals across interfaces, and errors
// against closed-form references.
#pragma once

#include <string>
#include <vector>

#include "meanco/fem.hpp"
#include "meanco/geometry.hpp"
#include "meanco/oracles.hpp"
#include "meanco/pressure.hpp"

namespace meanco {

std::vector<double> det_per_element(const Mesh& mesh, const NodalField& u);

struct JumpRecord {
  Point2 midpoint = Point2::Zero();
  double length = 0.0;
  double det_in = 0.0;   // lower-tag side
  double det_out = 0.0;  // higher-tag side
  double jump = 0.0;     // det_out - det_in
  double tangential_norm = 0.0;  // |d_tau u| along the edge
  double predicted = 0.0;        // (delta f / 2) |d_tau u|^2
};

struct JumpReport {
  std::vector<JumpRecord> edges;
  double jump_min = 0.0, jump_max = 0.0, jump_mean = 0.0;
  double abs_jump_mean = 0.0;
};

// Per-edge determinants from the two adjacent elements; the prediction uses
// the pressure difference f_in - f_out when a pressure is supplied.
JumpReport interface_jump(const Mesh& mesh, const NodalField& u,
                          const PressureField* f = nullptr);

struct JumpConditionResidual {
  std::vector<double> per_edge;  // euclidean norm of the defect per edge
  double aggregate_l2 = 0.0;     // sqrt(sum length * |defect|^2)
  double max_norm = 0.0;
};

// Defect of 2 d_nu u|in + 2 d_(-nu) u|out - (f_in - f_out) J d_tau u per
// interface edge, with nu oriented from the lower to the higher tag.
JumpConditionResidual jump_condition_residual(const Mesh& mesh, const NodalField& u,
                                              const PressureField& f);

// Same defect for a closed-form field, sampled at interface points of the
// analytic geometry (analytic one-sided gradients).
double oracle_jump_condition_residual(const ClosedFormSolution& s, const PressureField& f,
                                      const Point2& x, const Point2& nu, int tag_in, int tag_out);

struct ErrorPair {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

// Element-wise 3-point (edge-midpoint) quadrature of |u_h - u|^2 and
// |grad u_h - grad u|^2, with the reference evaluated by element tag.
ErrorPair errors_vs_oracle(const Mesh& mesh, const NodalField& u, const ClosedFormSolution& s);

// (1/2) u'K2 u = integral f det(grad u_h), exact for P1.
double weighted_det_integral(const Mesh& mesh, const PressureField& f, const NodalField& u);

// Legacy ASCII VTK (UNSTRUCTURED_GRID, CELL_DATA scalar "detgrad",
// POINT_DATA vector "u").
void write_vtk(const Mesh& mesh, const NodalField& u, const std::string& path);

// CSV with one row per element (kind=elem: centroid, det, tag) followed by one
// row per node (kind=node: position, u1, u2).
void write_csv(const Mesh& mesh, const NodalField& u, const std::string& path);

}  // namespace meanco
