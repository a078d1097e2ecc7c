#include "meanco/postproc.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace meanco {

std::vector<double> det_per_element(const Mesh& mesh, const NodalField& u) {
  std::vector<double> d(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) d[e] = u.det_grad(e);
  return d;
}

JumpReport interface_jump(const Mesh& mesh, const NodalField& u, const PressureField* f) {
  JumpReport rep;
  const auto edges = interface_edges(mesh);
  rep.edges.reserve(edges.size());
  double sum = 0.0, abs_sum = 0.0;
  bool first = true;
  for (const auto& e : edges) {
    JumpRecord r;
    r.midpoint = e.midpoint;
    r.length = e.length;
    r.det_in = u.det_grad(e.elem_in);
    r.det_out = u.det_grad(e.elem_out);
    r.jump = r.det_out - r.det_in;
    // P1 traces are single-valued along the edge; the tangential derivative is
    // the nodal difference, signed into the tau = J nu direction.
    const Point2 dvec = mesh.nodes[e.b] - mesh.nodes[e.a];
    const double sgn = dvec.dot(e.tangent) >= 0.0 ? 1.0 : -1.0;
    const Eigen::Vector2d dtau = sgn * (u.at(e.b) - u.at(e.a)) / e.length;
    r.tangential_norm = dtau.norm();
    if (f) {
      const double df = f->at_tag(mesh.element_tag[e.elem_in]) -
                        f->at_tag(mesh.element_tag[e.elem_out]);
      r.predicted = 0.5 * df * dtau.squaredNorm();
    }
    sum += r.jump;
    abs_sum += std::abs(r.jump);
    if (first) {
      rep.jump_min = rep.jump_max = r.jump;
      first = false;
    } else {
      rep.jump_min = std::min(rep.jump_min, r.jump);
      rep.jump_max = std::max(rep.jump_max, r.jump);
    }
    rep.edges.push_back(r);
  }
  if (!rep.edges.empty()) {
    rep.jump_mean = sum / rep.edges.size();
    rep.abs_jump_mean = abs_sum / rep.edges.size();
  }
  return rep;
}

JumpConditionResidual jump_condition_residual(const Mesh& mesh, const NodalField& u,
                                              const PressureField& f) {
  JumpConditionResidual out;
  const auto edges = interface_edges(mesh);
  out.per_edge.reserve(edges.size());
  double acc = 0.0;
  for (const auto& e : edges) {
    const Eigen::Matrix2d gin = u.grad(e.elem_in);
    const Eigen::Matrix2d gout = u.grad(e.elem_out);
    const Point2 dvec = mesh.nodes[e.b] - mesh.nodes[e.a];
    const double sgn = dvec.dot(e.tangent) >= 0.0 ? 1.0 : -1.0;
    const Eigen::Vector2d dtau = sgn * (u.at(e.b) - u.at(e.a)) / e.length;
    const double df =
        f.at_tag(mesh.element_tag[e.elem_in]) - f.at_tag(mesh.element_tag[e.elem_out]);
    const Eigen::Vector2d defect =
        2.0 * (gin * e.normal) - 2.0 * (gout * e.normal) - df * (kJ * dtau);
    const double nrm = defect.norm();
    out.per_edge.push_back(nrm);
    out.max_norm = std::max(out.max_norm, nrm);
    acc += e.length * nrm * nrm;
  }
  out.aggregate_l2 = std::sqrt(acc);
  return out;
}

double oracle_jump_condition_residual(const ClosedFormSolution& s, const PressureField& f,
                                      const Point2& x, const Point2& nu, int tag_in,
                                      int tag_out) {
  const Eigen::Matrix2d gin = s.gradient(x, tag_in);
  const Eigen::Matrix2d gout = s.gradient(x, tag_out);
  const Point2 tau{-nu.y(), nu.x()};
  const Eigen::Vector2d dtau = gin * tau;  // traces agree; either side works
  const double df = f.at_tag(tag_in) - f.at_tag(tag_out);
  return (2.0 * (gin * nu) - 2.0 * (gout * nu) - df * (kJ * dtau)).norm();
}

ErrorPair errors_vs_oracle(const Mesh& mesh, const NodalField& u, const ClosedFormSolution& s) {
  double l2 = 0.0, h1 = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& t = mesh.elements[e];
    const double a = mesh.signed_area(e);
    const int tag = mesh.element_tag[e];
    const Eigen::Matrix2d gh = u.grad(e);
    // Edge-midpoint rule, exact to quadratic integrands.
    for (int k = 0; k < 3; ++k) {
      const Point2 q = 0.5 * (mesh.nodes[t[k]] + mesh.nodes[t[(k + 1) % 3]]);
      const Eigen::Vector2d uh = 0.5 * (u.at(t[k]) + u.at(t[(k + 1) % 3]));
      l2 += (a / 3.0) * (uh - s.value(q)).squaredNorm();
      h1 += (a / 3.0) * (gh - s.gradient(q, tag)).squaredNorm();
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

double weighted_det_integral(const Mesh& mesh, const PressureField& f, const NodalField& u) {
  return 0.5 * assemble_K2(mesh, f).quad(u.coeffs);
}

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_vtk(const Mesh& mesh, const NodalField& u, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << "# vtk DataFile Version 3.0\n";
  f << "meanco field export\n";
  f << "ASCII\n";
  f << "DATASET UNSTRUCTURED_GRID\n";
  f << "POINTS " << mesh.node_count() << " double\n";
  for (const auto& p : mesh.nodes) f << fmt17(p.x()) << " " << fmt17(p.y()) << " 0\n";
  f << "CELLS " << mesh.element_count() << " " << 4 * mesh.element_count() << "\n";
  for (const auto& t : mesh.elements) f << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  f << "CELL_TYPES " << mesh.element_count() << "\n";
  for (int e = 0; e < mesh.element_count(); ++e) f << "5\n";
  f << "CELL_DATA " << mesh.element_count() << "\n";
  f << "SCALARS detgrad double 1\n";
  f << "LOOKUP_TABLE default\n";
  for (int e = 0; e < mesh.element_count(); ++e) f << fmt17(u.det_grad(e)) << "\n";
  f << "POINT_DATA " << mesh.node_count() << "\n";
  f << "VECTORS u double\n";
  for (int i = 0; i < mesh.node_count(); ++i) {
    const auto v = u.at(i);
    f << fmt17(v(0)) << " " << fmt17(v(1)) << " 0\n";
  }
}

void write_csv(const Mesh& mesh, const NodalField& u, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << "kind,index,x,y,v1,v2\n";
  for (int e = 0; e < mesh.element_count(); ++e) {
    const Point2 c = mesh.centroid(e);
    f << "elem," << e << "," << fmt17(c.x()) << "," << fmt17(c.y()) << ","
      << fmt17(u.det_grad(e)) << "," << mesh.element_tag[e] << "\n";
  }
  for (int i = 0; i < mesh.node_count(); ++i) {
    const auto v = u.at(i);
    f << "node," << i << "," << fmt17(mesh.nodes[i].x()) << "," << fmt17(mesh.nodes[i].y()) << ","
      << fmt17(v(0)) << "," << fmt17(v(1)) << "\n";
  }
}

}  // namespace meanco
