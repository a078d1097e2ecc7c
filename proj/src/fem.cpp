#include "meanco/fem.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>

namespace meanco {

Eigen::Matrix2d NodalField::grad(int elem) const {
  const auto g = mesh->hat_gradients(elem);
  const auto& t = mesh->elements[elem];
  const int n = mesh->node_count();
  Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
  for (int k = 0; k < 3; ++k) {
    G.row(0) += coeffs[t[k]] * g[k].transpose();
    G.row(1) += coeffs[n + t[k]] * g[k].transpose();
  }
  return G;
}

void BoundaryData::validate(const Mesh& mesh) const {
  for (const auto& [node, v] : values) {
    if (node < 0 || node >= mesh.node_count() || !mesh.node_on_boundary[node])
      throw std::invalid_argument("boundary data on non-boundary node " + std::to_string(node));
  }
  for (int i = 0; i < mesh.node_count(); ++i)
    if (mesh.node_on_boundary[i] && !values.count(i))
      throw std::invalid_argument("boundary data missing at node " + std::to_string(i));
}

BoundaryData BoundaryData::identity(const Mesh& mesh) {
  return from_function(mesh, [](const Point2& x) { return x; });
}

BoundaryData BoundaryData::from_function(const Mesh& mesh,
                                         const std::function<Eigen::Vector2d(const Point2&)>& g) {
  BoundaryData b;
  for (int i = 0; i < mesh.node_count(); ++i)
    if (mesh.node_on_boundary[i]) b.values[i] = g(mesh.nodes[i]);
  return b;
}

BoundaryData BoundaryData::from_oracle(const Mesh& mesh, const ClosedFormSolution& s) {
  return from_function(mesh, [&](const Point2& x) { return s.value(x); });
}

BoundaryData BoundaryData::from_trace(const Mesh& mesh, const AngularTrace& t) {
  return from_function(mesh,
                       [&](const Point2& x) { return t.at_angle(std::atan2(x.y(), x.x())); });
}

double BoundaryData::max_norm() const {
  double m = 0.0;
  for (const auto& [node, v] : values) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

NodalField interpolate(const Mesh& mesh,
                       const std::function<Eigen::Vector2d(const Point2&)>& u) {
  NodalField f;
  f.mesh = &mesh;
  const int n = mesh.node_count();
  f.coeffs.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d v = u(mesh.nodes[i]);
    f.coeffs[i] = v(0);
    f.coeffs[n + i] = v(1);
  }
  return f;
}

NodalField interpolate(const Mesh& mesh, const ClosedFormSolution& s) {
  return interpolate(mesh, [&](const Point2& x) { return s.value(x); });
}

SparseOperator assemble_K1(const Mesh& mesh) {
  const int n = mesh.node_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.element_count() * 18);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double a = mesh.signed_area(e);
    if (!(a > 0.0)) throw std::runtime_error("assemble_K1: degenerate element " + std::to_string(e));
    const auto g = mesh.hat_gradients(e);
    const auto& t = mesh.elements[e];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double v = a * g[i].dot(g[j]);
        trip.emplace_back(t[i], t[j], v);
        trip.emplace_back(n + t[i], n + t[j], v);
      }
  }
  SparseOperator op;
  op.K.resize(2 * n, 2 * n);
  op.K.setFromTriplets(trip.begin(), trip.end());
  return op;
}

SparseOperator assemble_K2(const Mesh& mesh, const PressureField& f) {
  const int n = mesh.node_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.element_count() * 18);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double fe = f.at_tag(mesh.element_tag[e]);
    if (fe == 0.0) continue;
    const double a = mesh.signed_area(e);
    if (!(a > 0.0)) throw std::runtime_error("assemble_K2: degenerate element " + std::to_string(e));
    const auto g = mesh.hat_gradients(e);
    const auto& t = mesh.elements[e];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        // cross(grad_i, grad_j) couples component 1 test dofs with
        // component 2 trial dofs and vice versa with opposite sign.
        const double c = fe * a * (g[i].x() * g[j].y() - g[i].y() * g[j].x());
        if (c == 0.0) continue;
        trip.emplace_back(t[i], n + t[j], c);
        trip.emplace_back(n + t[i], t[j], -c);
      }
  }
  SparseOperator op;
  op.K.resize(2 * n, 2 * n);
  op.K.setFromTriplets(trip.begin(), trip.end());
  return op;
}

double energy_F(const SparseOperator& K1, const SparseOperator& K2, const Eigen::VectorXd& u) {
  return K1.quad(u) + 0.5 * K2.quad(u);
}

double energy_F(const Mesh& mesh, const PressureField& f, const NodalField& u) {
  return energy_F(assemble_K1(mesh), assemble_K2(mesh, f), u.coeffs);
}

double energy_D(const SparseOperator& K1, const Eigen::VectorXd& u) { return K1.quad(u); }

double el_bilinear(const SparseOperator& K1, const SparseOperator& K2, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& phi) {
  return phi.dot(2.0 * (K1.K * u) + K2.K * u);
}

namespace {

std::vector<int> interior_dofs(const Mesh& mesh) {
  const int n = mesh.node_count();
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (!mesh.node_on_boundary[i]) idx.push_back(i);
  std::vector<int> dofs;
  dofs.reserve(2 * idx.size());
  for (int i : idx) dofs.push_back(i);
  for (int i : idx) dofs.push_back(n + i);
  return dofs;
}

Eigen::SparseMatrix<double> restrict_to(const Eigen::SparseMatrix<double>& K,
                                        const std::vector<int>& dofs) {
  std::vector<int> pos(K.rows(), -1);
  for (std::size_t k = 0; k < dofs.size(); ++k) pos[dofs[k]] = static_cast<int>(k);
  std::vector<Eigen::Triplet<double>> trip;
  for (int col = 0; col < K.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      const int r = pos[it.row()], c = pos[it.col()];
      if (r >= 0 && c >= 0) trip.emplace_back(r, c, it.value());
    }
  Eigen::SparseMatrix<double> R(dofs.size(), dofs.size());
  R.setFromTriplets(trip.begin(), trip.end());
  return R;
}

Eigen::VectorXd full_vector_from_boundary(const Mesh& mesh, const BoundaryData& g0) {
  const int n = mesh.node_count();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * n);
  for (const auto& [node, v] : g0.values) {
    u[node] = v(0);
    u[n + node] = v(1);
  }
  return u;
}

double interior_residual(const Mesh& mesh, const Eigen::SparseMatrix<double>& A,
                         const Eigen::VectorXd& u) {
  const Eigen::VectorXd r = A * u;
  const int n = mesh.node_count();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    if (!mesh.node_on_boundary[i]) m = std::max({m, std::abs(r[i]), std::abs(r[n + i])});
  return m;
}

}  // namespace

double el_residual(const Mesh& mesh, const PressureField& f, const NodalField& u) {
  const Eigen::SparseMatrix<double> A =
      2.0 * assemble_K1(mesh).K + assemble_K2(mesh, f).K;
  return interior_residual(mesh, A, u.coeffs);
}

NodalField solve_el(const Mesh& mesh, const PressureField& f, const BoundaryData& g0,
                    SolveReport* report) {
  g0.validate(mesh);
  const auto gate = gate_for(f);
  if (gate.status == GateStatus::Violated)
    std::cerr << "solve_el: warning: pressure gate Violated (" << gate.reason
              << "); solving anyway\n";

  const SparseOperator K1 = assemble_K1(mesh);
  const SparseOperator K2 = assemble_K2(mesh, f);
  const Eigen::SparseMatrix<double> A = 2.0 * K1.K + K2.K;

  const auto dofs = interior_dofs(mesh);
  Eigen::VectorXd u = full_vector_from_boundary(mesh, g0);
  const Eigen::VectorXd rhs_full = -(A * u);
  Eigen::VectorXd rhs(dofs.size());
  for (std::size_t k = 0; k < dofs.size(); ++k) rhs[k] = rhs_full[dofs[k]];

  const Eigen::SparseMatrix<double> Aii = restrict_to(A, dofs);
  Eigen::VectorXd x;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Aii);
  if (ldlt.info() == Eigen::Success) {
    x = ldlt.solve(rhs);
  }
  if (ldlt.info() != Eigen::Success || !x.allFinite()) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(Aii);
    if (lu.info() != Eigen::Success)
      throw std::runtime_error("solve_el: interior system singular (gate " +
                               to_string(gate.status) + ")");
    x = lu.solve(rhs);
    if (!x.allFinite())
      throw std::runtime_error("solve_el: solver produced non-finite values (gate " +
                               to_string(gate.status) + ")");
  }
  for (std::size_t k = 0; k < dofs.size(); ++k) u[dofs[k]] = x[k];

  NodalField sol;
  sol.mesh = &mesh;
  sol.coeffs = u;
  const double res = interior_residual(mesh, A, u);
  const double tol = 1e-8 * (1.0 + g0.max_norm());
  if (res >= tol)
    throw std::runtime_error("solve_el: residual " + std::to_string(res) +
                             " exceeds tolerance " + std::to_string(tol));
  if (report) {
    report->residual = res;
    report->energy_F = energy_F(K1, K2, u);
    report->energy_D = energy_D(K1, u);
    report->gate = to_string(gate.status);
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Discrete coercivity constant
// ---------------------------------------------------------------------------

double min_coercivity_eig(const Mesh& mesh, const PressureField& f) {
  const auto dofs = interior_dofs(mesh);
  if (dofs.empty()) throw std::invalid_argument("min_coercivity_eig: mesh has no interior node");

  const SparseOperator K1 = assemble_K1(mesh);
  const SparseOperator K2 = assemble_K2(mesh, f);
  const Eigen::SparseMatrix<double> B =
      restrict_to(Eigen::SparseMatrix<double>(K1.K + 0.5 * K2.K), dofs);
  const Eigen::SparseMatrix<double> M = restrict_to(K1.K, dofs);

  // Shift-invert Lanczos on (B, M) in the M-inner product. Pointwise
  // |f det| <= (|f|/2)|grad|^2 puts every Rayleigh quotient above
  // 1 - |f|/2, so B - sigma0*M is positive definite at the shift below and
  // one robust factorization suffices; the largest Ritz value of
  // (B - sigma0*M)^{-1} M maps back to the smallest pencil eigenvalue.
  const double sigma0 = 1.0 - 0.5 * f.max_abs() - 0.01;
  const Eigen::SparseMatrix<double> S = B - sigma0 * M;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(S);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("min_coercivity_eig: shifted factorization failed");

  const int n = static_cast<int>(S.rows());
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = gauss(rng);
  Eigen::VectorXd Mq = M * q;
  const double q_norm = std::sqrt(q.dot(Mq));
  q /= q_norm;
  Mq /= q_norm;

  std::vector<Eigen::VectorXd> Q{q}, MQ{Mq};
  std::vector<double> alpha, beta;
  const int kmax = std::min(n, 400);
  double gamma = sigma0;
  for (int k = 0; k < kmax; ++k) {
    Eigen::VectorXd w = ldlt.solve(MQ[k]);
    const double a = w.dot(MQ[k]);
    alpha.push_back(a);
    w -= a * Q[k];
    if (k > 0) w -= beta[k - 1] * Q[k - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < Q.size(); ++i) w -= w.dot(MQ[i]) * Q[i];
    const Eigen::VectorXd Mw = M * w;
    const double b = std::sqrt(std::max(0.0, w.dot(Mw)));

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) T(i, i) = alpha[i];
    for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const double theta = es.eigenvalues()(m - 1);
    if (!(theta > 0.0))
      throw std::runtime_error("min_coercivity_eig: spectral transform left the valid range");
    gamma = sigma0 + 1.0 / theta;
    const double resid = b * std::abs(es.eigenvectors()(m - 1, m - 1)) / (theta * theta);
    if (resid < 1e-10 || b < 1e-13) return gamma;
    beta.push_back(b);
    Q.push_back(w / b);
    MQ.push_back(Mw / b);
  }
  throw std::runtime_error("min_coercivity_eig: Lanczos did not converge within the iteration cap");
}

NodalField minimize_energy_crosscheck(const Mesh& mesh, const PressureField& f,
                                      const BoundaryData& g0, int max_iter,
                                      std::vector<double>* energy_trace) {
  g0.validate(mesh);
  const auto gate = gate_for(f);

  const SparseOperator K1 = assemble_K1(mesh);
  const SparseOperator K2 = assemble_K2(mesh, f);
  const Eigen::SparseMatrix<double> A = 2.0 * K1.K + K2.K;
  const auto dofs = interior_dofs(mesh);
  const Eigen::SparseMatrix<double> Aii = restrict_to(A, dofs);

  Eigen::VectorXd u = full_vector_from_boundary(mesh, g0);
  const Eigen::VectorXd rhs_full = -(A * u);
  Eigen::VectorXd b(dofs.size());
  for (std::size_t k = 0; k < dofs.size(); ++k) b[k] = rhs_full[dofs[k]];

  // Jacobi-preconditioned CG; F_h restricted to the interior block is the
  // quadratic (1/2) x'Aii x - b'x up to a constant, so its value decreases
  // monotonically along the iteration.
  Eigen::VectorXd dinv(dofs.size());
  for (std::size_t k = 0; k < dofs.size(); ++k) {
    const double d = Aii.coeff(static_cast<int>(k), static_cast<int>(k));
    dinv[k] = d > 0.0 ? 1.0 / d : 1.0;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dofs.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = dinv.asDiagonal() * r;
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const double btol = 1e-14 * std::max(1.0, b.norm());

  auto record = [&]() {
    if (!energy_trace) return;
    Eigen::VectorXd full = u;
    for (std::size_t k = 0; k < dofs.size(); ++k) full[dofs[k]] += x[k];
    energy_trace->push_back(energy_F(K1, K2, full));
  };
  record();

  for (int it = 0; it < max_iter; ++it) {
    if (r.norm() <= btol) break;
    const Eigen::VectorXd Ap = Aii * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0))
      throw std::runtime_error(
          "minimize_energy_crosscheck: descent hit nonpositive curvature (gate " +
          to_string(gate.status) + ")");
    const double alpha = rz / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    record();
    z = dinv.asDiagonal() * r;
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (r.norm() > 1e-8 * std::max(1.0, b.norm()))
    throw std::runtime_error("minimize_energy_crosscheck: did not converge (gate " +
                             to_string(gate.status) + ")");

  for (std::size_t k = 0; k < dofs.size(); ++k) u[dofs[k]] += x[k];
  NodalField sol;
  sol.mesh = &mesh;
  sol.coeffs = u;
  return sol;
}

}  // namespace meanco
