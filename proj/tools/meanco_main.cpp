// meanco: mesh generation, stationarity solves, coercivity certification,
// parameter tuning, closed-form evaluation, verification and export for the
// pressure-augmented Dirichlet energy on the four model geometries.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "meanco/fem.hpp"
#include "meanco/geometry.hpp"
#include "meanco/jsonio.hpp"
#include "meanco/oracles.hpp"
#include "meanco/postproc.hpp"
#include "meanco/pressure.hpp"

using namespace meanco;
using nlohmann::ordered_json;

namespace {

struct CommonOpts {
  std::string domain = "diskdisk";
  double rho = 0.5;
  std::string pressure = "island";
  double M = 3.0;
  double f1 = 0.0, f2 = 1.0, f3 = 2.0;
  double sigma = 0.0, tau = 0.0;
  double beta = 1.0;
  int block_n = 1;
  double h = 0.05;
  int refine = 0;
  std::string bc = "identity";
  double xi1 = 0.0, xi2 = 1.0, eta1 = 1.0, eta2 = 0.0;
};

void add_domain_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->set_help_flag("--help", "print help");  // frees -h for the mesh size
  cmd->add_option("--domain", o.domain, "diskdisk|sector|insulation|quadrant")
      ->check(CLI::IsMember({"diskdisk", "sector", "insulation", "quadrant"}));
  cmd->add_option("--rho", o.rho, "interface radius (diskdisk)");
  cmd->add_option("--h", o.h, "target mesh size");
  cmd->add_option("--refine", o.refine, "interface refinement levels");
}

void add_pressure_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--pressure", o.pressure, "island|insulation|quadrant|block|none")
      ->check(CLI::IsMember({"island", "insulation", "quadrant", "block", "none"}));
  cmd->add_option("--M", o.M, "island magnitude");
  cmd->add_option("--f1", o.f1);
  cmd->add_option("--f2", o.f2);
  cmd->add_option("--f3", o.f3);
  cmd->add_option("--sigma", o.sigma);
  cmd->add_option("--tau", o.tau);
  cmd->add_option("--beta", o.beta, "building-block parameter (pressure 'block')");
  cmd->add_option("--n", o.block_n, "building-block mode (odd)");
}

DomainSpec make_domain(const CommonOpts& o) {
  if (o.domain == "diskdisk") return DomainSpec::disk_disk(o.rho);
  if (o.domain == "sector") return DomainSpec::disk_sector();
  if (o.domain == "insulation") return DomainSpec::insulation_strip();
  return DomainSpec::quadrant_square();
}

PressureField make_pressure(const CommonOpts& o, const Mesh& mesh) {
  if (o.pressure == "island") return PressureField::island(o.M);
  if (o.pressure == "insulation") return PressureField::insulation(o.f1, o.f2, o.f3);
  if (o.pressure == "quadrant") return PressureField::quadrant(o.sigma, o.tau);
  if (o.pressure == "block") {
    const double alpha = quadrant_block_alpha(o.beta);
    return PressureField::quadrant((alpha - o.beta) / 4.0, (alpha + o.beta) / 2.0);
  }
  return PressureField::zero(mesh);
}

std::optional<ClosedFormSolution> make_oracle(const CommonOpts& o) {
  if (o.domain == "diskdisk" && o.pressure == "island")
    return disk_disk_solution(o.rho, o.M);
  if (o.domain == "sector" && (o.pressure == "island" || o.pressure == "none"))
    return disk_sector_basic(o.pressure == "none" ? 0.0 : o.M);
  if (o.domain == "insulation" && o.pressure == "insulation")
    return insulation_affine(Eigen::Vector2d{o.xi1, o.xi2}, Eigen::Vector2d{o.eta1, o.eta2},
                             o.f1, o.f2, o.f3);
  if (o.domain == "quadrant" && o.pressure == "block")
    return quadrant_building_block(o.block_n, o.beta);
  return std::nullopt;
}

BoundaryData make_bc(const CommonOpts& o, const Mesh& mesh) {
  if (o.bc == "identity") return BoundaryData::identity(mesh);
  if (o.bc == "oracle-trace") {
    const auto oracle = make_oracle(o);
    if (!oracle)
      throw std::runtime_error("no closed form available for this domain/pressure combination");
    return BoundaryData::from_oracle(mesh, *oracle);
  }
  if (o.bc.rfind("file:", 0) == 0) {
    const auto j = read_json(o.bc.substr(5));
    BoundaryData g;
    for (const auto& row : j.at("boundary"))
      g.values[row.at(0).get<int>()] =
          Eigen::Vector2d{row.at(1).get<double>(), row.at(2).get<double>()};
    return g;
  }
  throw std::runtime_error("unknown --bc selector: " + o.bc);
}

ordered_json gate_json(const CoercivityVerdict& v) {
  ordered_json j;
  j["status"] = to_string(v.status);
  if (v.gamma_lower_bound)
    j["gamma_lower_bound"] = *v.gamma_lower_bound;
  else
    j["gamma_lower_bound"] = nullptr;
  j["reason"] = v.reason;
  return j;
}

ordered_json verification_json(const Mesh& mesh, const PressureField& f, const NodalField& u,
                               const ClosedFormSolution* oracle) {
  ordered_json j;
  const auto dets = det_per_element(mesh, u);
  double dmin = dets.empty() ? 0.0 : dets[0], dmax = dmin;
  for (double d : dets) {
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  j["det_min"] = dmin;
  j["det_max"] = dmax;
  const auto rep = interface_jump(mesh, u, &f);
  j["jump_count"] = static_cast<int>(rep.edges.size());
  j["jump_min"] = rep.jump_min;
  j["jump_max"] = rep.jump_max;
  j["jump_mean"] = rep.jump_mean;
  j["jump_mean_abs"] = rep.abs_jump_mean;
  const auto jc = jump_condition_residual(mesh, u, f);
  j["jc_residual_l2"] = jc.aggregate_l2;
  j["jc_residual_max"] = jc.max_norm;
  j["el_residual"] = el_residual(mesh, f, u);
  const auto K1 = assemble_K1(mesh);
  const auto K2 = assemble_K2(mesh, f);
  j["energy_F"] = energy_F(K1, K2, u.coeffs);
  j["energy_D"] = energy_D(K1, u.coeffs);
  j["weighted_det"] = 0.5 * K2.quad(u.coeffs);
  if (oracle) {
    const auto err = errors_vs_oracle(mesh, u, *oracle);
    j["L2_error"] = err.l2;
    j["H1_error"] = err.h1_semi;
  }
  j["gate"] = gate_json(gate_for(f));
  return j;
}

ordered_json solution_json(const Mesh& mesh, const NodalField& u, const SolveReport& rep) {
  ordered_json j;
  j["mesh_hash"] = mesh_hash(mesh);
  ordered_json coeffs = ordered_json::array();
  for (int i = 0; i < u.coeffs.size(); ++i) coeffs.push_back(u.coeffs[i]);
  j["coefficients"] = std::move(coeffs);
  j["energy_F"] = rep.energy_F;
  j["energy_D"] = rep.energy_D;
  j["residual"] = rep.residual;
  return j;
}

NodalField load_solution(const Mesh& mesh, const std::string& path) {
  const auto j = read_json(path);
  if (j.at("mesh_hash").get<std::string>() != mesh_hash(mesh))
    throw std::runtime_error("solution file does not match the mesh (hash mismatch)");
  NodalField u;
  u.mesh = &mesh;
  const auto& c = j.at("coefficients");
  u.coeffs.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) u.coeffs[i] = c[i].get<double>();
  if (u.coeffs.size() != 2 * mesh.node_count())
    throw std::runtime_error("solution coefficient count does not match the mesh");
  return u;
}

Mesh build_from_opts(const CommonOpts& o) {
  Mesh m = build_mesh(make_domain(o), o.h);
  if (o.refine > 0) m = refine_toward_interface(m, o.refine);
  return m;
}

int run_mesh(const CommonOpts& o, const std::string& out) {
  const Mesh m = build_from_opts(o);
  write_mesh(m, out);
  ordered_json j;
  j["nodes"] = m.node_count();
  j["elements"] = m.element_count();
  j["area"] = m.total_area();
  j["max_diameter"] = m.max_diameter();
  j["hash"] = mesh_hash(m);
  std::cout << dump_json17(j, 1) << "\n";
  return 0;
}

int run_solve(const CommonOpts& o, const std::string& out, const std::string& mesh_out,
              const std::string& verify_out) {
  const Mesh m = build_from_opts(o);
  const PressureField f = make_pressure(o, m);
  SolveReport rep;
  const NodalField u = solve_el(m, f, make_bc(o, m), &rep);
  if (!mesh_out.empty()) write_mesh(m, mesh_out);
  if (!out.empty()) write_json17(solution_json(m, u, rep), out);
  const auto oracle = make_oracle(o);
  const auto ver = verification_json(m, f, u, oracle ? &*oracle : nullptr);
  if (!verify_out.empty()) write_json17(ver, verify_out);
  std::cout << dump_json17(ver, 1) << "\n";
  return 0;
}

int run_verify(const CommonOpts& o, const std::string& mesh_path, const std::string& sol_path,
               const std::string& oracle_name, const std::string& out) {
  const Mesh m = read_mesh(mesh_path);
  const NodalField u = load_solution(m, sol_path);
  const PressureField f = make_pressure(o, m);
  std::optional<ClosedFormSolution> oracle;
  if (!oracle_name.empty() && oracle_name != "none") {
    CommonOpts oo = o;
    oo.domain = oracle_name;
    if (oracle_name == "quadrant") oo.pressure = "block";
    oracle = make_oracle(oo);
    if (!oracle) throw std::runtime_error("unknown oracle: " + oracle_name);
  }
  const auto ver = verification_json(m, f, u, oracle ? &*oracle : nullptr);
  if (!out.empty()) write_json17(ver, out);
  std::cout << dump_json17(ver, 1) << "\n";
  return 0;
}

int run_tune(double tau, bool all_roots) {
  ordered_json j;
  j["tau"] = tau;
  const double sigma = tune_quadrant_branch(tau);
  j["sigma"] = sigma;
  j["h_residual"] = quartic_h(sigma, tau);
  j["y"] = feasibility_y(sigma, tau);
  j["verdict"] = to_string(gate_quadrant(sigma, tau).status);
  if (all_roots) {
    ordered_json roots = ordered_json::array();
    for (double r : quadrant_branch_all_roots(tau)) {
      ordered_json rj;
      rj["sigma"] = r;
      rj["h_residual"] = quartic_h(r, tau);
      rj["y"] = feasibility_y(r, tau);
      roots.push_back(rj);
    }
    j["roots"] = std::move(roots);
  }
  std::cout << dump_json17(j, 1) << "\n";
  return 0;
}

int run_coercivity(const CommonOpts& o) {
  const Mesh m = build_from_opts(o);
  const PressureField f = make_pressure(o, m);
  ordered_json j;
  j["domain"] = o.domain;
  j["pressure"] = o.pressure;
  j["nodes"] = m.node_count();
  j["elements"] = m.element_count();
  j["gate"] = gate_json(gate_for(f));
  j["gamma_h"] = min_coercivity_eig(m, f);
  std::cout << dump_json17(j, 1) << "\n";
  return 0;
}

int run_oracle(const CommonOpts& o, const std::string& which, int samples, unsigned seed,
               const std::string& out) {
  CommonOpts oo = o;
  oo.domain = which;
  if (which == "quadrant") oo.pressure = "block";
  if (which == "insulation") oo.pressure = "insulation";
  if (which == "diskdisk" || which == "sector") oo.pressure = "island";
  const auto oracle = make_oracle(oo);
  if (!oracle) throw std::runtime_error("unknown oracle: " + which);
  const DomainSpec spec = make_domain(oo);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  auto sample_point = [&]() -> Point2 {
    for (;;) {
      Point2 x{d(rng), d(rng)};
      switch (spec.kind) {
        case Domain::DiskDisk:
        case Domain::DiskSector:
          if (x.norm() < 1.0) return x;
          break;
        case Domain::InsulationStrip:
          return {x.x(), 0.5 * x.y()};
        default:
          return x;
      }
    }
  };

  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open " + out + " for writing");
  f << "x,y,u1,u2,det,region\n";
  char buf[256];
  for (int i = 0; i < samples; ++i) {
    const Point2 x = sample_point();
    const int tag = region_tag(spec, x);
    const auto v = oracle->value(x);
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", x.x(), x.y(), v(0),
                  v(1), oracle->det(x, tag), tag);
    f << buf;
  }
  std::cout << "wrote " << samples << " samples to " << out << "\n";
  return 0;
}

int run_export(const std::string& mesh_path, const std::string& sol_path,
               const std::string& format, const std::string& out) {
  const Mesh m = read_mesh(mesh_path);
  const NodalField u = load_solution(m, sol_path);
  if (format == "vtk")
    write_vtk(m, u, out);
  else if (format == "csv")
    write_csv(m, u, out);
  else
    throw std::runtime_error("unknown export format: " + format);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_repro(const std::string& which, const std::string& out_dir) {
  CommonOpts o;
  if (which == "diskdisk") {
    o.domain = "diskdisk";
    o.rho = 0.5;
    o.pressure = "island";
    o.M = 3.0;
    o.bc = "identity";
    o.h = 0.028;
    o.refine = 2;
  } else if (which == "sector") {
    o.domain = "sector";
    o.pressure = "island";
    o.M = 3.0;
    o.bc = "oracle-trace";
    o.h = 0.032;
    o.refine = 2;
  } else {
    throw std::runtime_error("unknown repro case: " + which);
  }
  const std::string base = out_dir.empty() ? which : out_dir + "/" + which;
  return run_solve(o, base + "_solution.json", base + "_mesh.txt", base + "_verify.json");
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("MEANCO_THREADS")) {
    Eigen::setNbThreads(std::max(1, std::atoi(env)));
  } else {
    Eigen::setNbThreads(1);
  }

  CLI::App app{"mean-coercivity FEM toolkit"};
  app.require_subcommand(1);
  CommonOpts o;

  std::string out, mesh_out, verify_out, mesh_path, sol_path, oracle_name, format, which, out_dir;
  int samples = 1000;
  unsigned seed = 0;
  bool all_roots = false;
  double tau = 2.0;

  auto* mesh_cmd = app.add_subcommand("mesh", "generate a tagged triangulation");
  add_domain_opts(mesh_cmd, o);
  mesh_cmd->add_option("--out", out, "mesh file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "solve the stationarity system");
  add_domain_opts(solve_cmd, o);
  add_pressure_opts(solve_cmd, o);
  solve_cmd->add_option("--bc", o.bc, "identity|oracle-trace|file:PATH");
  solve_cmd->add_option("--out", out, "solution JSON");
  solve_cmd->add_option("--mesh-out", mesh_out, "write the mesh used");
  solve_cmd->add_option("--verify-out", verify_out, "write the verification JSON");

  auto* verify_cmd = app.add_subcommand("verify", "verify a stored solution");
  verify_cmd->add_option("--mesh", mesh_path)->required();
  verify_cmd->add_option("--solution", sol_path)->required();
  verify_cmd->add_option("--oracle", oracle_name, "diskdisk|sector|insulation|quadrant|none");
  add_pressure_opts(verify_cmd, o);
  verify_cmd->add_option("--rho", o.rho);
  verify_cmd->add_option("--out", out, "verification JSON");

  auto* tune_cmd = app.add_subcommand("tune", "tune the point-contact parameters");
  tune_cmd->add_option("--tau", tau)->required();
  tune_cmd->add_flag("--all-roots", all_roots);

  auto* coerc_cmd = app.add_subcommand("coercivity", "discrete coercivity constant");
  add_domain_opts(coerc_cmd, o);
  add_pressure_opts(coerc_cmd, o);

  auto* oracle_cmd = app.add_subcommand("oracle", "sample a closed form to CSV");
  oracle_cmd->add_option("--which", which, "diskdisk|sector|insulation|quadrant")->required();
  oracle_cmd->add_option("--sample", samples);
  oracle_cmd->add_option("--seed", seed);
  oracle_cmd->add_option("--out", out)->required();
  add_pressure_opts(oracle_cmd, o);
  oracle_cmd->add_option("--rho", o.rho);

  auto* export_cmd = app.add_subcommand("export", "export a solution for plotting");
  export_cmd->add_option("--mesh", mesh_path)->required();
  export_cmd->add_option("--solution", sol_path)->required();
  export_cmd->add_option("--format", format, "csv|vtk")->required();
  export_cmd->add_option("--out", out)->required();

  auto* repro_cmd = app.add_subcommand("repro", "run a bundled experiment preset");
  repro_cmd->add_option("--case", which, "diskdisk|sector")->required();
  repro_cmd->add_option("--out-dir", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mesh_cmd) return run_mesh(o, out);
    if (*solve_cmd) return run_solve(o, out, mesh_out, verify_out);
    if (*verify_cmd) return run_verify(o, mesh_path, sol_path, oracle_name, out);
    if (*tune_cmd) return run_tune(tau, all_roots);
    if (*coerc_cmd) return run_coercivity(o);
    if (*oracle_cmd) return run_oracle(o, which, samples, seed, out);
    if (*export_cmd) return run_export(mesh_path, sol_path, format, out);
    if (*repro_cmd) return run_repro(which, out_dir);
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = e.what();
    err["command"] = app.get_subcommands().empty() ? "" : app.get_subcommands()[0]->get_name();
    std::cout << dump_json17(err, 1) << "\n";
    return 1;
  }
  return 0;
}
