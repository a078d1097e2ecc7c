#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "meanco/oracles.hpp"
#include "meanco/postproc.hpp"
#include "meanco/pressure.hpp"

using namespace meanco;

namespace {

constexpr double kPi = std::numbers::pi;

// Fourth-order finite-difference Laplacian, the independent harmonicity probe.
double fd_laplacian_norm(const std::function<Eigen::Vector2d(const Point2&)>& u, const Point2& x,
                         double h) {
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (int dim = 0; dim < 2; ++dim) {
    Point2 e = Point2::Zero();
    e[dim] = h;
    acc += (-u(x + 2.0 * e) + 16.0 * u(x + e) - 30.0 * u(x) + 16.0 * u(x - e) - u(x - 2.0 * e)) /
           (12.0 * h * h);
  }
  return acc.norm();
}

double dist_to_ray(const Point2& x, double angle) {
  const Point2 d{std::cos(angle), std::sin(angle)};
  const double t = std::clamp(x.dot(d), 0.0, 1.0);
  return (x - t * d).norm();
}

}  // namespace

TEST_CASE("constant matrices J and E") {
  CHECK((kJ * kJ + Eigen::Matrix2d::Identity()).norm() == 0.0);
  CHECK((kE * kE - Eigen::Matrix2d::Identity()).norm() == 0.0);
  CHECK((kE * kJ * kE + kJ).norm() == 0.0);
}

TEST_CASE("disk-disk constants at rho=0.5, M=3") {
  const auto s = disk_disk_solution(0.5, 3.0);
  CHECK(std::abs(s.params.at("zeta") - 0.64) < 1e-12);
  CHECK(std::abs(s.params.at("xi") - 1.12) < 1e-12);
}

TEST_CASE("disk-disk solution with M=0 is the identity") {
  const auto s = disk_disk_solution(0.3, 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-0.7, 0.7);
  for (int i = 0; i < 100; ++i) {
    const Point2 x{d(rng), d(rng)};
    CHECK((s.value(x) - x).norm() < 1e-15);
    const int tag = x.norm() < 0.3 ? 1 : 2;
    CHECK(std::abs(s.det(x, tag) - 1.0) < 1e-14);
  }
}

TEST_CASE("disk-disk boundary values are the identity on the unit circle") {
  const auto s = disk_disk_solution(0.5, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double th = 2.0 * kPi * i / 200.0;
    const Point2 x{std::cos(th), std::sin(th)};
    CHECK((s.value(x) - x).norm() < 1e-12);
  }
}

TEST_CASE("disk-disk value is continuous across the interface") {
  const auto s = disk_disk_solution(0.5, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double th = 2.0 * kPi * i / 100.0;
    const Point2 xm{0.5 * (1.0 - 1e-13) * std::cos(th), 0.5 * (1.0 - 1e-13) * std::sin(th)};
    const Point2 xp{0.5 * (1.0 + 1e-13) * std::cos(th), 0.5 * (1.0 + 1e-13) * std::sin(th)};
    CHECK((s.value(xm) - s.value(xp)).norm() < 1e-10);
  }
}

TEST_CASE("disk-disk determinant jump: closed value and jump law") {
  const double rho = 0.5, M = 3.0;
  const auto s = disk_disk_solution(rho, M);
  const double expect = disk_disk_jump_value(rho, M);
  CHECK(std::abs(expect - 0.6144) < 1e-12);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(0.0, 2.0 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const double th = d(rng);
    const Point2 x{rho * std::cos(th), rho * std::sin(th)};
    const double jump = s.det(x, 2) - s.det(x, 1);
    CHECK(std::abs(jump - expect) < 1e-12);
    const Point2 tau{-std::sin(th), std::cos(th)};
    const Eigen::Vector2d dtau = s.gradient(x, 1) * tau;
    CHECK(std::abs(jump - 0.5 * M * dtau.squaredNorm()) < 1e-10);
  }
}

TEST_CASE("disk-disk gradients: region-wise harmonicity via finite differences") {
  const auto s = disk_disk_solution(0.5, 3.0);
  const double h = 2e-3;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> rin(0.05, 0.5 - 2.5 * h);
  std::uniform_real_distribution<double> rout(0.5 + 2.5 * h, 1.0 - 2.5 * h);
  for (int i = 0; i < 1000; ++i) {
    const double th = ang(rng);
    const Point2 xi{rin(rng) * std::cos(th), rin(rng) * std::sin(th)};
    const Point2 xo{rout(rng) * std::cos(th), rout(rng) * std::sin(th)};
    CHECK(fd_laplacian_norm(s.value, xi, h) < 1e-8);
    CHECK(fd_laplacian_norm(s.value, xo, h) < 1e-8);
  }
}

TEST_CASE("disk-disk stationarity across the interface (conservation-law form)") {
  const double rho = 0.5, M = 3.0;
  const auto s = disk_disk_solution(rho, M);
  const auto f = PressureField::island(M);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(0.0, 2.0 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const double th = d(rng);
    const Point2 x{rho * std::cos(th), rho * std::sin(th)};
    const Point2 nu = x.normalized();
    CHECK(oracle_jump_condition_residual(s, f, x, nu, 1, 2) < 1e-10);
  }
}

TEST_CASE("disk-disk gradient matches finite differences of the value") {
  const auto s = disk_disk_solution(0.5, 3.0);
  const double h = 1e-6;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (double r : {0.25, 0.8}) {
    const int tag = r < 0.5 ? 1 : 2;
    for (int i = 0; i < 50; ++i) {
      const double th = ang(rng);
      const Point2 x{r * std::cos(th), r * std::sin(th)};
      const Eigen::Matrix2d g = s.gradient(x, tag);
      for (int dim = 0; dim < 2; ++dim) {
        Point2 e = Point2::Zero();
        e[dim] = h;
        const Eigen::Vector2d col = (s.value(x + e) - s.value(x - e)) / (2.0 * h);
        CHECK((g.col(dim) - col).norm() < 1e-7);
      }
      CHECK(std::abs(s.det(x, tag) - g.determinant()) < 1e-12);
    }
  }
}

TEST_CASE("disk-sector basic solution: fields, det range, jump law") {
  const double M = 3.0;
  const auto s = disk_sector_basic(M);
  // interior values in Cartesian form
  CHECK((s.value(Point2{0.5, 0.1}) - Eigen::Vector2d{1.0, 0.1}).norm() < 1e-15);
  // det range over the disk: 0 in the sector, 2*M*R^2 <= 6 outside
  CHECK(s.det(Point2{0.3, 0.2}, 1) == 0.0);
  CHECK(std::abs(s.det(Point2{0.0, 1.0}, 2) - 6.0) < 1e-14);
  // jump across the rays: (M/2)|d_tau u|^2 = 2 M R^2, equal to 6 at R=1, 1.5 at R=0.5
  for (double R : {1.0, 0.5, 0.25}) {
    const Point2 x{R * std::cos(kPi / 4.0), R * std::sin(kPi / 4.0)};
    const double jump = s.det(x, 2) - s.det(x, 1);
    CHECK(std::abs(jump - 2.0 * M * R * R) < 1e-12);
    const Point2 tau = x.normalized();
    const Eigen::Vector2d dtau = s.gradient(x, 1) * tau;
    CHECK(std::abs(jump - 0.5 * M * dtau.squaredNorm()) < 1e-10);
  }
  CHECK(std::abs(2.0 * M * 0.25 - 1.5) < 1e-15);  // R=1/2 jump value
}

TEST_CASE("disk-sector M=0 collapses to a single harmonic field") {
  const auto s = disk_sector_basic(0.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-0.7, 0.7);
  for (int i = 0; i < 100; ++i) {
    const Point2 x{d(rng), d(rng)};
    CHECK((s.gradient(x, 1) - s.gradient(x, 2)).norm() < 1e-15);
    CHECK(s.det(x, 1) == 0.0);
    CHECK(s.det(x, 2) == 0.0);
  }
}

TEST_CASE("disk-sector harmonicity and stationarity") {
  const double M = 3.0;
  const auto s = disk_sector_basic(M);
  const auto f = PressureField::island(M);
  const double h = 2e-3;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rad(0.1, 1.0 - 2.5 * h);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  int accepted = 0;
  while (accepted < 1000) {
    const double R = rad(rng), th = ang(rng);
    const Point2 x{R * std::cos(th), R * std::sin(th)};
    if (dist_to_ray(x, kPi / 4.0) < 2.5 * h || dist_to_ray(x, -kPi / 4.0) < 2.5 * h) continue;
    ++accepted;
    CHECK(fd_laplacian_norm(s.value, x, h) < 1e-8);
  }
  std::uniform_real_distribution<double> rr(0.01, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double R = rr(rng);
    const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
    const double a = sgn * kPi / 4.0;
    const Point2 x{R * std::cos(a), R * std::sin(a)};
    const Point2 r_hat = x.normalized();
    const Point2 nu = sgn > 0 ? Point2{-r_hat.y(), r_hat.x()} : Point2{r_hat.y(), -r_hat.x()};
    CHECK(oracle_jump_condition_residual(s, f, x, nu, 1, 2) < 1e-10);
  }
}

TEST_CASE("sector E-symmetry u(x) = E u(E x)") {
  for (const auto& s : {disk_sector_basic(3.0),
                        disk_sector_series(FourierSectorCoeffs{{0.3, -0.2}, {1.1, 0.4},
                                                               {-0.7, 0.2}, {0.5, -0.9}, 2.0})}) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-0.7, 0.7);
    for (int i = 0; i < 200; ++i) {
      const Point2 x{d(rng), d(rng)};
      const Eigen::Vector2d lhs = s.value(x);
      const Eigen::Vector2d rhs = kE * s.value(kE * x);
      CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }
  }
}

TEST_CASE("series with the basic coefficients reproduces the concrete solution") {
  const double M = 3.0;
  const auto basic = disk_sector_basic(M);
  const auto series = disk_sector_series(FourierSectorCoeffs::basic(M));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-0.7, 0.7);
  for (int i = 0; i < 300; ++i) {
    const Point2 x{d(rng), d(rng)};
    if (x.norm() >= 1.0) continue;
    CHECK((basic.value(x) - series.value(x)).norm() < 1e-13);
    const int tag = region_tag(DomainSpec::disk_sector(), x);
    CHECK((basic.gradient(x, tag) - series.gradient(x, tag)).norm() < 1e-12);
  }
}

TEST_CASE("series with zero coefficients except A0 is a constant map") {
  FourierSectorCoeffs c;
  c.A4k = {2.5};
  c.A4k2 = {0.0};
  c.B4k = {0.0};
  c.B4k2 = {0.0};
  c.M = 3.0;
  const auto s = disk_sector_series(c);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> d(-0.7, 0.7);
  for (int i = 0; i < 100; ++i) {
    const Point2 x{d(rng), d(rng)};
    CHECK((s.value(x) - Eigen::Vector2d{2.5, 0.0}).norm() < 1e-14);
    CHECK(std::abs(s.det(x, 1)) < 1e-14);
    CHECK(std::abs(s.det(x, 2)) < 1e-14);
  }
}

TEST_CASE("random truncated series satisfies the interface jump equation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  FourierSectorCoeffs c;
  const int K = 5;
  for (int k = 0; k < K; ++k) {
    c.A4k.push_back(d(rng));
    c.A4k2.push_back(d(rng));
    c.B4k.push_back(d(rng));
    c.B4k2.push_back(d(rng));
  }
  c.M = 3.0;
  const auto s = disk_sector_series(c);

  for (int i = 1; i <= 100; ++i) {
    const double R = i / 101.0;
    const Point2 x{R * std::cos(kPi / 4.0), R * std::sin(kPi / 4.0)};
    const Point2 r_hat = x.normalized();
    const Point2 th_hat{-r_hat.y(), r_hat.x()};
    const Eigen::Vector2d dth_s = R * (s.gradient(x, 1) * th_hat);
    const Eigen::Vector2d dth_p = R * (s.gradient(x, 2) * th_hat);
    const Eigen::Vector2d dr_s = s.gradient(x, 1) * r_hat;
    const Eigen::Vector2d defect =
        2.0 * dth_s - 2.0 * dth_p - c.M * R * (kJ.transpose() * dr_s);
    CHECK(defect.norm() < 1e-10);
    // two-branch continuity on the ray
    CHECK((s.gradient(x, 1) * r_hat - s.gradient(x, 2) * r_hat).norm() < 1e-12);
  }
}

TEST_CASE("suitably prepared boundary data is continuous and equals the series trace") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  FourierSectorCoeffs c;
  for (int k = 0; k < 4; ++k) {
    c.A4k.push_back(d(rng));
    c.A4k2.push_back(d(rng));
    c.B4k.push_back(d(rng));
    c.B4k2.push_back(d(rng));
  }
  c.M = 3.0;
  const auto trace = fit_suitably_prepared(c);
  const auto s = disk_sector_series(c);
  for (double a : {kPi / 4.0, -kPi / 4.0}) {
    const Eigen::Vector2d inner = trace.at_angle(a - 1e-14);
    const Eigen::Vector2d outer = trace.at_angle(a + 1e-14);
    CHECK((inner - outer).norm() < 1e-12);
  }
  for (int i = 0; i < 200; ++i) {
    const double th = -kPi + 2.0 * kPi * i / 200.0;
    const Point2 x{std::cos(th), std::sin(th)};
    CHECK((trace.at_angle(th) - s.value(x)).norm() < 1e-12);
  }
  // zero coefficients give zero boundary data
  FourierSectorCoeffs z;
  z.A4k = {0.0};
  z.A4k2 = {0.0};
  z.B4k = {0.0};
  z.B4k2 = {0.0};
  z.M = 3.0;
  CHECK(fit_suitably_prepared(z).at_angle(0.7).norm() == 0.0);
}

TEST_CASE("insulation matrices solve the interface conditions") {
  const Eigen::Vector2d xi{0.0, 1.0}, eta{1.0, 0.0};
  const auto A = insulation_matrices(xi, eta, 0.0, 1.0, 2.0);
  CHECK((A[0].col(0) - Eigen::Vector2d{1.5, 0.0}).norm() < 1e-14);
  CHECK((A[2].col(0) - Eigen::Vector2d{0.5, 0.0}).norm() < 1e-14);
  for (int i = 0; i < 3; ++i) CHECK((A[i].col(1) - xi).norm() == 0.0);

  // identical pressures give a globally affine map
  const auto B = insulation_matrices(xi, eta, 2.0, 2.0, 2.0);
  CHECK((B[0] - B[1]).norm() == 0.0);
  CHECK((B[2] - B[1]).norm() == 0.0);
}

TEST_CASE("insulation oracle: continuity, rank-one jumps, zero residuals") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Vector2d xi{d(rng), d(rng)}, eta{d(rng), d(rng)};
    const double f1 = d(rng), f2 = d(rng), f3 = d(rng);
    const auto s = insulation_affine(xi, eta, f1, f2, f3);
    const auto f = PressureField::insulation(f1, f2, f3);
    const auto A = insulation_matrices(xi, eta, f1, f2, f3);

    // Hadamard compatibility: gradient jumps have rank <= 1 and equal second columns
    for (int i : {0, 1}) {
      const Eigen::Matrix2d D = A[i + 1] - A[i];
      CHECK(D.col(1).norm() == 0.0);
      const Eigen::JacobiSVD<Eigen::Matrix2d> svd(D);
      CHECK(svd.singularValues()(1) < 1e-13);
    }
    // continuity across both interfaces
    std::uniform_real_distribution<double> y(-0.5, 0.5);
    for (int i = 0; i < 20; ++i) {
      const double yy = y(rng);
      const Point2 left{-0.5 - 1e-13, yy}, right{-0.5 + 1e-13, yy};
      CHECK((s.value(left) - s.value(right)).norm() < 1e-11);
      const Point2 left2{0.5 - 1e-13, yy}, right2{0.5 + 1e-13, yy};
      CHECK((s.value(left2) - s.value(right2)).norm() < 1e-11);
      // interface conditions are zero by construction
      CHECK(oracle_jump_condition_residual(s, f, Point2{-0.5, yy}, Point2{1, 0}, 1, 2) < 1e-12);
      CHECK(oracle_jump_condition_residual(s, f, Point2{0.5, yy}, Point2{1, 0}, 2, 3) < 1e-12);
    }
  }
}

TEST_CASE("quadrant building block: diagonal form, continuity, jump conditions") {
  const double beta = 1.0;
  const double alpha = quadrant_block_alpha(beta);
  const double sigma = (alpha - beta) / 4.0, tau = (alpha + beta) / 2.0;
  const auto f = PressureField::quadrant(sigma, tau);

  for (int n : {1, 3, 5}) {
    const auto s = quadrant_building_block(n, beta);
    // complex-series route agrees with the diagonal-matrix route
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const Point2 x{d(rng), d(rng)};
      CHECK((s.value(x) - quadrant_building_block_complex(n, beta, x)).norm() <
            1e-12 * (1.0 + s.value(x).norm()));
    }
    // continuity across the four interface rays
    std::uniform_real_distribution<double> t(0.02, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double v = t(rng);
      const std::array<std::pair<Point2, std::pair<int, int>>, 4> cases = {
          std::pair{Point2{0.0, v}, std::pair{1, 2}}, std::pair{Point2{-v, 0.0}, std::pair{2, 3}},
          std::pair{Point2{0.0, -v}, std::pair{3, 4}}, std::pair{Point2{v, 0.0}, std::pair{1, 4}}};
      for (const auto& [x, tags] : cases) {
        const auto [ta, tb] = tags;
        const Point2 along = x.normalized();
        // tangential traces from both sides coincide (continuity of u)
        CHECK((s.gradient(x, ta) * along - s.gradient(x, tb) * along).norm() <
              1e-10 * (1.0 + s.gradient(x, ta).norm()));
      }
    }
    // jump conditions with the recovered (sigma, tau) pressure
    for (int i = 0; i < 50; ++i) {
      const double v = t(rng);
      CHECK(oracle_jump_condition_residual(s, f, Point2{0.0, v}, Point2{-1, 0}, 1, 2) < 1e-10);
      CHECK(oracle_jump_condition_residual(s, f, Point2{-v, 0.0}, Point2{0, -1}, 2, 3) < 1e-10);
      CHECK(oracle_jump_condition_residual(s, f, Point2{0.0, -v}, Point2{1, 0}, 3, 4) < 1e-10);
      CHECK(oracle_jump_condition_residual(s, f, Point2{v, 0.0}, Point2{0, -1}, 1, 4) < 1e-10);
    }
  }
}

TEST_CASE("quadrant n=1 block is piecewise affine with rank-one differences") {
  const double beta = 1.0;
  const auto D = quadrant_diagonals(beta);
  const auto s = quadrant_building_block(1, beta);
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> d(0.05, 1.0);
  for (int k = 0; k < 4; ++k) {
    const double sx = (k == 0 || k == 3) ? 1.0 : -1.0;
    const double sy = (k <= 1) ? 1.0 : -1.0;
    const Point2 x{sx * d(rng), sy * d(rng)};
    const Eigen::Vector2d expect{D[k](0) * x.x(), D[k](1) * x.y()};
    CHECK((s.value(x) - expect).norm() < 1e-12 * (1.0 + expect.norm()));
  }
  for (int k = 0; k < 4; ++k) {
    Eigen::Matrix2d diff = Eigen::Matrix2d::Zero();
    diff.diagonal() = D[(k + 1) % 4] - D[k];
    const Eigen::JacobiSVD<Eigen::Matrix2d> svd(diff);
    CHECK(svd.singularValues()(0) > 1e-8);   // rank exactly one
    CHECK(svd.singularValues()(1) < 1e-12);
  }
  CHECK_THROWS(quadrant_building_block(2, beta));
  CHECK_THROWS(quadrant_building_block(1, 0.0));
  CHECK_THROWS(quadrant_building_block(1, -2.0));
}

TEST_CASE("quadrant blocks stay residual-free away from beta=1") {
  for (double beta : {0.3, 2.5, -0.8}) {
    const double alpha = quadrant_block_alpha(beta);
    const auto f = PressureField::quadrant((alpha - beta) / 4.0, (alpha + beta) / 2.0);
    const auto s = quadrant_building_block(3, beta);
    for (double v : {0.2, 0.9}) {
      CHECK(oracle_jump_condition_residual(s, f, Point2{0.0, v}, Point2{-1, 0}, 1, 2) < 1e-10);
      CHECK(oracle_jump_condition_residual(s, f, Point2{-v, 0.0}, Point2{0, -1}, 2, 3) < 1e-10);
      CHECK(oracle_jump_condition_residual(s, f, Point2{0.0, -v}, Point2{1, 0}, 3, 4) < 1e-10);
      CHECK(oracle_jump_condition_residual(s, f, Point2{v, 0.0}, Point2{0, -1}, 1, 4) < 1e-10);
    }
  }
}

TEST_CASE("transfer-matrix recurrence closures") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  // even parity: semigroup property makes the cycle defect vanish identically
  for (int i = 0; i < 200; ++i) {
    CHECK(quadrant_recurrence_check(d(rng), d(rng), d(rng), d(rng), Parity::Even) < 1e-12);
  }
  // odd parity: the cycle matrix is singular exactly on the Delta=0 branch
  for (double beta : {0.5, 1.0, 2.0}) {
    const auto q = QuadrantParams::from_beta(beta);
    CHECK(quadrant_recurrence_check(q.alpha, q.beta, q.gamma, q.delta, Parity::Odd) < 1e-10);
    CHECK(quadrant_recurrence_check(q.alpha + 0.1, q.beta, q.gamma, q.delta, Parity::Odd) > 1e-3);
  }
}

TEST_CASE("odd-mode coefficient vectors satisfy all four chain links") {
  for (double beta : {0.5, 1.0, 1.7}) {
    const auto q = QuadrantParams::from_beta(beta);
    const auto v = quadrant_eigvectors(beta);
    const double scale = 1.0 + v[0].norm();
    CHECK((v[1] - quadrant_transfer(q.alpha / 4.0).transpose() * v[0]).norm() < 1e-10 * scale);
    CHECK((v[2] - quadrant_transfer(-q.beta / 4.0) * v[1]).norm() < 1e-10 * scale);
    CHECK((v[3] - quadrant_transfer(q.gamma / 4.0).transpose() * v[2]).norm() < 1e-10 * scale);
    CHECK((v[0] - quadrant_transfer(q.delta / 4.0) * v[3]).norm() < 1e-10 * scale);
    // (C - I) v1 = 0
    const Eigen::Matrix2d C = quadrant_transfer(q.delta / 4.0) *
                              quadrant_transfer(q.gamma / 4.0).transpose() *
                              quadrant_transfer(-q.beta / 4.0) *
                              quadrant_transfer(q.alpha / 4.0).transpose();
    CHECK(((C - Eigen::Matrix2d::Identity()) * v[0]).norm() < 1e-10 * scale);
    // pairwise distinct when beta != delta
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) CHECK((v[i] - v[j]).norm() > 1e-10);
  }
}

TEST_CASE("3x3 cofactor margin is nonnegative and sharp at the identity") {
  CHECK(std::abs(cof3d_margin(Eigen::Matrix3d::Identity())) < 1e-12);
  CHECK(cof3d_margin(Eigen::Matrix3d::Zero()) == 0.0);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  double min_margin = 1e300;
  for (int i = 0; i < 20000; ++i) {
    Eigen::Matrix3d A;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) A(r, c) = g(rng);
    min_margin = std::min(min_margin, cof3d_margin(A));
  }
  CHECK(min_margin >= -1e-10);
}

TEST_CASE("3d cross term: cofactor identity and bilinearity") {
  CHECK((cross_term_3d(Eigen::Matrix3d::Identity(), Eigen::Matrix3d::Identity()) -
         2.0 * Eigen::Matrix3d::Identity())
            .norm() < 1e-14);
  std::mt19937_64 rng(18);
  std::normal_distribution<double> g(0.0, 1.0);
  auto rand3 = [&]() {
    Eigen::Matrix3d A;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) A(r, c) = g(rng);
    return A;
  };
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d A = rand3(), B = rand3(), C = rand3();
    CHECK((cross_term_3d(A, A) - 2.0 * cof3(A)).norm() < 1e-12 * (1.0 + cof3(A).norm()));
    CHECK((cross_term_3d(A, B + C) - cross_term_3d(A, B) - cross_term_3d(A, C)).norm() <
          1e-12 * (1.0 + cross_term_3d(A, B).norm()));
  }
  // cofactor route through singular values agrees with the minor route
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d A = rand3();
    const double direct = A.squaredNorm() - std::sqrt(3.0) * cof3(A).norm();
    CHECK(std::abs(direct - cof3d_margin(A)) < 1e-10 * (1.0 + A.squaredNorm()));
  }
}

TEST_CASE("oracle parameter validation") {
  CHECK_THROWS(disk_disk_solution(0.0, 3.0));
  CHECK_THROWS(disk_disk_solution(1.5, 3.0));
  // 4 + M - M rho^2 = 0 at M = -4/(1-rho^2)
  const double rho = 0.5;
  CHECK_THROWS(disk_disk_solution(rho, -4.0 / (1.0 - rho * rho)));
  CHECK_THROWS(quadrant_eigvectors(0.0));
}
