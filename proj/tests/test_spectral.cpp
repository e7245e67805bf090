#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "oracle.hpp"
#include "qwalk/equivalence.hpp"
#include "qwalk/error.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
using std::numbers::pi;

namespace {

constexpr double kTol = 1e-10;

// Analytic group velocity of the θ-walk, maximized by brute force over a fine grid.
double brute_force_max_velocity(double theta) {
  const double c = std::cos(theta / 2);
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double k = -pi + 2 * pi * i / 200000.0;
    const double denom = std::sqrt(1 - c * c * std::cos(k) * std::cos(k));
    if (denom > 0) best = std::max(best, std::abs(c * std::sin(k) / denom));
  }
  return best;
}

}  // namespace

TEST(MomentumPropagator, IdentityCoin) {
  const double k = 0.7;
  EXPECT_LE(max_abs_diff(momentum_propagator(CoinMatrix::identity(), k),
                         Mat2::diagonal(std::polar(1.0, -k), std::polar(1.0, k))),
            1e-15);
}

TEST(MomentumPropagator, ThetaCoinTrace) {
  for (double theta : {0.3, 1.2, 2.9})
    for (double k : {-2.0, 0.1, 1.5}) {
      const cplx tr = momentum_propagator(theta_coin(theta), k).trace();
      EXPECT_NEAR(tr.real(), 2 * std::cos(theta / 2) * std::cos(k), 1e-14);
      EXPECT_NEAR(tr.imag(), 0.0, 1e-14);
    }
}

TEST(MomentumPropagator, ZeroMomentumIsBareCoin) {
  EXPECT_LE(max_abs_diff(momentum_propagator(theta_coin(1.0), 0.0), theta_coin(1.0).matrix()), 1e-15);
}

TEST(MomentumPropagator, FourierBlockOfDenseRing) {
  // Z (|k⟩ ⊗ c) = |k⟩ ⊗ M(k) c on a ring with k = 2πm/L.
  constexpr std::int64_t L = 8;
  const auto u = from_euler({0.4, 1.9, -1.3});
  const auto z = dense_matrix(SimpleWalk{u}, LatticeConfig::ring(L));
  for (std::int64_t m = 0; m < L; ++m) {
    const double k = 2 * pi * static_cast<double>(m) / L;
    const Mat2 mk = momentum_propagator(u, k);
    for (int c = 0; c < 2; ++c) {
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * L);
      for (std::int64_t j = 0; j < L; ++j) psi(2 * j + c) = std::polar(1.0, k * static_cast<double>(j));
      Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(2 * L);
      for (std::int64_t j = 0; j < L; ++j)
        for (int r = 0; r < 2; ++r) expect(2 * j + r) = std::polar(1.0, k * static_cast<double>(j)) * mk(r, c);
      EXPECT_LE(oracle::max_abs(z * psi - expect), 1e-12);
    }
  }
}

TEST(Eigenphases, MatchGeneralEigensolver) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> kd(-pi, pi);
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_euler(rng);
    const Mat2 m = momentum_propagator(from_euler(a), kd(rng));
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(oracle::to_eigen(m));
    std::array<double, 2> ref{std::arg(es.eigenvalues()(0)), std::arg(es.eigenvalues()(1))};
    std::sort(ref.begin(), ref.end());
    const auto ph = su2_eigenphases(m);
    EXPECT_NEAR(ph[0], ref[0], 1e-12);
    EXPECT_NEAR(ph[1], ref[1], 1e-12);
  }
}

TEST(Dispersion, FreeMoversAtThetaZero) {
  const auto curve = dispersion(CoinMatrix::identity(), 64);
  for (const auto& s : curve.samples) {
    EXPECT_NEAR(s.omega_plus, std::abs(s.k), kTol);
    EXPECT_NEAR(s.omega_minus, -std::abs(s.k), kTol);
  }
  EXPECT_NEAR(curve.max_abs_group_velocity(), 1.0, kTol);
}

TEST(Dispersion, FlatBandsAtThetaPi) {
  const auto curve = dispersion(theta_coin(pi), 64);
  for (const auto& s : curve.samples) {
    EXPECT_NEAR(s.omega_plus, pi / 2, kTol);
    EXPECT_EQ(s.v_group, 0.0);
  }
}

TEST(Dispersion, QuarterTurnMaxVelocity) {
  const auto curve = dispersion(theta_coin(pi / 2), 512);
  EXPECT_NEAR(curve.max_abs_group_velocity(), 1 / std::sqrt(2.0), 2e-3);
  EXPECT_NEAR(brute_force_max_velocity(pi / 2), 1 / std::sqrt(2.0), 1e-8);
}

TEST(Dispersion, MaxVelocityIsCosHalfTheta) {
  for (double theta : {0.2, 0.9, 1.7, 2.6}) {
    const auto curve = dispersion(theta_coin(theta), 512);
    EXPECT_NEAR(curve.max_abs_group_velocity(), brute_force_max_velocity(theta), 2e-3) << theta;
    EXPECT_NEAR(curve.max_abs_group_velocity(), std::cos(theta / 2), 2e-3) << theta;
  }
}

TEST(Dispersion, SymmetryTraceIdentityAndFittedShift) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto a = oracle::random_euler(rng);
    const auto curve = dispersion(from_euler(a), 256);
    const double c = std::cos(a.theta / 2);
    const double k0 = (a.eta + a.xi) / 2;
    for (const auto& s : curve.samples) {
      EXPECT_NEAR(s.omega_minus, -s.omega_plus, kTol);
      EXPECT_NEAR(std::cos(s.omega_plus), c * std::cos(s.k - k0), kTol);
    }
    EXPECT_NEAR(curve.fitted_amplitude, c, 1e-12);
    EXPECT_LE(std::abs(wrap_angle(curve.fitted_shift - k0)), 1e-10);
  }
}

TEST(Dispersion, RejectsTooFewSamples) { EXPECT_THROW(dispersion(CoinMatrix::identity(), 7), Error); }

TEST(SpectralInvariance, ThetaOnlyHasZeroShift) {
  const auto rep = spectral_invariance_check({0.0, 1.3, 0.0}, 128, kTol);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.details["momentum_shift"].get<double>(), 0.0);
  EXPECT_EQ(rep.max_deviation, 0.0);
}

TEST(SpectralInvariance, WorkedExample) {
  const auto rep = spectral_invariance_check({pi / 3, pi / 2, pi / 4}, 512, kTol);
  EXPECT_TRUE(rep.pass) << rep.to_json().dump();
  EXPECT_NEAR(rep.details["momentum_shift"].get<double>(), 7 * pi / 24, 1e-15);
}

TEST(SpectralInvariance, RangeMatchesCanonicalWalk) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto a = oracle::random_euler(rng);
    const auto general = dispersion(from_euler(a), 512);
    const auto canonical = dispersion(theta_coin(a.theta), 512);
    // Both ranges are [θ/2, π − θ/2]; grid placement differs by the shift.
    EXPECT_NEAR(general.omega_min(), canonical.omega_min(), 1e-4);
    EXPECT_NEAR(general.omega_max(), canonical.omega_max(), 1e-4);
    const auto rep = spectral_invariance_check(a, 512, kTol);
    const auto& r1 = rep.details["omega_range"];
    const auto& r2 = rep.details["canonical_omega_range"];
    EXPECT_NEAR(r1[0].get<double>(), r2[0].get<double>(), kTol);
    EXPECT_NEAR(r1[1].get<double>(), r2[1].get<double>(), kTol);
  }
}

TEST(SpectralInvariance, RingEigenvaluesMatchDispersion) {
  for (std::int64_t L : {6, 8, 12}) {
    const double theta = 1.17;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense_matrix(SimpleWalk{theta_coin(theta)}, LatticeConfig::ring(L)),
                                                   false);
    std::vector<double> got, want;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) got.push_back(std::arg(es.eigenvalues()(i)));
    for (std::int64_t m = 0; m < L; ++m) {
      const auto ph = su2_eigenphases(momentum_propagator(theta_coin(theta), 2 * pi * m / L));
      want.push_back(ph[0]);
      want.push_back(ph[1]);
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], kTol);
  }
}

TEST(BallisticFront, MassInsideLightCone) {
  const double theta = 1.0;
  const std::int64_t n = 200;
  const auto lattice = LatticeConfig::padded_for_steps(n, 0, 0);
  const auto s = evolve(SimpleWalk{theta_coin(theta)}, WalkerCoinState::localized(0, {1.0, 0.0}, lattice), n);
  const auto d = position_distribution(s);
  const double front = (std::cos(theta / 2) + 0.05) * n;
  double inside = 0.0;
  for (std::size_t i = 0; i < d.probability.size(); ++i)
    if (std::abs(static_cast<double>(d.site(i))) <= front) inside += d.probability[i];
  EXPECT_GE(inside, 0.99);
}

TEST(Export, DispersionCsvHeaderAndRows) {
  std::ostringstream os;
  write_dispersion_csv(os, dispersion(CoinMatrix::identity(), 8));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "k,omega_plus,omega_minus,v_group");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 8);
}
