#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracle.hpp"
#include "qwalk/equivalence.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;
using std::numbers::pi;

namespace {

constexpr double kTol = 1e-12;

LatticeConfig padded(std::int64_t steps) { return LatticeConfig::padded_for_steps(steps, -3, 3); }

// Random triple whose w_phase = −(η+ξ)/2 is a multiple of π/4, so that
// w_phase·8 ∈ 2πZ and V is well defined on a ring of 8 sites.
EulerAngles commensurate_euler(std::mt19937_64& rng) {
  auto a = oracle::random_euler(rng);
  const int m = std::uniform_int_distribution<int>(-4, 4)(rng);
  a.xi = wrap_angle(m * pi / 2 - a.eta);
  return a;
}

// Greedy multiset comparison of two eigenvalue lists.
double spectrum_distance(Eigen::VectorXcd a, Eigen::VectorXcd b) {
  double worst = 0.0;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = 1e300;
    Eigen::Index arg = -1;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(a(i) - b(j));
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[static_cast<std::size_t>(arg)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST(CanonicalReduction, ThetaOnlyIsIdentityTransform) {
  const auto r = canonical_reduction({0.0, 0.9, 0.0});
  EXPECT_EQ(r.theta, 0.9);
  EXPECT_EQ(r.transform.w_phase, 0.0);
  EXPECT_LE(max_abs_diff(r.transform.x.matrix(), Mat2::identity()), kTol);
}

TEST(CanonicalReduction, SubstitutionExample) {
  const auto r = canonical_reduction({pi / 3, pi / 2, pi / 4});
  EXPECT_EQ(r.theta, pi / 2);
  EXPECT_NEAR(r.transform.w_phase, -7 * pi / 24, kTol);
  EXPECT_LE(max_abs_diff(r.transform.x.matrix(), Mat2::diagonal(std::polar(1.0, -pi / 6), std::polar(1.0, pi / 6))),
            kTol);
}

TEST(CanonicalReduction, DenseConjugationOnCommensurateRing) {
  std::mt19937_64 rng(1);
  constexpr std::int64_t L = 8;
  for (int i = 0; i < 30; ++i) {
    const auto a = commensurate_euler(rng);
    const auto r = canonical_reduction(a);
    const auto v = oracle::product_transform(r.transform.w_phase, oracle::to_eigen(r.transform.x), L);
    const auto z = oracle::propagator(oracle::euler(a.eta, a.theta, a.xi), 0.0, L);
    const auto z_theta = oracle::propagator(oracle::euler(0, a.theta, 0), 0.0, L);
    EXPECT_LE(oracle::max_abs(v * z * v.adjoint() - z_theta), kTol);
    // Library-side dense matrices agree with the oracle construction.
    EXPECT_LE(oracle::max_abs(transform_dense_matrix(r.transform, LatticeConfig::ring(L)) - v), kTol);
  }
}

TEST(CanonicalReduction, SpectrumIsPreserved) {
  std::mt19937_64 rng(2);
  const auto ring = LatticeConfig::ring(8);
  for (int i = 0; i < 10; ++i) {
    const auto a = commensurate_euler(rng);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> general(dense_matrix(SimpleWalk{from_euler(a)}, ring), false);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> canonical(dense_matrix(SimpleWalk{theta_coin(a.theta)}, ring), false);
    EXPECT_LE(spectrum_distance(general.eigenvalues(), canonical.eigenvalues()), 1e-10);
  }
}

TEST(Transform, IdentityAndInverse) {
  const auto probes = make_probe_states(padded(0), 4, 3);
  const ProductTransform v{0.77, from_euler({0.3, 1.2, -0.4})};
  for (const auto& p : probes) {
    auto s = p;
    apply_transform(ProductTransform::identity(), s);
    EXPECT_EQ(max_amplitude_deviation(s, p), 0.0);
    apply_transform(v, s);
    apply_transform(v.inverse(), s);
    EXPECT_LE(max_amplitude_deviation(s, p), kTol);
  }
}

TEST(Transform, DiagonalCoinKeepsDistribution) {
  const auto probes = make_probe_states(padded(0), 4, 4);
  const ProductTransform v = canonical_reduction({1.3, 0.4, -2.2}).transform;
  for (const auto& p : probes) {
    auto s = p;
    apply_transform(v, s);
    EXPECT_LE(total_variation(position_distribution(s), position_distribution(p)), kTol);
  }
}

TEST(Transform, RingNeedsCommensuratePhase) {
  auto s = WalkerCoinState::localized(0, {1.0, 0.0}, LatticeConfig::ring(8));
  try {
    apply_transform({0.3, CoinMatrix::identity()}, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncommensurateRingPhase);
  }
}

TEST(AmplitudeEquiv, SameWalkIdentityTransform) {
  const WalkSpec z = SimpleWalk{from_euler({0.2, 1.0, 0.3})};
  const auto probes = make_probe_states(padded(10), 8, 5);
  const auto rep = check_amplitude_equiv(z, z, ProductTransform::identity(), 10, probes, kTol);
  EXPECT_EQ(rep.max_deviation, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST(AmplitudeEquiv, CanonicalReductionRandomAngles) {
  std::mt19937_64 rng(6);
  const auto probes = make_probe_states(padded(10), 8, 6);
  for (int i = 0; i < 25; ++i) {
    const auto a = oracle::random_euler(rng);
    const auto r = canonical_reduction(a);
    const auto rep = check_amplitude_equiv(SimpleWalk{from_euler(a)}, SimpleWalk{theta_coin(r.theta)}, r.transform,
                                           10, probes, kTol);
    EXPECT_TRUE(rep.pass) << rep.to_json().dump();
  }
}

TEST(AmplitudeEquiv, DifferentThetaIsNotEquivalentUnderSweep) {
  // Numerical falsification only: no diagonal-phase W and no coin X from the
  // sweep maps Z_θ onto Z_θ′.
  const auto probes = make_probe_states(padded(8), 4, 7);
  const WalkSpec a = SimpleWalk{theta_coin(pi / 2)};
  const WalkSpec b = SimpleWalk{theta_coin(pi / 4)};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ph(-pi, pi);
  for (int i = 0; i < 40; ++i) {
    const ProductTransform v{ph(rng), from_axis_angle({ph(rng), oracle::random_axis(rng)})};
    const auto rep = check_amplitude_equiv(a, b, v, 8, probes, 1e-6);
    EXPECT_FALSE(rep.pass);
    EXPECT_GT(rep.max_deviation, 1e-3);
  }
}

TEST(AmplitudeEquiv, ResidualSymmetriesOfThetaFamily) {
  const auto probes = make_probe_states(padded(12), 6, 8);
  const double theta = 1.234;
  // X = iσz flips the sign of θ.
  const ProductTransform flip{0.0, CoinMatrix::from_matrix(Mat2::diagonal(cplx(0, 1), cplx(0, -1)))};
  EXPECT_TRUE(check_amplitude_equiv(SimpleWalk{theta_coin(theta)}, SimpleWalk{theta_coin(-theta)}, flip, 12, probes,
                                    kTol)
                  .pass);
  // The 2π − θ coin is minus the −θ coin; W = E_π absorbs the sign.
  const ProductTransform sign{pi, flip.x};
  EXPECT_TRUE(check_amplitude_equiv(SimpleWalk{theta_coin(2 * pi - theta)}, SimpleWalk{theta_coin(theta)}, sign, 12,
                                    probes, 1e-11)
                  .pass);
}

TEST(DistributionEquiv, LocalizedStartDependsOnThetaOnly) {
  std::mt19937_64 rng(9);
  const auto lattice = padded(25);
  const std::vector<WalkerCoinState> starts{WalkerCoinState::localized(0, {1.0, 0.0}, lattice)};
  for (int i = 0; i < 10; ++i) {
    const auto a = oracle::random_euler(rng);
    const auto rep = check_distribution_equiv(SimpleWalk{from_euler(a)}, SimpleWalk{theta_coin(a.theta)},
                                              ProductTransform::identity(), 25, starts, kTol);
    EXPECT_TRUE(rep.pass) << rep.max_deviation;
    const auto r = canonical_reduction(a);
    EXPECT_TRUE(check_distribution_equiv(SimpleWalk{from_euler(a)}, SimpleWalk{theta_coin(a.theta)}, r.transform, 25,
                                         starts, kTol)
                    .pass);
  }
}

TEST(DistributionEquiv, SameWalkZeroDistance) {
  const WalkSpec z = SimpleWalk{theta_coin(1.0)};
  const auto probes = make_probe_states(padded(10), 3, 10);
  EXPECT_EQ(check_distribution_equiv(z, z, ProductTransform::identity(), 10, probes, kTol).max_deviation, 0.0);
}

TEST(DistributionEquiv, QuarterVsEighthTurnDistinguishable) {
  const auto lattice = padded(10);
  const std::vector<WalkerCoinState> start{WalkerCoinState::localized(0, {1.0, 0.0}, lattice)};
  const auto rep = check_distribution_equiv(SimpleWalk{theta_coin(pi / 2)}, SimpleWalk{theta_coin(pi / 4)},
                                            ProductTransform::identity(), 10, start, kTol);
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.max_deviation, 0.1);

  // Oracle: powers of the explicit propagator on a ring large enough not to wrap.
  constexpr std::int64_t L = 25;
  constexpr std::int64_t origin = 12;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * L);
  psi(2 * origin) = 1.0;
  const auto za = oracle::propagator(oracle::euler(0, pi / 2, 0), 0.0, L, origin);
  const auto zb = oracle::propagator(oracle::euler(0, pi / 4, 0), 0.0, L, origin);
  Eigen::VectorXcd a = psi, b = psi;
  for (int n = 0; n < 10; ++n) {
    a = za * a;
    b = zb * b;
  }
  double tv = 0.0;
  for (std::int64_t s = 0; s < L; ++s) {
    const double pa = std::norm(a(2 * s)) + std::norm(a(2 * s + 1));
    const double pb = std::norm(b(2 * s)) + std::norm(b(2 * s + 1));
    tv += std::abs(pa - pb);
  }
  EXPECT_NEAR(rep.max_deviation, 0.5 * tv, kTol);
}

TEST(ElectricSchedule, Examples) {
  const double theta = 0.83;
  const auto s = electric_schedule(theta, 0.4);
  EXPECT_LE(max_abs_diff(s.schedule(1).matrix(), theta_coin(theta).matrix()), 0.0);
  const auto flat = electric_schedule(theta, 0.0);
  for (std::int64_t n = 1; n < 6; ++n) EXPECT_LE(max_abs_diff(flat.schedule(n).matrix(), theta_coin(theta).matrix()), 0.0);
  const auto half = electric_schedule(theta, pi / 2);
  EXPECT_LE(max_abs_diff(half.schedule(3).matrix(), cplx(-1.0) * theta_coin(theta).matrix()), kTol);
}

TEST(CumulativeIdentity, FirstStepAgainstDenseOracle) {
  // Z_E = (E_Φ ⊗ I) Z(1) with a commensurate field on an 8-ring.
  constexpr std::int64_t L = 8;
  const double theta = 1.1, phi = 2 * pi * 3 / 8;
  const auto ring = LatticeConfig::ring(L);
  const auto z1 = dense_matrix(electric_schedule(theta, phi), ring, 1);
  const auto e = Eigen::kroneckerProduct(oracle::quasi_momentum(phi, L, 0), Eigen::Matrix2cd::Identity()).eval();
  const auto ze = oracle::propagator(oracle::euler(0, theta, 0), phi, L);
  EXPECT_LE(oracle::max_abs(ze - e * z1), kTol);

  const auto probes = make_probe_states(padded(1), 8, 11);
  EXPECT_TRUE(check_cumulative_identity(theta, 0.3, 1, probes, kTol).pass);
}

TEST(CumulativeIdentity, TwentySteps) {
  const auto probes = make_probe_states(padded(20), 8, 12);
  const auto rep = check_cumulative_identity(pi / 2, 0.3, 20, probes, kTol);
  EXPECT_TRUE(rep.pass) << rep.to_json().dump();
}

TEST(CumulativeIdentity, ZeroFieldIsSimpleWalk) {
  const auto probes = make_probe_states(padded(15), 4, 13);
  EXPECT_EQ(check_cumulative_identity(0.7, 0.0, 15, probes, kTol).max_deviation, 0.0);
  for (const auto& p : probes) {
    EXPECT_EQ(max_amplitude_deviation(evolve(electric_schedule(0.7, 0.0), p, 15), evolve(SimpleWalk{theta_coin(0.7)}, p, 15)),
              0.0);
  }
}

TEST(RationalField, Validation) {
  EXPECT_THROW(RationalField(1, 0), Error);
  EXPECT_THROW(RationalField(2, 4), Error);
  EXPECT_NO_THROW(RationalField(0, 1));
  EXPECT_NEAR(RationalField(2, 5).phase(), 4 * pi / 5, kTol);
}

TEST(RationalField, ZeroFieldTrivial) {
  const auto probes = make_probe_states(padded(4), 4, 14);
  const auto rep = check_rational_field(1.0, RationalField(0, 1), 4, probes, kTol);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.details["off_period_amplitude_deviation"].get<double>(), 0.0);
}

TEST(RationalField, ThirdsCoincideEveryThreeSteps) {
  const auto probes = make_probe_states(padded(12), 8, 15);
  const auto rep = check_rational_field(pi / 2, RationalField(1, 3), 4, probes, kTol);
  EXPECT_TRUE(rep.pass) << rep.to_json().dump();
  ASSERT_EQ(rep.details["checkpoints"].size(), 4u);
  EXPECT_EQ(rep.details["checkpoints"][3]["step"].get<int>(), 12);
  // Between multiples of q the amplitudes differ by E_{nΦ}; distributions do not.
  EXPECT_GT(rep.details["off_period_amplitude_deviation"].get<double>(), 0.1);
  EXPECT_LE(rep.details["distribution_tv"].get<double>(), kTol);
}

TEST(Report, JsonShape) {
  const auto probes = make_probe_states(padded(2), 2, 16);
  const auto j = check_cumulative_identity(0.5, 0.2, 2, probes, kTol).to_json();
  for (const char* key : {"check", "parameters", "n_steps", "max_deviation", "tolerance", "pass"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["n_steps"].get<int>(), 2);
}
