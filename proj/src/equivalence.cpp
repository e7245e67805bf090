#include "qwalk/equivalence.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

void require_probes(std::span<const WalkerCoinState> probes) {
  if (probes.empty()) fail(ErrorKind::InvalidInput, "at least one probe state is required");
}

nlohmann::json matrix_json(const Mat2& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 2; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

RationalField::RationalField(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
  if (q <= 0) fail(ErrorKind::InvalidInput, "rational field needs q > 0");
  if (std::gcd(p, q) != 1) fail(ErrorKind::InvalidInput, "rational field needs gcd(p, q) = 1");
}

double RationalField::phase() const {
  return 2 * std::numbers::pi * static_cast<double>(p_) / static_cast<double>(q_);
}

CoinMatrix theta_coin(double theta) { return from_euler({0.0, theta, 0.0}); }

CanonicalReduction canonical_reduction(const EulerAngles& angles) {
  const CoinMatrix x = CoinMatrix::from_matrix(
      Mat2::diagonal(std::polar(1.0, -angles.eta / 2), std::polar(1.0, angles.eta / 2)));
  return {angles.theta, {-(angles.eta + angles.xi) / 2 + 0.0, x}};
}

void apply_transform(const ProductTransform& v, WalkerCoinState& state) {
  state.apply_coin(v.x);
  state.apply_quasimomentum_shift(v.w_phase);
}

Eigen::MatrixXcd transform_dense_matrix(const ProductTransform& v, const LatticeConfig& ring) {
  ring.validate();
  if (ring.size > kDenseSizeLimit) fail(ErrorKind::SizeLimit, "dense transform limited to L <= 64");
  const auto L = static_cast<Eigen::Index>(ring.size);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * L, 2 * L);
  for (Eigen::Index s = 0; s < L; ++s) {
    const cplx phase = std::polar(1.0, v.w_phase * static_cast<double>(ring.site_at(static_cast<std::size_t>(s))));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(2 * s + r, 2 * s + c) = phase * v.x(r, c);
  }
  return m;
}

std::vector<WalkerCoinState> make_probe_states(const LatticeConfig& config, std::size_t count, std::uint64_t seed,
                                               std::int64_t radius) {
  std::vector<WalkerCoinState> probes;
  probes.reserve(count);
  if (count >= 1) probes.push_back(WalkerCoinState::localized(0, {1.0, 0.0}, config));
  if (count >= 2) probes.push_back(WalkerCoinState::localized(0, {0.0, 1.0}, config));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amps(2 * config.size);
  while (probes.size() < count) {
    std::fill(amps.begin(), amps.end(), cplx{});
    double norm2 = 0.0;
    for (std::int64_t j = -radius; j <= radius; ++j) {
      const std::size_t s = config.storage_index(j);
      for (int c = 0; c < 2; ++c) {
        amps[2 * s + c] = {gauss(rng), gauss(rng)};
        norm2 += std::norm(amps[2 * s + c]);
      }
    }
    for (auto& a : amps) a /= std::sqrt(norm2);
    probes.push_back(WalkerCoinState::from_amplitudes(amps, config));
  }
  return probes;
}

CheckReport check_amplitude_equiv(const WalkSpec& spec_a, const WalkSpec& spec_b, const ProductTransform& v,
                                  std::int64_t n_steps, std::span<const WalkerCoinState> probes, double tol) {
  require_probes(probes);
  CheckReport report{.check = "amplitude_equivalence", .n_steps = n_steps, .tolerance = tol};
  report.parameters = {{"w_phase", v.w_phase}, {"x_matrix", matrix_json(v.x.matrix())},
                       {"probe_count", probes.size()}};
  const ProductTransform v_inv = v.inverse();
  for (const auto& probe : probes) {
    const auto direct = evolve(spec_a, probe, n_steps);
    auto transformed = probe;
    apply_transform(v, transformed);
    transformed = evolve(spec_b, std::move(transformed), n_steps);
    apply_transform(v_inv, transformed);
    report.max_deviation = std::max(report.max_deviation, max_amplitude_deviation(direct, transformed));
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

CheckReport check_distribution_equiv(const WalkSpec& spec_a, const WalkSpec& spec_b, const ProductTransform& v,
                                     std::int64_t n_steps, std::span<const WalkerCoinState> probes, double tol) {
  require_probes(probes);
  CheckReport report{.check = "distribution_equivalence", .n_steps = n_steps, .tolerance = tol};
  report.parameters = {{"w_phase", v.w_phase}, {"x_matrix", matrix_json(v.x.matrix())},
                       {"probe_count", probes.size()}};
  for (const auto& probe : probes) {
    const auto direct = evolve(spec_a, probe, n_steps);
    auto transformed = probe;
    apply_transform(v, transformed);
    transformed = evolve(spec_b, std::move(transformed), n_steps);
    // V† is position-local, so it cannot change the position marginal.
    const double tv = total_variation(position_distribution(direct), position_distribution(transformed));
    report.max_deviation = std::max(report.max_deviation, tv);
  }
  report.details["metric"] = "total_variation";
  report.pass = report.max_deviation <= tol;
  return report;
}

TimeDependentWalk electric_schedule(double theta, double phi) {
  const CoinMatrix base = theta_coin(theta);
  return {[base, phi](std::int64_t n) {
    const double a = static_cast<double>(n - 1) * phi;
    return base * CoinMatrix::from_matrix(Mat2::diagonal(std::polar(1.0, -a), std::polar(1.0, a)));
  }};
}

CheckReport check_cumulative_identity(double theta, double phi, std::int64_t n_steps,
                                      std::span<const WalkerCoinState> probes, double tol) {
  require_probes(probes);
  CheckReport report{.check = "electric_cumulative_identity", .n_steps = n_steps, .tolerance = tol};
  report.parameters = {{"theta", theta}, {"phi", phi}, {"probe_count", probes.size()}};
  const WalkSpec electric = ElectricWalk{theta_coin(theta), phi};
  const WalkSpec scheduled = electric_schedule(theta, phi);
  double max_tv = 0.0;
  for (const auto& probe : probes) {
    const auto lhs = evolve(electric, probe, n_steps);
    auto rhs = evolve(scheduled, probe, n_steps);
    max_tv = std::max(max_tv, total_variation(position_distribution(lhs), position_distribution(rhs)));
    rhs.apply_quasimomentum_shift(static_cast<double>(n_steps) * phi);
    report.max_deviation = std::max(report.max_deviation, max_amplitude_deviation(lhs, rhs));
  }
  report.details["distribution_tv"] = max_tv;
  report.pass = report.max_deviation <= tol && max_tv <= tol;
  return report;
}

CheckReport check_rational_field(double theta, const RationalField& field, std::int64_t n_periods,
                                 std::span<const WalkerCoinState> probes, double tol) {
  require_probes(probes);
  if (n_periods < 0) fail(ErrorKind::InvalidInput, "negative period count");
  const std::int64_t total = n_periods * field.q();
  CheckReport report{.check = "rational_field", .n_steps = total, .tolerance = tol};
  report.parameters = {{"theta", theta},         {"p", field.p()}, {"q", field.q()}, {"phi", field.phase()},
                       {"periods", n_periods}, {"probe_count", probes.size()}};
  const WalkSpec electric = ElectricWalk{theta_coin(theta), field.phase()};
  const WalkSpec scheduled = electric_schedule(theta, field.phase());
  double max_tv = 0.0;
  double off_period_deviation = 0.0;
  nlohmann::json checkpoints = nlohmann::json::array();
  std::vector<double> checkpoint_dev(static_cast<std::size_t>(n_periods), 0.0);
  for (const auto& probe : probes) {
    auto lhs = probe;
    auto rhs = probe;
    for (std::int64_t n = 1; n <= total; ++n) {
      step(electric, lhs, n);
      step(scheduled, rhs, n);
      max_tv = std::max(max_tv, total_variation(position_distribution(lhs), position_distribution(rhs)));
      const double dev = max_amplitude_deviation(lhs, rhs);
      if (n % field.q() == 0) {
        auto& slot = checkpoint_dev[static_cast<std::size_t>(n / field.q() - 1)];
        slot = std::max(slot, dev);
      } else {
        off_period_deviation = std::max(off_period_deviation, dev);
      }
    }
  }
  for (std::size_t i = 0; i < checkpoint_dev.size(); ++i) {
    checkpoints.push_back({{"step", static_cast<std::int64_t>(i + 1) * field.q()}, {"deviation", checkpoint_dev[i]}});
    report.max_deviation = std::max(report.max_deviation, checkpoint_dev[i]);
  }
  report.details["checkpoints"] = checkpoints;
  report.details["off_period_amplitude_deviation"] = off_period_deviation;
  report.details["distribution_tv"] = max_tv;
  report.pass = report.max_deviation <= tol && max_tv <= tol;
  return report;
}

}  // namespace qwalk
