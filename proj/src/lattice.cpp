#include "qwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr std::size_t kUp = 0;
constexpr std::size_t kDown = 1;

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

LatticeConfig LatticeConfig::padded(std::size_t size, std::int64_t origin_index, std::size_t guard) {
  LatticeConfig c{size, Boundary::Padded, origin_index, guard};
  c.validate();
  return c;
}

LatticeConfig LatticeConfig::ring(std::size_t size, std::int64_t origin_index) {
  LatticeConfig c{size, Boundary::Ring, origin_index, 0};
  c.validate();
  return c;
}

LatticeConfig LatticeConfig::padded_for_steps(std::int64_t steps, std::int64_t min_site, std::int64_t max_site) {
  if (steps < 0 || max_site < min_site) fail(ErrorKind::InvalidInput, "bad padded lattice request");
  const std::int64_t margin = steps + 2;
  const auto size = static_cast<std::size_t>(max_site - min_site + 1 + 2 * margin);
  return padded(size, margin - min_site);
}

void LatticeConfig::validate() const {
  if (size < 2) fail(ErrorKind::InvalidInput, "lattice needs at least 2 sites");
  if (boundary == Boundary::Padded && guard < 1) fail(ErrorKind::InvalidInput, "padded lattice needs guard >= 1");
  if (boundary == Boundary::Padded && 2 * guard >= size) {
    fail(ErrorKind::InvalidInput, "guard band leaves no interior");
  }
}

std::size_t LatticeConfig::storage_index(std::int64_t site) const {
  if (!contains(site)) {
    fail(ErrorKind::InvalidInput, "site " + std::to_string(site) + " outside lattice [" +
                                      std::to_string(first_site()) + ", " + std::to_string(last_site()) + "]");
  }
  return static_cast<std::size_t>(site + origin_index);
}

WalkerCoinState::WalkerCoinState(std::vector<cplx> amps, const LatticeConfig& config)
    : amps_(std::move(amps)), config_(config) {}

WalkerCoinState WalkerCoinState::product(std::span<const SiteAmplitude> walker, const CoinVector& coin,
                                         const LatticeConfig& config) {
  config.validate();
  const double coin_norm = std::sqrt(std::norm(coin[0]) + std::norm(coin[1]));
  double walker_norm2 = 0.0;
  std::vector<cplx> site_amps(config.size);
  for (const auto& [site, amp] : walker) {
    site_amps[config.storage_index(site)] += amp;
  }
  for (const auto& a : site_amps) walker_norm2 += std::norm(a);
  if (!(coin_norm > 0.0) || !(walker_norm2 > 0.0)) {
    fail(ErrorKind::InvalidInput, "product state factor has zero norm");
  }
  const double scale = 1.0 / (coin_norm * std::sqrt(walker_norm2));
  std::vector<cplx> amps(2 * config.size);
  for (std::size_t s = 0; s < config.size; ++s) {
    amps[2 * s + kUp] = site_amps[s] * coin[0] * scale;
    amps[2 * s + kDown] = site_amps[s] * coin[1] * scale;
  }
  return WalkerCoinState(std::move(amps), config);
}

WalkerCoinState WalkerCoinState::localized(std::int64_t site, const CoinVector& coin, const LatticeConfig& config) {
  const SiteAmplitude delta{site, 1.0};
  return product(std::span(&delta, 1), coin, config);
}

WalkerCoinState WalkerCoinState::from_amplitudes(std::vector<cplx> amplitudes, const LatticeConfig& config) {
  config.validate();
  if (amplitudes.size() != 2 * config.size) fail(ErrorKind::InvalidInput, "amplitude vector length must be 2L");
  WalkerCoinState s(std::move(amplitudes), config);
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) fail(ErrorKind::InvalidInput, "state is not normalized");
  return s;
}

cplx WalkerCoinState::up(std::int64_t site) const { return amps_[2 * config_.storage_index(site) + kUp]; }

cplx WalkerCoinState::down(std::int64_t site) const { return amps_[2 * config_.storage_index(site) + kDown]; }

double WalkerCoinState::norm_squared() const {
  double n = 0.0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

void WalkerCoinState::check_guard(bool up_right, bool up_left, bool down_right, bool down_left) const {
  if (config_.boundary != Boundary::Padded) return;
  const std::size_t L = config_.size;
  const std::size_t g = config_.guard;
  for (std::size_t k = 0; k < g; ++k) {
    const std::size_t lo = k;
    const std::size_t hi = L - 1 - k;
    const bool hit = (up_right && amps_[2 * hi + kUp] != 0.0) || (down_right && amps_[2 * hi + kDown] != 0.0) ||
                     (up_left && amps_[2 * lo + kUp] != 0.0) || (down_left && amps_[2 * lo + kDown] != 0.0);
    if (hit) {
      fail(ErrorKind::GuardViolation, "amplitude reached the guard band of the padded lattice (size " +
                                          std::to_string(L) + "); enlarge the lattice");
    }
  }
}

void WalkerCoinState::apply_shift(Direction direction) {
  const bool right = direction == Direction::Right;
  check_guard(right, !right, right, !right);
  const std::size_t L = config_.size;
  if (config_.boundary == Boundary::Ring) {
    if (right) {
      std::rotate(amps_.rbegin(), amps_.rbegin() + 2, amps_.rend());
    } else {
      std::rotate(amps_.begin(), amps_.begin() + 2, amps_.end());
    }
    return;
  }
  if (right) {
    for (std::size_t s = L - 1; s > 0; --s) {
      amps_[2 * s] = amps_[2 * (s - 1)];
      amps_[2 * s + 1] = amps_[2 * (s - 1) + 1];
    }
    amps_[0] = amps_[1] = 0.0;
  } else {
    for (std::size_t s = 0; s + 1 < L; ++s) {
      amps_[2 * s] = amps_[2 * (s + 1)];
      amps_[2 * s + 1] = amps_[2 * (s + 1) + 1];
    }
    amps_[2 * (L - 1)] = amps_[2 * (L - 1) + 1] = 0.0;
  }
}

void WalkerCoinState::conditional_shift() {
  check_guard(true, false, false, true);
  const std::size_t L = config_.size;
  const bool ring = config_.boundary == Boundary::Ring;
  // ↑ moves right: sweep from the top so sources are read before overwrite.
  const cplx up_wrap = amps_[2 * (L - 1) + kUp];
  for (std::size_t s = L - 1; s > 0; --s) amps_[2 * s + kUp] = amps_[2 * (s - 1) + kUp];
  amps_[kUp] = ring ? up_wrap : cplx{};
  // ↓ moves left.
  const cplx down_wrap = amps_[kDown];
  for (std::size_t s = 0; s + 1 < L; ++s) amps_[2 * s + kDown] = amps_[2 * (s + 1) + kDown];
  amps_[2 * (L - 1) + kDown] = ring ? down_wrap : cplx{};
}

void WalkerCoinState::apply_coin(const CoinMatrix& u) {
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::size_t i = 0; i < amps_.size(); i += 2) {
    const cplx a = amps_[i];
    const cplx b = amps_[i + 1];
    amps_[i] = u00 * a + u01 * b;
    amps_[i + 1] = u10 * a + u11 * b;
  }
}

bool ring_phase_commensurate(double phi, std::size_t size) {
  return std::abs(std::remainder(phi * static_cast<double>(size), 2 * std::numbers::pi)) <= 1e-9;
}

void WalkerCoinState::apply_quasimomentum_shift(double phi, PhaseCheck check) {
  if (!std::isfinite(phi)) fail(ErrorKind::InvalidInput, "quasi-momentum shift must be finite");
  if (config_.boundary == Boundary::Ring && check == PhaseCheck::Strict &&
      !ring_phase_commensurate(phi, config_.size)) {
    fail(ErrorKind::IncommensurateRingPhase,
         "phi * L must be a multiple of 2pi on a ring (phi=" + std::to_string(phi) +
             ", L=" + std::to_string(config_.size) + ")");
  }
  if (phi == 0.0) return;
  for (std::size_t s = 0; s < config_.size; ++s) {
    const cplx phase = std::polar(1.0, phi * static_cast<double>(config_.site_at(s)));
    amps_[2 * s] *= phase;
    amps_[2 * s + 1] *= phase;
  }
}

void WalkerCoinState::scale(cplx factor) {
  for (auto& a : amps_) a *= factor;
}

double PositionDistribution::at(std::int64_t site) const {
  const std::int64_t i = site - first_site;
  if (i < 0 || i >= static_cast<std::int64_t>(probability.size())) return 0.0;
  return probability[static_cast<std::size_t>(i)];
}

PositionDistribution position_distribution(const WalkerCoinState& state) {
  const auto& cfg = state.config();
  const auto amps = state.amplitudes();
  PositionDistribution d{cfg.first_site(), std::vector<double>(cfg.size)};
  for (std::size_t s = 0; s < cfg.size; ++s) d.probability[s] = std::norm(amps[2 * s]) + std::norm(amps[2 * s + 1]);
  return d;
}

Moments moments(const PositionDistribution& dist) {
  double total = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < dist.probability.size(); ++i) {
    total += dist.probability[i];
    mean += dist.probability[i] * static_cast<double>(dist.site(i));
  }
  if (std::abs(total - 1.0) > kNormTolerance) fail(ErrorKind::InvalidInput, "distribution does not sum to 1");
  double var = 0.0;
  for (std::size_t i = 0; i < dist.probability.size(); ++i) {
    const double d = static_cast<double>(dist.site(i)) - mean;
    var += dist.probability[i] * d * d;
  }
  return {mean, var, std::sqrt(var)};
}

double total_variation(const PositionDistribution& a, const PositionDistribution& b) {
  const auto last = [](const PositionDistribution& d) {
    return d.first_site + static_cast<std::int64_t>(d.probability.size()) - 1;
  };
  const std::int64_t lo = std::min(a.first_site, b.first_site);
  const std::int64_t hi = std::max(last(a), last(b));
  double tv = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j) tv += std::abs(a.at(j) - b.at(j));
  return 0.5 * tv;
}

double max_amplitude_deviation(const WalkerCoinState& a, const WalkerCoinState& b) {
  if (!(a.config() == b.config())) fail(ErrorKind::InvalidInput, "states live on different lattices");
  double d = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

void write_distribution_csv(std::ostream& os, const PositionDistribution& dist) {
  os << "site,probability\n";
  for (std::size_t i = 0; i < dist.probability.size(); ++i) {
    if (dist.probability[i] == 0.0) continue;
    os << dist.site(i) << ',' << fmt17(dist.probability[i]) << '\n';
  }
}

void write_state_csv(std::ostream& os, const WalkerCoinState& state) {
  os << "site,re_up,im_up,re_down,im_down\n";
  const auto amps = state.amplitudes();
  const auto& cfg = state.config();
  for (std::size_t s = 0; s < cfg.size; ++s) {
    const cplx u = amps[2 * s], d = amps[2 * s + 1];
    os << cfg.site_at(s) << ',' << fmt17(u.real()) << ',' << fmt17(u.imag()) << ',' << fmt17(d.real()) << ','
       << fmt17(d.imag()) << '\n';
  }
}

}  // namespace qwalk
