#pragma once

// Walker ⊗ coin state on a finite window of the integer line.
//
// Storage is site-major: amplitude (j, ↑) at 2·s, (j, ↓) at 2·s + 1 where
// s = j + origin_index is the storage index of logical site j.

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

enum class Boundary { Padded, Ring };

enum class Direction { Left, Right };

/// Whether a quasi-momentum shift on a ring must be commensurate
/// (Φ·L ∈ 2πZ). `Waived` exists for translation-defect diagnostics only.
enum class PhaseCheck { Strict, Waived };

struct LatticeConfig {
  std::size_t size = 2;
  Boundary boundary = Boundary::Padded;
  std::int64_t origin_index = 0;
  std::size_t guard = 1;  // Padded only

  static LatticeConfig padded(std::size_t size, std::int64_t origin_index, std::size_t guard = 1);
  static LatticeConfig ring(std::size_t size, std::int64_t origin_index = 0);
  /// Smallest Padded window that holds sites [min_site, max_site] and lets
  /// `steps` steps run without touching the guard band.
  static LatticeConfig padded_for_steps(std::int64_t steps, std::int64_t min_site, std::int64_t max_site);

  void validate() const;

  std::int64_t first_site() const { return -origin_index; }
  std::int64_t last_site() const { return static_cast<std::int64_t>(size) - 1 - origin_index; }
  bool contains(std::int64_t site) const { return site >= first_site() && site <= last_site(); }
  std::size_t storage_index(std::int64_t site) const;
  std::int64_t site_at(std::size_t index) const { return static_cast<std::int64_t>(index) - origin_index; }

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

struct SiteAmplitude {
  std::int64_t site;
  cplx amplitude;
};

using CoinVector = std::array<cplx, 2>;

inline constexpr double kNormTolerance = 1e-10;
/// Norm drift beyond this is treated as an internal error, never corrected.
inline constexpr double kNormDriftLimit = 1e-8;

class WalkerCoinState {
 public:
  /// Normalized outer product of a walker wavefunction and a coin state.
  static WalkerCoinState product(std::span<const SiteAmplitude> walker, const CoinVector& coin,
                                 const LatticeConfig& config);
  static WalkerCoinState localized(std::int64_t site, const CoinVector& coin, const LatticeConfig& config);
  /// Takes raw site-major amplitudes; they must already have unit norm.
  static WalkerCoinState from_amplitudes(std::vector<cplx> amplitudes, const LatticeConfig& config);

  const LatticeConfig& config() const noexcept { return config_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> mutable_amplitudes() noexcept { return amps_; }
  cplx up(std::int64_t site) const;
  cplx down(std::int64_t site) const;
  double norm_squared() const;

  /// Unconditional R (Right) or R† (Left) on the walker.
  void apply_shift(Direction direction);
  /// S = R ⊗ |↑⟩⟨↑| + R† ⊗ |↓⟩⟨↓|
  void conditional_shift();
  /// I ⊗ U
  void apply_coin(const CoinMatrix& u);
  /// E_Φ ⊗ I, E_Φ|j⟩ = e^{iΦj}|j⟩ on logical sites.
  void apply_quasimomentum_shift(double phi, PhaseCheck check = PhaseCheck::Strict);
  void scale(cplx factor);

 private:
  WalkerCoinState(std::vector<cplx> amps, const LatticeConfig& config);

  void check_guard(bool up_moves_right, bool up_moves_left, bool down_moves_right, bool down_moves_left) const;

  std::vector<cplx> amps_;
  LatticeConfig config_;
};

/// True when Φ·L is a multiple of 2π within 1e-9.
bool ring_phase_commensurate(double phi, std::size_t size);

struct PositionDistribution {
  std::int64_t first_site = 0;
  std::vector<double> probability;

  std::int64_t site(std::size_t i) const { return first_site + static_cast<std::int64_t>(i); }
  double at(std::int64_t site) const;
};

PositionDistribution position_distribution(const WalkerCoinState& state);

struct Moments {
  double mean;
  double variance;
  double stddev;
};

Moments moments(const PositionDistribution& dist);

/// ½·Σ|p_j − q_j| over the union of both supports.
double total_variation(const PositionDistribution& a, const PositionDistribution& b);

/// max |a_i − b_i| amplitude-wise; configs must match.
double max_amplitude_deviation(const WalkerCoinState& a, const WalkerCoinState& b);

/// `site,probability`, ascending sites, nonzero entries only, %.17g.
void write_distribution_csv(std::ostream& os, const PositionDistribution& dist);
/// `site,re_up,im_up,re_down,im_down` for every site of the window.
void write_state_csv(std::ostream& os, const WalkerCoinState& state);

}  // namespace qwalk
