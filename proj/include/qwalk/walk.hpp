#pragma once

// The three walk families and their propagators:
//   simple          Z    = (I ⊗ U) S
//   time-dependent  Z(n) = (I ⊗ U(n)) S
//   electric        Z_E  = (E_Φ ⊗ I)(I ⊗ U) S

#include <cstdint>
#include <functional>
#include <variant>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

struct SimpleWalk {
  CoinMatrix coin;
};

struct TimeDependentWalk {
  /// Coin for step n, n >= 1.
  std::function<CoinMatrix(std::int64_t)> schedule;
};

struct ElectricWalk {
  CoinMatrix coin;
  double phi;
};

using WalkSpec = std::variant<SimpleWalk, TimeDependentWalk, ElectricWalk>;

/// Coin applied at step n.
CoinMatrix coin_at(const WalkSpec& spec, std::int64_t n);
/// Quasi-momentum kick applied after the coin (0 unless electric).
double kick_of(const WalkSpec& spec);

/// One application of the step-n propagator, in place. Shift first, then the
/// coin, then (electric only) the quasi-momentum shift.
void step(const WalkSpec& spec, WalkerCoinState& state, std::int64_t n, PhaseCheck check = PhaseCheck::Strict);

/// Time-ordered product Z(first+n_steps−1)···Z(first) applied to `state`.
/// Throws internal-error if the norm drifts by more than kNormDriftLimit.
WalkerCoinState evolve(const WalkSpec& spec, WalkerCoinState state, std::int64_t n_steps,
                       std::int64_t first_step = 1);

inline constexpr std::size_t kDenseSizeLimit = 64;

/// Explicit 2L×2L matrix of the step-n propagator on a ring, assembled entry by
/// entry (it does not call `step`). Index of (site s, coin c) is 2s + c.
/// Electric phases are placed as given; no commensurability check.
Eigen::MatrixXcd dense_matrix(const WalkSpec& spec, const LatticeConfig& ring, std::int64_t n = 1);

/// max over ring basis states |e⟩ of ‖(R⊗I) Z(n) (R†⊗I)|e⟩ − Z(n)|e⟩‖.
double translation_defect(const WalkSpec& spec, const LatticeConfig& ring, std::int64_t n = 1);

}  // namespace qwalk
