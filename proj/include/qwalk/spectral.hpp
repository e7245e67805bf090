#pragma once

// Momentum-space picture of translation-invariant walks. With
// |k⟩ = Σ_j e^{ikj}|j⟩ we have R|k⟩ = e^{−ik}|k⟩, so the one-step propagator
// restricted to momentum k is U·diag(e^{−ik}, e^{ik}).

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/report.hpp"

namespace qwalk {

Mat2 momentum_propagator(const CoinMatrix& u, double k);

/// Eigenphases {−ω, ω}, ω ∈ [0, π], of an SU(2) matrix.
std::array<double, 2> su2_eigenphases(const Mat2& m);

struct DispersionSample {
  double k;
  double omega_plus;
  double omega_minus;
  double v_group;
};

struct DispersionCurve {
  std::vector<DispersionSample> samples;
  /// cos ω₊(k) ≈ amplitude·cos(k − shift), fitted from the sampled curve.
  double fitted_shift = 0.0;
  double fitted_amplitude = 0.0;

  double max_abs_group_velocity() const;
  double omega_min() const;
  double omega_max() const;
};

inline constexpr std::size_t kMinDispersionSamples = 8;

/// Samples k_m = −π + 2π(m+1)/N, m = 0..N−1, covering (−π, π].
DispersionCurve dispersion(const CoinMatrix& u, std::size_t n_samples);

/// Checks that the eigenphases of Z_{ηθξ}(k) and Z_θ(k − (η+ξ)/2) agree on the
/// whole grid.
CheckReport spectral_invariance_check(const EulerAngles& angles, std::size_t n_samples, double tol);

/// `k,omega_plus,omega_minus,v_group`, %.17g.
void write_dispersion_csv(std::ostream& os, const DispersionCurve& curve);

}  // namespace qwalk
