#pragma once

// Unitary equivalence of walks under product transforms V = W ⊗ X, where W is
// a quasi-momentum shift E_{w_phase} and X an SU(2) coin rotation, plus the
// numerical checks for the canonical reduction and the electric /
// time-dependent correspondence.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/report.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

struct ProductTransform {
  double w_phase = 0.0;
  CoinMatrix x = CoinMatrix::identity();

  static ProductTransform identity() { return {}; }
  ProductTransform inverse() const { return {-w_phase, x.adjoint()}; }
};

/// Φ = 2πp/q with gcd(p, q) = 1 and q > 0.
class RationalField {
 public:
  RationalField(std::int64_t p, std::int64_t q);

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  double phase() const;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

struct CanonicalReduction {
  double theta;
  ProductTransform transform;
};

/// V = E_{−(η+ξ)/2} ⊗ e^{−iη/2 σz}, for which V Z_{ηθξ} V† = Z_θ.
CanonicalReduction canonical_reduction(const EulerAngles& angles);

/// The θ-coin e^{iθ/2 σy}.
CoinMatrix theta_coin(double theta);

/// V|Ψ⟩ in place. Ring lattices need w_phase·L ∈ 2πZ.
void apply_transform(const ProductTransform& v, WalkerCoinState& state);

/// Explicit V on a ring (oracle use; no commensurability check).
Eigen::MatrixXcd transform_dense_matrix(const ProductTransform& v, const LatticeConfig& ring);

/// |0,↑⟩, |0,↓⟩ followed by `count − 2` random states supported on
/// [−radius, radius], drawn from a mt19937_64 seeded with `seed`.
std::vector<WalkerCoinState> make_probe_states(const LatticeConfig& config, std::size_t count, std::uint64_t seed,
                                               std::int64_t radius = 3);

/// Compares evolve(A, ψ, n) with V†·evolve(B, Vψ, n) amplitude-wise.
CheckReport check_amplitude_equiv(const WalkSpec& spec_a, const WalkSpec& spec_b, const ProductTransform& v,
                                  std::int64_t n_steps, std::span<const WalkerCoinState> probes, double tol);

/// Compares position distributions of evolve(A, ψ, n) and evolve(B, Vψ, n);
/// max_deviation is the largest total-variation distance over probes.
CheckReport check_distribution_equiv(const WalkSpec& spec_a, const WalkSpec& spec_b, const ProductTransform& v,
                                     std::int64_t n_steps, std::span<const WalkerCoinState> probes, double tol);

/// U(n) = e^{iθ/2 σy} e^{−i(n−1)Φσz}
TimeDependentWalk electric_schedule(double theta, double phi);

/// Z_Eⁿ = (E_{nΦ} ⊗ I) Z(n)···Z(1) on every probe.
CheckReport check_cumulative_identity(double theta, double phi, std::int64_t n_steps,
                                      std::span<const WalkerCoinState> probes, double tol);

/// With Φ = 2πp/q the electric and scheduled walks coincide at every multiple
/// of q steps; in between they differ by E_{nΦ}, which leaves position
/// distributions unchanged.
CheckReport check_rational_field(double theta, const RationalField& field, std::int64_t n_periods,
                                 std::span<const WalkerCoinState> probes, double tol);

}  // namespace qwalk
