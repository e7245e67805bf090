#pragma once

// SU(2) coin-toss operators: construction from axis-angle and Euler forms,
// Euler decomposition, U(2) -> SU(2) normalization and the basis rotation that
// brings a rotation axis to the z direction.

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace qwalk {

using cplx = std::complex<double>;

inline constexpr double kCoinTolerance = 1e-12;

/// Plain 2x2 complex matrix, row-major. No invariants.
struct Mat2 {
  std::array<cplx, 4> m{};

  constexpr cplx& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  constexpr const cplx& operator()(int r, int c) const {
    return m[static_cast<std::size_t>(2 * r + c)];
  }

  static Mat2 identity();
  static Mat2 diagonal(cplx d0, cplx d1);

  Mat2 adjoint() const;
  cplx det() const;
  cplx trace() const;

  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(cplx s, const Mat2& a);
  friend Mat2 operator+(const Mat2& a, const Mat2& b);
  friend Mat2 operator-(const Mat2& a, const Mat2& b);
};

/// max |a_ij - b_ij|
double max_abs_diff(const Mat2& a, const Mat2& b);
/// ‖M†M − I‖_max
double unitarity_defect(const Mat2& m);

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
}  // namespace pauli

struct AxisAngle {
  double phi = 0.0;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
};

struct EulerAngles {
  double eta = 0.0;
  double theta = 0.0;
  double xi = 0.0;
};

/// A 2x2 unitary with unit determinant. The only way to obtain one is through
/// a validating factory, so every CoinMatrix in the program is in SU(2).
class CoinMatrix {
 public:
  static CoinMatrix identity();
  /// Throws invalid-input unless `m` is unitary with det 1 within `tol`.
  static CoinMatrix from_matrix(const Mat2& m, double tol = kCoinTolerance);

  const Mat2& matrix() const noexcept { return m_; }
  const cplx& operator()(int r, int c) const { return m_(r, c); }

  CoinMatrix adjoint() const;
  friend CoinMatrix operator*(const CoinMatrix& a, const CoinMatrix& b);

 private:
  explicit CoinMatrix(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

/// cos(φ/2)·I + i·sin(φ/2)·(r·σ)
CoinMatrix from_axis_angle(const AxisAngle& p, double tol = kCoinTolerance);

/// e^{iη/2 σz} e^{iθ/2 σy} e^{iξ/2 σz}. Any finite angles are accepted.
CoinMatrix from_euler(const EulerAngles& p);

/// Inverse of from_euler. Result lies in θ ∈ [0, π], ξ ∈ (−π, π],
/// η ∈ (−2π, 2π]; at θ = 0 or θ = π the free combination is folded into η
/// and ξ is set to 0.
EulerAngles euler_decompose(const CoinMatrix& u);

struct SU2Normalization {
  CoinMatrix coin;
  double global_phase;  // M = e^{i·global_phase}·coin
};

/// Splits a U(2) matrix into e^{i·arg(det M)/2} times an SU(2) part.
SU2Normalization normalize_u2_to_su2(const Mat2& m, double tol = kCoinTolerance);

/// Unitary X with X·(r·σ)·X† = σz. Rows are the conjugated ±1 eigenvectors of
/// r·σ, each with its first component real and non-negative (or, when that
/// component vanishes, the second one real positive). det X is a phase, not
/// necessarily 1.
Mat2 basis_rotation_for_axis(const std::array<double, 3>& axis, double tol = kCoinTolerance);

struct AxisCanonicalForm {
  Mat2 basis_rotation;        // as returned by basis_rotation_for_axis
  CoinMatrix su2_rotation;    // SU(2) part of basis_rotation
  CoinMatrix canonical_coin;  // diag(e^{iφ/2}, e^{−iφ/2})
};

AxisCanonicalForm canonicalize_axis(const AxisAngle& p, double tol = kCoinTolerance);

/// Wraps an angle into (−π, π].
double wrap_angle(double a);

/// Result of parsing a coin string. `global_phase` is non-zero only for
/// `matrix:` inputs outside SU(2).
struct ParsedCoin {
  CoinMatrix coin;
  double global_phase = 0.0;
  std::string form;  // "euler", "axis" or "matrix"
};

/// Grammar: `euler:<eta>,<theta>,<xi>` | `axis:<phi>,<rx>,<ry>,<rz>` |
/// `matrix:<8 floats, row-major re,im pairs>`. Radians, decimal literals only.
ParsedCoin parse_coin_spec(std::string_view text, double tol = kCoinTolerance);

}  // namespace qwalk
