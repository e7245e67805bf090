#include "qwalk/coin.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr cplx kI{0.0, 1.0};

bool all_finite(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void require_unit_axis(const std::array<double, 3>& r, double tol) {
  if (!all_finite({r[0], r[1], r[2]})) fail(ErrorKind::InvalidInput, "axis has non-finite component");
  const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  if (std::abs(norm - 1.0) > tol) {
    fail(ErrorKind::InvalidInput, "rotation axis is not a unit vector (norm " + std::to_string(norm) + ")");
  }
}

Mat2 axis_dot_sigma(const std::array<double, 3>& r) {
  return cplx(r[0]) * pauli::x() + cplx(r[1]) * pauli::y() + cplx(r[2]) * pauli::z();
}

// Fixes the free phase of an eigenvector: first component real >= 0, or, if
// it vanishes, the second component real > 0.
std::array<cplx, 2> apply_phase_convention(std::array<cplx, 2> v, double tol) {
  const std::size_t pivot = std::abs(v[0]) >= tol ? 0 : 1;
  const cplx phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  v[0] *= phase;
  v[1] *= phase;
  v[pivot] = std::abs(v[pivot]);
  if (pivot == 1) v[0] = 0.0;
  return v;
}

std::array<cplx, 2> normalized(std::array<cplx, 2> v) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  return {v[0] / n, v[1] / n};
}

std::vector<double> parse_doubles(std::string_view body, std::string_view what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::size_t end = comma == std::string_view::npos ? body.size() : comma;
    std::string_view token = body.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
      fail(ErrorKind::InvalidInput, "malformed number '" + std::string(token) + "' in " + std::string(what));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Mat2 Mat2::identity() { return diagonal(1.0, 1.0); }

Mat2 Mat2::diagonal(cplx d0, cplx d1) {
  Mat2 r;
  r(0, 0) = d0;
  r(1, 1) = d1;
  return r;
}

Mat2 Mat2::adjoint() const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx Mat2::det() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }

cplx Mat2::trace() const { return (*this)(0, 0) + (*this)(1, 1); }

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return r;
}

Mat2 operator*(cplx s, const Mat2& a) {
  Mat2 r = a;
  for (auto& x : r.m) x *= s;
  return r;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 r = a;
  for (std::size_t i = 0; i < 4; ++i) r.m[i] += b.m[i];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 r = a;
  for (std::size_t i = 0; i < 4; ++i) r.m[i] -= b.m[i];
  return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
  return d;
}

double unitarity_defect(const Mat2& m) { return max_abs_diff(m.adjoint() * m, Mat2::identity()); }

namespace pauli {
Mat2 x() {
  Mat2 r;
  r(0, 1) = 1.0;
  r(1, 0) = 1.0;
  return r;
}
Mat2 y() {
  Mat2 r;
  r(0, 1) = -kI;
  r(1, 0) = kI;
  return r;
}
Mat2 z() { return Mat2::diagonal(1.0, -1.0); }
}  // namespace pauli

CoinMatrix CoinMatrix::identity() { return CoinMatrix(Mat2::identity()); }

CoinMatrix CoinMatrix::from_matrix(const Mat2& m, double tol) {
  for (const auto& x : m.m) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      fail(ErrorKind::InvalidInput, "coin matrix has non-finite entries");
    }
  }
  if (unitarity_defect(m) > tol) fail(ErrorKind::InvalidInput, "coin matrix is not unitary");
  if (std::abs(m.det() - 1.0) > tol) fail(ErrorKind::InvalidInput, "coin matrix determinant is not 1");
  return CoinMatrix(m);
}

CoinMatrix CoinMatrix::adjoint() const { return CoinMatrix(m_.adjoint()); }

CoinMatrix operator*(const CoinMatrix& a, const CoinMatrix& b) { return CoinMatrix(a.m_ * b.m_); }

CoinMatrix from_axis_angle(const AxisAngle& p, double tol) {
  if (!std::isfinite(p.phi)) fail(ErrorKind::InvalidInput, "rotation angle is not finite");
  require_unit_axis(p.axis, tol);
  const Mat2 u = cplx(std::cos(p.phi / 2)) * Mat2::identity() + (kI * std::sin(p.phi / 2)) * axis_dot_sigma(p.axis);
  return CoinMatrix::from_matrix(u, std::max(tol, 4 * kCoinTolerance));
}

CoinMatrix from_euler(const EulerAngles& p) {
  if (!all_finite({p.eta, p.theta, p.xi})) fail(ErrorKind::InvalidInput, "Euler angles must be finite");
  const double c = std::cos(p.theta / 2);
  const double s = std::sin(p.theta / 2);
  const double sum = (p.eta + p.xi) / 2;
  const double diff = (p.eta - p.xi) / 2;
  Mat2 u;
  u(0, 0) = std::polar(c, sum);
  u(0, 1) = std::polar(s, diff);
  u(1, 0) = -std::polar(s, -diff);
  u(1, 1) = std::polar(c, -sum);
  return CoinMatrix::from_matrix(u);
}

double wrap_angle(double a) {
  constexpr double two_pi = 2 * std::numbers::pi;
  double r = std::remainder(a, two_pi);  // [-π, π]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

EulerAngles euler_decompose(const CoinMatrix& u) {
  // u = [[a, b], [-b*, a*]] with a = e^{i(η+ξ)/2}cos(θ/2), b = e^{i(η−ξ)/2}sin(θ/2).
  const cplx a = 0.5 * (u(0, 0) + std::conj(u(1, 1)));
  const cplx b = 0.5 * (u(0, 1) - std::conj(u(1, 0)));
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  EulerAngles out;
  out.theta = 2 * std::atan2(abs_b, abs_a);
  if (abs_b < kCoinTolerance) {
    out.theta = 0.0;
    out.eta = 2 * std::arg(a);
  } else if (abs_a < kCoinTolerance) {
    out.theta = std::numbers::pi;
    out.eta = 2 * std::arg(b);
  } else {
    out.xi = wrap_angle(std::arg(a) - std::arg(b));
    out.eta = 2 * std::arg(a) - out.xi;
  }
  // η is determined modulo 4π; fold into (−2π, 2π].
  constexpr double four_pi = 4 * std::numbers::pi;
  out.eta = std::remainder(out.eta, four_pi);
  if (out.eta <= -2 * std::numbers::pi) out.eta += four_pi;
  return out;
}

SU2Normalization normalize_u2_to_su2(const Mat2& m, double tol) {
  if (unitarity_defect(m) > tol) fail(ErrorKind::InvalidInput, "matrix is not unitary");
  const double phase = std::arg(m.det()) / 2;
  const Mat2 su2 = std::polar(1.0, -phase) * m;
  return {CoinMatrix::from_matrix(su2, std::max(tol, 4 * kCoinTolerance)), phase};
}

Mat2 basis_rotation_for_axis(const std::array<double, 3>& axis, double tol) {
  require_unit_axis(axis, tol);
  const double x = axis[0], y = axis[1], z = axis[2];
  // Of the two algebraically equivalent eigenvector forms pick the one whose
  // normalization does not divide by a small number.
  std::array<cplx, 2> up, down;
  if (z >= 0) {
    up = normalized({cplx(1 + z), cplx(x, y)});
    down = normalized({cplx(-x, y), cplx(1 + z)});
  } else {
    up = normalized({cplx(x, -y), cplx(1 - z)});
    down = normalized({cplx(1 - z), cplx(-x, -y)});
  }
  up = apply_phase_convention(up, kCoinTolerance);
  down = apply_phase_convention(down, kCoinTolerance);
  Mat2 r;
  r(0, 0) = std::conj(up[0]);
  r(0, 1) = std::conj(up[1]);
  r(1, 0) = std::conj(down[0]);
  r(1, 1) = std::conj(down[1]);
  return r;
}

AxisCanonicalForm canonicalize_axis(const AxisAngle& p, double tol) {
  const Mat2 x = basis_rotation_for_axis(p.axis, tol);
  const Mat2 canonical = Mat2::diagonal(std::polar(1.0, p.phi / 2), std::polar(1.0, -p.phi / 2));
  return {x, normalize_u2_to_su2(x, std::max(tol, 4 * kCoinTolerance)).coin, CoinMatrix::from_matrix(canonical)};
}

ParsedCoin parse_coin_spec(std::string_view text, double tol) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorKind::InvalidInput, "coin spec must look like euler:..., axis:... or matrix:...");
  }
  const std::string_view form = text.substr(0, colon);
  const std::vector<double> v = parse_doubles(text.substr(colon + 1), "coin spec");
  if (form == "euler") {
    if (v.size() != 3) fail(ErrorKind::InvalidInput, "euler: expects 3 angles");
    return {from_euler({v[0], v[1], v[2]}), 0.0, "euler"};
  }
  if (form == "axis") {
    if (v.size() != 4) fail(ErrorKind::InvalidInput, "axis: expects phi,rx,ry,rz");
    return {from_axis_angle({v[0], {v[1], v[2], v[3]}}, tol), 0.0, "axis"};
  }
  if (form == "matrix") {
    if (v.size() != 8) fail(ErrorKind::InvalidInput, "matrix: expects 8 floats");
    Mat2 m;
    for (std::size_t i = 0; i < 4; ++i) m.m[i] = cplx(v[2 * i], v[2 * i + 1]);
    auto [coin, phase] = normalize_u2_to_su2(m, tol);
    return {coin, phase, "matrix"};
  }
  fail(ErrorKind::InvalidInput, "unknown coin form '" + std::string(form) + "'");
}

}  // namespace qwalk
