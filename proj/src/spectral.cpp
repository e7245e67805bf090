#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_point(std::size_t m, std::size_t n) {
  return -kPi + 2 * kPi * static_cast<double>(m + 1) / static_cast<double>(n);
}

}  // namespace

Mat2 momentum_propagator(const CoinMatrix& u, double k) {
  return u.matrix() * Mat2::diagonal(std::polar(1.0, -k), std::polar(1.0, k));
}

std::array<double, 2> su2_eigenphases(const Mat2& m) {
  // m = [[a, b], [−b*, a*]] has eigenvalues Re a ± i·sqrt(Im²a + |b|²).
  const cplx a = 0.5 * (m(0, 0) + std::conj(m(1, 1)));
  const cplx b = 0.5 * (m(0, 1) - std::conj(m(1, 0)));
  const double omega = std::atan2(std::sqrt(a.imag() * a.imag() + std::norm(b)), a.real());
  return {-omega, omega};
}

double DispersionCurve::max_abs_group_velocity() const {
  double v = 0.0;
  for (const auto& s : samples) v = std::max(v, std::abs(s.v_group));
  return v;
}

double DispersionCurve::omega_min() const {
  double w = kPi;
  for (const auto& s : samples) w = std::min(w, s.omega_plus);
  return w;
}

double DispersionCurve::omega_max() const {
  double w = 0.0;
  for (const auto& s : samples) w = std::max(w, s.omega_plus);
  return w;
}

DispersionCurve dispersion(const CoinMatrix& u, std::size_t n_samples) {
  if (n_samples < kMinDispersionSamples) fail(ErrorKind::InvalidInput, "dispersion needs at least 8 samples");
  DispersionCurve curve;
  curve.samples.resize(n_samples);
  cplx first_harmonic{};
  for (std::size_t m = 0; m < n_samples; ++m) {
    const double k = grid_point(m, n_samples);
    const auto phases = su2_eigenphases(momentum_propagator(u, k));
    curve.samples[m] = {k, phases[1], phases[0], 0.0};
    first_harmonic += std::cos(phases[1]) * std::polar(1.0, k);
  }
  first_harmonic /= static_cast<double>(n_samples);
  curve.fitted_amplitude = 2 * std::abs(first_harmonic);
  curve.fitted_shift = curve.fitted_amplitude > 1e-12 ? std::arg(first_harmonic) : 0.0;

  // |U00| = cos(θ/2); θ = π gives flat bands.
  const bool flat = std::abs(u(0, 0)) < 1e-12;
  const double h = 2 * kPi / static_cast<double>(n_samples);
  for (std::size_t m = 0; m < n_samples && !flat; ++m) {
    const auto& next = curve.samples[(m + 1) % n_samples];
    const auto& prev = curve.samples[(m + n_samples - 1) % n_samples];
    curve.samples[m].v_group = (next.omega_plus - prev.omega_plus) / (2 * h);
  }
  return curve;
}

CheckReport spectral_invariance_check(const EulerAngles& angles, std::size_t n_samples, double tol) {
  if (n_samples < kMinDispersionSamples) fail(ErrorKind::InvalidInput, "spectral check needs at least 8 samples");
  const CoinMatrix general = from_euler(angles);
  const CoinMatrix canonical = from_euler({0.0, angles.theta, 0.0});
  const double shift = (angles.eta + angles.xi) / 2;
  const double c = std::cos(angles.theta / 2);

  CheckReport report{.check = "spectral_invariance", .n_steps = 0, .tolerance = tol};
  report.parameters = {{"eta", angles.eta}, {"theta", angles.theta}, {"xi", angles.xi}, {"samples", n_samples}};
  double trace_dev = 0.0;
  double lo_a = kPi, hi_a = 0.0, lo_b = kPi, hi_b = 0.0;
  for (std::size_t m = 0; m < n_samples; ++m) {
    const double k = grid_point(m, n_samples);
    const auto a = su2_eigenphases(momentum_propagator(general, k));
    const auto b = su2_eigenphases(momentum_propagator(canonical, k - shift));
    report.max_deviation = std::max({report.max_deviation, std::abs(a[0] - b[0]), std::abs(a[1] - b[1])});
    trace_dev = std::max(trace_dev, std::abs(std::cos(a[1]) - c * std::cos(k - shift)));
    lo_a = std::min(lo_a, a[1]);
    hi_a = std::max(hi_a, a[1]);
    lo_b = std::min(lo_b, b[1]);
    hi_b = std::max(hi_b, b[1]);
  }
  report.details = {{"momentum_shift", shift},
                    {"trace_identity_deviation", trace_dev},
                    {"omega_range", {lo_a, hi_a}},
                    {"canonical_omega_range", {lo_b, hi_b}}};
  report.pass = report.max_deviation <= tol && trace_dev <= tol;
  return report;
}

void write_dispersion_csv(std::ostream& os, const DispersionCurve& curve) {
  os << "k,omega_plus,omega_minus,v_group\n";
  char buf[128];
  for (const auto& s : curve.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.k, s.omega_plus, s.omega_minus, s.v_group);
    os << buf;
  }
}

}  // namespace qwalk
