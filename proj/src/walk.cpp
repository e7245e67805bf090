#include "qwalk/walk.hpp"

#include <cmath>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};

void require_ring(const LatticeConfig& cfg) {
  cfg.validate();
  if (cfg.boundary != Boundary::Ring) fail(ErrorKind::InvalidInput, "operation requires a ring lattice");
}

}  // namespace

CoinMatrix coin_at(const WalkSpec& spec, std::int64_t n) {
  return std::visit(overloaded{
                        [](const SimpleWalk& w) { return w.coin; },
                        [n](const TimeDependentWalk& w) { return w.schedule(n); },
                        [](const ElectricWalk& w) { return w.coin; },
                    },
                    spec);
}

double kick_of(const WalkSpec& spec) {
  if (const auto* e = std::get_if<ElectricWalk>(&spec)) return e->phi;
  return 0.0;
}

void step(const WalkSpec& spec, WalkerCoinState& state, std::int64_t n, PhaseCheck check) {
  if (n < 1) fail(ErrorKind::InvalidInput, "step index starts at 1");
  state.conditional_shift();
  state.apply_coin(coin_at(spec, n));
  if (std::holds_alternative<ElectricWalk>(spec)) state.apply_quasimomentum_shift(kick_of(spec), check);
}

WalkerCoinState evolve(const WalkSpec& spec, WalkerCoinState state, std::int64_t n_steps, std::int64_t first_step) {
  if (n_steps < 0) fail(ErrorKind::InvalidInput, "negative step count");
  const double norm0 = state.norm_squared();
  for (std::int64_t i = 0; i < n_steps; ++i) step(spec, state, first_step + i);
  const double drift = std::abs(state.norm_squared() - norm0);
  if (drift > kNormDriftLimit) {
    fail(ErrorKind::Internal, "norm drift " + std::to_string(drift) + " after " + std::to_string(n_steps) + " steps");
  }
  return state;
}

Eigen::MatrixXcd dense_matrix(const WalkSpec& spec, const LatticeConfig& ring, std::int64_t n) {
  require_ring(ring);
  if (ring.size > kDenseSizeLimit) {
    fail(ErrorKind::SizeLimit, "dense propagator limited to L <= " + std::to_string(kDenseSizeLimit));
  }
  const auto L = static_cast<std::int64_t>(ring.size);
  const CoinMatrix u = coin_at(spec, n);
  const double phi = kick_of(spec);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2 * L, 2 * L);
  for (std::int64_t s = 0; s < L; ++s) {
    // Column (s, ↑) lands on site s+1 with coin column U|↑⟩; (s, ↓) on s−1 with U|↓⟩.
    for (int c = 0; c < 2; ++c) {
      const std::int64_t target = ((s + (c == 0 ? 1 : -1)) % L + L) % L;
      const cplx phase = std::polar(1.0, phi * static_cast<double>(ring.site_at(static_cast<std::size_t>(target))));
      for (int r = 0; r < 2; ++r) z(2 * target + r, 2 * s + c) = phase * u(r, c);
    }
  }
  return z;
}

double translation_defect(const WalkSpec& spec, const LatticeConfig& ring, std::int64_t n) {
  require_ring(ring);
  const std::size_t dim = 2 * ring.size;
  double defect = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<cplx> e(dim);
    e[i] = 1.0;
    auto direct = WalkerCoinState::from_amplitudes(e, ring);
    auto conjugated = direct;
    step(spec, direct, n, PhaseCheck::Waived);
    conjugated.apply_shift(Direction::Left);
    step(spec, conjugated, n, PhaseCheck::Waived);
    conjugated.apply_shift(Direction::Right);
    double norm2 = 0.0;
    const auto a = direct.amplitudes();
    const auto b = conjugated.amplitudes();
    for (std::size_t k = 0; k < dim; ++k) norm2 += std::norm(a[k] - b[k]);
    defect = std::max(defect, std::sqrt(norm2));
  }
  return defect;
}

}  // namespace qwalk
