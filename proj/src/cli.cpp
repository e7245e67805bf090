#include "qwalk/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/equivalence.hpp"
#include "qwalk/error.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string coin;
  std::string walk = "simple";
  std::optional<double> theta;
  double phi = 0.0;
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t periods = 4;
  std::int64_t steps = 0;
  std::string init = "site=0,up";
  std::size_t lattice = 0;  // 0 = auto
  std::string boundary = "padded";
  std::string out;
  std::string summary;
  std::string state_out;
  double tol = 1e-12;
  std::uint64_t seed = 20140321;
  std::size_t probes = 8;
  std::size_t samples = 512;
};

struct InitialState {
  std::int64_t site = 0;
  CoinVector coin{1.0, 0.0};
};

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(ErrorKind::InvalidInput, "malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorKind::InvalidInput, "malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

// site=<j>,up | site=<j>,down | site=<j>,sym | site=<j>,coin=<re>:<im>:<re>:<im>
InitialState parse_init(std::string_view text) {
  const std::size_t comma = text.find(',');
  if (!text.starts_with("site=") || comma == std::string_view::npos) {
    fail(ErrorKind::InvalidInput, "--init must look like site=<j>,up|down|sym|coin=a:b:c:d");
  }
  InitialState init;
  init.site = parse_int(text.substr(5, comma - 5), "initial site");
  const std::string_view coin = text.substr(comma + 1);
  if (coin == "up") {
    init.coin = {1.0, 0.0};
  } else if (coin == "down") {
    init.coin = {0.0, 1.0};
  } else if (coin == "sym") {
    init.coin = {1.0 / std::numbers::sqrt2, cplx(0.0, 1.0 / std::numbers::sqrt2)};
  } else if (coin.starts_with("coin=")) {
    std::array<double, 4> v{};
    std::string_view rest = coin.substr(5);
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t colon = rest.find(':');
      if ((i < 3) == (colon == std::string_view::npos)) fail(ErrorKind::InvalidInput, "coin= expects 4 numbers");
      v[i] = parse_double(rest.substr(0, colon), "coin amplitude");
      rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
    }
    init.coin = {cplx(v[0], v[1]), cplx(v[2], v[3])};
  } else {
    fail(ErrorKind::InvalidInput, "unknown initial coin state '" + std::string(coin) + "'");
  }
  return init;
}

json matrix_json(const Mat2& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

ParsedCoin require_coin(const RunConfig& cfg) {
  if (cfg.coin.empty()) fail(ErrorKind::InvalidInput, "--coin is required");
  return parse_coin_spec(cfg.coin, std::max(cfg.tol, kCoinTolerance));
}

double require_theta(const RunConfig& cfg) {
  if (cfg.theta) return *cfg.theta;
  if (!cfg.coin.empty()) return euler_decompose(require_coin(cfg).coin).theta;
  fail(ErrorKind::InvalidInput, "--theta (or --coin) is required");
}

WalkSpec build_walk(const RunConfig& cfg) {
  if (cfg.walk == "simple") return SimpleWalk{require_coin(cfg).coin};
  if (cfg.walk == "electric") return ElectricWalk{require_coin(cfg).coin, cfg.phi};
  if (cfg.walk == "timedep") return electric_schedule(require_theta(cfg), cfg.phi);
  fail(ErrorKind::InvalidInput, "--walk must be simple, electric or timedep");
}

LatticeConfig build_lattice(const RunConfig& cfg, std::int64_t steps, std::int64_t lo, std::int64_t hi) {
  if (cfg.boundary == "padded") {
    if (cfg.lattice == 0) return LatticeConfig::padded_for_steps(steps, lo, hi);
    return LatticeConfig::padded(cfg.lattice, static_cast<std::int64_t>(cfg.lattice / 2));
  }
  if (cfg.boundary == "ring") {
    const std::size_t size =
        cfg.lattice != 0 ? cfg.lattice : static_cast<std::size_t>(2 * (steps + 2) + (hi - lo + 1));
    return LatticeConfig::ring(size, static_cast<std::int64_t>(size / 2));
  }
  fail(ErrorKind::InvalidInput, "--boundary must be padded or ring");
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::InvalidInput, "cannot open '" + path + "' for writing");
  body(os);
}

std::string summary_path(const RunConfig& cfg) {
  if (!cfg.summary.empty()) return cfg.summary;
  const auto dot = cfg.out.rfind('.');
  return (dot == std::string::npos ? cfg.out : cfg.out.substr(0, dot)) + ".json";
}

int emit_report(const CheckReport& report, std::ostream& out) {
  out << report.to_json().dump(2) << '\n';
  return report.pass ? kExitOk : kExitFailed;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.steps < 0) fail(ErrorKind::InvalidInput, "--steps must be >= 0");
  const InitialState init = parse_init(cfg.init);
  const WalkSpec spec = build_walk(cfg);
  const LatticeConfig lattice = build_lattice(cfg, cfg.steps, init.site, init.site);
  const auto start = WalkerCoinState::localized(init.site, init.coin, lattice);
  const auto final_state = evolve(spec, start, cfg.steps);
  const auto dist = position_distribution(final_state);
  const Moments mom = moments(dist);

  write_file(cfg.out, [&](std::ostream& os) { write_distribution_csv(os, dist); });
  if (!cfg.state_out.empty()) write_file(cfg.state_out, [&](std::ostream& os) { write_state_csv(os, final_state); });
  const json summary = {
      {"steps", cfg.steps},
      {"walk", cfg.walk},
      {"mean", mom.mean},
      {"variance", mom.variance},
      {"stddev", mom.stddev},
      {"norm_drift", std::abs(final_state.norm_squared() - 1.0)},
      {"lattice_size", lattice.size},
      {"boundary", cfg.boundary},
      {"distribution_file", cfg.out},
  };
  write_file(summary_path(cfg), [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int cmd_canonicalize(const RunConfig& cfg, std::ostream& out) {
  const ParsedCoin parsed = require_coin(cfg);
  const EulerAngles angles = euler_decompose(parsed.coin);
  const CanonicalReduction red = canonical_reduction(angles);
  const WalkSpec general = SimpleWalk{parsed.coin};
  const WalkSpec canonical = SimpleWalk{theta_coin(red.theta)};

  constexpr std::size_t kRingSize = 8;
  double residual = 0.0;
  std::string method;
  if (ring_phase_commensurate(red.transform.w_phase, kRingSize)) {
    const auto ring = LatticeConfig::ring(kRingSize);
    const Eigen::MatrixXcd v = transform_dense_matrix(red.transform, ring);
    const Eigen::MatrixXcd lhs = v * dense_matrix(general, ring) * v.adjoint();
    residual = (lhs - dense_matrix(canonical, ring)).cwiseAbs().maxCoeff();
    method = "dense_ring_conjugation";
  } else {
    constexpr std::int64_t kSteps = 10;
    const auto lattice = LatticeConfig::padded_for_steps(kSteps, -3, 3);
    const auto probes = make_probe_states(lattice, cfg.probes, cfg.seed);
    residual = check_amplitude_equiv(general, canonical, red.transform, kSteps, probes, cfg.tol).max_deviation;
    method = "padded_interior_action";
  }
  const bool pass = residual <= cfg.tol;
  const json result = {
      {"input_form", parsed.form},
      {"global_phase", parsed.global_phase},
      {"euler", {{"eta", angles.eta}, {"theta", angles.theta}, {"xi", angles.xi}}},
      {"theta", red.theta},
      {"w_phase", red.transform.w_phase},
      {"x_matrix", matrix_json(red.transform.x.matrix())},
      {"residual_check", residual},
      {"residual_method", method},
      {"tolerance", cfg.tol},
      {"pass", pass},
  };
  out << result.dump(2) << '\n';
  return pass ? kExitOk : kExitFailed;
}

std::vector<WalkerCoinState> probes_for(const RunConfig& cfg, std::int64_t steps) {
  constexpr std::int64_t kRadius = 3;
  return make_probe_states(LatticeConfig::padded_for_steps(steps, -kRadius, kRadius), cfg.probes, cfg.seed, kRadius);
}

void tag_probes(CheckReport& report, const RunConfig& cfg) { report.parameters["seed"] = cfg.seed; }

int cmd_verify_canonical(const RunConfig& cfg, std::ostream& out) {
  const ParsedCoin parsed = require_coin(cfg);
  const EulerAngles angles = euler_decompose(parsed.coin);
  const CanonicalReduction red = canonical_reduction(angles);
  const auto steps = cfg.steps > 0 ? cfg.steps : 10;
  const auto probes = probes_for(cfg, steps);
  auto report = check_amplitude_equiv(SimpleWalk{parsed.coin}, SimpleWalk{theta_coin(red.theta)}, red.transform,
                                      steps, probes, cfg.tol);
  report.check = "canonical_reduction";
  report.parameters["eta"] = angles.eta;
  report.parameters["theta"] = angles.theta;
  report.parameters["xi"] = angles.xi;
  tag_probes(report, cfg);
  return emit_report(report, out);
}

int cmd_verify_electric(const RunConfig& cfg, std::ostream& out) {
  const auto steps = cfg.steps > 0 ? cfg.steps : 20;
  const auto probes = probes_for(cfg, steps);
  auto report = check_cumulative_identity(require_theta(cfg), cfg.phi, steps, probes, cfg.tol);
  tag_probes(report, cfg);
  return emit_report(report, out);
}

int cmd_verify_rational(const RunConfig& cfg, std::ostream& out) {
  const RationalField field(cfg.p, cfg.q);
  if (cfg.periods < 1) fail(ErrorKind::InvalidInput, "--periods must be >= 1");
  const auto probes = probes_for(cfg, cfg.periods * field.q());
  auto report = check_rational_field(require_theta(cfg), field, cfg.periods, probes, cfg.tol);
  tag_probes(report, cfg);
  return emit_report(report, out);
}

int cmd_verify_translation(const RunConfig& cfg, std::ostream& out) {
  RunConfig local = cfg;
  if (local.coin.empty() && local.theta) local.coin = "euler:0," + std::to_string(*local.theta) + ",0";
  const WalkSpec spec = build_walk(local);
  const std::size_t size = cfg.lattice != 0 ? cfg.lattice : 16;
  const auto ring = LatticeConfig::ring(size);
  const std::int64_t last = std::max<std::int64_t>(1, cfg.steps);
  CheckReport report{.check = "translation_invariance", .n_steps = last, .tolerance = cfg.tol};
  report.parameters = {{"walk", cfg.walk}, {"phi", cfg.phi}, {"ring_size", size}};
  for (std::int64_t n = 1; n <= last; ++n) {
    report.max_deviation = std::max(report.max_deviation, translation_defect(spec, ring, n));
  }
  report.pass = report.max_deviation <= cfg.tol;
  return emit_report(report, out);
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const ParsedCoin parsed = require_coin(cfg);
  const DispersionCurve curve = dispersion(parsed.coin, cfg.samples);
  const EulerAngles angles = euler_decompose(parsed.coin);
  write_file(cfg.out, [&](std::ostream& os) { write_dispersion_csv(os, curve); });
  const json summary = {
      {"samples", cfg.samples},
      {"theta", angles.theta},
      {"max_v_group", curve.max_abs_group_velocity()},
      {"fitted_shift", curve.fitted_shift},
      {"fitted_amplitude", curve.fitted_amplitude},
      {"expected_shift", wrap_angle((angles.eta + angles.xi) / 2)},
      {"omega_min", curve.omega_min()},
      {"omega_max", curve.omega_max()},
      {"dispersion_file", cfg.out},
  };
  write_file(summary_path(cfg), [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GuardViolation:
    case ErrorKind::Internal:
      return kExitFailed;
    default:
      return kExitBadInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Coined quantum walk simulator and equivalence checker", "qwalk"};
  app.require_subcommand(1);

  const auto add_coin = [&](CLI::App* sub) {
    sub->add_option("--coin", cfg.coin, "euler:<eta>,<theta>,<xi> | axis:<phi>,<rx>,<ry>,<rz> | matrix:<8 floats>");
  };
  const auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", cfg.tol, "Absolute tolerance"); };
  const auto add_probes = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for random probe states");
    sub->add_option("--probes", cfg.probes, "Number of probe states")->check(CLI::Range(1, 1000));
  };

  auto* simulate = app.add_subcommand("simulate", "Evolve a localized initial state and export the distribution");
  add_coin(simulate);
  simulate->add_option("--walk", cfg.walk, "simple | electric | timedep");
  simulate->add_option("--theta", cfg.theta, "Middle Euler angle for --walk timedep");
  simulate->add_option("--phi", cfg.phi, "Quasi-momentum kick per step");
  simulate->add_option("--steps", cfg.steps, "Number of steps")->required();
  simulate->add_option("--init", cfg.init, "site=<j>,up|down|sym|coin=<re>:<im>:<re>:<im>");
  simulate->add_option("--lattice", cfg.lattice, "Lattice size (0 = automatic)");
  simulate->add_option("--boundary", cfg.boundary, "padded | ring");
  simulate->add_option("--out", cfg.out, "Distribution CSV path")->default_str("distribution.csv");
  simulate->add_option("--summary", cfg.summary, "Summary JSON path (default <out>.json)");
  simulate->add_option("--state-out", cfg.state_out, "Optional amplitude CSV path");
  add_tol(simulate);

  auto* canonicalize = app.add_subcommand("canonicalize", "Reduce a coin to its canonical single-angle walk");
  add_coin(canonicalize);
  add_tol(canonicalize);
  add_probes(canonicalize);

  auto* verify = app.add_subcommand("verify", "Run an equivalence check and emit a JSON report");
  verify->require_subcommand(1);
  auto* v_canonical = verify->add_subcommand("canonical", "Z_{eta theta xi} vs Z_theta");
  auto* v_electric = verify->add_subcommand("electric", "Electric walk vs time-dependent coin walk");
  auto* v_rational = verify->add_subcommand("rational", "Exact equality for Phi = 2 pi p / q");
  auto* v_translation = verify->add_subcommand("translation", "Translation defect on a ring");
  for (auto* sub : {v_canonical, v_electric, v_rational, v_translation}) {
    add_coin(sub);
    add_tol(sub);
    sub->add_option("--steps", cfg.steps, "Number of steps");
  }
  for (auto* sub : {v_canonical, v_electric, v_rational}) add_probes(sub);
  for (auto* sub : {v_electric, v_rational, v_translation}) sub->add_option("--theta", cfg.theta, "Coin angle theta");
  for (auto* sub : {v_electric, v_translation}) sub->add_option("--phi", cfg.phi, "Quasi-momentum kick");
  v_rational->add_option("--p", cfg.p, "Field numerator");
  v_rational->add_option("--q", cfg.q, "Field denominator");
  v_rational->add_option("--periods", cfg.periods, "Number of q-step periods");
  v_translation->add_option("--walk", cfg.walk, "simple | electric | timedep");
  v_translation->add_option("--lattice", cfg.lattice, "Ring size (default 16)");

  auto* spectrum = app.add_subcommand("spectrum", "Dispersion relation and group velocity");
  add_coin(spectrum);
  spectrum->add_option("--samples", cfg.samples, "Number of k samples");
  spectrum->add_option("--out", cfg.out, "Dispersion CSV path")->default_str("dispersion.csv");
  spectrum->add_option("--summary", cfg.summary, "Summary JSON path (default <out>.json)");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    if (*simulate) {
      if (cfg.out.empty()) cfg.out = "distribution.csv";
      return cmd_simulate(cfg, out);
    }
    if (*canonicalize) return cmd_canonicalize(cfg, out);
    if (*spectrum) {
      if (cfg.out.empty()) cfg.out = "dispersion.csv";
      return cmd_spectrum(cfg, out);
    }
    if (*v_canonical) return cmd_verify_canonical(cfg, out);
    if (*v_electric) return cmd_verify_electric(cfg, out);
    if (*v_rational) return cmd_verify_rational(cfg, out);
    if (*v_translation) return cmd_verify_translation(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitBadInput;
}

}  // namespace qwalk::cli
