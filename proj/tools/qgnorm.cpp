#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "qgn/json_io.hpp"
#include "qgn/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Options {
  std::string channel = "attenuator";
  double lambda = 0.5;
  double kappa = 2.0;
  double p = 1.5;
  double q = 2.5;
  double z = 0.3;
  double a = 0.5;
  double tol = 1e-10;
  std::string method = "gaussian";
  std::string input;
  std::string out;
  std::size_t dim = 24;
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  bool quick = false;
};

qgn::ChannelSpec make_spec(const Options& opt) {
  if (opt.channel == "attenuator") return qgn::ChannelSpec::attenuator(opt.lambda);
  if (opt.channel == "amplifier") return qgn::ChannelSpec::amplifier(opt.kappa);
  if (opt.channel == "composite") return qgn::ChannelSpec::composite(opt.lambda, opt.kappa);
  throw CLI::ValidationError("--channel must be attenuator, amplifier, or composite");
}

// empty path means stdout
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw std::ios_base::failure("cannot write " + path);
}

int cmd_norm(const Options& opt) {
  nlohmann::ordered_json j;
  if (opt.method == "gaussian" || opt.method == "both") {
    qgn::NormReport gauss = opt.p == opt.q ? qgn::norm_pp(make_spec(opt), opt.p)
                                           : qgn::optimize_gaussian_z(make_spec(opt), opt.p, opt.q);
    j["gaussian"] = qgn::to_json(gauss);
    if (opt.method == "both") {
      qgn::BruteForceResult brute =
          qgn::brute_force_ratio(make_spec(opt), opt.p, opt.q, opt.dim, opt.seed);
      j["brute"] = qgn::to_json(brute.report);
      j["gap"] = qgn::fmt17(brute.report.value - gauss.value);
    }
  } else if (opt.method == "brute") {
    qgn::BruteForceResult brute =
        qgn::brute_force_ratio(make_spec(opt), opt.p, opt.q, opt.dim, opt.seed);
    j["brute"] = qgn::to_json(brute.report);
    j["argmax"] = qgn::spectrum_to_json(brute.argmax);
  } else {
    throw CLI::ValidationError("--method must be gaussian, brute, or both");
  }
  emit(opt.out, j.dump(2));
  return kExitOk;
}

int cmd_shoot(const Options& opt) {
  qgn::ShootingResult result = qgn::ode_shoot(opt.lambda, opt.p, opt.q, opt.tol);
  emit(opt.out, qgn::to_json(result).dump(2));
  return result.converged ? kExitOk : kExitViolation;
}

int cmd_verify_logsobolev(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> dims(2, std::max<std::size_t>(2, opt.dim));
  std::exponential_distribution<double> expo(1.0);
  double worst = 1e300;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    qgn::Spectrum x(dims(rng));
    double s = 0.0;
    for (double& v : x) {
      v = expo(rng) + 1e-12;
      s += v;
    }
    for (double& v : x) v = std::pow(v / s, opt.a);
    worst = std::min(worst, qgn::logsobolev_margin(opt.z, opt.a, x));
  }
  double equality = std::abs(
      qgn::logsobolev_margin(opt.z, opt.a, qgn::thermal_reference_spectrum(opt.z, opt.a)));
  nlohmann::ordered_json j;
  j["z"] = qgn::fmt17(opt.z);
  j["a"] = qgn::fmt17(opt.a);
  j["trials"] = opt.trials;
  j["min_margin"] = qgn::fmt17(worst);
  j["thermal_equality_gap"] = qgn::fmt17(equality);
  bool ok = worst >= -1e-9 && equality <= 1e-8;
  j["passed"] = ok;
  emit(opt.out, j.dump(2));
  return ok ? kExitOk : kExitViolation;
}

int cmd_verify_kkt(const Options& opt) {
  qgn::SimplexPoint point = qgn::maximize_simplex(opt.z, opt.a, opt.dim, opt.seed);
  qgn::KKTReport report = qgn::kkt_residuals(point, opt.z);
  nlohmann::ordered_json j = qgn::to_json(report);
  j["objective"] = qgn::fmt17(point.objective);
  bool ok = report.max_residual <= 1e-6 && report.monotone;
  j["passed"] = ok;
  emit(opt.out, j.dump(2));
  return ok ? kExitOk : kExitViolation;
}

int cmd_verify_moe(const Options& opt) {
  qgn::ChannelSpec spec = make_spec(opt);
  double target = qgn::thermal_entropy(opt.z);
  double worst = 1e300;
  qgn::MatchedState mix =
      qgn::match_entropy_state(target, 64, qgn::StateFamily::two_point_mix, opt.seed);
  worst = std::min(worst, qgn::output_entropy_gap(spec, mix, opt.z));
  for (std::size_t t = 0; t < opt.trials; ++t) {
    qgn::MatchedState rho = qgn::match_entropy_state(
        target, 64, qgn::StateFamily::tempered_random, qgn::derive_seed(opt.seed, t));
    worst = std::min(worst, qgn::output_entropy_gap(spec, rho, opt.z));
  }
  nlohmann::ordered_json j;
  j["channel"] = qgn::to_json(spec);
  j["z"] = qgn::fmt17(opt.z);
  j["trials"] = opt.trials;
  j["min_gap"] = qgn::fmt17(worst);
  bool ok = worst >= -1e-8;
  j["passed"] = ok;
  emit(opt.out, j.dump(2));
  return ok ? kExitOk : kExitViolation;
}

int cmd_thin(const Options& opt) {
  qgn::Spectrum dist = qgn::read_spectrum(opt.input);
  qgn::Spectrum out = qgn::thinning(dist, opt.lambda);
  std::ostringstream os;
  qgn::write_spectrum_csv(os, out);
  emit(opt.out, os.str());
  return kExitOk;
}

int cmd_suite(const Options& opt) {
  auto results = qgn::run_suite(opt.quick ? 0.1 : 1.0, opt.seed, std::cout);
  return qgn::suite_passed(results) ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schatten p->q norms of quantum-limited Gaussian channels on Fock-diagonal "
               "truncations, with verification suites"};
  app.require_subcommand(1);
  Options opt;

  auto add_channel = [&](CLI::App* sub) {
    sub->add_option("--channel", opt.channel, "attenuator, amplifier, or composite");
    sub->add_option("--lambda", opt.lambda, "transmissivity, in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--kappa", opt.kappa, "amplification, >= 1")->check(CLI::Range(1.0, 1e9));
  };

  CLI::App* norm = app.add_subcommand("norm", "p->q norm report");
  add_channel(norm);
  norm->add_option("--p", opt.p, "input exponent, > 1")->check(CLI::Range(1.0, 1e6));
  norm->add_option("--q", opt.q, "output exponent, > 1")->check(CLI::Range(1.0, 1e6));
  norm->add_option("--method", opt.method, "gaussian, brute, or both");
  norm->add_option("--dim", opt.dim, "brute-force truncation N");
  norm->add_option("--seed", opt.seed, "random seed");
  norm->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* shoot = app.add_subcommand("shoot", "shooting solve along the attenuation flow");
  shoot->add_option("--lambda", opt.lambda, "transmissivity, in (0,1)")
      ->check(CLI::Range(0.0, 1.0));
  shoot->add_option("--p", opt.p, "input exponent, > 1")->check(CLI::Range(1.0, 1e6));
  shoot->add_option("--q", opt.q, "output exponent, > p")->check(CLI::Range(1.0, 1e6));
  shoot->add_option("--tol", opt.tol, "landing tolerance on a(T), > 0");
  shoot->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* ls = app.add_subcommand("verify-logsobolev", "margin check on random spectra");
  ls->add_option("--z", opt.z, "thermal parameter, in (0,1)")->check(CLI::Range(0.0, 1.0));
  ls->add_option("--a", opt.a, "exponent parameter, in (0,1)")->check(CLI::Range(0.0, 1.0));
  ls->add_option("--trials", opt.trials, "number of random spectra");
  ls->add_option("--dim", opt.dim, "maximum spectrum dimension");
  ls->add_option("--seed", opt.seed, "random seed");
  ls->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* kkt = app.add_subcommand("verify-kkt", "stationarity residuals at the maximizer");
  kkt->add_option("--z", opt.z, "thermal parameter, in (0,1)")->check(CLI::Range(0.0, 1.0));
  kkt->add_option("--a", opt.a, "exponent parameter, in (0,1)")->check(CLI::Range(0.0, 1.0));
  kkt->add_option("--dim", opt.dim, "simplex truncation N");
  kkt->add_option("--seed", opt.seed, "random seed");
  kkt->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* moe = app.add_subcommand("verify-moe", "output-entropy gap on matched states");
  add_channel(moe);
  moe->add_option("--z", opt.z, "thermal parameter, in (0,1)")->check(CLI::Range(0.0, 1.0));
  moe->add_option("--trials", opt.trials, "matched states per check");
  moe->add_option("--seed", opt.seed, "random seed");
  moe->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* thin = app.add_subcommand("thin", "thin a count distribution");
  thin->add_option("--lambda", opt.lambda, "retention probability, in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  thin->add_option("--input", opt.input, "CSV (one value per line) or JSON array")->required();
  thin->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* suite = app.add_subcommand("suite", "run every acceptance criterion");
  suite->add_flag("--quick", opt.quick, "scale trial counts by 1/10");
  suite->add_option("--seed", opt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (norm->parsed()) return cmd_norm(opt);
    if (shoot->parsed()) return cmd_shoot(opt);
    if (ls->parsed()) return cmd_verify_logsobolev(opt);
    if (kkt->parsed()) return cmd_verify_kkt(opt);
    if (moe->parsed()) return cmd_verify_moe(opt);
    if (thin->parsed()) return cmd_thin(opt);
    if (suite->parsed()) return cmd_suite(opt);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}
