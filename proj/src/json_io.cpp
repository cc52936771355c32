#include "qgn/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgn {
namespace {

using nlohmann::ordered_json;

const char* method_name(NormMethod m) {
  switch (m) {
    case NormMethod::gaussian_scan: return "gaussian_scan";
    case NormMethod::brute_force: return "brute_force";
    case NormMethod::closed_form: return "closed_form";
    case NormMethod::shooting: return "shooting";
  }
  return "unknown";
}

const char* family_name(StateFamily f) {
  return f == StateFamily::tempered_random ? "tempered_random" : "two_point_mix";
}

ordered_json arr17(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(fmt17(x));
  return a;
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json to_json(const ChannelSpec& spec) {
  ordered_json j;
  j["kind"] = spec.name();
  if (spec.kind != ChannelKind::amplifier) j["lambda"] = fmt17(spec.lambda);
  if (spec.kind != ChannelKind::attenuator) j["kappa"] = fmt17(spec.kappa);
  return j;
}

ordered_json to_json(const NormReport& report) {
  ordered_json j;
  j["channel"] = to_json(report.channel);
  j["p"] = fmt17(report.p);
  j["q"] = fmt17(report.q);
  j["method"] = method_name(report.method);
  j["z_star"] = report.z_star ? ordered_json(fmt17(*report.z_star)) : ordered_json(nullptr);
  j["value"] = fmt17(report.value);
  j["infinite"] = report.infinite;
  j["truncation_loss"] = fmt17(report.truncation_loss);
  j["optimizer_gap"] = fmt17(report.optimizer_gap);
  j["runtime_ms"] = report.runtime_ms;
  return j;
}

ordered_json to_json(const ShootingResult& result) {
  ordered_json j;
  j["z0"] = fmt17(result.z0);
  j["converged"] = result.converged;
  j["residual"] = fmt17(result.residual);
  ordered_json traj = ordered_json::array();
  for (const auto& row : result.trajectory)
    traj.push_back(ordered_json::array({fmt17(row[0]), fmt17(row[1]), fmt17(row[2])}));
  j["trajectory"] = traj;
  return j;
}

ordered_json to_json(const KKTReport& report) {
  ordered_json j;
  j["multiplier"] = fmt17(report.multiplier);
  j["max_residual"] = fmt17(report.max_residual);
  j["monotone"] = report.monotone;
  j["stationarity_residuals"] = arr17(report.stationarity_residuals);
  j["w"] = arr17(report.w);
  return j;
}

ordered_json to_json(const MatchedState& state) {
  ordered_json j;
  j["family"] = family_name(state.family);
  j["seed"] = state.seed;
  j["target_entropy"] = fmt17(state.target_entropy);
  j["achieved_entropy"] = fmt17(state.achieved_entropy);
  j["spectrum"] = spectrum_to_json(state.spectrum);
  return j;
}

ordered_json to_json(const RenyiChainResult& result) {
  ordered_json j;
  j["found"] = result.found;
  j["p_found"] = fmt17(result.p_found);
  j["lhs"] = fmt17(result.lhs);
  j["rhs"] = fmt17(result.rhs);
  j["slack"] = fmt17(result.slack);
  ordered_json curve = ordered_json::array();
  for (const auto& [p, zs] : result.z_star_curve)
    curve.push_back(ordered_json::array({fmt17(p), fmt17(zs)}));
  j["z_star_curve"] = curve;
  return j;
}

ordered_json spectrum_to_json(const Spectrum& x) {
  ordered_json a = ordered_json::array();
  for (double v : x) a.push_back(v);
  return a;
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::runtime_error("spectrum JSON must be a number array");
  Spectrum x;
  x.reserve(j.size());
  for (const auto& v : j) {
    if (v.is_number())
      x.push_back(v.get<double>());
    else if (v.is_string())
      x.push_back(std::stod(v.get<std::string>()));
    else
      throw std::runtime_error("spectrum JSON entries must be numbers");
  }
  return x;
}

Spectrum read_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    in >> j;
    return spectrum_from_json(j);
  }
  Spectrum x;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    x.push_back(std::stod(line));
  }
  if (x.empty()) throw std::runtime_error("empty spectrum in " + path);
  return x;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& x) {
  for (double v : x) os << fmt17(v) << '\n';
}

}  // namespace qgn
