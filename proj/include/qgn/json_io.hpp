#ifndef QGN_JSON_IO_HPP
#define QGN_JSON_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qgn/kkt.hpp"
#include "qgn/moe.hpp"
#include "qgn/norms.hpp"
#include "qgn/sobolev.hpp"

namespace qgn {

/// Decimal string with 17 significant digits; used for every float in
/// reports so output bytes do not depend on the platform's formatter.
std::string fmt17(double v);

nlohmann::ordered_json to_json(const ChannelSpec& spec);
nlohmann::ordered_json to_json(const NormReport& report);
nlohmann::ordered_json to_json(const ShootingResult& result);
nlohmann::ordered_json to_json(const KKTReport& report);
nlohmann::ordered_json to_json(const MatchedState& state);
nlohmann::ordered_json to_json(const RenyiChainResult& result);

/// Spectra travel as plain JSON number arrays.
nlohmann::ordered_json spectrum_to_json(const Spectrum& x);
Spectrum spectrum_from_json(const nlohmann::json& j);

/// Reads a spectrum from a .json file (number array) or a CSV file with one
/// value per line. Throws std::ios_base::failure when the file cannot be
/// opened and std::runtime_error on parse failure.
Spectrum read_spectrum(const std::string& path);

/// One value per line, 17 significant digits.
void write_spectrum_csv(std::ostream& os, const Spectrum& x);

}  // namespace qgn

#endif
