#pragma once

#include <cmath>
#include <string>

#include "isac/errors.hpp"

namespace isac {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// OFDM numerology. Every physical constant of the simulator hangs off it:
/// the grid is 12*n_prb subcarriers by 14*n_slots symbols, the symbol
/// duration is 1/scs_hz, and the extended symbol duration adds the
/// cyclic-prefix fraction.
struct Numerology {
    double scs_hz = 120e3;       ///< subcarrier spacing
    double fc_hz = 28e9;         ///< carrier frequency
    int n_prb = 64;              ///< PRB count, 12 subcarriers each
    int n_slots = 8;             ///< slot count, 14 symbols each
    double cp_fraction = 0.0703; ///< cyclic prefix as a fraction of symbol_s()

    int subcarriers() const { return 12 * n_prb; }
    int symbols() const { return 14 * n_slots; }
    double symbol_s() const { return 1.0 / scs_hz; }
    double full_symbol_s() const { return (1.0 + cp_fraction) / scs_hz; }
    double max_range_m() const { return kSpeedOfLight / scs_hz; }

    void validate() const;
};

/// True for the supported subcarrier spacings: 15, 30, 60, 120, 240 kHz.
inline bool valid_scs(double scs_hz) {
    return scs_hz == 15e3 || scs_hz == 30e3 || scs_hz == 60e3 ||
           scs_hz == 120e3 || scs_hz == 240e3;
}

inline void Numerology::validate() const {
    if (!valid_scs(scs_hz))
        throw ConfigError("subcarrier spacing must be one of 15/30/60/120/240 kHz, got " +
                          std::to_string(scs_hz) + " Hz");
    if (!(fc_hz > 0.0) || !std::isfinite(fc_hz))
        throw ConfigError("carrier frequency must be positive and finite");
    if (n_prb < 1 || n_prb > 272)
        throw ConfigError("PRB count must be in [1, 272], got " + std::to_string(n_prb));
    if (n_slots < 1)
        throw ConfigError("slot count must be >= 1, got " + std::to_string(n_slots));
    if (!(cp_fraction >= 0.0) || !std::isfinite(cp_fraction))
        throw ConfigError("cp_fraction must be finite and >= 0");
}

} // namespace isac
