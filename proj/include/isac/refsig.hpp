#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "isac/resource_grid.hpp"

namespace isac {

/// Default 31-bit sequence seeds. The only requirement on them is that the
/// PRS and DMRS sequences are fixed, known at the receiver, and distinct.
inline constexpr std::uint32_t kDefaultPrsSeed = 0x5052531u;  // "PRS1"
inline constexpr std::uint32_t kDefaultDmrsSeed = 0x444D525u; // "DMR5"

/// Length-31 Gold sequence (two-LFSR construction, 1600-sample warm-up).
/// Deterministic in c_init; a longer call prefix-matches a shorter one.
std::vector<std::uint8_t> gold_sequence(std::uint32_t c_init, std::size_t length);

/// Pairs of bits to unit-magnitude QPSK: ((1-2b0) + j(1-2b1)) / sqrt(2).
/// Throws UsageError on an odd bit count.
std::vector<std::complex<double>> qpsk_map(const std::vector<std::uint8_t>& bits);

/// Quadruples of bits to Gray-mapped 16-QAM with unit average power.
/// Throws UsageError when the bit count is not a multiple of 4.
std::vector<std::complex<double>> qam16_map(const std::vector<std::uint8_t>& bits);

struct Rational {
    long num = 490;
    long den = 1024;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct PrsConfig {
    int comb_size = 4;      ///< one of 2, 4, 6, 12
    int n_symbols = 12;     ///< one of 1, 2, 4, 6, 12
    int start_symbol = 0;   ///< first PRS symbol within each slot
    int re_offset = 0;      ///< comb offset in [0, comb_size)
    std::vector<int> slots; ///< slot indices carrying PRS
    std::uint32_t c_init = kDefaultPrsSeed;

    void validate(const Numerology& numerology) const;
};

/// DMRS, configuration type 2 (CDM group 0, single port): subcarriers
/// {0, 1, 6, 7} of every PRB, mapping type A.
struct DmrsConfig {
    static constexpr int kConfigType = 2;
    static constexpr char kMappingType = 'A';

    std::vector<int> symbol_positions{3, 8, 12}; ///< within each PDSCH slot
    std::vector<int> slots;                      ///< the PDSCH slots DMRS is embedded in
    std::uint32_t c_init = kDefaultDmrsSeed;

    void validate(const Numerology& numerology) const;
};

struct PdschConfig {
    static constexpr int kBitsPerSymbol = 4; ///< 16-QAM

    Rational code_rate{490, 1024};
    std::uint64_t payload_seed = 1;
    std::vector<int> slots;

    void validate(const Numerology& numerology) const;
};

/// Relative comb offset of PRS symbol j (index j mod comb_size), fixed to the
/// staggering tables:
///   comb 2  -> 0,1
///   comb 4  -> 0,2,1,3
///   comb 6  -> 0,3,1,4,2,5
///   comb 12 -> 0,6,3,9,1,7,4,10,2,8,5,11
/// Over any comb_size consecutive PRS symbols every subcarrier residue class
/// is used exactly once.
const std::vector<int>& comb_stagger(int comb_size);

/// Maps QPSK PRS symbols onto the configured slots. Throws MappingError on
/// collision with non-Empty REs.
void generate_prs(ResourceGrid& grid, const PrsConfig& cfg);

/// Maps QPSK DMRS symbols at the configured symbol positions of each slot.
void generate_dmrs(ResourceGrid& grid, const DmrsConfig& cfg);

/// Fills every remaining Empty RE of the PDSCH slots with seeded 16-QAM
/// payload. Returns the information bit count: filled REs * 4 * code_rate,
/// rounded down. Expects DMRS to be mapped already.
std::size_t generate_pdsch(ResourceGrid& grid, const PdschConfig& cfg);

/// Maximum PDSCH throughput per one slot and one PRB, in bits:
/// (168 - DMRS REs per PRB-slot) * 4 * code_rate.
double throughput_per_prb_slot(const PdschConfig& pdsch, const DmrsConfig& dmrs);

} // namespace isac
