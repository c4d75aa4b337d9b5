#include "isac/refsig.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace isac {
namespace {

constexpr std::size_t kGoldWarmup = 1600;

// DMRS type-2 subcarrier offsets within a PRB (CDM group 0).
constexpr int kDmrsPattern[4] = {0, 1, 6, 7};

bool one_of(int v, std::initializer_list<int> set) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

std::vector<std::uint8_t> gold_sequence(std::uint32_t c_init, std::size_t length) {
    if (length < 1)
        throw UsageError("gold_sequence length must be >= 1");
    // Register bit i holds x(n+i) for i in [0, 31).
    std::uint32_t x1 = 1u;
    std::uint32_t x2 = c_init & 0x7FFFFFFFu;
    auto step1 = [&] {
        std::uint32_t fb = ((x1 >> 3) ^ x1) & 1u;
        x1 = (x1 >> 1) | (fb << 30);
    };
    auto step2 = [&] {
        std::uint32_t fb = ((x2 >> 3) ^ (x2 >> 2) ^ (x2 >> 1) ^ x2) & 1u;
        x2 = (x2 >> 1) | (fb << 30);
    };
    for (std::size_t i = 0; i < kGoldWarmup; ++i) {
        step1();
        step2();
    }
    std::vector<std::uint8_t> out(length);
    for (std::size_t i = 0; i < length; ++i) {
        out[i] = static_cast<std::uint8_t>((x1 ^ x2) & 1u);
        step1();
        step2();
    }
    return out;
}

std::vector<std::complex<double>> qpsk_map(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 2 != 0)
        throw UsageError("qpsk_map requires an even bit count, got " +
                         std::to_string(bits.size()));
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<std::complex<double>> out(bits.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = {s * (1.0 - 2.0 * bits[2 * i]), s * (1.0 - 2.0 * bits[2 * i + 1])};
    return out;
}

std::vector<std::complex<double>> qam16_map(const std::vector<std::uint8_t>& bits) {
    if (bits.size() % 4 != 0)
        throw UsageError("qam16_map requires a multiple of 4 bits, got " +
                         std::to_string(bits.size()));
    const double s = 1.0 / std::sqrt(10.0);
    std::vector<std::complex<double>> out(bits.size() / 4);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double b0 = bits[4 * i], b1 = bits[4 * i + 1];
        const double b2 = bits[4 * i + 2], b3 = bits[4 * i + 3];
        out[i] = {s * (1.0 - 2.0 * b0) * (2.0 - (1.0 - 2.0 * b2)),
                  s * (1.0 - 2.0 * b1) * (2.0 - (1.0 - 2.0 * b3))};
    }
    return out;
}

const std::vector<int>& comb_stagger(int comb_size) {
    static const std::vector<int> comb2{0, 1};
    static const std::vector<int> comb4{0, 2, 1, 3};
    static const std::vector<int> comb6{0, 3, 1, 4, 2, 5};
    static const std::vector<int> comb12{0, 6, 3, 9, 1, 7, 4, 10, 2, 8, 5, 11};
    switch (comb_size) {
    case 2: return comb2;
    case 4: return comb4;
    case 6: return comb6;
    case 12: return comb12;
    }
    throw ConfigError("comb size must be one of 2, 4, 6, 12, got " +
                      std::to_string(comb_size));
}

void PrsConfig::validate(const Numerology& numerology) const {
    if (!one_of(comb_size, {2, 4, 6, 12}))
        throw ConfigError("PRS comb size must be one of 2, 4, 6, 12, got " +
                          std::to_string(comb_size));
    if (!one_of(n_symbols, {1, 2, 4, 6, 12}))
        throw ConfigError("PRS symbol count must be one of 1, 2, 4, 6, 12, got " +
                          std::to_string(n_symbols));
    if (start_symbol < 0 || start_symbol + n_symbols > 14)
        throw ConfigError("PRS symbols must fit within the slot: start " +
                          std::to_string(start_symbol) + " + " + std::to_string(n_symbols) +
                          " exceeds 14");
    if (re_offset < 0 || re_offset >= comb_size)
        throw ConfigError("PRS RE offset must lie in [0, comb_size)");
    for (int s : slots)
        if (s < 0 || s >= numerology.n_slots)
            throw ConfigError("PRS slot " + std::to_string(s) + " outside grid with " +
                              std::to_string(numerology.n_slots) + " slots");
    if (c_init > 0x7FFFFFFFu)
        throw ConfigError("c_init must fit in 31 bits");
}

void DmrsConfig::validate(const Numerology& numerology) const {
    for (int p : symbol_positions)
        if (p < 0 || p >= 14)
            throw ConfigError("DMRS symbol position " + std::to_string(p) +
                              " outside [0, 14)");
    for (int s : slots)
        if (s < 0 || s >= numerology.n_slots)
            throw ConfigError("DMRS slot " + std::to_string(s) + " outside grid with " +
                              std::to_string(numerology.n_slots) + " slots");
    if (c_init > 0x7FFFFFFFu)
        throw ConfigError("c_init must fit in 31 bits");
}

void PdschConfig::validate(const Numerology& numerology) const {
    if (code_rate.num < 0 || code_rate.den <= 0)
        throw ConfigError("code rate must be a nonnegative rational with positive denominator");
    for (int s : slots)
        if (s < 0 || s >= numerology.n_slots)
            throw ConfigError("PDSCH slot " + std::to_string(s) + " outside grid with " +
                              std::to_string(numerology.n_slots) + " slots");
}

void generate_prs(ResourceGrid& grid, const PrsConfig& cfg) {
    cfg.validate(grid.numerology);
    const auto slots = sorted_unique(cfg.slots);
    const auto& stagger = comb_stagger(cfg.comb_size);
    const int m_count = grid.numerology.subcarriers();
    const int per_symbol = m_count / cfg.comb_size;
    const std::size_t total = slots.size() * static_cast<std::size_t>(cfg.n_symbols) * per_symbol;
    if (total == 0)
        return;
    const auto symbols = qpsk_map(gold_sequence(cfg.c_init, 2 * total));
    std::size_t next = 0;
    for (int slot : slots) {
        for (int j = 0; j < cfg.n_symbols; ++j) {
            const Eigen::Index n = 14 * slot + cfg.start_symbol + j;
            const int offset = (cfg.re_offset + stagger[j % cfg.comb_size]) % cfg.comb_size;
            for (int m = offset; m < m_count; m += cfg.comb_size)
                grid.place(m, n, symbols[next++], ReKind::Prs);
        }
    }
}

void generate_dmrs(ResourceGrid& grid, const DmrsConfig& cfg) {
    cfg.validate(grid.numerology);
    const auto slots = sorted_unique(cfg.slots);
    const auto positions = sorted_unique(cfg.symbol_positions);
    const std::size_t total = slots.size() * positions.size() *
                              static_cast<std::size_t>(grid.numerology.n_prb) * 4;
    if (total == 0)
        return;
    const auto symbols = qpsk_map(gold_sequence(cfg.c_init, 2 * total));
    std::size_t next = 0;
    for (int slot : slots) {
        for (int pos : positions) {
            const Eigen::Index n = 14 * slot + pos;
            for (int prb = 0; prb < grid.numerology.n_prb; ++prb)
                for (int o : kDmrsPattern)
                    grid.place(12 * prb + o, n, symbols[next++], ReKind::Dmrs);
        }
    }
}

std::size_t generate_pdsch(ResourceGrid& grid, const PdschConfig& cfg) {
    cfg.validate(grid.numerology);
    const auto slots = sorted_unique(cfg.slots);
    // Constellation indexed by the 4 payload bits, LSB first.
    static const auto constellation = [] {
        std::vector<std::uint8_t> bits(16 * 4);
        for (unsigned idx = 0; idx < 16; ++idx)
            for (unsigned b = 0; b < 4; ++b)
                bits[4 * idx + b] = static_cast<std::uint8_t>((idx >> b) & 1);
        return qam16_map(bits);
    }();
    std::mt19937_64 rng(cfg.payload_seed);
    std::size_t filled = 0;
    for (int slot : slots) {
        for (int sym = 0; sym < 14; ++sym) {
            const Eigen::Index n = 14 * slot + sym;
            for (Eigen::Index m = 0; m < grid.rows(); ++m) {
                if (grid.kind(m, n) != ReKind::Empty)
                    continue;
                grid.place(m, n, constellation[rng() & 0xF], ReKind::Pdsch);
                ++filled;
            }
        }
    }
    const unsigned long long raw =
        static_cast<unsigned long long>(filled) * PdschConfig::kBitsPerSymbol;
    return static_cast<std::size_t>(raw * static_cast<unsigned long long>(cfg.code_rate.num) /
                                    static_cast<unsigned long long>(cfg.code_rate.den));
}

double throughput_per_prb_slot(const PdschConfig& pdsch, const DmrsConfig& dmrs) {
    const double dmrs_re = 4.0 * static_cast<double>(sorted_unique(dmrs.symbol_positions).size());
    return (168.0 - dmrs_re) * PdschConfig::kBitsPerSymbol * pdsch.code_rate.value();
}

} // namespace isac
