#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "isac/numerology.hpp"

namespace isac {

/// Allocation kind of one resource element.
enum class ReKind : std::uint8_t { Empty = 0, Prs = 1, Dmrs = 2, Pdsch = 3 };

const char* to_string(ReKind kind);

using KindMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// M x N time-frequency resource grid. symbols(m, n) is the complex symbol on
/// subcarrier m (m = 0 is the lowest) and OFDM symbol n; slot s spans symbols
/// 14s .. 14s+13. An RE is zero wherever its kind is Empty, and a single kind
/// matrix guarantees no RE carries two kinds.
///
/// Grids are plain values: immutable after build, safe to share read-only
/// across parallel scenario runs.
struct ResourceGrid {
    Numerology numerology;
    Eigen::MatrixXcd symbols;
    KindMatrix kinds;

    Eigen::Index rows() const { return symbols.rows(); }
    Eigen::Index cols() const { return symbols.cols(); }

    ReKind kind(Eigen::Index m, Eigen::Index n) const {
        return static_cast<ReKind>(kinds(m, n));
    }

    /// Writes one RE; throws MappingError if the RE is already occupied.
    void place(Eigen::Index m, Eigen::Index n, std::complex<double> value, ReKind kind);
};

/// All-zero grid with all kinds Empty. Throws ConfigError on bad numerology.
ResourceGrid new_grid(const Numerology& numerology);

/// Grid of identical dimensions where REs of other kinds are zeroed and
/// marked Empty. The input is not modified.
ResourceGrid extract_kind(const ResourceGrid& grid, ReKind kind);

Eigen::Index count_kind(const ResourceGrid& grid, ReKind kind);

} // namespace isac
