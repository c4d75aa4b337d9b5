#include "isac/resource_grid.hpp"

#include <string>

namespace isac {

const char* to_string(ReKind kind) {
    switch (kind) {
    case ReKind::Empty: return "empty";
    case ReKind::Prs: return "prs";
    case ReKind::Dmrs: return "dmrs";
    case ReKind::Pdsch: return "pdsch";
    }
    return "?";
}

void ResourceGrid::place(Eigen::Index m, Eigen::Index n, std::complex<double> value,
                         ReKind k) {
    if (kind(m, n) != ReKind::Empty)
        throw MappingError("RE collision at subcarrier " + std::to_string(m) +
                           ", symbol " + std::to_string(n) + ": already " +
                           to_string(kind(m, n)));
    symbols(m, n) = value;
    kinds(m, n) = static_cast<std::uint8_t>(k);
}

ResourceGrid new_grid(const Numerology& numerology) {
    numerology.validate();
    ResourceGrid grid;
    grid.numerology = numerology;
    grid.symbols = Eigen::MatrixXcd::Zero(numerology.subcarriers(), numerology.symbols());
    grid.kinds = KindMatrix::Zero(numerology.subcarriers(), numerology.symbols());
    return grid;
}

ResourceGrid extract_kind(const ResourceGrid& grid, ReKind kind) {
    ResourceGrid out;
    out.numerology = grid.numerology;
    out.symbols = Eigen::MatrixXcd::Zero(grid.rows(), grid.cols());
    out.kinds = KindMatrix::Zero(grid.rows(), grid.cols());
    const auto k = static_cast<std::uint8_t>(kind);
    for (Eigen::Index n = 0; n < grid.cols(); ++n)
        for (Eigen::Index m = 0; m < grid.rows(); ++m)
            if (grid.kinds(m, n) == k) {
                out.symbols(m, n) = grid.symbols(m, n);
                out.kinds(m, n) = k;
            }
    return out;
}

Eigen::Index count_kind(const ResourceGrid& grid, ReKind kind) {
    return (grid.kinds.array() == static_cast<std::uint8_t>(kind)).count();
}

} // namespace isac
