#pragma once

#include <Eigen/Dense>

namespace isac {

/// size-point inverse DFT of the input, zero-padded on the right:
///   out(l) = (1/size) * sum_m in(m) exp(+j 2 pi m l / size)
/// Requires in.size() <= size.
Eigen::VectorXcd inverse_dft(const Eigen::Ref<const Eigen::VectorXcd>& in, Eigen::Index size);

/// size-point forward DFT, zero-padded on the right:
///   out(d) = sum_n in(n) exp(-j 2 pi n d / size)
Eigen::VectorXcd forward_dft(const Eigen::Ref<const Eigen::VectorXcd>& in, Eigen::Index size);

} // namespace isac
