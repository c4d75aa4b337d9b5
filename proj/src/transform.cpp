#include "isac/transform.hpp"

#include <complex>

#include <unsupported/Eigen/FFT>

#include "isac/errors.hpp"

namespace isac {
namespace {

// The FFT plan cache is not shareable across threads; keep one per thread.
Eigen::FFT<double>& engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

Eigen::VectorXcd padded(const Eigen::Ref<const Eigen::VectorXcd>& in, Eigen::Index size) {
    if (size < 1 || in.size() > size)
        throw UsageError("transform size must be >= input length");
    Eigen::VectorXcd buf = Eigen::VectorXcd::Zero(size);
    buf.head(in.size()) = in;
    return buf;
}

} // namespace

Eigen::VectorXcd inverse_dft(const Eigen::Ref<const Eigen::VectorXcd>& in, Eigen::Index size) {
    const Eigen::VectorXcd buf = padded(in, size);
    Eigen::VectorXcd out(size);
    engine().inv(out.data(), buf.data(), size);
    return out;
}

Eigen::VectorXcd forward_dft(const Eigen::Ref<const Eigen::VectorXcd>& in, Eigen::Index size) {
    const Eigen::VectorXcd buf = padded(in, size);
    Eigen::VectorXcd out(size);
    engine().fwd(out.data(), buf.data(), size);
    return out;
}

} // namespace isac
