#include "qkdlab/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdlab {

GaussianMarginal apply_loss(const GaussianMarginal& state, double xi) {
    if (!(xi > 0.0 && xi <= 1.0)) {
        throw std::invalid_argument("apply_loss: xi must lie in (0, 1]");
    }
    if (!(state.variance >= 0.0)) {
        throw std::invalid_argument("apply_loss: variance must be >= 0");
    }
    if (xi == 1.0) return state;
    // Written as an update of the excess over vacuum so the vacuum stays a
    // bit-exact fixed point for every xi.
    return {xi * state.mean, 0.5 + xi * xi * (state.variance - 0.5)};
}

GaussianMarginal apply_gain(const GaussianMarginal& state, double gain) {
    if (!(gain >= 1.0)) {
        throw std::invalid_argument("apply_gain: gain must be >= 1");
    }
    if (!(state.variance >= 0.0)) {
        throw std::invalid_argument("apply_gain: variance must be >= 0");
    }
    return {std::sqrt(gain) * state.mean, gain * state.variance + 0.5 * (gain - 1.0)};
}

GaussianMarginal apply_channel(const GaussianMarginal& state, const ChannelModel& channel) {
    GaussianMarginal out = apply_loss(state, channel.xi);
    if (channel.gain > 1.0) out = apply_gain(out, channel.gain);
    return out;
}

double sample_center(const SqueezedSource& source, Basis basis, CounterRng& rng) {
    const double w = source.basis_width(basis);
    return rng.next_gaussian(0.0, 1.0 / (2.0 * w * w));
}

GaussianMarginal conditional_signal(const SqueezedSource& source, double center, Basis basis) {
    const double w = source.basis_width(basis);
    if (!(w > 0.0 && w <= 1.0)) {
        throw std::invalid_argument(
            "conditional_signal: basis width must lie in (0, 1]");
    }
    const double w2 = w * w;
    const double shrink = std::sqrt(1.0 - w2 * w2);
    return {shrink * center, 0.5 * w2};
}

}  // namespace qkdlab
