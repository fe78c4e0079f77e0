#pragma once

#include "qkdlab/rng.hpp"

namespace qkdlab {

// Every state, channel and homodyne measurement in the protocol is Gaussian,
// so a quadrature is fully described by the mean and variance of its outcome
// distribution. Units are hbar = 1 with q = (a + a^t)/sqrt(2); the vacuum
// outcome variance is 1/2.
struct GaussianMarginal {
    double mean = 0.0;
    double variance = 0.5;
};

inline GaussianMarginal vacuum_state() { return {0.0, 0.5}; }

enum class Basis { Q, P };

inline Basis conjugate(Basis b) { return b == Basis::Q ? Basis::P : Basis::Q; }

// Squeezed-signal source. tilde_delta is the wave-packet width of the state
// Alice sends (signal variance tilde_delta^2/2); alpha rescales the widths
// asymmetrically: q-width tilde_delta*alpha, p-width tilde_delta/alpha.
struct SqueezedSource {
    double tilde_delta = 0.5;
    double alpha = 1.0;

    double basis_width(Basis b) const {
        return b == Basis::Q ? tilde_delta * alpha : tilde_delta / alpha;
    }
};

// Loss/amplifier channel. xi = e^{-kappa d / 2} is the amplitude damping
// factor; gain is the amplifier power gain (xi^-2 restores the mean exactly).
// classical_rescale means the receiver multiplies measured outcomes by xi^-1
// instead of running a quantum amplifier; apply_channel then skips the gain
// stage and the caller applies outcome_rescale() to its homodyne results.
struct ChannelModel {
    double xi = 1.0;
    double gain = 1.0;
    bool classical_rescale = false;

    double outcome_rescale() const { return classical_rescale ? 1.0 / xi : 1.0; }
};

// Loss then (optional) quantum amplification of one quadrature marginal.
GaussianMarginal apply_channel(const GaussianMarginal& state, const ChannelModel& channel);

// mean -> xi*mean, variance -> xi^2*variance + (1 - xi^2)/2. The vacuum is
// the unique fixed point. Requires 0 < xi <= 1.
GaussianMarginal apply_loss(const GaussianMarginal& state, double xi);

// mean -> sqrt(gain)*mean, variance -> gain*variance + (gain - 1)/2.
// Requires gain >= 1.
GaussianMarginal apply_gain(const GaussianMarginal& state, double gain);

// Draws the center value Alice uses for her raw bit. Outcomes are normal
// with mean 0 and variance 1/(2 w^2), w the basis-rescaled width.
double sample_center(const SqueezedSource& source, Basis basis, CounterRng& rng);

// The signal Alice actually emits given her sampled center: mean shrinks by
// sqrt(1 - w^4) and the variance is w^2/2. Rejects w > 1 (the implied
// entangled-pair width would exceed sqrt(2)).
GaussianMarginal conditional_signal(const SqueezedSource& source, double center, Basis basis);

}  // namespace qkdlab
