#pragma once

namespace qkdlab {

// Closed-form security mathematics: squeeze-parameter conversions,
// entanglement measures, key-rate and sampling bounds, loss-degraded widths
// and the maximum-distance solvers behind the loss-limit curves.

// The four equivalent squeezing parametrizations:
//   delta       - two-mode EPR width,    delta^2 = 2 e^{-2 r_two_mode}
//   tilde_delta - single-mode signal width, tilde_delta = e^{-r}
//   r           - single-mode squeeze parameter
//   db          - noise suppression in decibels, -20 log10(tilde_delta)
// linked by tilde_delta^2 = delta^2 / (1 + delta^4/4).
struct SqueezeParams {
    double delta = 0.0;
    double tilde_delta = 0.0;
    double r = 0.0;
    double db = 0.0;

    double two_mode_r() const;

    static SqueezeParams from_delta(double delta);
    static SqueezeParams from_tilde_delta(double tilde_delta);
    static SqueezeParams from_r(double r);
    static SqueezeParams from_db(double db);
};

double delta_from_tilde(double tilde_delta);
double tilde_from_delta(double delta);

// Channel length in attenuation lengths; xi = e^{-kappa_d/2}.
struct LossScenario {
    double kappa_d = 0.0;
    bool amplified = false;
};

double binary_entropy(double p);

// Entanglement of the two-mode squeezed state in ebits,
// E = cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r with delta^2 = 2e^{-2r}.
double ebits(double delta);

// Entanglement of formation of the Bell-diagonal encoded pair at fidelity F,
// H2(1/2 + sqrt(F(1-F))). Requires 1/2 <= F <= 1.
double entanglement_of_formation(double fidelity);

// Asymptotic CSS key rate max(0, 1 - 2 H2(p)) evaluated at the worse basis;
// crosses zero at p = 0.1100.
double key_rate(double p_z, double p_x);

// Largest delta whose Window-method error probability stays at `threshold`
// (bisection to 1e-9). The 11% default reproduces the 0.784 security
// threshold.
double solve_secure_delta(double threshold = 0.11);

// Width of the q_A - q_B difference distribution after the loss channel
// (optionally loss + quantum amplifier with gain xi^-2). At kappa_d = 0 both
// variants reduce to delta_from_tilde.
double delta_xi(double tilde_delta, const LossScenario& scenario);

// Largest kappa_d keeping delta_xi at or below the security threshold
// (bisection to 1e-6); 0 once tilde_delta is insecure even at zero distance.
double max_distance(double tilde_delta, bool amplified);

struct OperatingPoint {
    double tilde_delta = 0.0;
    double kappa_d = 0.0;
};

// Maximizes max_distance over tilde_delta by golden section (tolerance 1e-4
// on the argument). The amplified curve is monotone decreasing, so the
// search settles on the left edge of the bracket and reports the boundary.
OperatingPoint optimal_operating_point(bool amplified);

// Holevo-style bound on Eve's information (bits) when the distilled state
// has fidelity 1 - delta_fid and 2k encoded qubits (D = 2^{2k}):
//   exact      = -(1-d) log2(1-d) - d log2(d/(D-1))
//   linearized = d (1/ln 2 + 2k + log2(1/d))
struct EveInfoBound {
    double exact = 0.0;
    double linearized = 0.0;
};

EveInfoBound eve_info_bound(double delta_fid, int k);

}  // namespace qkdlab
