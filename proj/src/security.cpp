#include "qkdlab/security.hpp"

#include <cmath>
#include <stdexcept>

#include "qkdlab/shift_code.hpp"

namespace qkdlab {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// 1 - sqrt(1 - x) without cancellation for small x.
double one_minus_sqrt1m(double x) {
    return x / (1.0 + std::sqrt(1.0 - x));
}

}  // namespace

double delta_from_tilde(double tilde_delta) {
    if (!(tilde_delta > 0.0 && tilde_delta <= 1.0)) {
        throw std::invalid_argument("delta_from_tilde: tilde_delta must lie in (0, 1]");
    }
    const double t2 = tilde_delta * tilde_delta;
    return std::sqrt(2.0 * t2 / (1.0 + std::sqrt(1.0 - t2 * t2)));
}

double tilde_from_delta(double delta) {
    if (!(delta > 0.0 && delta <= std::sqrt(2.0) * (1.0 + 1e-12))) {
        throw std::invalid_argument("tilde_from_delta: delta must lie in (0, sqrt(2)]");
    }
    const double d2 = delta * delta;
    return std::sqrt(d2 / (1.0 + 0.25 * d2 * d2));
}

double SqueezeParams::two_mode_r() const {
    return -std::log(delta / std::sqrt(2.0));
}

SqueezeParams SqueezeParams::from_tilde_delta(double tilde_delta) {
    SqueezeParams p;
    p.tilde_delta = tilde_delta;
    p.delta = delta_from_tilde(tilde_delta);
    p.r = -std::log(tilde_delta);
    p.db = -20.0 * std::log10(tilde_delta);
    return p;
}

SqueezeParams SqueezeParams::from_delta(double delta) {
    return from_tilde_delta(tilde_from_delta(delta));
}

SqueezeParams SqueezeParams::from_r(double r) {
    if (r < 0.0) throw std::invalid_argument("SqueezeParams: r must be >= 0");
    return from_tilde_delta(std::exp(-r));
}

SqueezeParams SqueezeParams::from_db(double db) {
    if (db < 0.0) throw std::invalid_argument("SqueezeParams: db must be >= 0");
    return from_tilde_delta(std::pow(10.0, -db / 20.0));
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
    }
    if (p == 0.0 || p == 1.0) return 0.0;
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double ebits(double delta) {
    if (!(delta > 0.0 && delta <= std::sqrt(2.0) * (1.0 + 1e-12))) {
        throw std::invalid_argument("ebits: delta must lie in (0, sqrt(2)]");
    }
    const double r = -std::log(delta / std::sqrt(2.0));
    const double c2 = std::cosh(r) * std::cosh(r);
    const double s2 = std::sinh(r) * std::sinh(r);
    if (s2 == 0.0) return 0.0;  // product state, x log x -> 0
    return c2 * std::log2(c2) - s2 * std::log2(s2);
}

double entanglement_of_formation(double fidelity) {
    if (!(fidelity >= 0.5 && fidelity <= 1.0)) {
        throw std::invalid_argument("entanglement_of_formation: F must lie in [1/2, 1]");
    }
    return binary_entropy(0.5 + std::sqrt(fidelity * (1.0 - fidelity)));
}

double key_rate(double p_z, double p_x) {
    if (!(p_z >= 0.0 && p_z <= 0.5) || !(p_x >= 0.0 && p_x <= 0.5)) {
        throw std::invalid_argument("key_rate: error rates must lie in [0, 1/2]");
    }
    const double rate_z = 1.0 - 2.0 * binary_entropy(p_z);
    const double rate_x = 1.0 - 2.0 * binary_entropy(p_x);
    const double rate = rate_z < rate_x ? rate_z : rate_x;
    return rate > 0.0 ? rate : 0.0;
}

double solve_secure_delta(double threshold) {
    if (!(threshold > 0.0 && threshold < 0.5)) {
        throw std::invalid_argument("solve_secure_delta: threshold must lie in (0, 1/2)");
    }
    // The Window probability is strictly increasing in delta up to ~2.39,
    // beyond any threshold of practical interest.
    double lo = 1e-12;
    double hi = 2.0;
    if (shift_error_prob(hi, ErrorProbMethod::Window) < threshold) {
        throw std::domain_error("solve_secure_delta: threshold not attainable");
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (shift_error_prob(mid, ErrorProbMethod::Window) < threshold) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// The 11% threshold width, computed once from the Window method so its
// precision governs every downstream distance and operating point.
double security_threshold_delta() {
    static const double value = solve_secure_delta(0.11);
    return value;
}

}  // namespace

double delta_xi(double tilde_delta, const LossScenario& scenario) {
    if (!(tilde_delta > 0.0 && tilde_delta <= 1.0)) {
        throw std::invalid_argument("delta_xi: tilde_delta must lie in (0, 1]");
    }
    if (!(scenario.kappa_d >= 0.0)) {
        throw std::invalid_argument("delta_xi: kappa_d must be >= 0");
    }
    const double t2 = tilde_delta * tilde_delta;
    const double lost = one_minus_sqrt1m(t2 * t2);  // 1 - sqrt(1 - tilde^4)
    if (scenario.amplified) {
        // (Delta_xi)_amp^2 = Delta^2 + 2 (xi^-2 - 1)
        const double inv_gain = std::exp(scenario.kappa_d);  // xi^-2
        return std::sqrt(2.0 * lost / t2 + 2.0 * (inv_gain - 1.0));
    }
    const double xi = std::exp(-0.5 * scenario.kappa_d);
    const double num = (1.0 - xi) * (1.0 - xi) + 2.0 * xi * lost + (1.0 - xi * xi) * t2;
    return std::sqrt(num) / tilde_delta;
}

double max_distance(double tilde_delta, bool amplified) {
    const double delta_star = security_threshold_delta();
    if (!(tilde_delta > 0.0 && tilde_delta <= 1.0)) {
        throw std::invalid_argument("max_distance: tilde_delta must lie in (0, 1]");
    }
    if (delta_from_tilde(tilde_delta) >= delta_star) return 0.0;
    // delta_xi grows monotonically with distance; bracket then bisect.
    double hi = 1.0;
    while (delta_xi(tilde_delta, {hi, amplified}) < delta_star) {
        hi *= 2.0;
        if (hi > 1e6) return hi;  // unreachable for physical parameters
    }
    double lo = 0.0;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (delta_xi(tilde_delta, {mid, amplified}) < delta_star) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

OperatingPoint optimal_operating_point(bool amplified) {
    const double tilde_star = tilde_from_delta(security_threshold_delta());
    // Golden-section over the secure interval. The unamplified curve is
    // unimodal; the amplified one is monotone decreasing and converges to
    // the left boundary.
    constexpr double kGolden = 0.61803398874989484820;
    double a = 1e-3;
    double b = tilde_star - 1e-6;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = max_distance(c, amplified);
    double fd = max_distance(d, amplified);
    while (b - a > 1e-4) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = max_distance(c, amplified);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = max_distance(d, amplified);
        }
    }
    const double best = 0.5 * (a + b);
    return {best, max_distance(best, amplified)};
}

EveInfoBound eve_info_bound(double delta_fid, int k) {
    if (!(delta_fid > 0.0 && delta_fid < 0.5)) {
        throw std::invalid_argument("eve_info_bound: delta_fid must lie in (0, 1/2)");
    }
    if (k < 1) throw std::invalid_argument("eve_info_bound: k must be >= 1");
    const double d = delta_fid;
    const int log2_dim = 2 * k;
    // log2(D - 1) with D = 2^{2k}; exact below 2^63, indistinguishable above.
    const double log2_dm1 =
        log2_dim < 63 ? std::log2(static_cast<double>((1ull << log2_dim) - 1))
                      : static_cast<double>(log2_dim);
    EveInfoBound bound;
    bound.exact = -(1.0 - d) * std::log2(1.0 - d) - d * (std::log2(d) - log2_dm1);
    bound.linearized = d * (1.0 / kLn2 + static_cast<double>(log2_dim) - std::log2(d));
    return bound;
}

}  // namespace qkdlab
