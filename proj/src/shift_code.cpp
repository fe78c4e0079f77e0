#include "qkdlab/shift_code.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CodeLattice code_params(int dim, double alpha) {
    if (dim < 2) throw std::invalid_argument("code_params: dim must be >= 2");
    if (!(alpha > 0.0)) throw std::invalid_argument("code_params: alpha must be > 0");
    CodeLattice lattice;
    lattice.dim = dim;
    lattice.alpha = alpha;
    const double base = std::sqrt(2.0 * kPi / static_cast<double>(dim));
    lattice.spacing_q = alpha * base;
    lattice.spacing_p = base / alpha;
    lattice.radius_q = 0.5 * lattice.spacing_q;
    lattice.radius_p = 0.5 * lattice.spacing_p;
    return lattice;
}

ResidueDecomposition residue(double x, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("residue: spacing must be > 0");
    if (!std::isfinite(x) || std::abs(x) >= 9.0e15 * spacing) {
        throw std::invalid_argument("residue: value out of range");
    }
    double n = std::floor(x / spacing);
    double r = x - n * spacing;
    // floor division can leave r == spacing when x/spacing rounds up.
    if (r >= spacing) {
        r -= spacing;
        n += 1.0;
    }
    if (r < 0.0) {
        r += spacing;
        n -= 1.0;
    }
    return {static_cast<std::int64_t>(n), r};
}

AnnouncedResidue quantize_residue(double r, double spacing, int m_bits) {
    if (m_bits < 1) throw std::invalid_argument("quantize_residue: m_bits must be >= 1");
    if (!(spacing > 0.0)) throw std::invalid_argument("quantize_residue: spacing must be > 0");
    const double scale = std::ldexp(1.0, m_bits);  // 2^m
    // rint rounds half to even under the default rounding mode.
    double ticks = std::rint(r / spacing * scale);
    if (ticks >= scale) ticks = 0.0;  // top bin wraps
    return {ticks / scale * spacing, m_bits};
}

ExtractedBit correct_and_extract(double y, const AnnouncedResidue& announced, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("correct_and_extract: spacing must be > 0");
    if (!std::isfinite(y) || std::abs(y) >= 9.0e15 * spacing) {
        throw std::invalid_argument("correct_and_extract: value out of range");
    }
    const auto multiple = static_cast<std::int64_t>(std::rint((y - announced.value) / spacing));
    const int bit = static_cast<int>(((multiple % 2) + 2) % 2);
    return {bit, multiple};
}

double shift_error_prob(double delta, ErrorProbMethod method) {
    if (!(delta > 0.0)) throw std::invalid_argument("shift_error_prob: delta must be > 0");
    const double a = std::sqrt(kPi) / (2.0 * delta);
    switch (method) {
        case ErrorProbMethod::TailBound:
            return std::erfc(a);
        case ErrorProbMethod::Window:
            // erf(3a) - erf(a) in the complementary form, which keeps its
            // relative precision when both erf values sit near 1.
            return std::erfc(a) - std::erfc(3.0 * a);
        case ErrorProbMethod::ExactSeries: {
            // Odd windows alternate in the erfc telescoping:
            //   erfc(a) - erfc(3a) + erfc(5a) - erfc(7a) + ...
            double sum = 0.0;
            double sign = 1.0;
            for (int m = 1;; m += 2) {
                const double term = std::erfc(static_cast<double>(m) * a);
                sum += sign * term;
                if (term < 1e-18) break;
                sign = -sign;
            }
            return sum;
        }
    }
    throw std::logic_error("shift_error_prob: unknown method");
}

}  // namespace qkdlab
