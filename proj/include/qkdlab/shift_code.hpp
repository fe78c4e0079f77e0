#pragma once

#include <cstdint>

namespace qkdlab {

// Single-oscillator shift-resistant code layer: residue arithmetic modulo the
// code spacing, nearest-multiple correction and raw-bit extraction, m-bit
// residue quantization, and analytic shift-error probabilities.

// Spacings and correctable radii of the dimension-d code with asymmetry
// alpha. For d = 2, alpha = 1 the q spacing is sqrt(pi) and the correctable
// radius sqrt(pi)/2. Raw-bit (digit) extraction is implemented for d = 2;
// for d > 2 the geometry is still exposed here.
struct CodeLattice {
    int dim = 2;
    double alpha = 1.0;
    double spacing_q = 0.0;
    double spacing_p = 0.0;
    double radius_q = 0.0;
    double radius_p = 0.0;

    double spacing(int basis_is_p) const { return basis_is_p ? spacing_p : spacing_q; }
};

CodeLattice code_params(int dim, double alpha);

// Alice's public residue broadcast: value in [0, spacing) rounded to m
// fractional bits of value/spacing. The quantization error is at most
// spacing * 2^-(m+1).
struct AnnouncedResidue {
    double value = 0.0;
    int m_bits = 0;
};

struct ResidueDecomposition {
    std::int64_t multiple = 0;  // parity of this is the raw bit
    double remainder = 0.0;     // in [0, spacing)
};

// x = multiple * spacing + remainder, remainder in [0, spacing).
ResidueDecomposition residue(double x, double spacing);

// Round-half-to-even quantization of r/spacing to m fractional bits; the top
// bin 2^m wraps to 0.
AnnouncedResidue quantize_residue(double r, double spacing, int m_bits);

struct ExtractedBit {
    int bit = 0;
    std::int64_t multiple = 0;
};

// Nearest-multiple correction against the announced residue: multiple is the
// nearest integer to (y - announced)/spacing and the bit is its parity. Both
// parties extract against the same announced value, so quantization cannot
// split them unless the channel shift already sits at a window edge.
ExtractedBit correct_and_extract(double y, const AnnouncedResidue& announced, double spacing);

// Probability that a N(0, delta^2/2) shift flips the raw bit of the d = 2,
// alpha = 1 code.
//   TailBound   - mass beyond sqrt(pi)/2 (all windows): erfc(sqrt(pi)/(2 delta)),
//                 itself bounded by the closed form (2 delta/pi) exp(-pi/(4 delta^2))
//   Window      - first odd window only:  erf(3a) - erf(a), a = sqrt(pi)/(2 delta)
//   ExactSeries - all odd windows, truncated once terms drop below 1e-18
// Ordering: Window <= ExactSeries <= TailBound.
enum class ErrorProbMethod { TailBound, Window, ExactSeries };

double shift_error_prob(double delta, ErrorProbMethod method);

}  // namespace qkdlab
