#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <cstdint>
#include <limits>

#include "qkdlab/shift_code.hpp"
#include "qkdlab/rng.hpp"

using namespace qkdlab;

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Independent nearest-multiple oracle: scan candidate multiples in a wide
// window around the rounded value and keep the closest.
std::int64_t nearest_multiple_scan(double y, double announced, double spacing) {
    const auto start = static_cast<std::int64_t>(std::llround((y - announced) / spacing));
    std::int64_t best = start - 10;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::int64_t k = start - 10; k <= start + 10; ++k) {
        const double distance = std::abs(y - announced - static_cast<double>(k) * spacing);
        if (distance < best_distance) {
            best_distance = distance;
            best = k;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("residue decomposition") {
    const auto exact = residue(kSqrtPi * 3.25, kSqrtPi);
    CHECK(exact.multiple == 3);
    CHECK(exact.remainder == doctest::Approx(0.25 * kSqrtPi).epsilon(1e-12));

    const auto negative = residue(-0.1, kSqrtPi);
    CHECK(negative.multiple == -1);
    CHECK(negative.remainder == doctest::Approx(kSqrtPi - 0.1).epsilon(1e-12));

    const auto zero = residue(0.0, kSqrtPi);
    CHECK(zero.multiple == 0);
    CHECK(zero.remainder == 0.0);

    CHECK_THROWS_AS(residue(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("residue reconstructs its input on a random grid") {
    CounterRng rng(5, 0);
    for (int i = 0; i < 10000; ++i) {
        const double x = (rng.next_double() - 0.5) * 40.0;
        const double spacing = 0.1 + 3.0 * rng.next_double();
        const auto d = residue(x, spacing);
        CHECK(d.remainder >= 0.0);
        CHECK(d.remainder < spacing);
        CHECK(static_cast<double>(d.multiple) * spacing + d.remainder ==
              doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("quantize_residue") {
    CHECK(quantize_residue(0.0, kSqrtPi, 8).value == 0.0);

    const auto q = quantize_residue(0.3 * kSqrtPi, kSqrtPi, 8);
    CHECK(q.value == doctest::Approx(77.0 / 256.0 * kSqrtPi).epsilon(1e-15));
    CHECK(q.m_bits == 8);

    // A remainder past the top half-bin wraps around to zero.
    const int m = 8;
    const double top = (1.0 - std::ldexp(1.0, -(m + 2))) * kSqrtPi;
    CHECK(quantize_residue(top, kSqrtPi, m).value == 0.0);

    CHECK_THROWS_AS(quantize_residue(0.1, kSqrtPi, 0), std::invalid_argument);

    // quantization error bound spacing * 2^-(m+1)
    CounterRng rng(6, 0);
    for (int i = 0; i < 2000; ++i) {
        const double r = rng.next_double() * kSqrtPi;
        const auto a = quantize_residue(r, kSqrtPi, 10);
        double err = std::abs(a.value - r);
        err = std::min(err, kSqrtPi - err);  // wrap distance
        CHECK(err <= kSqrtPi * std::ldexp(1.0, -11) * (1.0 + 1e-12));
    }
}

TEST_CASE("correct_and_extract agrees noiselessly and flips on odd windows") {
    const double q_a = 2.3;
    const auto decomposition = residue(q_a, kSqrtPi);
    const AnnouncedResidue unquantized{decomposition.remainder, 52};

    const auto alice = correct_and_extract(q_a, unquantized, kSqrtPi);
    CHECK(alice.multiple == decomposition.multiple);

    const auto bob_clean = correct_and_extract(q_a, unquantized, kSqrtPi);
    CHECK(bob_clean.bit == alice.bit);

    const auto bob_shifted = correct_and_extract(q_a + 0.9 * kSqrtPi, unquantized, kSqrtPi);
    CHECK(bob_shifted.bit == 1 - alice.bit);
}

TEST_CASE("correct_and_extract matches the brute-force multiple scan") {
    CounterRng rng(8, 0);
    for (int i = 0; i < 10000; ++i) {
        const double q_a = (rng.next_double() - 0.5) * 20.0;
        const double shift = (rng.next_double() - 0.5) * 8.0;
        const auto d = residue(q_a, kSqrtPi);
        const auto announced = quantize_residue(d.remainder, kSqrtPi, 16);
        const double y = q_a + shift;
        const auto extracted = correct_and_extract(y, announced, kSqrtPi);
        const auto oracle = nearest_multiple_scan(y, announced.value, kSqrtPi);
        CHECK(extracted.multiple == oracle);
        CHECK(extracted.bit == ((oracle % 2) + 2) % 2);
    }
}

TEST_CASE("parity is invariant under even shifts and flips under odd ones") {
    const AnnouncedResidue announced{0.37, 16};
    for (int i = 0; i < 200; ++i) {
        const double y = -9.0 + 0.09 * i;
        const int base = correct_and_extract(y, announced, kSqrtPi).bit;
        for (int k : {-4, -2, 2, 4}) {
            CHECK(correct_and_extract(y + k * kSqrtPi, announced, kSqrtPi).bit == base);
        }
        for (int k : {-3, -1, 1, 3}) {
            CHECK(correct_and_extract(y + k * kSqrtPi, announced, kSqrtPi).bit == 1 - base);
        }
    }
}

TEST_CASE("bit extraction is alpha-covariant") {
    CounterRng rng(9, 0);
    for (int i = 0; i < 5000; ++i) {
        const double y = (rng.next_double() - 0.5) * 12.0;
        const double announced_value = rng.next_double() * kSqrtPi;
        const double alpha = 0.25 + 3.0 * rng.next_double();
        const auto plain = correct_and_extract(y, {announced_value, 16}, kSqrtPi);
        const auto scaled =
            correct_and_extract(alpha * y, {alpha * announced_value, 16}, alpha * kSqrtPi);
        CHECK(plain.bit == scaled.bit);
        CHECK(plain.multiple == scaled.multiple);
    }
}

TEST_CASE("shift error probabilities reproduce the reference points") {
    CHECK(std::abs(shift_error_prob(0.784, ErrorProbMethod::Window) - 0.110) < 0.001);
    CHECK(std::abs(shift_error_prob(0.504, ErrorProbMethod::Window) - 0.012) < 0.001);
    CHECK(shift_error_prob(0.256, ErrorProbMethod::ExactSeries) < 1e-6);
    CHECK(shift_error_prob(1e-3, ErrorProbMethod::ExactSeries) == 0.0);
    CHECK_THROWS_AS(shift_error_prob(0.0, ErrorProbMethod::Window), std::invalid_argument);
}

TEST_CASE("method ordering Window <= ExactSeries <= TailBound on a 100-point grid") {
    for (int i = 1; i <= 100; ++i) {
        const double delta = 1.2 * i / 100.0;
        const double window = shift_error_prob(delta, ErrorProbMethod::Window);
        const double exact = shift_error_prob(delta, ErrorProbMethod::ExactSeries);
        const double tail = shift_error_prob(delta, ErrorProbMethod::TailBound);
        CHECK(window <= exact * (1.0 + 1e-12) + 1e-300);
        CHECK(exact <= tail * (1.0 + 1e-12) + 1e-300);
        CHECK(exact >= window * (1.0 - 1e-3));
    }
}

TEST_CASE("Monte-Carlo flip rate matches ExactSeries") {
    const long trials = 1000000;
    for (double delta : {0.3, 0.5, 0.784}) {
        CounterRng rng(13, static_cast<std::uint64_t>(delta * 1000));
        long flips = 0;
        for (long i = 0; i < trials; ++i) {
            const double q_a = (rng.next_double() - 0.5) * 10.0 * kSqrtPi;
            const auto d = residue(q_a, kSqrtPi);
            const AnnouncedResidue announced{d.remainder, 52};
            const double shift = rng.next_gaussian(0.0, 0.5 * delta * delta);
            const auto alice = correct_and_extract(q_a, announced, kSqrtPi);
            const auto bob = correct_and_extract(q_a + shift, announced, kSqrtPi);
            flips += alice.bit != bob.bit;
        }
        const double p = shift_error_prob(delta, ErrorProbMethod::ExactSeries);
        const double sigma = std::sqrt(p * (1.0 - p) / trials);
        CHECK(std::abs(static_cast<double>(flips) / trials - p) < 3.0 * sigma);
    }
}

TEST_CASE("code_params geometry") {
    const auto standard = code_params(2, 1.0);
    CHECK(standard.spacing_q == doctest::Approx(kSqrtPi).epsilon(1e-15));
    CHECK(standard.radius_q == doctest::Approx(0.8862269254527580).epsilon(1e-12));

    const double alpha = 1.7;
    const auto stretched = code_params(2, alpha);
    CHECK(stretched.radius_q == doctest::Approx(alpha * kSqrtPi / 2.0).epsilon(1e-12));
    CHECK(stretched.radius_p == doctest::Approx(kSqrtPi / (2.0 * alpha)).epsilon(1e-12));
    CHECK(stretched.spacing_q * stretched.spacing_p == doctest::Approx(3.14159265358979).epsilon(1e-12));

    for (int d : {2, 3, 5, 8}) {
        const auto lattice = code_params(d, 1.0);
        CHECK(lattice.radius_q * lattice.radius_p ==
              doctest::Approx(3.14159265358979 / (2.0 * d)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(code_params(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(code_params(2, 0.0), std::invalid_argument);
}
