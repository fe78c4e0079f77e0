#pragma once

#include <cstdint>
#include <vector>

#include "qkdlab/rng.hpp"

namespace qkdlab {

// Classical reconciliation and privacy amplification via a CSS code pair
// C2 subset C1: decode to C1 to fix bit flips, publish only the C2 coset of
// the decoded word as the key.

using Bits = std::vector<std::uint8_t>;       // one 0/1 value per entry
using BitMatrix = std::vector<Bits>;          // row-major

Bits xor_bits(const Bits& a, const Bits& b);
int hamming_weight(const Bits& bits);
int gf2_dot(const Bits& a, const Bits& b);
int gf2_rank(BitMatrix rows);

// Basis of the null space {x : rows * x = 0} over GF(2).
BitMatrix gf2_nullspace_basis(const BitMatrix& rows, int n);

struct BinaryCode {
    int n = 0;
    int k = 0;
    BitMatrix generator;     // k x n
    BitMatrix parity_check;  // (n-k) x n
};

// Checks dimensions, rank(G) = k and G H^T = 0; throws on violation.
void validate_code(const BinaryCode& code);

// H * word^T over GF(2).
Bits syndrome(const BinaryCode& code, const Bits& word);

bool is_codeword(const BinaryCode& code, const Bits& word);

// Exhaustive nearest-codeword decoding through a syndrome -> coset-leader
// table. Ties between minimum-weight error patterns are broken toward the
// lexicographically smallest pattern. Requires n <= 24.
class SyndromeDecoder {
public:
    explicit SyndromeDecoder(const BinaryCode& code);

    Bits decode(const Bits& word) const;

private:
    int n_ = 0;
    BitMatrix parity_check_;
    std::vector<std::uint32_t> leader_of_syndrome_;
};

Bits decode_nearest(const BinaryCode& code, const Bits& word);

struct CssPair {
    BinaryCode c1;
    BinaryCode c2;            // subcode of c1
    BitMatrix coset_basis;    // (k1-k2) rows of C1 completing a basis of C2
    BitMatrix label_map;      // (k1-k2) x n; label(v) = label_map * v^T

    int key_bits() const { return c1.k - c2.k; }
};

// Validates the pair (C2 in C1, basis completion has full rank) and solves
// for a label map that is constant on C2 cosets and maps coset_basis row i
// to the unit label e_i.
CssPair make_css_pair(BinaryCode c1, BinaryCode c2, BitMatrix coset_basis);

// The [7,4] Hamming code with its [7,3] dual as subcode; one key bit per
// block, any single bit flip corrected.
CssPair steane_css();

// Random pair with dim(C1) = k1, dim(C2) = k2; n <= 24 so decoding stays
// exhaustive.
CssPair random_css(int n, int k1, int k2, CounterRng& rng);

// Uniformly random codeword (random GF(2) combination of generator rows).
Bits random_codeword(const BinaryCode& code, CounterRng& rng);

// C2-coset label of a C1 codeword; throws if v is not in C1.
Bits coset_label(const CssPair& pair, const Bits& v);

struct ReconcileResult {
    Bits key_alice;
    Bits key_bob;
    Bits announced;  // u + v, broadcast in the clear
};

// One block of reconciliation + privacy amplification: Alice draws a random
// v in C1 and announces u + v; Bob shifts his block by the announcement and
// decodes. Keys agree whenever the error pattern between the inputs is
// correctable by C1.
ReconcileResult reconcile_and_extract(const CssPair& pair, const Bits& alice_bits,
                                      const Bits& bob_bits, CounterRng& rng);

// Sampling-test bounds on the chance that untested positions hide an error
// fraction above p + eps_prime. The simple form is the general one at
// M = n/2 tested out of N = 3n/2.
double sample_bound_simple(double n_keys, double p, double eps_prime);
double sample_bound_general(double tested_m, double total_n, double p, double eps_prime);

struct ScrambleResult {
    Bits permuted;
    std::vector<std::uint32_t> permutation;
};

// Uniform random permutation (Fisher-Yates) of bit positions;
// permuted[i] = bits[permutation[i]].
ScrambleResult scramble(const Bits& bits, CounterRng& rng);
Bits apply_permutation(const Bits& bits, const std::vector<std::uint32_t>& permutation);
Bits unscramble(const Bits& permuted, const std::vector<std::uint32_t>& permutation);

}  // namespace qkdlab
