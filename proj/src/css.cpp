#include "qkdlab/css.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace qkdlab {

Bits xor_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
    Bits out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

int hamming_weight(const Bits& bits) {
    int w = 0;
    for (auto b : bits) w += b;
    return w;
}

int gf2_dot(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) throw std::invalid_argument("gf2_dot: length mismatch");
    int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
    return acc;
}

int gf2_rank(BitMatrix rows) {
    if (rows.empty()) return 0;
    const std::size_t n = rows[0].size();
    int rank = 0;
    std::size_t pivot_col = 0;
    for (std::size_t r = 0; r < rows.size() && pivot_col < n; ++pivot_col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][pivot_col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i][pivot_col]) rows[i] = xor_bits(rows[i], rows[r]);
        }
        ++r;
        ++rank;
    }
    return rank;
}

BitMatrix gf2_nullspace_basis(const BitMatrix& rows, int n) {
    BitMatrix reduced = rows;
    std::vector<int> pivot_of_col(n, -1);
    std::size_t r = 0;
    for (int col = 0; col < n && r < reduced.size(); ++col) {
        std::size_t pivot = r;
        while (pivot < reduced.size() && reduced[pivot][col] == 0) ++pivot;
        if (pivot == reduced.size()) continue;
        std::swap(reduced[r], reduced[pivot]);
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            if (i != r && reduced[i][col]) reduced[i] = xor_bits(reduced[i], reduced[r]);
        }
        pivot_of_col[col] = static_cast<int>(r);
        ++r;
    }
    BitMatrix basis;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        Bits vec(n, 0);
        vec[free_col] = 1;
        for (int col = 0; col < n; ++col) {
            const int pr = pivot_of_col[col];
            if (pr >= 0 && reduced[pr][free_col]) vec[col] = 1;
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

namespace {

// Any solution x of rows * x = b over GF(2), free variables set to zero.
std::optional<Bits> gf2_solve(BitMatrix rows, Bits rhs, int n) {
    std::vector<int> pivot_col_of_row(rows.size(), -1);
    std::size_t r = 0;
    for (int col = 0; col < n && r < rows.size(); ++col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        std::swap(rhs[r], rhs[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i][col]) {
                rows[i] = xor_bits(rows[i], rows[r]);
                rhs[i] ^= rhs[r];
            }
        }
        pivot_col_of_row[r] = col;
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i) {
        if (rhs[i]) return std::nullopt;  // inconsistent
    }
    Bits x(n, 0);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col_of_row[i]] = rhs[i];
    return x;
}

Bits matrix_times_vector(const BitMatrix& m, const Bits& v) {
    Bits out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = static_cast<std::uint8_t>(gf2_dot(m[i], v));
    return out;
}

}  // namespace

void validate_code(const BinaryCode& code) {
    if (code.n <= 0 || code.k <= 0 || code.k > code.n) {
        throw std::invalid_argument("validate_code: bad dimensions");
    }
    if (code.generator.size() != static_cast<std::size_t>(code.k) ||
        code.parity_check.size() != static_cast<std::size_t>(code.n - code.k)) {
        throw std::invalid_argument("validate_code: matrix row counts do not match (n, k)");
    }
    for (const auto& row : code.generator) {
        if (row.size() != static_cast<std::size_t>(code.n)) {
            throw std::invalid_argument("validate_code: generator row length mismatch");
        }
    }
    for (const auto& row : code.parity_check) {
        if (row.size() != static_cast<std::size_t>(code.n)) {
            throw std::invalid_argument("validate_code: parity row length mismatch");
        }
        for (const auto& g : code.generator) {
            if (gf2_dot(row, g) != 0) {
                throw std::invalid_argument("validate_code: generator not orthogonal to parity check");
            }
        }
    }
    if (gf2_rank(code.generator) != code.k) {
        throw std::invalid_argument("validate_code: generator is rank deficient");
    }
    if (gf2_rank(code.parity_check) != code.n - code.k) {
        throw std::invalid_argument("validate_code: parity check is rank deficient");
    }
}

Bits syndrome(const BinaryCode& code, const Bits& word) {
    if (word.size() != static_cast<std::size_t>(code.n)) {
        throw std::invalid_argument("syndrome: word length mismatch");
    }
    return matrix_times_vector(code.parity_check, word);
}

bool is_codeword(const BinaryCode& code, const Bits& word) {
    const Bits s = syndrome(code, word);
    return std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; });
}

SyndromeDecoder::SyndromeDecoder(const BinaryCode& code)
    : n_(code.n), parity_check_(code.parity_check) {
    if (code.n > 24) {
        throw std::invalid_argument("SyndromeDecoder: exhaustive decoding requires n <= 24");
    }
    const int checks = code.n - code.k;
    // Error patterns are packed with position 0 as the most significant bit,
    // so increasing integers enumerate patterns in lexicographic order.
    std::vector<std::uint32_t> column_syndrome(n_);
    for (int j = 0; j < n_; ++j) {
        std::uint32_t s = 0;
        for (int i = 0; i < checks; ++i) {
            if (parity_check_[i][j]) s |= 1u << i;
        }
        column_syndrome[j] = s;
    }
    leader_of_syndrome_.assign(std::size_t{1} << checks, 0);
    std::vector<std::uint8_t> best_weight(std::size_t{1} << checks, 0xFF);
    const std::uint32_t total = 1u << n_;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        const int w = std::popcount(mask);
        std::uint32_t s = 0;
        for (std::uint32_t m = mask; m; m &= m - 1) {
            const int msb_slot = std::countr_zero(m);
            s ^= column_syndrome[n_ - 1 - msb_slot];
        }
        if (w < best_weight[s]) {
            best_weight[s] = static_cast<std::uint8_t>(w);
            leader_of_syndrome_[s] = mask;
        }
    }
}

Bits SyndromeDecoder::decode(const Bits& word) const {
    if (word.size() != static_cast<std::size_t>(n_)) {
        throw std::invalid_argument("SyndromeDecoder: word length mismatch");
    }
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < parity_check_.size(); ++i) {
        if (gf2_dot(parity_check_[i], word)) s |= 1u << i;
    }
    const std::uint32_t leader = leader_of_syndrome_[s];
    Bits out = word;
    for (int j = 0; j < n_; ++j) {
        if (leader & (1u << (n_ - 1 - j))) out[j] ^= 1;
    }
    return out;
}

Bits decode_nearest(const BinaryCode& code, const Bits& word) {
    return SyndromeDecoder(code).decode(word);
}

CssPair make_css_pair(BinaryCode c1, BinaryCode c2, BitMatrix coset_basis) {
    validate_code(c1);
    validate_code(c2);
    if (c1.n != c2.n) throw std::invalid_argument("make_css_pair: length mismatch");
    const int key_bits = c1.k - c2.k;
    if (key_bits < 1) throw std::invalid_argument("make_css_pair: need k1 - k2 >= 1");
    if (coset_basis.size() != static_cast<std::size_t>(key_bits)) {
        throw std::invalid_argument("make_css_pair: coset basis must have k1 - k2 rows");
    }
    for (const auto& row : c2.generator) {
        if (!is_codeword(c1, row)) {
            throw std::invalid_argument("make_css_pair: C2 is not a subcode of C1");
        }
    }
    for (const auto& row : coset_basis) {
        if (!is_codeword(c1, row)) {
            throw std::invalid_argument("make_css_pair: coset basis row outside C1");
        }
    }
    // {C2 generators} + {coset basis} must span C1.
    BitMatrix combined = c2.generator;
    combined.insert(combined.end(), coset_basis.begin(), coset_basis.end());
    if (gf2_rank(combined) != c1.k) {
        throw std::invalid_argument("make_css_pair: coset basis does not complete a basis of C1");
    }
    // Solve for label rows: orthogonal to every C2 generator, delta_ij on the
    // coset basis. Constant on C2 cosets by construction.
    BitMatrix label_map;
    for (int j = 0; j < key_bits; ++j) {
        Bits rhs(combined.size(), 0);
        rhs[c2.generator.size() + j] = 1;
        auto row = gf2_solve(combined, rhs, c1.n);
        if (!row) throw std::logic_error("make_css_pair: label system inconsistent");
        label_map.push_back(std::move(*row));
    }
    CssPair pair;
    pair.c1 = std::move(c1);
    pair.c2 = std::move(c2);
    pair.coset_basis = std::move(coset_basis);
    pair.label_map = std::move(label_map);
    return pair;
}

CssPair steane_css() {
    // Hamming [7,4]: parity-check columns are 1..7 in binary. Its dual (the
    // [7,3] simplex code) sits inside it, which makes the pair self-contained.
    BitMatrix h1(3, Bits(7, 0));
    for (int j = 0; j < 7; ++j) {
        const int value = j + 1;
        h1[0][j] = static_cast<std::uint8_t>(value & 1);
        h1[1][j] = static_cast<std::uint8_t>((value >> 1) & 1);
        h1[2][j] = static_cast<std::uint8_t>((value >> 2) & 1);
    }
    BinaryCode c1;
    c1.n = 7;
    c1.k = 4;
    c1.parity_check = h1;
    c1.generator = gf2_nullspace_basis(h1, 7);

    BinaryCode c2;
    c2.n = 7;
    c2.k = 3;
    c2.generator = h1;
    c2.parity_check = gf2_nullspace_basis(h1, 7);

    BitMatrix coset_basis{Bits(7, 1)};  // all-ones word: in C1, not in C2
    return make_css_pair(std::move(c1), std::move(c2), std::move(coset_basis));
}

CssPair random_css(int n, int k1, int k2, CounterRng& rng) {
    if (n < 2 || n > 24 || k1 <= k2 || k2 < 1 || k1 >= n) {
        throw std::invalid_argument("random_css: need 1 <= k2 < k1 < n <= 24");
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
        BitMatrix g1(k1, Bits(n, 0));
        for (auto& row : g1) {
            for (auto& bit : row) bit = static_cast<std::uint8_t>(rng.next_bool());
        }
        if (gf2_rank(g1) != k1) continue;

        BinaryCode c1;
        c1.n = n;
        c1.k = k1;
        c1.generator = g1;
        c1.parity_check = gf2_nullspace_basis(g1, n);

        BinaryCode c2;
        c2.n = n;
        c2.k = k2;
        c2.generator.assign(g1.begin(), g1.begin() + k2);
        c2.parity_check = gf2_nullspace_basis(c2.generator, n);

        BitMatrix coset_basis(g1.begin() + k2, g1.end());
        return make_css_pair(std::move(c1), std::move(c2), std::move(coset_basis));
    }
    throw std::runtime_error("random_css: failed to draw a full-rank generator");
}

Bits random_codeword(const BinaryCode& code, CounterRng& rng) {
    Bits v(code.n, 0);
    for (const auto& row : code.generator) {
        if (rng.next_bool()) v = xor_bits(v, row);
    }
    return v;
}

Bits coset_label(const CssPair& pair, const Bits& v) {
    if (!is_codeword(pair.c1, v)) {
        throw std::invalid_argument("coset_label: word is not a C1 codeword");
    }
    return matrix_times_vector(pair.label_map, v);
}

ReconcileResult reconcile_and_extract(const CssPair& pair, const Bits& alice_bits,
                                      const Bits& bob_bits, CounterRng& rng) {
    const auto n = static_cast<std::size_t>(pair.c1.n);
    if (alice_bits.size() != n || bob_bits.size() != n) {
        throw std::invalid_argument("reconcile_and_extract: block length mismatch");
    }
    const Bits v = random_codeword(pair.c1, rng);
    ReconcileResult result;
    result.announced = xor_bits(alice_bits, v);
    result.key_alice = coset_label(pair, v);
    const Bits shifted = xor_bits(bob_bits, result.announced);  // v + e
    result.key_bob = coset_label(pair, decode_nearest(pair.c1, shifted));
    return result;
}

double sample_bound_simple(double n_keys, double p, double eps_prime) {
    if (!(n_keys > 0.0)) throw std::invalid_argument("sample_bound: n must be > 0");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_bound: p must lie in (0, 1)");
    if (!(eps_prime >= 0.0)) throw std::invalid_argument("sample_bound: eps_prime must be >= 0");
    return std::exp(-n_keys * eps_prime * eps_prime / (9.0 * p * (1.0 - p)));
}

double sample_bound_general(double tested_m, double total_n, double p, double eps_prime) {
    if (!(tested_m > 0.0 && tested_m < total_n)) {
        throw std::invalid_argument("sample_bound: need 0 < M < N");
    }
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_bound: p must lie in (0, 1)");
    if (!(eps_prime >= 0.0)) throw std::invalid_argument("sample_bound: eps_prime must be >= 0");
    const double untested = total_n - tested_m;
    const double exponent = tested_m * untested * untested * eps_prime * eps_prime /
                            (2.0 * total_n * total_n * p * (1.0 - p));
    return std::exp(-exponent);
}

ScrambleResult scramble(const Bits& bits, CounterRng& rng) {
    ScrambleResult result;
    result.permutation.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        result.permutation[i] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t i = bits.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(result.permutation[i - 1], result.permutation[j]);
    }
    result.permuted = apply_permutation(bits, result.permutation);
    return result;
}

Bits apply_permutation(const Bits& bits, const std::vector<std::uint32_t>& permutation) {
    if (bits.size() != permutation.size()) {
        throw std::invalid_argument("apply_permutation: length mismatch");
    }
    Bits out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[permutation[i]];
    return out;
}

Bits unscramble(const Bits& permuted, const std::vector<std::uint32_t>& permutation) {
    if (permuted.size() != permutation.size()) {
        throw std::invalid_argument("unscramble: length mismatch");
    }
    Bits out(permuted.size());
    for (std::size_t i = 0; i < permuted.size(); ++i) out[permutation[i]] = permuted[i];
    return out;
}

}  // namespace qkdlab
