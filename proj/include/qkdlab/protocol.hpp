#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qkdlab/css.hpp"
#include "qkdlab/gaussian.hpp"
#include "qkdlab/shift_code.hpp"

namespace qkdlab {

// Full squeezed-state key distribution run: random-basis preparation and
// homodyne measurement over a lossy channel, sifting, m-bit residue
// announcements, check-bit verification with per-basis abort, then CSS
// reconciliation and coset privacy amplification. Everything classical runs
// through an ordered two-party message exchange that can be recorded and
// replayed.

enum class EveVariant { None, InterceptResend, FixedShift };

// Concrete test attacks. They act on the state as delivered to Bob's lab
// (after channel loss). InterceptResend measures q or p at random and
// resends a squeezed state of resend_width centered on the outcome;
// FixedShift displaces both quadratures.
struct EveModel {
    EveVariant variant = EveVariant::None;
    double resend_width = 0.5;
    double dq = 0.0;
    double dp = 0.0;
};

struct ProtocolConfig {
    long n = 700;                 // key-block size; (4+delta_slack)*n oscillators sent
    double delta_slack = 0.4;
    double tilde_delta = 0.5;
    double alpha = 1.0;
    int m_bits = 16;
    double kappa_d = 0.0;
    bool amplified = false;       // Bob rescales outcomes by xi^-1
    double abort_threshold = 0.11;
    CssPair css = steane_css();
    EveModel eve;
    std::uint64_t seed = 0;

    long oscillator_count() const;
    double xi() const;
};

enum class ProtocolStatus { Completed, AbortedTooFewSifted, AbortedVerification };

struct ProtocolOutcome {
    ProtocolStatus status = ProtocolStatus::Completed;
    long sifted_count = 0;
    double p_hat_z = 0.0;
    double p_hat_x = 0.0;
    Bits key_alice;
    Bits key_bob;
    std::map<std::string, long> transcript_summary;  // message-type counts
};

// ---- classical message layer ----

enum class MessageType { BasisReveal, ResidueAnnounce, CheckReveal, CosetAnnounce };
enum class PartyId { Alice, Bob };

struct BasisRevealPayload {
    std::vector<Basis> bases;
};

struct ResidueAnnouncePayload {
    std::vector<std::uint32_t> selected;  // 2n oscillator indices, ascending
    std::vector<std::uint8_t> is_check;   // parallel to selected
    std::vector<double> residues;         // parallel, quantized to m_bits
    int m_bits = 0;
};

struct CheckRevealPayload {
    Bits bits;  // check bits in selected order
};

struct CosetAnnouncePayload {
    std::vector<std::uint32_t> permutation;  // scramble of the key positions
    Bits announced;                          // concatenated u+v blocks
};

struct Message {
    PartyId from = PartyId::Alice;
    MessageType type = MessageType::BasisReveal;
    std::variant<BasisRevealPayload, ResidueAnnouncePayload, CheckRevealPayload,
                 CosetAnnouncePayload>
        payload;
};

using Transcript = std::vector<Message>;

// Out-of-order or malformed message.
struct ProtocolViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- quantum phase ----

// Per-oscillator record of the (simulated) quantum transmission: Alice's
// preparation bases and sampled centers, Bob's measurement bases and
// homodyne outcomes (already rescaled by xi^-1 when amplified).
struct TransmissionData {
    std::vector<Basis> alice_bases;
    std::vector<double> alice_centers;
    std::vector<Basis> bob_bases;
    std::vector<double> bob_outcomes;
};

TransmissionData simulate_transmission(const ProtocolConfig& config);

// ---- party state machines ----

class AliceSession {
public:
    AliceSession(const ProtocolConfig& config, std::vector<Basis> bases,
                 std::vector<double> centers);

    void receive(const Message& message);
    Message reveal_bases();
    Message announce_residues();
    Message reveal_check_bits();
    Message announce_cosets();

    long sifted_count() const { return static_cast<long>(matched_.size()); }
    bool enough_sifted() const;
    bool verification_passed() const;
    double p_hat_z() const { return p_hat_z_; }
    double p_hat_x() const { return p_hat_x_; }
    const Bits& key() const { return key_; }

private:
    void compute_error_rates(const Bits& peer_check_bits);

    const ProtocolConfig& config_;
    std::vector<Basis> bases_;
    std::vector<double> centers_;
    std::vector<Basis> bob_bases_;
    std::vector<std::uint32_t> matched_;
    ResidueAnnouncePayload announcement_;
    Bits my_bits_;          // raw bits in selected order
    Bits my_check_bits_;
    double p_hat_z_ = 0.0;
    double p_hat_x_ = 0.0;
    bool rates_ready_ = false;
    Bits key_;
    int phase_ = 0;
};

class BobSession {
public:
    BobSession(const ProtocolConfig& config, std::vector<Basis> bases,
               std::vector<double> outcomes);

    Message reveal_bases();
    void receive(const Message& message);
    Message reveal_check_bits();

    long sifted_count() const { return static_cast<long>(matched_.size()); }
    bool enough_sifted() const;
    bool verification_passed() const;
    double p_hat_z() const { return p_hat_z_; }
    double p_hat_x() const { return p_hat_x_; }
    const Bits& key() const { return key_; }

private:
    void compute_error_rates();

    const ProtocolConfig& config_;
    std::vector<Basis> bases_;
    std::vector<double> outcomes_;
    std::vector<Basis> alice_bases_;
    std::vector<std::uint32_t> matched_;
    ResidueAnnouncePayload announcement_;
    Bits my_bits_;
    Bits my_check_bits_;
    Bits alice_check_bits_;
    double p_hat_z_ = 0.0;
    double p_hat_x_ = 0.0;
    bool rates_ready_ = false;
    Bits key_;
    int phase_ = 0;
};

// ---- drivers ----

struct RunResult {
    ProtocolOutcome outcome;
    Transcript transcript;
};

RunResult run_protocol_with_transcript(const ProtocolConfig& config);
ProtocolOutcome run_protocol(const ProtocolConfig& config);

// Matched-basis Monte-Carlo of the raw-bit channel: fresh oscillators,
// residue announcement and nearest-multiple correction, tallying flips per
// basis. `trials` per basis; trials fan out over `threads` (0 = hardware)
// with per-trial streams, so the tallies are independent of the thread
// count.
struct ErrorRateEstimate {
    double p_hat_z = 0.0;
    double p_hat_x = 0.0;
    double stderr_z = 0.0;
    double stderr_x = 0.0;
    long trials = 0;
};

ErrorRateEstimate estimate_error_rates(const ProtocolConfig& config, long trials,
                                       int threads = 0);

const char* to_string(ProtocolStatus status);
const char* to_string(MessageType type);

}  // namespace qkdlab
