#include "qkdlab/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace qkdlab {

namespace {

// Stream-id domains; every random decision in a run has a fixed (domain,
// index) address so outcomes never depend on evaluation order.
namespace domain {
constexpr std::uint64_t kAliceBasis = 0xA1;
constexpr std::uint64_t kAliceCenter = 0xA2;
constexpr std::uint64_t kBobBasis = 0xB1;
constexpr std::uint64_t kBobMeasure = 0xB2;
constexpr std::uint64_t kEve = 0xE1;
constexpr std::uint64_t kSelect = 0x51;
constexpr std::uint64_t kCheckPick = 0x52;
constexpr std::uint64_t kPermute = 0x53;
constexpr std::uint64_t kCodeword = 0x54;
constexpr std::uint64_t kTrialQ = 0xF1;
constexpr std::uint64_t kTrialP = 0xF2;
}  // namespace domain

CounterRng stream(const ProtocolConfig& config, std::uint64_t dom, std::uint64_t index) {
    return CounterRng(config.seed, CounterRng::stream_of(dom, index));
}

// Both quadrature marginals of a transmitted mode. All states here are
// Gaussian with principal axes along q and p, so the two marginals carry
// the full outcome statistics.
struct FlyingState {
    GaussianMarginal q;
    GaussianMarginal p;

    GaussianMarginal& along(Basis b) { return b == Basis::Q ? q : p; }
    const GaussianMarginal& along(Basis b) const { return b == Basis::Q ? q : p; }
};

FlyingState make_signal(const SqueezedSource& source, Basis basis, double center) {
    FlyingState state;
    const double w = source.basis_width(basis);
    state.along(basis) = conditional_signal(source, center, basis);
    // Conjugate quadrature of the pure signal state: anti-squeezed, centered.
    state.along(conjugate(basis)) = {0.0, 1.0 / (2.0 * w * w)};
    return state;
}

FlyingState through_channel(FlyingState state, const ChannelModel& channel) {
    state.q = apply_channel(state.q, channel);
    state.p = apply_channel(state.p, channel);
    return state;
}

FlyingState eve_tamper(const EveModel& eve, FlyingState state, CounterRng& rng) {
    switch (eve.variant) {
        case EveVariant::None:
            return state;
        case EveVariant::FixedShift:
            state.q.mean += eve.dq;
            state.p.mean += eve.dp;
            return state;
        case EveVariant::InterceptResend: {
            const Basis measured = rng.next_bool() ? Basis::P : Basis::Q;
            const auto& m = state.along(measured);
            const double outcome = rng.next_gaussian(m.mean, m.variance);
            const double w = eve.resend_width;
            FlyingState resent;
            resent.along(measured) = {outcome, 0.5 * w * w};
            resent.along(conjugate(measured)) = {0.0, 1.0 / (2.0 * w * w)};
            return resent;
        }
    }
    return state;
}

double homodyne(const FlyingState& state, Basis basis, CounterRng& rng) {
    const auto& m = state.along(basis);
    return rng.next_gaussian(m.mean, m.variance);
}

void validate_config(const ProtocolConfig& config) {
    if (config.n < 1) throw std::invalid_argument("ProtocolConfig: n must be >= 1");
    if (!(config.delta_slack > 0.0)) {
        throw std::invalid_argument("ProtocolConfig: delta_slack must be > 0");
    }
    if (!(config.tilde_delta > 0.0 && config.tilde_delta <= 1.0)) {
        throw std::invalid_argument("ProtocolConfig: tilde_delta must lie in (0, 1]");
    }
    if (!(config.alpha > 0.0)) throw std::invalid_argument("ProtocolConfig: alpha must be > 0");
    if (config.m_bits < 1) throw std::invalid_argument("ProtocolConfig: m_bits must be >= 1");
    if (!(config.kappa_d >= 0.0)) {
        throw std::invalid_argument("ProtocolConfig: kappa_d must be >= 0");
    }
    if (!(config.abort_threshold > 0.0 && config.abort_threshold < 1.0)) {
        throw std::invalid_argument("ProtocolConfig: abort_threshold must lie in (0, 1)");
    }
    const SqueezedSource source{config.tilde_delta, config.alpha};
    for (Basis b : {Basis::Q, Basis::P}) {
        if (!(source.basis_width(b) <= 1.0)) {
            throw std::invalid_argument("ProtocolConfig: rescaled width exceeds 1");
        }
    }
}

double basis_spacing(const CodeLattice& lattice, Basis basis) {
    return basis == Basis::Q ? lattice.spacing_q : lattice.spacing_p;
}

}  // namespace

long ProtocolConfig::oscillator_count() const {
    return static_cast<long>(std::ceil((4.0 + delta_slack) * static_cast<double>(n)));
}

double ProtocolConfig::xi() const { return std::exp(-0.5 * kappa_d); }

TransmissionData simulate_transmission(const ProtocolConfig& config) {
    validate_config(config);
    const long total = config.oscillator_count();
    const SqueezedSource source{config.tilde_delta, config.alpha};
    // Loss compensation runs classically on Bob's outcomes, never as a
    // quantum amplifier; the analytic amplified width is the (noisier)
    // security bound for this path.
    const ChannelModel channel{config.xi(), 1.0, config.amplified};
    const double rescale = channel.outcome_rescale();

    TransmissionData data;
    data.alice_bases.resize(total);
    data.alice_centers.resize(total);
    data.bob_bases.resize(total);
    data.bob_outcomes.resize(total);

    for (long i = 0; i < total; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        auto basis_rng = stream(config, domain::kAliceBasis, idx);
        const Basis a_basis = basis_rng.next_bool() ? Basis::P : Basis::Q;
        auto center_rng = stream(config, domain::kAliceCenter, idx);
        const double center = sample_center(source, a_basis, center_rng);

        FlyingState state = make_signal(source, a_basis, center);
        state = through_channel(state, channel);
        auto eve_rng = stream(config, domain::kEve, idx);
        state = eve_tamper(config.eve, state, eve_rng);

        auto bob_basis_rng = stream(config, domain::kBobBasis, idx);
        const Basis b_basis = bob_basis_rng.next_bool() ? Basis::P : Basis::Q;
        auto measure_rng = stream(config, domain::kBobMeasure, idx);
        const double outcome = homodyne(state, b_basis, measure_rng) * rescale;

        data.alice_bases[i] = a_basis;
        data.alice_centers[i] = center;
        data.bob_bases[i] = b_basis;
        data.bob_outcomes[i] = outcome;
    }
    return data;
}

// ---- AliceSession ----

AliceSession::AliceSession(const ProtocolConfig& config, std::vector<Basis> bases,
                           std::vector<double> centers)
    : config_(config), bases_(std::move(bases)), centers_(std::move(centers)) {
    if (bases_.size() != centers_.size()) {
        throw std::invalid_argument("AliceSession: bases/centers length mismatch");
    }
}

void AliceSession::receive(const Message& message) {
    if (message.from != PartyId::Bob) throw ProtocolViolation("alice: message not from bob");
    if (phase_ == 0 && message.type == MessageType::BasisReveal) {
        const auto& payload = std::get<BasisRevealPayload>(message.payload);
        if (payload.bases.size() != bases_.size()) {
            throw ProtocolViolation("alice: basis reveal length mismatch");
        }
        bob_bases_ = payload.bases;
        phase_ = 1;
        return;
    }
    if (phase_ == 4 && message.type == MessageType::CheckReveal) {
        const auto& payload = std::get<CheckRevealPayload>(message.payload);
        if (payload.bits.size() != my_check_bits_.size()) {
            throw ProtocolViolation("alice: check reveal length mismatch");
        }
        compute_error_rates(payload.bits);
        phase_ = 5;
        return;
    }
    throw ProtocolViolation("alice: unexpected message");
}

Message AliceSession::reveal_bases() {
    if (phase_ != 1) throw ProtocolViolation("alice: cannot reveal bases yet");
    for (std::size_t i = 0; i < bases_.size(); ++i) {
        if (bases_[i] == bob_bases_[i]) matched_.push_back(static_cast<std::uint32_t>(i));
    }
    phase_ = 2;
    return {PartyId::Alice, MessageType::BasisReveal, BasisRevealPayload{bases_}};
}

bool AliceSession::enough_sifted() const {
    return static_cast<long>(matched_.size()) >= 2 * config_.n;
}

Message AliceSession::announce_residues() {
    if (phase_ != 2) throw ProtocolViolation("alice: cannot announce residues yet");
    if (!enough_sifted()) throw ProtocolViolation("alice: too few sifted values");
    const long two_n = 2 * config_.n;

    // Random 2n-subset of the matched indices, then a random half as checks.
    std::vector<std::uint32_t> pool = matched_;
    auto select_rng = stream(config_, domain::kSelect, 0);
    for (std::size_t i = pool.size(); i > 1; --i) {
        std::swap(pool[i - 1], pool[select_rng.next_below(i)]);
    }
    pool.resize(two_n);
    std::sort(pool.begin(), pool.end());

    std::vector<std::uint32_t> order(two_n);
    std::iota(order.begin(), order.end(), 0u);
    auto check_rng = stream(config_, domain::kCheckPick, 0);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[check_rng.next_below(i)]);
    }
    announcement_.selected = std::move(pool);
    announcement_.is_check.assign(two_n, 0);
    for (long j = 0; j < config_.n; ++j) announcement_.is_check[order[j]] = 1;
    announcement_.m_bits = config_.m_bits;

    const CodeLattice lattice = code_params(2, config_.alpha);
    announcement_.residues.resize(two_n);
    my_bits_.resize(two_n);
    my_check_bits_.clear();
    for (long j = 0; j < two_n; ++j) {
        const std::uint32_t i = announcement_.selected[j];
        const double spacing = basis_spacing(lattice, bases_[i]);
        const auto decomposition = residue(centers_[i], spacing);
        const AnnouncedResidue announced =
            quantize_residue(decomposition.remainder, spacing, config_.m_bits);
        announcement_.residues[j] = announced.value;
        // Extract against the quantized announcement, exactly as Bob will.
        my_bits_[j] = static_cast<std::uint8_t>(
            correct_and_extract(centers_[i], announced, spacing).bit);
        if (announcement_.is_check[j]) my_check_bits_.push_back(my_bits_[j]);
    }
    phase_ = 3;
    return {PartyId::Alice, MessageType::ResidueAnnounce, announcement_};
}

Message AliceSession::reveal_check_bits() {
    if (phase_ != 3) throw ProtocolViolation("alice: cannot reveal check bits yet");
    phase_ = 4;
    return {PartyId::Alice, MessageType::CheckReveal, CheckRevealPayload{my_check_bits_}};
}

void AliceSession::compute_error_rates(const Bits& peer_check_bits) {
    long disagree_z = 0, total_z = 0, disagree_x = 0, total_x = 0;
    std::size_t check_pos = 0;
    for (std::size_t j = 0; j < announcement_.selected.size(); ++j) {
        if (!announcement_.is_check[j]) continue;
        const Basis basis = bases_[announcement_.selected[j]];
        const bool differ = my_check_bits_[check_pos] != peer_check_bits[check_pos];
        if (basis == Basis::Q) {
            ++total_z;
            disagree_z += differ;
        } else {
            ++total_x;
            disagree_x += differ;
        }
        ++check_pos;
    }
    p_hat_z_ = total_z ? static_cast<double>(disagree_z) / total_z : 0.0;
    p_hat_x_ = total_x ? static_cast<double>(disagree_x) / total_x : 0.0;
    rates_ready_ = true;
}

bool AliceSession::verification_passed() const {
    return rates_ready_ && p_hat_z_ <= config_.abort_threshold &&
           p_hat_x_ <= config_.abort_threshold;
}

Message AliceSession::announce_cosets() {
    if (phase_ != 5) throw ProtocolViolation("alice: cannot announce cosets yet");
    if (!verification_passed()) throw ProtocolViolation("alice: verification failed");

    Bits raw_key;
    for (std::size_t j = 0; j < announcement_.selected.size(); ++j) {
        if (!announcement_.is_check[j]) raw_key.push_back(my_bits_[j]);
    }
    auto permute_rng = stream(config_, domain::kPermute, 0);
    ScrambleResult scrambled = scramble(raw_key, permute_rng);

    const int block = config_.css.c1.n;
    const auto blocks = static_cast<long>(scrambled.permuted.size()) / block;
    CosetAnnouncePayload payload;
    payload.permutation = std::move(scrambled.permutation);
    auto codeword_rng = stream(config_, domain::kCodeword, 0);
    key_.clear();
    for (long b = 0; b < blocks; ++b) {
        const Bits u(scrambled.permuted.begin() + b * block,
                     scrambled.permuted.begin() + (b + 1) * block);
        const Bits v = random_codeword(config_.css.c1, codeword_rng);
        const Bits announced = xor_bits(u, v);
        payload.announced.insert(payload.announced.end(), announced.begin(), announced.end());
        const Bits label = coset_label(config_.css, v);
        key_.insert(key_.end(), label.begin(), label.end());
    }
    phase_ = 6;
    return {PartyId::Alice, MessageType::CosetAnnounce, std::move(payload)};
}

// ---- BobSession ----

BobSession::BobSession(const ProtocolConfig& config, std::vector<Basis> bases,
                       std::vector<double> outcomes)
    : config_(config), bases_(std::move(bases)), outcomes_(std::move(outcomes)) {
    if (bases_.size() != outcomes_.size()) {
        throw std::invalid_argument("BobSession: bases/outcomes length mismatch");
    }
}

Message BobSession::reveal_bases() {
    if (phase_ != 0) throw ProtocolViolation("bob: bases already revealed");
    phase_ = 1;
    return {PartyId::Bob, MessageType::BasisReveal, BasisRevealPayload{bases_}};
}

bool BobSession::enough_sifted() const {
    return static_cast<long>(matched_.size()) >= 2 * config_.n;
}

void BobSession::receive(const Message& message) {
    if (message.from != PartyId::Alice) throw ProtocolViolation("bob: message not from alice");
    switch (phase_) {
        case 1: {
            if (message.type != MessageType::BasisReveal) break;
            const auto& payload = std::get<BasisRevealPayload>(message.payload);
            if (payload.bases.size() != bases_.size()) {
                throw ProtocolViolation("bob: basis reveal length mismatch");
            }
            alice_bases_ = payload.bases;
            for (std::size_t i = 0; i < bases_.size(); ++i) {
                if (bases_[i] == alice_bases_[i]) {
                    matched_.push_back(static_cast<std::uint32_t>(i));
                }
            }
            phase_ = 2;
            return;
        }
        case 2: {
            if (message.type != MessageType::ResidueAnnounce) break;
            const auto& payload = std::get<ResidueAnnouncePayload>(message.payload);
            const auto two_n = static_cast<std::size_t>(2 * config_.n);
            if (payload.selected.size() != two_n || payload.is_check.size() != two_n ||
                payload.residues.size() != two_n || payload.m_bits != config_.m_bits) {
                throw ProtocolViolation("bob: malformed residue announcement");
            }
            long checks = 0;
            for (auto flag : payload.is_check) checks += flag;
            if (checks != config_.n) {
                throw ProtocolViolation("bob: wrong number of check values");
            }
            const CodeLattice lattice = code_params(2, config_.alpha);
            my_bits_.resize(two_n);
            my_check_bits_.clear();
            std::uint32_t previous = 0;
            for (std::size_t j = 0; j < two_n; ++j) {
                const std::uint32_t i = payload.selected[j];
                if (j > 0 && i <= previous) {
                    throw ProtocolViolation("bob: selected indices not ascending");
                }
                previous = i;
                if (i >= bases_.size() || bases_[i] != alice_bases_[i]) {
                    throw ProtocolViolation("bob: selected index was not sifted");
                }
                const double spacing = basis_spacing(lattice, bases_[i]);
                if (!(payload.residues[j] >= 0.0 && payload.residues[j] < spacing)) {
                    throw ProtocolViolation("bob: residue outside [0, spacing)");
                }
                const AnnouncedResidue announced{payload.residues[j], payload.m_bits};
                my_bits_[j] = static_cast<std::uint8_t>(
                    correct_and_extract(outcomes_[i], announced, spacing).bit);
                if (payload.is_check[j]) my_check_bits_.push_back(my_bits_[j]);
            }
            announcement_ = payload;
            phase_ = 3;
            return;
        }
        case 3: {
            if (message.type != MessageType::CheckReveal) break;
            const auto& payload = std::get<CheckRevealPayload>(message.payload);
            if (payload.bits.size() != my_check_bits_.size()) {
                throw ProtocolViolation("bob: check reveal length mismatch");
            }
            alice_check_bits_ = payload.bits;
            phase_ = 4;
            return;
        }
        case 5: {
            if (message.type != MessageType::CosetAnnounce) break;
            if (!verification_passed()) {
                throw ProtocolViolation("bob: coset announcement after failed verification");
            }
            const auto& payload = std::get<CosetAnnouncePayload>(message.payload);
            Bits raw_key;
            for (std::size_t j = 0; j < announcement_.selected.size(); ++j) {
                if (!announcement_.is_check[j]) raw_key.push_back(my_bits_[j]);
            }
            if (payload.permutation.size() != raw_key.size()) {
                throw ProtocolViolation("bob: permutation length mismatch");
            }
            // Bijectivity check; apply_permutation would read out of range
            // on bad input anyway.
            std::vector<std::uint8_t> seen(raw_key.size(), 0);
            for (auto index : payload.permutation) {
                if (index >= raw_key.size() || seen[index]) {
                    throw ProtocolViolation("bob: invalid permutation");
                }
                seen[index] = 1;
            }
            const Bits permuted = apply_permutation(raw_key, payload.permutation);
            const int block = config_.css.c1.n;
            const auto blocks = static_cast<long>(permuted.size()) / block;
            if (payload.announced.size() != static_cast<std::size_t>(blocks * block)) {
                throw ProtocolViolation("bob: announced block length mismatch");
            }
            const SyndromeDecoder decoder(config_.css.c1);
            key_.clear();
            for (long b = 0; b < blocks; ++b) {
                const Bits mine(permuted.begin() + b * block, permuted.begin() + (b + 1) * block);
                const Bits announced(payload.announced.begin() + b * block,
                                     payload.announced.begin() + (b + 1) * block);
                const Bits shifted = xor_bits(mine, announced);  // v + e
                const Bits label = coset_label(config_.css, decoder.decode(shifted));
                key_.insert(key_.end(), label.begin(), label.end());
            }
            phase_ = 6;
            return;
        }
        default:
            break;
    }
    throw ProtocolViolation("bob: unexpected message");
}

Message BobSession::reveal_check_bits() {
    if (phase_ != 4) throw ProtocolViolation("bob: cannot reveal check bits yet");
    compute_error_rates();
    phase_ = 5;
    return {PartyId::Bob, MessageType::CheckReveal, CheckRevealPayload{my_check_bits_}};
}

void BobSession::compute_error_rates() {
    long disagree_z = 0, total_z = 0, disagree_x = 0, total_x = 0;
    std::size_t check_pos = 0;
    for (std::size_t j = 0; j < announcement_.selected.size(); ++j) {
        if (!announcement_.is_check[j]) continue;
        const Basis basis = bases_[announcement_.selected[j]];
        const bool differ = my_check_bits_[check_pos] != alice_check_bits_[check_pos];
        if (basis == Basis::Q) {
            ++total_z;
            disagree_z += differ;
        } else {
            ++total_x;
            disagree_x += differ;
        }
        ++check_pos;
    }
    p_hat_z_ = total_z ? static_cast<double>(disagree_z) / total_z : 0.0;
    p_hat_x_ = total_x ? static_cast<double>(disagree_x) / total_x : 0.0;
    rates_ready_ = true;
}

bool BobSession::verification_passed() const {
    return rates_ready_ && p_hat_z_ <= config_.abort_threshold &&
           p_hat_x_ <= config_.abort_threshold;
}

// ---- drivers ----

RunResult run_protocol_with_transcript(const ProtocolConfig& config) {
    TransmissionData data = simulate_transmission(config);
    AliceSession alice(config, data.alice_bases, data.alice_centers);
    BobSession bob(config, data.bob_bases, data.bob_outcomes);

    RunResult result;
    Transcript& transcript = result.transcript;
    auto exchange = [&transcript](Message message, auto& receiver) {
        receiver.receive(message);
        transcript.push_back(std::move(message));
    };

    exchange(bob.reveal_bases(), alice);
    exchange(alice.reveal_bases(), bob);

    ProtocolOutcome& outcome = result.outcome;
    outcome.sifted_count = alice.sifted_count();
    if (!alice.enough_sifted()) {
        outcome.status = ProtocolStatus::AbortedTooFewSifted;
    } else {
        exchange(alice.announce_residues(), bob);
        exchange(alice.reveal_check_bits(), bob);
        exchange(bob.reveal_check_bits(), alice);
        outcome.p_hat_z = bob.p_hat_z();
        outcome.p_hat_x = bob.p_hat_x();
        if (!bob.verification_passed()) {
            outcome.status = ProtocolStatus::AbortedVerification;
        } else {
            exchange(alice.announce_cosets(), bob);
            outcome.status = ProtocolStatus::Completed;
            outcome.key_alice = alice.key();
            outcome.key_bob = bob.key();
        }
    }
    for (const auto& message : transcript) {
        ++outcome.transcript_summary[to_string(message.type)];
    }
    return result;
}

ProtocolOutcome run_protocol(const ProtocolConfig& config) {
    return run_protocol_with_transcript(config).outcome;
}

ErrorRateEstimate estimate_error_rates(const ProtocolConfig& config, long trials,
                                       int threads) {
    validate_config(config);
    if (trials < 1000) {
        throw std::invalid_argument("estimate_error_rates: need at least 10^3 trials");
    }
    const SqueezedSource source{config.tilde_delta, config.alpha};
    const CodeLattice lattice = code_params(2, config.alpha);
    const ChannelModel channel{config.xi(), 1.0, config.amplified};
    const double rescale = channel.outcome_rescale();

    // One flip tally per basis; each trial owns a stream, so any partition
    // of the trial range gives identical totals.
    auto run_range = [&](Basis basis, std::uint64_t dom, long begin, long end) -> long {
        const double spacing = basis_spacing(lattice, basis);
        long flips = 0;
        for (long t = begin; t < end; ++t) {
            auto rng = stream(config, dom, static_cast<std::uint64_t>(t));
            const double center = sample_center(source, basis, rng);
            FlyingState state = make_signal(source, basis, center);
            state = through_channel(state, channel);
            state = eve_tamper(config.eve, state, rng);
            const double outcome = homodyne(state, basis, rng) * rescale;
            const auto decomposition = residue(center, spacing);
            const AnnouncedResidue announced =
                quantize_residue(decomposition.remainder, spacing, config.m_bits);
            const int alice_bit = correct_and_extract(center, announced, spacing).bit;
            const int bob_bit = correct_and_extract(outcome, announced, spacing).bit;
            flips += alice_bit != bob_bit;
        }
        return flips;
    };

    int worker_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count < 1) worker_count = 1;

    long flips_z = 0, flips_x = 0;
    if (worker_count == 1) {
        flips_z = run_range(Basis::Q, domain::kTrialQ, 0, trials);
        flips_x = run_range(Basis::P, domain::kTrialP, 0, trials);
    } else {
        std::vector<long> partial(static_cast<std::size_t>(worker_count) * 2, 0);
        std::vector<std::thread> workers;
        const long chunk = (trials + worker_count - 1) / worker_count;
        for (int w = 0; w < worker_count; ++w) {
            const long begin = w * chunk;
            const long end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back([&, w, begin, end] {
                partial[2 * w] = run_range(Basis::Q, domain::kTrialQ, begin, end);
                partial[2 * w + 1] = run_range(Basis::P, domain::kTrialP, begin, end);
            });
        }
        for (auto& worker : workers) worker.join();
        for (int w = 0; w < worker_count; ++w) {
            flips_z += partial[2 * w];
            flips_x += partial[2 * w + 1];
        }
    }

    ErrorRateEstimate estimate;
    estimate.trials = trials;
    estimate.p_hat_z = static_cast<double>(flips_z) / static_cast<double>(trials);
    estimate.p_hat_x = static_cast<double>(flips_x) / static_cast<double>(trials);
    const auto stderr_of = [trials](double p) {
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    };
    estimate.stderr_z = stderr_of(estimate.p_hat_z);
    estimate.stderr_x = stderr_of(estimate.p_hat_x);
    return estimate;
}

const char* to_string(ProtocolStatus status) {
    switch (status) {
        case ProtocolStatus::Completed:
            return "completed";
        case ProtocolStatus::AbortedTooFewSifted:
            return "aborted_too_few_sifted";
        case ProtocolStatus::AbortedVerification:
            return "aborted_verification";
    }
    return "unknown";
}

const char* to_string(MessageType type) {
    switch (type) {
        case MessageType::BasisReveal:
            return "basis_reveal";
        case MessageType::ResidueAnnounce:
            return "residue_announce";
        case MessageType::CheckReveal:
            return "check_reveal";
        case MessageType::CosetAnnounce:
            return "coset_announce";
    }
    return "unknown";
}

}  // namespace qkdlab
