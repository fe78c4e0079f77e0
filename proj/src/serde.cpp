#include "qkdlab/serde.hpp"

#include <stdexcept>

namespace qkdlab {

namespace {

using nlohmann::json;

std::string bases_to_string(const std::vector<Basis>& bases) {
    std::string out;
    out.reserve(bases.size());
    for (Basis b : bases) out.push_back(b == Basis::Q ? 'q' : 'p');
    return out;
}

std::vector<Basis> bases_from_string(const std::string& text) {
    std::vector<Basis> out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == 'q') {
            out.push_back(Basis::Q);
        } else if (c == 'p') {
            out.push_back(Basis::P);
        } else {
            throw std::invalid_argument("bases_from_string: expected 'q' or 'p'");
        }
    }
    return out;
}

json matrix_to_json(const BitMatrix& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json bits = json::array();
        for (auto b : row) bits.push_back(static_cast<int>(b));
        rows.push_back(std::move(bits));
    }
    return rows;
}

BitMatrix matrix_from_json(const json& j) {
    BitMatrix m;
    for (const auto& row : j) {
        Bits bits;
        for (const auto& value : row) {
            const int v = value.get<int>();
            if (v != 0 && v != 1) throw std::invalid_argument("matrix_from_json: bits must be 0/1");
            bits.push_back(static_cast<std::uint8_t>(v));
        }
        m.push_back(std::move(bits));
    }
    return m;
}

}  // namespace

std::string bits_to_string(const Bits& bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) out.push_back(b ? '1' : '0');
    return out;
}

Bits bits_from_string(const std::string& text) {
    Bits out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("bits_from_string: expected 0/1");
        out.push_back(static_cast<std::uint8_t>(c == '1'));
    }
    return out;
}

nlohmann::json to_json(const BinaryCode& code) {
    return json{{"n", code.n},
                {"k", code.k},
                {"generator", matrix_to_json(code.generator)},
                {"parity_check", matrix_to_json(code.parity_check)}};
}

BinaryCode binary_code_from_json(const nlohmann::json& j) {
    BinaryCode code;
    code.n = j.at("n").get<int>();
    code.k = j.at("k").get<int>();
    code.generator = matrix_from_json(j.at("generator"));
    code.parity_check = matrix_from_json(j.at("parity_check"));
    validate_code(code);
    return code;
}

nlohmann::json to_json(const CssPair& pair) {
    return json{{"c1", to_json(pair.c1)},
                {"c2", to_json(pair.c2)},
                {"coset_basis", matrix_to_json(pair.coset_basis)}};
}

CssPair css_pair_from_json(const nlohmann::json& j) {
    // The label map is recomputed so a hand-written pair only has to supply
    // the matrices.
    return make_css_pair(binary_code_from_json(j.at("c1")),
                         binary_code_from_json(j.at("c2")),
                         matrix_from_json(j.at("coset_basis")));
}

nlohmann::json to_json(const EveModel& eve) {
    switch (eve.variant) {
        case EveVariant::None:
            return json{{"variant", "none"}};
        case EveVariant::InterceptResend:
            return json{{"variant", "intercept_resend"}, {"resend_width", eve.resend_width}};
        case EveVariant::FixedShift:
            return json{{"variant", "fixed_shift"}, {"dq", eve.dq}, {"dp", eve.dp}};
    }
    throw std::logic_error("to_json: unknown eve variant");
}

EveModel eve_model_from_json(const nlohmann::json& j) {
    EveModel eve;
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "none") {
        eve.variant = EveVariant::None;
    } else if (variant == "intercept_resend") {
        eve.variant = EveVariant::InterceptResend;
        eve.resend_width = j.value("resend_width", 0.5);
    } else if (variant == "fixed_shift") {
        eve.variant = EveVariant::FixedShift;
        eve.dq = j.value("dq", 0.0);
        eve.dp = j.value("dp", 0.0);
    } else {
        throw std::invalid_argument("eve_model_from_json: unknown variant");
    }
    return eve;
}

nlohmann::json to_json(const ProtocolConfig& config) {
    return json{{"n", config.n},
                {"delta_slack", config.delta_slack},
                {"tilde_delta", config.tilde_delta},
                {"alpha", config.alpha},
                {"m_bits", config.m_bits},
                {"kappa_d", config.kappa_d},
                {"amplified", config.amplified},
                {"abort_threshold", config.abort_threshold},
                {"seed", config.seed},
                {"eve", to_json(config.eve)},
                {"css", to_json(config.css)}};
}

ProtocolConfig protocol_config_from_json(const nlohmann::json& j) {
    ProtocolConfig config;
    config.n = j.value("n", config.n);
    config.delta_slack = j.value("delta_slack", config.delta_slack);
    config.tilde_delta = j.value("tilde_delta", config.tilde_delta);
    config.alpha = j.value("alpha", config.alpha);
    config.m_bits = j.value("m_bits", config.m_bits);
    config.kappa_d = j.value("kappa_d", config.kappa_d);
    config.amplified = j.value("amplified", config.amplified);
    config.abort_threshold = j.value("abort_threshold", config.abort_threshold);
    config.seed = j.value("seed", config.seed);
    if (j.contains("eve")) config.eve = eve_model_from_json(j.at("eve"));
    if (j.contains("css")) config.css = css_pair_from_json(j.at("css"));
    return config;
}

nlohmann::json to_json(const ProtocolOutcome& outcome) {
    json summary = json::object();
    for (const auto& [type, count] : outcome.transcript_summary) summary[type] = count;
    return json{{"status", to_string(outcome.status)},
                {"sifted_count", outcome.sifted_count},
                {"p_hat_z", outcome.p_hat_z},
                {"p_hat_x", outcome.p_hat_x},
                {"key_alice", bits_to_string(outcome.key_alice)},
                {"key_bob", bits_to_string(outcome.key_bob)},
                {"transcript_summary", std::move(summary)}};
}

nlohmann::json to_json(const Message& message) {
    json j{{"from", message.from == PartyId::Alice ? "alice" : "bob"},
           {"type", to_string(message.type)}};
    switch (message.type) {
        case MessageType::BasisReveal: {
            const auto& payload = std::get<BasisRevealPayload>(message.payload);
            j["bases"] = bases_to_string(payload.bases);
            break;
        }
        case MessageType::ResidueAnnounce: {
            const auto& payload = std::get<ResidueAnnouncePayload>(message.payload);
            j["selected"] = payload.selected;
            json checks = json::array();
            for (auto flag : payload.is_check) checks.push_back(static_cast<int>(flag));
            j["is_check"] = std::move(checks);
            j["residues"] = payload.residues;
            j["m_bits"] = payload.m_bits;
            break;
        }
        case MessageType::CheckReveal: {
            const auto& payload = std::get<CheckRevealPayload>(message.payload);
            j["bits"] = bits_to_string(payload.bits);
            break;
        }
        case MessageType::CosetAnnounce: {
            const auto& payload = std::get<CosetAnnouncePayload>(message.payload);
            j["permutation"] = payload.permutation;
            j["announced"] = bits_to_string(payload.announced);
            break;
        }
    }
    return j;
}

Message message_from_json(const nlohmann::json& j) {
    Message message;
    const std::string from = j.at("from").get<std::string>();
    if (from == "alice") {
        message.from = PartyId::Alice;
    } else if (from == "bob") {
        message.from = PartyId::Bob;
    } else {
        throw std::invalid_argument("message_from_json: unknown sender");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "basis_reveal") {
        message.type = MessageType::BasisReveal;
        message.payload = BasisRevealPayload{bases_from_string(j.at("bases").get<std::string>())};
    } else if (type == "residue_announce") {
        message.type = MessageType::ResidueAnnounce;
        ResidueAnnouncePayload payload;
        payload.selected = j.at("selected").get<std::vector<std::uint32_t>>();
        for (const auto& value : j.at("is_check")) {
            payload.is_check.push_back(static_cast<std::uint8_t>(value.get<int>() != 0));
        }
        payload.residues = j.at("residues").get<std::vector<double>>();
        payload.m_bits = j.at("m_bits").get<int>();
        message.payload = std::move(payload);
    } else if (type == "check_reveal") {
        message.type = MessageType::CheckReveal;
        message.payload = CheckRevealPayload{bits_from_string(j.at("bits").get<std::string>())};
    } else if (type == "coset_announce") {
        message.type = MessageType::CosetAnnounce;
        CosetAnnouncePayload payload;
        payload.permutation = j.at("permutation").get<std::vector<std::uint32_t>>();
        payload.announced = bits_from_string(j.at("announced").get<std::string>());
        message.payload = std::move(payload);
    } else {
        throw std::invalid_argument("message_from_json: unknown type");
    }
    return message;
}

nlohmann::json to_json(const Transcript& transcript) {
    json j = json::array();
    for (const auto& message : transcript) j.push_back(to_json(message));
    return j;
}

Transcript transcript_from_json(const nlohmann::json& j) {
    Transcript transcript;
    for (const auto& entry : j) transcript.push_back(message_from_json(entry));
    return transcript;
}

}  // namespace qkdlab
