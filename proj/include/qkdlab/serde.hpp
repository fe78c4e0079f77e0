#pragma once

#include <string>

#include <json.hpp>

#include "qkdlab/css.hpp"
#include "qkdlab/protocol.hpp"

namespace qkdlab {

// JSON wire formats. All keys are snake_case; bit strings are rendered as
// "0101..." and basis sequences as "qpqp...". Code matrices are row-major
// arrays of 0/1.

std::string bits_to_string(const Bits& bits);
Bits bits_from_string(const std::string& text);

nlohmann::json to_json(const BinaryCode& code);
BinaryCode binary_code_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CssPair& pair);
CssPair css_pair_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EveModel& eve);
EveModel eve_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProtocolConfig& config);
ProtocolConfig protocol_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProtocolOutcome& outcome);

nlohmann::json to_json(const Message& message);
Message message_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Transcript& transcript);
Transcript transcript_from_json(const nlohmann::json& j);

}  // namespace qkdlab
