#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dualdrive::decision {

// High-level decision token emitted at 2 Hz. AC raises the target speed by
// 1 m/s, DC lowers it by 1 m/s, IDLE holds it, STOP sets it to zero.
enum class MetaAction { AC, DC, IDLE, STOP };

inline std::string to_string(MetaAction a) {
    switch (a) {
        case MetaAction::AC: return "AC";
        case MetaAction::DC: return "DC";
        case MetaAction::IDLE: return "IDLE";
        case MetaAction::STOP: return "STOP";
    }
    return "STOP";
}

// Case-insensitive token lookup; returns nullopt for unknown tokens.
inline std::optional<MetaAction> meta_action_from_token(std::string_view token) {
    std::string up;
    up.reserve(token.size());
    for (char c : token) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "AC") return MetaAction::AC;
    if (up == "DC") return MetaAction::DC;
    if (up == "IDLE") return MetaAction::IDLE;
    if (up == "STOP") return MetaAction::STOP;
    return std::nullopt;
}

}  // namespace dualdrive::decision
