#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "memkeeper/errors.hpp"

namespace memkeeper {

enum class Speaker { Bot, User };

inline std::string_view to_string(Speaker speaker) {
    return speaker == Speaker::Bot ? "BOT" : "USER";
}

inline Speaker speaker_from_string(std::string_view name) {
    if (name == "BOT") {
        return Speaker::Bot;
    }
    if (name == "USER") {
        return Speaker::User;
    }
    throw UnknownLabelError("unknown speaker: " + std::string(name));
}

struct Turn {
    Speaker speaker = Speaker::Bot;
    std::string text;
    int turn_index = 0;

    bool operator==(const Turn&) const = default;
};

// The running transcript D_t the bot conditions on.
struct DialogueContext {
    std::vector<Turn> turns;
};

inline void to_json(nlohmann::json& j, const Turn& turn) {
    j = nlohmann::json{{"speaker", std::string(to_string(turn.speaker))}, {"text", turn.text}};
}

inline Turn turn_from_json(const nlohmann::json& j, int turn_index) {
    Turn turn;
    turn.speaker = speaker_from_string(j.at("speaker").get<std::string>());
    turn.text = j.at("text").get<std::string>();
    turn.turn_index = turn_index;
    return turn;
}

// Throws InvariantViolation unless turns alternate BOT, USER, BOT, ...
void validate_alternation(const std::vector<Turn>& turns);

}  // namespace memkeeper
