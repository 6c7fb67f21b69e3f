#include "memkeeper/episode.hpp"

#include <nlohmann/json.hpp>

namespace memkeeper {

std::string_view to_string(MemoryPolicy policy) {
    switch (policy) {
        case MemoryPolicy::WithoutMemory:
            return "WITHOUT_MEMORY";
        case MemoryPolicy::MemoryAccumulate:
            return "MEMORY_ACCUMULATE";
        case MemoryPolicy::MemoryUpdate:
            return "MEMORY_UPDATE";
        case MemoryPolicy::MemoryGold:
            return "MEMORY_GOLD";
    }
    return "MEMORY_UPDATE";
}

MemoryPolicy memory_policy_from_string(std::string_view name) {
    for (MemoryPolicy policy : {MemoryPolicy::WithoutMemory, MemoryPolicy::MemoryAccumulate,
                                MemoryPolicy::MemoryUpdate, MemoryPolicy::MemoryGold}) {
        if (to_string(policy) == name) {
            return policy;
        }
    }
    throw UnknownLabelError("unknown memory policy: " + std::string(name));
}

void validate_alternation(const std::vector<Turn>& turns) {
    for (std::size_t i = 0; i < turns.size(); ++i) {
        const Speaker expected = i % 2 == 0 ? Speaker::Bot : Speaker::User;
        if (turns[i].speaker != expected) {
            throw InvariantViolation("turn " + std::to_string(i) + " should be " +
                                     std::string(to_string(expected)));
        }
    }
}

bool episodes_data_equal(const Episode& a, const Episode& b) {
    return a.episode_id == b.episode_id && a.sessions == b.sessions;
}

void validate_episode(const Episode& episode) {
    if (episode.sessions.empty()) {
        throw SchemaViolation("episode has no sessions", "sessions");
    }
    for (std::size_t i = 0; i < episode.sessions.size(); ++i) {
        const Session& session = episode.sessions[i];
        const std::string where = "episode " + episode.episode_id + " session " + std::to_string(i + 1);
        if (session.session_index != static_cast<int>(i) + 1) {
            throw SchemaViolation(where + " has index " + std::to_string(session.session_index),
                                  "sessions[i].index");
        }
        validate_alternation(session.turns);
        validate(session.memory_before);
        validate(session.summary);
        validate(session.memory_after);
    }
    if (!episode.sessions.front().memory_before.sentences.empty()) {
        throw SchemaViolation("memory before session 1 must be empty", "sessions[0].memory_before");
    }
    for (std::size_t i = 1; i < episode.sessions.size(); ++i) {
        if (episode.sessions[i].memory_before.texts() != episode.sessions[i - 1].memory_after.texts()) {
            throw ChainBreakError(episode.episode_id, static_cast<int>(i) + 1);
        }
    }
}

namespace {

nlohmann::json texts_to_json(const std::vector<MemorySentence>& sentences) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& s : sentences) {
        array.push_back(s.text);
    }
    return array;
}

}  // namespace

nlohmann::json session_to_json(const Session& session) {
    nlohmann::json turns = nlohmann::json::array();
    for (const auto& turn : session.turns) {
        nlohmann::json t;
        to_json(t, turn);
        turns.push_back(std::move(t));
    }
    return nlohmann::json{{"index", session.session_index},
                          {"elapsed_days", session.elapsed_days},
                          {"turns", std::move(turns)},
                          {"summary", texts_to_json(session.summary.sentences)},
                          {"memory_before", texts_to_json(session.memory_before.sentences)},
                          {"memory_after", texts_to_json(session.memory_after.sentences)}};
}

Session session_from_json(const nlohmann::json& j) {
    Session session;
    session.session_index = j.at("index").get<int>();
    session.elapsed_days = j.value("elapsed_days", 0);
    int index = 0;
    for (const auto& t : j.at("turns")) {
        session.turns.push_back(turn_from_json(t, index++));
    }
    const std::string prefix = "e.s" + std::to_string(session.session_index) + ".";
    session.memory_before = make_memory_state(j.at("memory_before").get<std::vector<std::string>>(),
                                              session.session_index, prefix + "m");
    session.summary = make_summary_batch(j.at("summary").get<std::vector<std::string>>(),
                                         session.session_index, prefix + "s");
    session.memory_after = make_memory_state(j.at("memory_after").get<std::vector<std::string>>(),
                                             session.session_index + 1, prefix + "a");
    return session;
}

nlohmann::json episode_to_json(const Episode& episode) {
    nlohmann::json sessions = nlohmann::json::array();
    for (const auto& session : episode.sessions) {
        sessions.push_back(session_to_json(session));
    }
    return nlohmann::json{{"episode_id", episode.episode_id}, {"sessions", std::move(sessions)}};
}

}  // namespace memkeeper
