#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "memkeeper/dialogue.hpp"
#include "memkeeper/memory.hpp"

namespace memkeeper {

enum class MemoryPolicy { WithoutMemory, MemoryAccumulate, MemoryUpdate, MemoryGold };

std::string_view to_string(MemoryPolicy policy);
MemoryPolicy memory_policy_from_string(std::string_view name);

enum class EpisodeStatus { Open, Closed };

struct Session {
    int session_index = 1;
    std::vector<Turn> turns;
    MemoryState memory_before;  // empty for session 1
    SummaryBatch summary;       // filled at close
    MemoryState memory_after;   // filled at close
    int elapsed_days = 0;       // days since the previous session

    bool operator==(const Session&) const = default;
};

struct Episode {
    std::string episode_id;
    std::vector<Session> sessions;
    MemoryPolicy policy = MemoryPolicy::MemoryUpdate;
    EpisodeStatus status = EpisodeStatus::Open;

    bool operator==(const Episode&) const = default;
};

// Dataset identity: id and session contents; policy/status are runtime
// attributes outside the canonical schema.
bool episodes_data_equal(const Episode& a, const Episode& b);

// Enforces contiguous session indices from 1, empty memory before session 1,
// turn alternation, and the memory chain memory_before(i+1) ==
// memory_after(i) by text.
void validate_episode(const Episode& episode);

// Canonical JSON: {episode_id, sessions: [{index, elapsed_days, turns,
// summary, memory_before, memory_after}]} with memory fields as text arrays.
nlohmann::json episode_to_json(const Episode& episode);
nlohmann::json session_to_json(const Session& session);
Session session_from_json(const nlohmann::json& j);

}  // namespace memkeeper
