#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "memkeeper/classify.hpp"
#include "memkeeper/episode.hpp"

namespace memkeeper {

// Declarative import adapter: maps a foreign corpus layout onto the
// canonical schema by renaming keys and translating speaker labels.
struct FieldMapping {
    std::string episode_id = "episode_id";
    std::string sessions = "sessions";
    std::string session_index = "index";
    std::string elapsed_days = "elapsed_days";
    std::string turns = "turns";
    std::string summary = "summary";
    std::string memory_before = "memory_before";
    std::string memory_after = "memory_after";
    std::string speaker = "speaker";
    std::string text = "text";
    std::map<std::string, Speaker> speaker_values = {{"BOT", Speaker::Bot}, {"USER", Speaker::User}};

    static FieldMapping from_json(const nlohmann::json& j);
    static FieldMapping from_file(const std::string& path);
};

// Reads episode JSONL (one episode per line) and validates every episode.
// Errors: ParseError(line), SchemaViolation(field), ChainBreakError.
std::vector<Episode> load_episodes(const std::string& path, const FieldMapping& mapping = {});
void save_episodes(const std::string& path, const std::vector<Episode>& episodes);

enum class Split { Train, Valid, Test };

std::string_view to_string(Split split);
Split split_from_string(std::string_view name);

struct PairRecord {
    std::string m;
    std::string s;
    GoldLabel gold = GoldLabel::Append;
    Split split = Split::Test;
};

struct PairLoadResult {
    std::vector<PairRecord> pairs;  // FUSION rows excluded
    std::size_t fusion_count = 0;
    // Percentage of each operation label among the kept pairs.
    std::map<std::string, double> distribution;
};

// JSONL records {m, s, gold[, split]}. FUSION rows are counted and excluded
// from the returned pairs. Errors: ParseError, UnknownLabelError.
PairLoadResult load_pairs(const std::string& path);
void save_pairs(const std::string& path, const std::vector<PairRecord>& pairs);

std::vector<LabeledPair> to_labeled_pairs(const std::vector<PairRecord>& records);

struct CorpusStats {
    std::size_t episodes = 0;
    std::size_t sessions = 0;
    std::map<int, std::size_t> sessions_by_index;
    std::size_t turns = 0;
    double avg_turns_per_session = 0.0;
    double avg_words_per_turn = 0.0;
    std::size_t unique_words = 0;
    double distinct1 = 0.0;
    double distinct2 = 0.0;
    double avg_memory_per_session = 0.0;
    double avg_summary_per_session = 0.0;
    double avg_words_per_summary_sentence = 0.0;
    double summary_distinct1 = 0.0;
    double summary_distinct2 = 0.0;
};

// Corpus-level statistics over all sessions of all episodes; memory size is
// averaged over every session including the empty first one.
CorpusStats corpus_stats(const std::vector<Episode>& episodes);

nlohmann::json to_json(const CorpusStats& stats);

}  // namespace memkeeper
