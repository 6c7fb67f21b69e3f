#include "memkeeper/dataset.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <unordered_set>

#include "memkeeper/metrics.hpp"
#include "memkeeper/text.hpp"

namespace memkeeper {

FieldMapping FieldMapping::from_json(const nlohmann::json& j) {
    FieldMapping mapping;
    auto read = [&](const char* key, std::string& target) {
        if (j.contains(key)) {
            target = j.at(key).get<std::string>();
        }
    };
    read("episode_id", mapping.episode_id);
    read("sessions", mapping.sessions);
    read("session_index", mapping.session_index);
    read("elapsed_days", mapping.elapsed_days);
    read("turns", mapping.turns);
    read("summary", mapping.summary);
    read("memory_before", mapping.memory_before);
    read("memory_after", mapping.memory_after);
    read("speaker", mapping.speaker);
    read("text", mapping.text);
    if (j.contains("speaker_values")) {
        mapping.speaker_values.clear();
        for (const auto& [foreign, canonical] : j.at("speaker_values").items()) {
            mapping.speaker_values.emplace(foreign,
                                           speaker_from_string(canonical.get<std::string>()));
        }
    }
    return mapping;
}

FieldMapping FieldMapping::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open field mapping " + path, 0);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 0);
    }
    return from_json(j);
}

namespace {

std::vector<std::string> read_text_array(const nlohmann::json& session, const std::string& key) {
    if (!session.contains(key)) {
        throw SchemaViolation("missing field", key);
    }
    std::vector<std::string> out;
    for (const auto& item : session.at(key)) {
        if (!item.is_string()) {
            throw SchemaViolation("expected string array", key);
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Episode episode_from_mapped_json(const nlohmann::json& j, const FieldMapping& mapping) {
    Episode episode;
    if (!j.contains(mapping.episode_id)) {
        throw SchemaViolation("missing field", mapping.episode_id);
    }
    episode.episode_id = j.at(mapping.episode_id).get<std::string>();
    if (!j.contains(mapping.sessions) || !j.at(mapping.sessions).is_array()) {
        throw SchemaViolation("missing session array", mapping.sessions);
    }
    for (const auto& sj : j.at(mapping.sessions)) {
        Session session;
        if (!sj.contains(mapping.session_index)) {
            throw SchemaViolation("missing field", mapping.session_index);
        }
        session.session_index = sj.at(mapping.session_index).get<int>();
        session.elapsed_days = sj.value(mapping.elapsed_days, 0);

        if (!sj.contains(mapping.turns) || !sj.at(mapping.turns).is_array()) {
            throw SchemaViolation("missing turn array", mapping.turns);
        }
        int index = 0;
        for (const auto& tj : sj.at(mapping.turns)) {
            Turn turn;
            if (!tj.contains(mapping.speaker) || !tj.contains(mapping.text)) {
                throw SchemaViolation("turn needs speaker and text", mapping.turns);
            }
            const auto label = tj.at(mapping.speaker).get<std::string>();
            auto it = mapping.speaker_values.find(label);
            if (it == mapping.speaker_values.end()) {
                throw SchemaViolation("unmapped speaker label \"" + label + "\"", mapping.speaker);
            }
            turn.speaker = it->second;
            turn.text = tj.at(mapping.text).get<std::string>();
            turn.turn_index = index++;
            session.turns.push_back(std::move(turn));
        }

        const std::string prefix = "e.s" + std::to_string(session.session_index) + ".";
        session.memory_before = make_memory_state(read_text_array(sj, mapping.memory_before),
                                                  session.session_index, prefix + "m");
        session.summary = make_summary_batch(read_text_array(sj, mapping.summary),
                                             session.session_index, prefix + "s");
        session.memory_after = make_memory_state(read_text_array(sj, mapping.memory_after),
                                                 session.session_index + 1, prefix + "a");
        episode.sessions.push_back(std::move(session));
    }
    return episode;
}

}  // namespace

std::vector<Episode> load_episodes(const std::string& path, const FieldMapping& mapping) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    std::vector<Episode> episodes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        Episode episode = episode_from_mapped_json(j, mapping);
        validate_episode(episode);
        episodes.push_back(std::move(episode));
    }
    return episodes;
}

void save_episodes(const std::string& path, const std::vector<Episode>& episodes) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path, 0);
    }
    for (const auto& episode : episodes) {
        out << episode_to_json(episode).dump() << '\n';
    }
}

std::string_view to_string(Split split) {
    switch (split) {
        case Split::Train:
            return "TRAIN";
        case Split::Valid:
            return "VALID";
        case Split::Test:
            return "TEST";
    }
    return "TEST";
}

Split split_from_string(std::string_view name) {
    for (Split split : {Split::Train, Split::Valid, Split::Test}) {
        if (to_string(split) == name) {
            return split;
        }
    }
    throw UnknownLabelError("unknown split: " + std::string(name));
}

PairLoadResult load_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    PairLoadResult result;
    std::map<std::string, std::size_t> counts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        PairRecord record;
        try {
            record.m = j.at("m").get<std::string>();
            record.s = j.at("s").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw SchemaViolation(e.what(), "pair line " + std::to_string(line_no));
        }
        record.gold = gold_label_from_string(j.at("gold").get<std::string>());
        record.split = j.contains("split") ? split_from_string(j.at("split").get<std::string>())
                                           : Split::Test;
        if (record.gold == GoldLabel::Fusion) {
            ++result.fusion_count;
            continue;
        }
        ++counts[std::string(to_string(record.gold))];
        result.pairs.push_back(std::move(record));
    }
    if (!result.pairs.empty()) {
        for (const auto& [label, count] : counts) {
            result.distribution[label] =
                100.0 * static_cast<double>(count) / static_cast<double>(result.pairs.size());
        }
    }
    return result;
}

void save_pairs(const std::string& path, const std::vector<PairRecord>& pairs) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write " + path, 0);
    }
    for (const auto& pair : pairs) {
        out << nlohmann::json{{"m", pair.m},
                              {"s", pair.s},
                              {"gold", std::string(to_string(pair.gold))},
                              {"split", std::string(to_string(pair.split))}}
                   .dump()
            << '\n';
    }
}

std::vector<LabeledPair> to_labeled_pairs(const std::vector<PairRecord>& records) {
    std::vector<LabeledPair> out;
    out.reserve(records.size());
    for (const auto& record : records) {
        out.push_back(LabeledPair{record.m, record.s, record.gold});
    }
    return out;
}

CorpusStats corpus_stats(const std::vector<Episode>& episodes) {
    if (episodes.empty()) {
        throw EmptyInputError("corpus statistics need at least one episode");
    }

    CorpusStats stats;
    stats.episodes = episodes.size();

    std::vector<std::string> turn_texts;
    std::vector<std::string> summary_texts;
    std::unordered_set<std::string> vocabulary;
    std::size_t turn_words = 0;
    std::size_t memory_sentences = 0;
    std::size_t summary_sentences = 0;
    std::size_t summary_words = 0;

    for (const auto& episode : episodes) {
        for (const auto& session : episode.sessions) {
            ++stats.sessions;
            ++stats.sessions_by_index[session.session_index];
            stats.turns += session.turns.size();
            for (const auto& turn : session.turns) {
                turn_texts.push_back(turn.text);
                for (const auto& token : tokenize(turn.text)) {
                    ++turn_words;
                    vocabulary.insert(token);
                }
            }
            memory_sentences += session.memory_before.sentences.size();
            summary_sentences += session.summary.sentences.size();
            for (const auto& sentence : session.summary.sentences) {
                summary_texts.push_back(sentence.text);
                summary_words += count_words(sentence.text);
            }
        }
    }

    const auto session_count = static_cast<double>(stats.sessions);
    stats.avg_turns_per_session = static_cast<double>(stats.turns) / session_count;
    stats.avg_words_per_turn =
        stats.turns == 0 ? 0.0 : static_cast<double>(turn_words) / static_cast<double>(stats.turns);
    stats.unique_words = vocabulary.size();
    if (!turn_texts.empty() && turn_words > 0) {
        stats.distinct1 = distinct_n(turn_texts, 1);
        stats.distinct2 = distinct_n(turn_texts, 2);
    }
    stats.avg_memory_per_session = static_cast<double>(memory_sentences) / session_count;
    stats.avg_summary_per_session = static_cast<double>(summary_sentences) / session_count;
    stats.avg_words_per_summary_sentence =
        summary_sentences == 0
            ? 0.0
            : static_cast<double>(summary_words) / static_cast<double>(summary_sentences);
    if (!summary_texts.empty() && summary_words > 0) {
        stats.summary_distinct1 = distinct_n(summary_texts, 1);
        stats.summary_distinct2 = distinct_n(summary_texts, 2);
    }
    return stats;
}

nlohmann::json to_json(const CorpusStats& stats) {
    nlohmann::json by_index = nlohmann::json::object();
    for (const auto& [index, count] : stats.sessions_by_index) {
        by_index[std::to_string(index)] = count;
    }
    return nlohmann::json{{"episodes", stats.episodes},
                          {"sessions", stats.sessions},
                          {"sessions_by_index", std::move(by_index)},
                          {"turns", stats.turns},
                          {"avg_turns_per_session", stats.avg_turns_per_session},
                          {"avg_words_per_turn", stats.avg_words_per_turn},
                          {"unique_words", stats.unique_words},
                          {"distinct1", stats.distinct1},
                          {"distinct2", stats.distinct2},
                          {"avg_memory_per_session", stats.avg_memory_per_session},
                          {"avg_summary_per_session", stats.avg_summary_per_session},
                          {"avg_words_per_summary_sentence", stats.avg_words_per_summary_sentence},
                          {"summary_distinct1", stats.summary_distinct1},
                          {"summary_distinct2", stats.summary_distinct2},
                          {"metadata", metric_metadata()}};
}

}  // namespace memkeeper
