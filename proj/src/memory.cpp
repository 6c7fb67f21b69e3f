#include "memkeeper/memory.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "memkeeper/classify.hpp"
#include "memkeeper/text.hpp"

namespace memkeeper {

std::string_view to_string(SentenceOrigin origin) {
    return origin == SentenceOrigin::FromMemory ? "FROM_MEMORY" : "FROM_SUMMARY";
}

SentenceOrigin sentence_origin_from_string(std::string_view name) {
    if (name == "FROM_MEMORY") {
        return SentenceOrigin::FromMemory;
    }
    if (name == "FROM_SUMMARY") {
        return SentenceOrigin::FromSummary;
    }
    throw UnknownLabelError("unknown sentence origin: " + std::string(name));
}

MemorySentence make_sentence(std::string id, std::string_view text, int origin_session,
                             SentenceOrigin origin) {
    std::string normalized = normalize_text(text);
    if (normalized.empty()) {
        throw EmptyTextError("sentence text is empty after normalization (id " + id + ")");
    }
    if (origin_session < 1) {
        throw InvariantViolation("origin_session must be >= 1 (id " + id + ")");
    }
    return MemorySentence{std::move(id), std::move(normalized), origin_session, origin};
}

std::vector<std::string> MemoryState::texts() const {
    std::vector<std::string> out;
    out.reserve(sentences.size());
    for (const auto& s : sentences) {
        out.push_back(s.text);
    }
    return out;
}

namespace {

void validate_sentences(const std::vector<MemorySentence>& sentences, const char* what) {
    std::unordered_set<std::string> ids;
    std::unordered_set<std::string> texts;
    for (const auto& s : sentences) {
        if (is_blank(s.text)) {
            throw EmptyTextError(std::string(what) + ": blank sentence text (id " + s.id + ")");
        }
        if (!ids.insert(s.id).second) {
            throw InvariantViolation(std::string(what) + ": duplicate sentence id " + s.id);
        }
        if (!texts.insert(normalize_text(s.text)).second) {
            throw InvariantViolation(std::string(what) + ": duplicate sentence text \"" + s.text + "\"");
        }
    }
}

std::vector<MemorySentence> sentences_from_texts(const std::vector<std::string>& texts,
                                                 int session, SentenceOrigin origin,
                                                 const std::string& id_prefix) {
    std::vector<MemorySentence> out;
    std::unordered_set<std::string> seen;
    for (const auto& text : texts) {
        const std::string normalized = normalize_text(text);
        if (normalized.empty() || !seen.insert(normalized).second) {
            continue;
        }
        out.push_back(make_sentence(id_prefix + std::to_string(out.size() + 1), normalized, session, origin));
    }
    return out;
}

}  // namespace

void validate(const MemoryState& memory) {
    validate_sentences(memory.sentences, "memory");
    if (memory.session_index < 1) {
        throw InvariantViolation("memory session_index must be >= 1");
    }
}

void validate(const SummaryBatch& summary) {
    validate_sentences(summary.sentences, "summary");
    if (summary.source_session < 1) {
        throw InvariantViolation("summary source_session must be >= 1");
    }
}

MemoryState make_memory_state(const std::vector<std::string>& texts, int session_index,
                              const std::string& id_prefix) {
    return MemoryState{sentences_from_texts(texts, session_index, SentenceOrigin::FromMemory, id_prefix),
                       session_index};
}

SummaryBatch make_summary_batch(const std::vector<std::string>& texts, int source_session,
                                const std::string& id_prefix) {
    return SummaryBatch{sentences_from_texts(texts, source_session, SentenceOrigin::FromSummary, id_prefix),
                        source_session};
}

void OpTable::put(std::string m_id, std::string s_id, MemOp op) {
    auto key = std::make_pair(m_id, s_id);
    if (index_.contains(key)) {
        throw DuplicateKeyError("op table already holds pair (" + m_id + ", " + s_id + ")");
    }
    index_.emplace(std::move(key), records_.size());
    records_.push_back(Record{std::move(m_id), std::move(s_id), op});
}

std::optional<MemOp> OpTable::find(const std::string& m_id, const std::string& s_id) const {
    auto it = index_.find({m_id, s_id});
    if (it == index_.end()) {
        return std::nullopt;
    }
    return records_[it->second].op;
}

MemOp OpTable::at(const std::string& m_id, const std::string& s_id) const {
    auto op = find(m_id, s_id);
    if (!op) {
        throw MissingPairError("op table lacks pair (" + m_id + ", " + s_id + ")");
    }
    return *op;
}

MemoryUpdateResult update_memory(const MemoryState& memory, const SummaryBatch& summary,
                                 OperationClassifier& classifier, const UpdateConfig& config) {
    validate(memory);
    validate(summary);

    MemoryUpdateResult result;

    // Phase 1: classify the full cross product once. Identical normalized
    // texts short-circuit to PASS (the old sentence is kept for dataset
    // consistency) without touching the classifier.
    std::unordered_set<std::string> memory_deleted;   // ids in M_del
    std::unordered_set<std::string> summary_deleted;  // ids in S_del
    for (const auto& m : memory.sentences) {
        for (const auto& s : summary.sentences) {
            MemOp op;
            if (m.text == s.text) {
                op = MemOp::Pass;
            } else {
                try {
                    op = classifier.classify(m.text, s.text);
                } catch (const ClassifierFailure&) {
                    throw;
                } catch (const std::exception& e) {
                    throw ClassifierFailure(e.what(), m.text, s.text);
                }
                ++result.classifier_calls;
            }
            result.op_table.put(m.id, s.id, op);
            if (op == MemOp::Replace || op == MemOp::Delete) {
                memory_deleted.insert(m.id);
            }
            if (op == MemOp::Delete) {
                summary_deleted.insert(s.id);
            }
        }
    }

    std::vector<MemorySentence> surviving_memory;
    for (const auto& m : memory.sentences) {
        if (memory_deleted.contains(m.id)) {
            result.removed_memory.push_back(m);
        } else {
            surviving_memory.push_back(m);
        }
    }

    // Phase 2: drop any summary sentence whose information a surviving
    // memory sentence already covers, reusing the cached table.
    for (const auto& s : summary.sentences) {
        if (summary_deleted.contains(s.id)) {
            continue;
        }
        for (const auto& m : surviving_memory) {
            if (result.op_table.at(m.id, s.id) == MemOp::Pass) {
                summary_deleted.insert(s.id);
                break;
            }
        }
    }

    std::vector<MemorySentence> surviving_summary;
    for (const auto& s : summary.sentences) {
        if (summary_deleted.contains(s.id)) {
            result.removed_summary.push_back(s);
        } else {
            surviving_summary.push_back(s);
        }
    }

    // M' = surviving memory then surviving summary. A summary sentence whose
    // text collides with a surviving memory sentence is dropped with a
    // warning; the duplicate-free invariant outranks the classifier.
    MemoryState merged;
    merged.session_index = summary.source_session + 1;
    std::unordered_set<std::string> texts;
    for (const auto& m : surviving_memory) {
        texts.insert(m.text);
        merged.sentences.push_back(m);
    }
    for (const auto& s : surviving_summary) {
        if (!texts.insert(s.text).second) {
            result.warnings.push_back("duplicate text conflict: dropped summary sentence " + s.id +
                                      " (\"" + s.text + "\")");
            result.removed_summary.push_back(s);
            continue;
        }
        merged.sentences.push_back(s);
    }

    // Optional capacity: evict oldest origin_session first.
    if (config.max_memory_size && merged.sentences.size() > *config.max_memory_size) {
        const std::size_t excess = merged.sentences.size() - *config.max_memory_size;
        std::vector<std::size_t> order(merged.sentences.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return merged.sentences[a].origin_session < merged.sentences[b].origin_session;
        });
        std::unordered_set<std::size_t> evict(order.begin(), order.begin() + static_cast<long>(excess));
        MemoryState trimmed;
        trimmed.session_index = merged.session_index;
        for (std::size_t i = 0; i < merged.sentences.size(); ++i) {
            auto& sentence = merged.sentences[i];
            if (evict.contains(i)) {
                result.warnings.push_back("capacity eviction: dropped sentence " + sentence.id +
                                          " (origin session " + std::to_string(sentence.origin_session) + ")");
                if (sentence.origin == SentenceOrigin::FromSummary &&
                    sentence.origin_session == summary.source_session) {
                    result.removed_summary.push_back(sentence);
                } else {
                    result.removed_memory.push_back(sentence);
                }
            } else {
                trimmed.sentences.push_back(std::move(sentence));
            }
        }
        merged = std::move(trimmed);
    }

    result.new_memory = std::move(merged);
    return result;
}

MemoryState update_memory_oracle(const MemoryState& memory, const SummaryBatch& summary,
                                 const OpTable& op_table) {
    // Direct set comprehension over the complete table; intentionally not
    // sharing code with update_memory.
    MemoryState out;
    out.session_index = summary.source_session + 1;

    auto kept_memory = [&](const MemorySentence& m) {
        for (const auto& s : summary.sentences) {
            const MemOp op = op_table.at(m.id, s.id);
            if (op == MemOp::Replace || op == MemOp::Delete) {
                return false;
            }
        }
        return true;
    };

    for (const auto& m : memory.sentences) {
        if (kept_memory(m)) {
            out.sentences.push_back(m);
        }
    }

    for (const auto& s : summary.sentences) {
        bool keep = true;
        for (const auto& m : memory.sentences) {
            const MemOp op = op_table.at(m.id, s.id);
            if (op == MemOp::Delete) {
                keep = false;
                break;
            }
            if (op == MemOp::Pass && kept_memory(m)) {
                keep = false;
                break;
            }
        }
        if (keep) {
            out.sentences.push_back(s);
        }
    }
    return out;
}

std::vector<AuditViolation> audit_memory(const MemoryState& memory, OperationClassifier& classifier) {
    std::vector<AuditViolation> violations;
    for (const auto& first : memory.sentences) {
        for (const auto& second : memory.sentences) {
            if (first.id == second.id) {
                continue;
            }
            MemOp op;
            try {
                op = classifier.classify(first.text, second.text);
            } catch (const ClassifierFailure&) {
                throw;
            } catch (const std::exception& e) {
                throw ClassifierFailure(e.what(), first.text, second.text);
            }
            if (op != MemOp::Append) {
                violations.push_back(AuditViolation{first.id, second.id, op});
            }
        }
    }
    return violations;
}

void to_json(nlohmann::json& j, const MemorySentence& s) {
    j = nlohmann::json{{"id", s.id},
                       {"text", s.text},
                       {"origin_session", s.origin_session},
                       {"origin", std::string(to_string(s.origin))}};
}

void from_json(const nlohmann::json& j, MemorySentence& s) {
    s.id = j.at("id").get<std::string>();
    s.text = normalize_text(j.at("text").get<std::string>());
    s.origin_session = j.at("origin_session").get<int>();
    s.origin = sentence_origin_from_string(j.at("origin").get<std::string>());
}

nlohmann::json memory_to_json(const MemoryState& memory) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& s : memory.sentences) {
        nlohmann::json item;
        to_json(item, s);
        array.push_back(std::move(item));
    }
    return array;
}

MemoryState memory_from_json(const nlohmann::json& array, int session_index) {
    MemoryState memory;
    memory.session_index = session_index;
    for (const auto& item : array) {
        memory.sentences.push_back(item.get<MemorySentence>());
    }
    validate(memory);
    return memory;
}

nlohmann::json summary_to_json(const SummaryBatch& summary) {
    return memory_to_json(MemoryState{summary.sentences, summary.source_session});
}

SummaryBatch summary_from_json(const nlohmann::json& array, int source_session) {
    SummaryBatch summary;
    summary.source_session = source_session;
    for (const auto& item : array) {
        summary.sentences.push_back(item.get<MemorySentence>());
    }
    validate(summary);
    return summary;
}

nlohmann::json to_json(const MemoryUpdateResult& result) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& record : result.op_table.records()) {
        ops.push_back(nlohmann::json{
            {"m_id", record.m_id}, {"s_id", record.s_id}, {"op", std::string(to_string(record.op))}});
    }
    return nlohmann::json{{"new_memory", memory_to_json(result.new_memory)},
                          {"removed_memory", memory_to_json(MemoryState{result.removed_memory, 0})},
                          {"removed_summary", memory_to_json(MemoryState{result.removed_summary, 0})},
                          {"op_table", std::move(ops)},
                          {"warnings", result.warnings}};
}

}  // namespace memkeeper
