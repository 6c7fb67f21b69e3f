#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "memkeeper/errors.hpp"
#include "memkeeper/ops.hpp"

namespace memkeeper {

class OperationClassifier;

enum class SentenceOrigin { FromMemory, FromSummary };

std::string_view to_string(SentenceOrigin origin);
SentenceOrigin sentence_origin_from_string(std::string_view name);

// One unstructured text fact about the user.
struct MemorySentence {
    std::string id;
    std::string text;  // stored normalized (NFC, trimmed, collapsed)
    int origin_session = 1;
    SentenceOrigin origin = SentenceOrigin::FromSummary;

    bool operator==(const MemorySentence&) const = default;
};

// Builds a sentence with normalized text. Throws EmptyTextError if the text
// normalizes to nothing, InvariantViolation on origin_session < 1.
MemorySentence make_sentence(std::string id, std::string_view text, int origin_session,
                             SentenceOrigin origin);

// The bot's current knowledge: ordered, exact-duplicate free.
struct MemoryState {
    std::vector<MemorySentence> sentences;
    int session_index = 1;  // the session this memory serves

    bool operator==(const MemoryState&) const = default;

    std::vector<std::string> texts() const;
};

// End-of-session summary sentences awaiting merge.
struct SummaryBatch {
    std::vector<MemorySentence> sentences;  // origin = FromSummary
    int source_session = 1;

    bool operator==(const SummaryBatch&) const = default;
};

// Throws InvariantViolation on duplicate ids or duplicate normalized texts.
void validate(const MemoryState& memory);
void validate(const SummaryBatch& summary);

// Convenience builders from plain texts; ids are "<prefix><n>". Duplicate
// normalized texts are dropped silently from the inputs (callers that need
// strictness validate explicitly).
MemoryState make_memory_state(const std::vector<std::string>& texts, int session_index,
                              const std::string& id_prefix = "m");
SummaryBatch make_summary_batch(const std::vector<std::string>& texts, int source_session,
                                const std::string& id_prefix = "s");

// Cross-product operation table keyed by (memory id, summary id), insertion
// order preserved.
class OpTable {
public:
    struct Record {
        std::string m_id;
        std::string s_id;
        MemOp op;

        bool operator==(const Record&) const = default;
    };

    void put(std::string m_id, std::string s_id, MemOp op);
    std::optional<MemOp> find(const std::string& m_id, const std::string& s_id) const;
    // Throws MissingPairError.
    MemOp at(const std::string& m_id, const std::string& s_id) const;

    const std::vector<Record>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    bool operator==(const OpTable&) const = default;

private:
    std::vector<Record> records_;
    std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

struct MemoryUpdateResult {
    MemoryState new_memory;                      // M'
    std::vector<MemorySentence> removed_memory;  // M_del
    std::vector<MemorySentence> removed_summary; // S_del
    OpTable op_table;                            // every evaluated pair
    std::vector<std::string> warnings;
    std::size_t classifier_calls = 0;
};

struct UpdateConfig {
    // Unbounded by default. When set, overflow evicts oldest origin_session
    // first (FIFO), earliest position first within a session.
    std::optional<std::size_t> max_memory_size;
};

// Merges old memory M with the new summary S into M'.
//
// Phase 1 classifies every (m, s) pair once; a pair whose normalized texts
// are identical is forced to PASS without consulting the classifier. Any m
// hit by REPLACE or DELETE goes to M_del; DELETE also sends the s to S_del.
// Phase 2 reuses the cached table: a surviving s is dropped when any
// surviving m PASSes it. M' is surviving memory followed by surviving
// summary, original relative order preserved.
MemoryUpdateResult update_memory(const MemoryState& memory, const SummaryBatch& summary,
                                 OperationClassifier& classifier, const UpdateConfig& config = {});

// Independent re-derivation of the merge semantics for differential testing:
// keep m iff no s replaces or deletes it; keep s iff nothing deletes it and
// no kept m passes it. Implemented by direct comprehension over the table,
// sharing no traversal code with update_memory.
MemoryState update_memory_oracle(const MemoryState& memory, const SummaryBatch& summary,
                                 const OpTable& op_table);

struct AuditViolation {
    std::string first_id;
    std::string second_id;
    MemOp op;  // the non-APPEND classification
};

// Classifies every ordered intra-memory pair; anything other than APPEND is
// reported as an advisory diagnostic (the merge assumes memory is internally
// consistent and not redundant).
std::vector<AuditViolation> audit_memory(const MemoryState& memory,
                                         OperationClassifier& classifier);

void to_json(nlohmann::json& j, const MemorySentence& s);
void from_json(const nlohmann::json& j, MemorySentence& s);
// MemoryState and SummaryBatch serialize as a JSON array of sentence objects.
nlohmann::json memory_to_json(const MemoryState& memory);
MemoryState memory_from_json(const nlohmann::json& array, int session_index);
nlohmann::json summary_to_json(const SummaryBatch& summary);
SummaryBatch summary_from_json(const nlohmann::json& array, int source_session);
nlohmann::json to_json(const MemoryUpdateResult& result);

}  // namespace memkeeper
