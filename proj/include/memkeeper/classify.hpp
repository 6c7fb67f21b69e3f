#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "memkeeper/errors.hpp"
#include "memkeeper/ops.hpp"

namespace memkeeper {

enum class ClassifierConcurrency { ConcurrentSafe, SingleUse };

// Behavioral contract for O(m, s). Implementations must be total (one of the
// four ops or ClassifierFailure) and deterministic for the duration of one
// memory update.
class OperationClassifier {
public:
    virtual ~OperationClassifier() = default;

    virtual MemOp classify(const std::string& m_text, const std::string& s_text) = 0;
    virtual ClassifierConcurrency concurrency() const { return ClassifierConcurrency::ConcurrentSafe; }
    virtual std::string name() const = 0;
};

enum class NliLabel { Entailment, Neutral, Contradiction };

std::string_view to_string(NliLabel label);
NliLabel nli_label_from_string(std::string_view name);

inline constexpr std::array<NliLabel, 3> kAllNliLabels = {NliLabel::Entailment, NliLabel::Neutral,
                                                          NliLabel::Contradiction};

struct NliVerdict {
    NliLabel label = NliLabel::Neutral;
    double confidence = 1.0;  // carried but unused for the hard-label mapping
};

// Annotation labels: the four operations plus FUSION, which is an ingestion
// label only, never a classifier output.
enum class GoldLabel { Pass, Replace, Append, Delete, Fusion };

std::string_view to_string(GoldLabel label);
GoldLabel gold_label_from_string(std::string_view name);
bool is_operation(GoldLabel label);
MemOp to_mem_op(GoldLabel label);  // throws UnknownLabelError on FUSION

struct LabeledPair {
    std::string m_text;
    std::string s_text;
    GoldLabel gold = GoldLabel::Append;
};

// Maps a bidirectional NLI reading of (m = premise, s = hypothesis) to an
// operation: contradiction wins (that conflict is what the mechanism is
// for), then forward entailment means the memory already covers the
// summary, then reverse entailment means the summary supersedes it, and
// anything else is unrelated. DELETE is never produced by this mapping.
MemOp nli_to_op(const NliVerdict& forward, const NliVerdict& reverse);

// Test fixture standing in for a trained pairwise model: returns stored gold
// labels, keyed by normalized texts.
class TableOracleClassifier final : public OperationClassifier {
public:
    // Throws DuplicateKeyError on repeated (m, s) keys and
    // UnknownLabelError if a pair carries FUSION.
    explicit TableOracleClassifier(const std::vector<LabeledPair>& pairs,
                                   MemOp default_op = MemOp::Append);

    MemOp classify(const std::string& m_text, const std::string& s_text) override;
    std::string name() const override { return "table"; }

    std::size_t misses() const { return misses_.load(); }

private:
    std::map<std::pair<std::string, std::string>, MemOp> table_;
    MemOp default_op_;
    mutable std::atomic<std::size_t> misses_{0};
};

struct LexicalHeuristicConfig {
    double jaccard_threshold = 0.5;
    std::set<std::string> negation_cues = {"not",   "no",      "never",   "don't", "doesn't",
                                           "isn't", "haven't", "stopped", "gone",  "anymore"};
};

// Deterministic desk-scale baseline over whitespace token sets. Identity and
// subset containment map to PASS/REPLACE; high overlap with a one-sided
// negation cue maps to REPLACE; everything else APPENDs. Never DELETEs.
class LexicalHeuristicClassifier final : public OperationClassifier {
public:
    explicit LexicalHeuristicClassifier(LexicalHeuristicConfig config = {});

    MemOp classify(const std::string& m_text, const std::string& s_text) override;
    std::string name() const override { return "heuristic"; }

private:
    LexicalHeuristicConfig config_;
};

MemOp lexical_heuristic(const std::string& m_text, const std::string& s_text,
                        const LexicalHeuristicConfig& config = {});

// Source of NLI verdicts for the adapter below.
class NliProvider {
public:
    virtual ~NliProvider() = default;
    virtual NliVerdict verdict(const std::string& premise, const std::string& hypothesis) = 0;
    virtual std::string name() const = 0;
};

// Adapts an NLI model to the operation contract via nli_to_op. The reverse
// direction is only queried when the forward verdict is NEUTRAL.
class NliOperationClassifier final : public OperationClassifier {
public:
    explicit NliOperationClassifier(std::shared_ptr<NliProvider> provider);

    MemOp classify(const std::string& m_text, const std::string& s_text) override;
    std::string name() const override;

private:
    std::shared_ptr<NliProvider> provider_;
};

// The memory-accumulate policy: every pair APPENDs, memory only grows.
class AllAppendClassifier final : public OperationClassifier {
public:
    MemOp classify(const std::string&, const std::string&) override { return MemOp::Append; }
    std::string name() const override { return "all-append"; }
};

// Evaluation wrapper that corrupts a fraction of labels. Deterministic: the
// flip decision and the replacement label are a pure function of
// (m, s, seed), so repeated calls agree.
class NoisyClassifier final : public OperationClassifier {
public:
    NoisyClassifier(std::shared_ptr<OperationClassifier> inner, double epsilon, std::uint64_t seed);

    MemOp classify(const std::string& m_text, const std::string& s_text) override;
    std::string name() const override;

private:
    std::shared_ptr<OperationClassifier> inner_;
    double epsilon_;
    std::uint64_t seed_;
};

// Serializes calls to a classifier that declared itself single-use.
class SerializingClassifier final : public OperationClassifier {
public:
    explicit SerializingClassifier(std::shared_ptr<OperationClassifier> inner) : inner_(std::move(inner)) {}

    MemOp classify(const std::string& m_text, const std::string& s_text) override {
        std::lock_guard lock(mutex_);
        return inner_->classify(m_text, s_text);
    }
    ClassifierConcurrency concurrency() const override { return ClassifierConcurrency::ConcurrentSafe; }
    std::string name() const override { return inner_->name(); }

private:
    std::shared_ptr<OperationClassifier> inner_;
    std::mutex mutex_;
};

// Order-preserving batch classification. Identical text pairs are
// deduplicated through a per-call cache; the first failure aborts the batch
// with its index attached.
std::vector<MemOp> classify_batch(OperationClassifier& classifier,
                                  const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace memkeeper
