#include "memkeeper/classify.hpp"

#include <algorithm>
#include <functional>

#include "memkeeper/text.hpp"

namespace memkeeper {

std::string_view to_string(NliLabel label) {
    switch (label) {
        case NliLabel::Entailment:
            return "ENTAILMENT";
        case NliLabel::Neutral:
            return "NEUTRAL";
        case NliLabel::Contradiction:
            return "CONTRADICTION";
    }
    return "NEUTRAL";
}

NliLabel nli_label_from_string(std::string_view name) {
    for (NliLabel label : kAllNliLabels) {
        if (to_string(label) == name) {
            return label;
        }
    }
    throw UnknownLabelError("unknown NLI label: " + std::string(name));
}

std::string_view to_string(GoldLabel label) {
    switch (label) {
        case GoldLabel::Pass:
            return "PASS";
        case GoldLabel::Replace:
            return "REPLACE";
        case GoldLabel::Append:
            return "APPEND";
        case GoldLabel::Delete:
            return "DELETE";
        case GoldLabel::Fusion:
            return "FUSION";
    }
    return "APPEND";
}

GoldLabel gold_label_from_string(std::string_view name) {
    for (GoldLabel label : {GoldLabel::Pass, GoldLabel::Replace, GoldLabel::Append, GoldLabel::Delete,
                            GoldLabel::Fusion}) {
        if (to_string(label) == name) {
            return label;
        }
    }
    throw UnknownLabelError("unknown gold label: " + std::string(name));
}

bool is_operation(GoldLabel label) {
    return label != GoldLabel::Fusion;
}

MemOp to_mem_op(GoldLabel label) {
    switch (label) {
        case GoldLabel::Pass:
            return MemOp::Pass;
        case GoldLabel::Replace:
            return MemOp::Replace;
        case GoldLabel::Append:
            return MemOp::Append;
        case GoldLabel::Delete:
            return MemOp::Delete;
        case GoldLabel::Fusion:
            break;
    }
    throw UnknownLabelError("FUSION is an ingestion label, not an operation");
}

MemOp nli_to_op(const NliVerdict& forward, const NliVerdict& reverse) {
    if (forward.label == NliLabel::Contradiction) {
        return MemOp::Replace;
    }
    if (forward.label == NliLabel::Entailment) {
        return MemOp::Pass;
    }
    if (reverse.label == NliLabel::Entailment) {
        return MemOp::Replace;
    }
    return MemOp::Append;
}

TableOracleClassifier::TableOracleClassifier(const std::vector<LabeledPair>& pairs, MemOp default_op)
    : default_op_(default_op) {
    for (const auto& pair : pairs) {
        if (!is_operation(pair.gold)) {
            throw UnknownLabelError("table oracle cannot store FUSION pair (\"" + pair.m_text + "\", \"" +
                                    pair.s_text + "\")");
        }
        auto key = std::make_pair(normalize_text(pair.m_text), normalize_text(pair.s_text));
        if (table_.contains(key)) {
            throw DuplicateKeyError("duplicate pair (\"" + pair.m_text + "\", \"" + pair.s_text + "\")");
        }
        table_.emplace(std::move(key), to_mem_op(pair.gold));
    }
}

MemOp TableOracleClassifier::classify(const std::string& m_text, const std::string& s_text) {
    auto it = table_.find({normalize_text(m_text), normalize_text(s_text)});
    if (it == table_.end()) {
        misses_.fetch_add(1);
        return default_op_;
    }
    return it->second;
}

LexicalHeuristicClassifier::LexicalHeuristicClassifier(LexicalHeuristicConfig config)
    : config_(std::move(config)) {}

MemOp LexicalHeuristicClassifier::classify(const std::string& m_text, const std::string& s_text) {
    return lexical_heuristic(m_text, s_text, config_);
}

MemOp lexical_heuristic(const std::string& m_text, const std::string& s_text,
                        const LexicalHeuristicConfig& config) {
    const std::string m_norm = normalize_text(m_text);
    const std::string s_norm = normalize_text(s_text);
    if (m_norm.empty() || s_norm.empty()) {
        throw EmptyTextError("lexical heuristic requires non-empty texts");
    }
    if (m_norm == s_norm) {
        return MemOp::Pass;
    }

    const auto m_vec = tokenize(m_norm);
    const auto s_vec = tokenize(s_norm);
    const std::set<std::string> m_tokens(m_vec.begin(), m_vec.end());
    const std::set<std::string> s_tokens(s_vec.begin(), s_vec.end());

    if (std::includes(m_tokens.begin(), m_tokens.end(), s_tokens.begin(), s_tokens.end())) {
        return MemOp::Pass;  // summary adds nothing
    }
    if (std::includes(s_tokens.begin(), s_tokens.end(), m_tokens.begin(), m_tokens.end()) &&
        s_tokens.size() > m_tokens.size()) {
        return MemOp::Replace;  // summary strictly extends the memory
    }

    std::size_t shared = 0;
    for (const auto& token : m_tokens) {
        shared += s_tokens.contains(token) ? 1 : 0;
    }
    const std::size_t unioned = m_tokens.size() + s_tokens.size() - shared;
    const double jaccard = unioned == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(unioned);

    auto has_cue = [&](const std::set<std::string>& tokens) {
        return std::any_of(tokens.begin(), tokens.end(),
                           [&](const std::string& t) { return config.negation_cues.contains(t); });
    };
    if (jaccard >= config.jaccard_threshold && has_cue(m_tokens) != has_cue(s_tokens)) {
        return MemOp::Replace;  // same topic, flipped polarity
    }
    return MemOp::Append;
}

NliOperationClassifier::NliOperationClassifier(std::shared_ptr<NliProvider> provider)
    : provider_(std::move(provider)) {}

MemOp NliOperationClassifier::classify(const std::string& m_text, const std::string& s_text) {
    const NliVerdict forward = provider_->verdict(m_text, s_text);
    if (forward.label == NliLabel::Contradiction) {
        return MemOp::Replace;
    }
    if (forward.label == NliLabel::Entailment) {
        return MemOp::Pass;
    }
    const NliVerdict reverse = provider_->verdict(s_text, m_text);
    return nli_to_op(forward, reverse);
}

std::string NliOperationClassifier::name() const {
    return "nli(" + provider_->name() + ")";
}

namespace {

std::uint64_t mix_hash(std::uint64_t h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;  // FNV-1a
    }
    return h;
}

}  // namespace

NoisyClassifier::NoisyClassifier(std::shared_ptr<OperationClassifier> inner, double epsilon,
                                 std::uint64_t seed)
    : inner_(std::move(inner)), epsilon_(epsilon), seed_(seed) {
    if (epsilon_ < 0.0 || epsilon_ > 1.0) {
        throw InvariantViolation("noise rate must be in [0, 1]");
    }
}

MemOp NoisyClassifier::classify(const std::string& m_text, const std::string& s_text) {
    const MemOp truth = inner_->classify(m_text, s_text);
    std::uint64_t h = 0xCBF29CE484222325ull ^ seed_;
    h = mix_hash(h, m_text);
    h = mix_hash(h, "\x1f");
    h = mix_hash(h, s_text);
    // splitmix64 finalizer for well-spread bits
    h += 0x9E3779B97F4A7C15ull;
    h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
    h = (h ^ (h >> 27)) * 0x94D049BB133111EBull;
    h ^= h >> 31;

    const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
    if (unit >= epsilon_) {
        return truth;
    }
    // pick one of the three other labels
    const auto pick = static_cast<std::size_t>(h % 3);
    std::size_t seen = 0;
    for (MemOp op : kAllMemOps) {
        if (op == truth) {
            continue;
        }
        if (seen == pick) {
            return op;
        }
        ++seen;
    }
    return truth;
}

std::string NoisyClassifier::name() const {
    return inner_->name() + "+noise";
}

std::vector<MemOp> classify_batch(OperationClassifier& classifier,
                                  const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<MemOp> out;
    out.reserve(pairs.size());
    std::map<std::pair<std::string, std::string>, MemOp> cache;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto key = std::make_pair(normalize_text(pairs[i].first), normalize_text(pairs[i].second));
        auto it = cache.find(key);
        if (it == cache.end()) {
            try {
                it = cache.emplace(key, classifier.classify(pairs[i].first, pairs[i].second)).first;
            } catch (const std::exception& e) {
                ClassifierFailure failure(e.what(), pairs[i].first, pairs[i].second);
                failure.batch_index = i;
                throw failure;
            }
        }
        out.push_back(it->second);
    }
    return out;
}

}  // namespace memkeeper
