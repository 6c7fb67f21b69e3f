#include "memkeeper/metrics.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "memkeeper/text.hpp"

namespace memkeeper {

namespace {

constexpr char kGramSeparator = '\x1f';

std::vector<std::string> ngrams(const std::vector<std::string>& tokens, int n) {
    std::vector<std::string> grams;
    if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) {
        return grams;
    }
    grams.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string gram = tokens[i];
        for (int j = 1; j < n; ++j) {
            gram += kGramSeparator;
            gram += tokens[i + j];
        }
        grams.push_back(std::move(gram));
    }
    return grams;
}

std::unordered_map<std::string, std::size_t> count_items(const std::vector<std::string>& items) {
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& item : items) {
        ++counts[item];
    }
    return counts;
}

}  // namespace

double pairwise_accuracy(const std::vector<MemOp>& pred, const std::vector<MemOp>& gold) {
    if (pred.size() != gold.size()) {
        throw LengthMismatchError("prediction and gold label counts differ: " +
                                  std::to_string(pred.size()) + " vs " + std::to_string(gold.size()));
    }
    if (pred.empty()) {
        throw EmptyInputError("accuracy over zero pairs is undefined");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        hits += pred[i] == gold[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

SetF1Report set_f1_texts(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
    std::set<std::string> pred_set;
    for (const auto& text : pred) {
        pred_set.insert(normalize_text(text));
    }
    std::set<std::string> gold_set;
    for (const auto& text : gold) {
        gold_set.insert(normalize_text(text));
    }

    SetF1Report report;
    report.pred_size = pred_set.size();
    report.gold_size = gold_set.size();
    for (const auto& text : pred_set) {
        report.matched += gold_set.contains(text) ? 1 : 0;
    }

    if (report.pred_size == 0 && report.gold_size == 0) {
        report.precision = report.recall = report.f1 = 1.0;
        return report;
    }
    report.precision = report.pred_size == 0
                           ? 0.0
                           : static_cast<double>(report.matched) / static_cast<double>(report.pred_size);
    report.recall = report.gold_size == 0
                        ? 0.0
                        : static_cast<double>(report.matched) / static_cast<double>(report.gold_size);
    const double denom = report.precision + report.recall;
    report.f1 = denom == 0.0 ? 0.0 : 2.0 * report.precision * report.recall / denom;
    return report;
}

SetF1Report set_f1(const MemoryState& pred, const MemoryState& gold) {
    return set_f1_texts(pred.texts(), gold.texts());
}

double bleu_n(const std::vector<std::string>& candidates, const std::vector<std::string>& references,
              int n) {
    if (candidates.size() != references.size()) {
        throw LengthMismatchError("candidate and reference counts differ");
    }
    if (n < 1 || n > 2) {
        throw InvariantViolation("bleu_n supports n in {1, 2}");
    }
    if (candidates.empty()) {
        throw EmptyInputError("bleu over an empty corpus is undefined");
    }

    std::size_t candidate_words = 0;
    std::size_t reference_words = 0;
    std::vector<std::size_t> matched(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> total(static_cast<std::size_t>(n), 0);

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto cand_tokens = tokenize(candidates[i]);
        const auto ref_tokens = tokenize(references[i]);
        candidate_words += cand_tokens.size();
        reference_words += ref_tokens.size();

        for (int g = 1; g <= n; ++g) {
            const auto cand_grams = count_items(ngrams(cand_tokens, g));
            const auto ref_grams = count_items(ngrams(ref_tokens, g));
            for (const auto& [gram, count] : cand_grams) {
                total[g - 1] += count;
                auto it = ref_grams.find(gram);
                if (it != ref_grams.end()) {
                    matched[g - 1] += std::min(count, it->second);
                }
            }
        }
    }

    double log_precision_sum = 0.0;
    for (int g = 1; g <= n; ++g) {
        double p = total[g - 1] == 0
                       ? 0.0
                       : static_cast<double>(matched[g - 1]) / static_cast<double>(total[g - 1]);
        if (p == 0.0) {
            p = kBleuEpsilon;
        }
        log_precision_sum += std::log(p) / n;
    }

    double brevity = 1.0;
    if (candidate_words == 0) {
        return 0.0;
    }
    if (candidate_words < reference_words) {
        brevity = std::exp(1.0 - static_cast<double>(reference_words) / static_cast<double>(candidate_words));
    }
    return brevity * std::exp(log_precision_sum);
}

double unigram_f1(const std::string& candidate, const std::string& reference) {
    const auto cand_counts = count_items(tokenize(candidate));
    const auto ref_counts = count_items(tokenize(reference));

    std::size_t cand_total = 0;
    for (const auto& [token, count] : cand_counts) {
        cand_total += count;
    }
    std::size_t ref_total = 0;
    for (const auto& [token, count] : ref_counts) {
        ref_total += count;
    }
    if (cand_total == 0 && ref_total == 0) {
        return 1.0;
    }
    if (cand_total == 0 || ref_total == 0) {
        return 0.0;
    }

    std::size_t overlap = 0;
    for (const auto& [token, count] : cand_counts) {
        auto it = ref_counts.find(token);
        if (it != ref_counts.end()) {
            overlap += std::min(count, it->second);
        }
    }
    if (overlap == 0) {
        return 0.0;
    }
    const double precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
    const double recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
    return 2.0 * precision * recall / (precision + recall);
}

DistinctReport distinct_n_report(const std::vector<std::string>& utterances, int n) {
    if (utterances.empty()) {
        throw EmptyInputError("distinct-n over an empty corpus is undefined");
    }
    if (n < 1) {
        throw InvariantViolation("distinct-n requires n >= 1");
    }

    DistinctReport report;
    std::unordered_set<std::string> seen;
    for (const auto& utterance : utterances) {
        const auto tokens = tokenize(utterance);
        report.total_words += tokens.size();
        for (auto& gram : ngrams(tokens, n)) {
            ++report.total_ngrams;
            seen.insert(std::move(gram));
        }
    }
    if (report.total_words == 0) {
        throw EmptyInputError("distinct-n over a corpus with no words is undefined");
    }
    report.distinct_ngrams = seen.size();
    report.value = static_cast<double>(report.distinct_ngrams) / static_cast<double>(report.total_words);
    report.conventional =
        report.total_ngrams == 0
            ? 0.0
            : static_cast<double>(report.distinct_ngrams) / static_cast<double>(report.total_ngrams);
    return report;
}

double distinct_n(const std::vector<std::string>& utterances, int n) {
    return distinct_n_report(utterances, n).value;
}

double distinct_n_conventional(const std::vector<std::string>& utterances, int n) {
    return distinct_n_report(utterances, n).conventional;
}

std::vector<RaterZScores> standardize_scores(const std::vector<RaterScores>& groups) {
    std::vector<RaterZScores> out;
    out.reserve(groups.size());
    for (const auto& rater : groups) {
        if (rater.scores.empty()) {
            throw EmptyInputError("rater " + rater.rater_id + " has no scores");
        }
        for (double score : rater.scores) {
            if (score < 0.0 || score > 100.0) {
                throw InvariantViolation("rater " + rater.rater_id + " score out of [0, 100]");
            }
        }
        const auto n = static_cast<double>(rater.scores.size());
        double mean = 0.0;
        for (double score : rater.scores) {
            mean += score;
        }
        mean /= n;
        double variance = 0.0;
        for (double score : rater.scores) {
            variance += (score - mean) * (score - mean);
        }
        variance /= n;  // population
        const double sd = std::sqrt(variance);

        RaterZScores z;
        z.rater_id = rater.rater_id;
        z.z.reserve(rater.scores.size());
        for (double score : rater.scores) {
            z.z.push_back(sd == 0.0 ? 0.0 : (score - mean) / sd);
        }
        out.push_back(std::move(z));
    }
    return out;
}

nlohmann::json metric_metadata() {
    return nlohmann::json{
        {"tokenizer", "whitespace after NFC normalization, no case folding"},
        {"bleu", "corpus-level, brevity penalty, epsilon=1e-9 on zero precision components"},
        {"distinct_denominator", "total words (conventional n-gram denominator reported alongside)"},
        {"set_f1_match", "exact normalized text"},
        {"set_f1_both_empty", 1.0},
        {"standardization", "population standard deviation; zero-variance raters map to zero"},
    };
}

void to_json(nlohmann::json& j, const SetF1Report& report) {
    j = nlohmann::json{{"precision", report.precision}, {"recall", report.recall},
                       {"f1", report.f1},               {"matched", report.matched},
                       {"pred_size", report.pred_size}, {"gold_size", report.gold_size}};
}

void to_json(nlohmann::json& j, const DistinctReport& report) {
    j = nlohmann::json{{"distinct_ngrams", report.distinct_ngrams},
                       {"total_words", report.total_words},
                       {"total_ngrams", report.total_ngrams},
                       {"value", report.value},
                       {"conventional", report.conventional}};
}

}  // namespace memkeeper
