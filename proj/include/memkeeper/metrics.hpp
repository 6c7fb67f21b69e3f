#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "memkeeper/errors.hpp"
#include "memkeeper/memory.hpp"
#include "memkeeper/ops.hpp"

namespace memkeeper {

// Published benchmark figures for the trained pairwise classifier, reported
// in result footers for orientation; not reproducible at desk scale.
inline constexpr double kReferencePairwiseAccuracy = 84.10;
inline constexpr double kReferenceSetF1 = 88.69;

// Fraction of exact label matches. Throws LengthMismatchError or
// EmptyInputError.
double pairwise_accuracy(const std::vector<MemOp>& pred, const std::vector<MemOp>& gold);

struct SetF1Report {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t matched = 0;
    std::size_t pred_size = 0;
    std::size_t gold_size = 0;
};

// Sentence-level F1 between predicted and gold memory, matching on exact
// normalized text. Both sides empty scores 1.0 (a correct prediction of
// "remember nothing"); one empty side scores 0.
SetF1Report set_f1(const MemoryState& pred, const MemoryState& gold);
SetF1Report set_f1_texts(const std::vector<std::string>& pred, const std::vector<std::string>& gold);

// Corpus-level BLEU-n with brevity penalty, n in {1, 2}. BLEU-2 is the
// geometric mean of the 1- and 2-gram modified precisions. A zero precision
// component is replaced by a small epsilon rather than zeroing the score.
double bleu_n(const std::vector<std::string>& candidates, const std::vector<std::string>& references,
              int n);

inline constexpr double kBleuEpsilon = 1e-9;

// Harmonic mean of unigram precision/recall over the multiset token overlap.
double unigram_f1(const std::string& candidate, const std::string& reference);

struct DistinctReport {
    std::size_t distinct_ngrams = 0;
    std::size_t total_words = 0;
    std::size_t total_ngrams = 0;
    double value = 0.0;         // distinct n-grams / total words
    double conventional = 0.0;  // distinct n-grams / total n-grams
};

// Distinct-n over a whole corpus of utterances. The headline value divides
// by total words; the conventional n-gram-count denominator is reported
// alongside for comparison. Throws EmptyInputError when there are no words.
DistinctReport distinct_n_report(const std::vector<std::string>& utterances, int n);
double distinct_n(const std::vector<std::string>& utterances, int n);
double distinct_n_conventional(const std::vector<std::string>& utterances, int n);

struct RaterScores {
    std::string rater_id;
    std::vector<double> scores;  // raw ratings on a 0-100 scale
};

struct RaterZScores {
    std::string rater_id;
    std::vector<double> z;
};

// Per-rater standardization with population standard deviation; a rater with
// zero variance maps to all-zero z-values. Throws EmptyInputError when a
// rater has no scores.
std::vector<RaterZScores> standardize_scores(const std::vector<RaterScores>& groups);

// The metric conventions in force, attached to emitted reports.
nlohmann::json metric_metadata();

void to_json(nlohmann::json& j, const SetF1Report& report);
void to_json(nlohmann::json& j, const DistinctReport& report);

}  // namespace memkeeper
