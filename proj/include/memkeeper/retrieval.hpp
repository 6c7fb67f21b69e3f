#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "memkeeper/embed.hpp"
#include "memkeeper/errors.hpp"
#include "memkeeper/memory.hpp"

namespace memkeeper {

struct ScoredSentence {
    MemorySentence sentence;
    double score = 0.0;       // cosine, in [-1, 1]
    std::size_t position = 0; // index in the source memory (tie-break key)
};

struct RetrievalResult {
    std::vector<ScoredSentence> ranked;  // scores non-increasing
    std::size_t k_requested = 0;
};

// Exact top-k memory sentences by cosine similarity to the embedded context,
// ties broken by ascending memory position. Returns everything, ranked, when
// the memory is smaller than k. k must be >= 1.
RetrievalResult retrieve_top_k(const DialogueContext& context, const MemoryState& memory,
                               const Embedder& embedder, std::size_t k = 5);

struct Triplet {
    DialogueContext context;
    std::string positive;  // a memory sentence matched with the context
    std::string negative;  // a memory sentence from elsewhere

    // Throws InvariantViolation when positive == negative.
    void validate() const;
};

struct TripletOutcome {
    double sim_positive = 0.0;
    double sim_negative = 0.0;
    double loss = 0.0;      // max(sim_neg - sim_pos + margin, 0)
    bool satisfied = false; // sim_pos >= sim_neg + margin
    bool won = false;       // sim_pos > sim_neg
};

struct TripletReport {
    std::vector<TripletOutcome> outcomes;
    double mean_loss = 0.0;
    double satisfaction_rate = 0.0;
    double win_rate = 0.0;
    std::size_t n = 0;
};

// Evaluates an embedder against labeled triplets with a hinge oriented so a
// correctly ranked triplet (positive wins by at least the margin) has zero
// loss. margin must be >= 0; the list must be non-empty.
TripletReport triplet_eval(const std::vector<Triplet>& triplets, const Embedder& embedder,
                           double margin = 0.2);

nlohmann::json to_json(const TripletReport& report);

std::vector<Triplet> load_triplets(const std::string& path);

}  // namespace memkeeper
