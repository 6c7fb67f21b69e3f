#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memkeeper/dataset.hpp"
#include "memkeeper/episode.hpp"

namespace memkeeper {

// One fact's life across sessions: it is introduced, optionally superseded
// by a newer version (REPLACE), and optionally resolved by a closing
// statement (DELETE forgets both sides, PASS restates what memory holds).
struct FactLifecycle {
    int introduce_session = 1;
    std::string text_v1;
    std::optional<int> mutate_session;
    std::string text_v2;
    std::optional<int> resolve_session;
    std::string resolution_text;
    MemOp resolve_op = MemOp::Delete;  // DELETE or PASS
};

struct DriftScript {
    std::vector<FactLifecycle> facts;
    std::uint64_t seed = 0;
};

struct SynthEpisode {
    Episode episode;
    // Every evaluated (m, s) pair with its gold operation, usable both as a
    // pair dataset and as a table-oracle seed.
    std::vector<PairRecord> gold_pairs;
};

// Builds an internally consistent episode from a drift script: per-session
// summaries carry the facts due that session, gold snapshots are derived
// with the independent merge oracle, and the post-merge purity of every
// surviving pair is verified. Deterministic under script.seed.
// Throws ScriptOverflowError when a lifecycle does not fit the session
// count.
SynthEpisode synth_drift(const DriftScript& script, int sessions,
                         const std::string& episode_id = "drift-1");

// A seeded corpus of drift episodes over a built-in pool of everyday-fact
// templates with REPLACE and DELETE lifecycles.
std::vector<SynthEpisode> synth_corpus(std::size_t episode_count, int sessions, std::uint64_t seed);

// All gold pairs of a corpus, deduplicated.
std::vector<PairRecord> merged_gold_pairs(const std::vector<SynthEpisode>& corpus);

GoldLabel gold_from_op(MemOp op);

}  // namespace memkeeper
