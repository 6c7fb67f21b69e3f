#include "memkeeper/retrieval.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

namespace memkeeper {

RetrievalResult retrieve_top_k(const DialogueContext& context, const MemoryState& memory,
                               const Embedder& embedder, std::size_t k) {
    if (k < 1) {
        throw InvariantViolation("retrieval requires k >= 1");
    }

    RetrievalResult result;
    result.k_requested = k;
    if (memory.sentences.empty()) {
        return result;
    }

    const Embedding query = embedder.embed_context(context);
    std::vector<ScoredSentence> scored;
    scored.reserve(memory.sentences.size());
    for (std::size_t i = 0; i < memory.sentences.size(); ++i) {
        const Embedding doc = embedder.embed_memory(memory.sentences[i].text);
        scored.push_back(ScoredSentence{memory.sentences[i], cosine_sim(query.values, doc.values), i});
    }

    const std::size_t take = std::min(k, scored.size());
    auto better = [](const ScoredSentence& a, const ScoredSentence& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.position < b.position;
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(take), scored.end(), better);
    scored.resize(take);
    result.ranked = std::move(scored);
    return result;
}

void Triplet::validate() const {
    if (positive == negative) {
        throw InvariantViolation("triplet positive and negative must differ");
    }
}

TripletReport triplet_eval(const std::vector<Triplet>& triplets, const Embedder& embedder,
                           double margin) {
    if (margin < 0.0) {
        throw InvariantViolation("triplet margin must be >= 0");
    }
    if (triplets.empty()) {
        throw EmptyInputError("triplet evaluation needs at least one triplet");
    }

    TripletReport report;
    report.n = triplets.size();
    double loss_sum = 0.0;
    std::size_t satisfied = 0;
    std::size_t won = 0;
    for (const auto& triplet : triplets) {
        triplet.validate();
        const Embedding query = embedder.embed_context(triplet.context);
        const double sim_pos = cosine_sim(query.values, embedder.embed_memory(triplet.positive).values);
        const double sim_neg = cosine_sim(query.values, embedder.embed_memory(triplet.negative).values);

        TripletOutcome outcome;
        outcome.sim_positive = sim_pos;
        outcome.sim_negative = sim_neg;
        outcome.loss = std::max(sim_neg - sim_pos + margin, 0.0);
        outcome.satisfied = sim_pos >= sim_neg + margin;
        outcome.won = sim_pos > sim_neg;

        loss_sum += outcome.loss;
        satisfied += outcome.satisfied ? 1 : 0;
        won += outcome.won ? 1 : 0;
        report.outcomes.push_back(outcome);
    }
    const auto n = static_cast<double>(report.n);
    report.mean_loss = loss_sum / n;
    report.satisfaction_rate = static_cast<double>(satisfied) / n;
    report.win_rate = static_cast<double>(won) / n;
    return report;
}

nlohmann::json to_json(const TripletReport& report) {
    return nlohmann::json{{"mean_loss", report.mean_loss},
                          {"satisfaction_rate", report.satisfaction_rate},
                          {"win_rate", report.win_rate},
                          {"n", report.n}};
}

std::vector<Triplet> load_triplets(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    std::vector<Triplet> triplets;
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
        try {
            Triplet triplet;
            int index = 0;
            for (const auto& text : j.at("context_turns")) {
                Turn turn;
                turn.speaker = index % 2 == 0 ? Speaker::Bot : Speaker::User;
                turn.text = text.get<std::string>();
                turn.turn_index = index++;
                triplet.context.turns.push_back(std::move(turn));
            }
            triplet.positive = j.at("positive").get<std::string>();
            triplet.negative = j.at("negative").get<std::string>();
            triplet.validate();
            triplets.push_back(std::move(triplet));
        } catch (const nlohmann::json::exception& e) {
            throw SchemaViolation(e.what(), "triplet line " + std::to_string(line_no));
        }
    }
    return triplets;
}

}  // namespace memkeeper
