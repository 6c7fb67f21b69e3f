#include "memkeeper/embed.hpp"

#include <cmath>

#include "memkeeper/text.hpp"

namespace memkeeper {

double cosine_sim(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatchError("cosine dimensions differ: " + std::to_string(a.size()) + " vs " +
                                     std::to_string(b.size()));
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
    }
    return dot;
}

HashedNgramEmbedder::HashedNgramEmbedder(HashedNgramEmbedderConfig config) : config_(config) {
    if (config_.ngram == 0 || config_.dimension == 0) {
        throw InvariantViolation("embedder needs ngram >= 1 and dimension >= 1");
    }
}

Embedding HashedNgramEmbedder::embed_text(const std::string& raw) const {
    const std::string norm = normalize_text(raw);

    Embedding out;
    out.values.assign(config_.dimension, 0.0);
    if (norm.empty()) {
        out.values[0] = 1.0;
        out.degenerate = true;
        return out;
    }

    std::vector<char32_t> points = to_code_points(norm);
    points.insert(points.begin(), config_.ngram - 1, U' ');
    points.insert(points.end(), config_.ngram - 1, U' ');

    for (std::size_t start = 0; start + config_.ngram <= points.size(); ++start) {
        std::uint64_t h = 0xCBF29CE484222325ull ^ config_.seed;
        for (std::size_t i = 0; i < config_.ngram; ++i) {
            const auto cp = static_cast<std::uint32_t>(points[start + i]);
            for (int shift = 0; shift < 32; shift += 8) {
                h ^= (cp >> shift) & 0xFFu;
                h *= 0x100000001B3ull;
            }
        }
        out.values[h % config_.dimension] += 1.0;
    }

    double norm2 = 0.0;
    for (double v : out.values) {
        norm2 += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out.values) {
        v *= inv;
    }
    return out;
}

Embedding HashedNgramEmbedder::embed_memory(const std::string& text) const {
    return embed_text(text);
}

Embedding HashedNgramEmbedder::embed_context(const DialogueContext& context) const {
    const std::size_t window = config_.context_window;
    const std::size_t first =
        context.turns.size() > window ? context.turns.size() - window : 0;
    std::string joined;
    for (std::size_t i = first; i < context.turns.size(); ++i) {
        if (!joined.empty()) {
            joined += ' ';
        }
        joined += context.turns[i].text;
    }
    return embed_text(joined);
}

}  // namespace memkeeper
