#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "memkeeper/dialogue.hpp"
#include "memkeeper/errors.hpp"

namespace memkeeper {

struct Embedding {
    std::vector<double> values;
    // Set when the input had no features; the vector is then a fixed unit
    // basis vector rather than a content hash.
    bool degenerate = false;
};

// Pluggable sentence/context encoder. Outputs are unit L2 norm and share one
// dimension across the context and memory sides.
class Embedder {
public:
    virtual ~Embedder() = default;

    virtual std::size_t dimension() const = 0;
    virtual Embedding embed_memory(const std::string& text) const = 0;
    virtual Embedding embed_context(const DialogueContext& context) const = 0;
};

// Throws DimensionMismatchError. Inputs are assumed unit norm, so this is a
// plain dot product.
double cosine_sim(std::span<const double> a, std::span<const double> b);

struct HashedNgramEmbedderConfig {
    std::size_t ngram = 3;  // character-level
    std::size_t dimension = 256;
    std::uint64_t seed = 0x9E3779B97F4A7C15ull;
    std::size_t context_window = 4;  // last turns folded into the context text
};

// Deterministic stand-in for a trained encoder: a term-frequency bag of
// hashed character n-grams, L2-normalized. Texts are padded with n-1 spaces
// on each side so every non-blank text yields features and word boundaries
// contribute. The context embedding concatenates the texts of the last
// `context_window` turns before hashing.
class HashedNgramEmbedder final : public Embedder {
public:
    explicit HashedNgramEmbedder(HashedNgramEmbedderConfig config = {});

    std::size_t dimension() const override { return config_.dimension; }
    Embedding embed_memory(const std::string& text) const override;
    Embedding embed_context(const DialogueContext& context) const override;

    const HashedNgramEmbedderConfig& config() const { return config_; }

private:
    Embedding embed_text(const std::string& raw) const;

    HashedNgramEmbedderConfig config_;
};

}  // namespace memkeeper
