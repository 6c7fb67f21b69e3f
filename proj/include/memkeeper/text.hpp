#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace memkeeper {

// Canonical text form used for all equality checks, dedup and tokenization:
// Unicode NFC, trimmed, internal whitespace runs collapsed to single spaces.
// No case folding (mixed-script facts keep their case).
std::string normalize_text(std::string_view raw);

// True if normalize_text(raw) is empty.
bool is_blank(std::string_view raw);

// Whitespace tokens of the normalized text.
std::vector<std::string> tokenize(std::string_view raw);

// Code points of an already-normalized UTF-8 string. Invalid bytes map to
// U+FFFD.
std::vector<char32_t> to_code_points(std::string_view text);

std::size_t count_words(std::string_view raw);

}  // namespace memkeeper
