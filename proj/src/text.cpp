#include "memkeeper/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace memkeeper {

namespace {

const icu::Normalizer2& nfc() {
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(ec);
    if (U_FAILURE(ec) || instance == nullptr) {
        throw std::runtime_error("ICU NFC normalizer unavailable");
    }
    return *instance;
}

bool is_space(UChar32 cp) {
    return u_isUWhiteSpace(cp) != 0;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    icu::UnicodeString composed;
    {
        UErrorCode ec = U_ZERO_ERROR;
        const icu::UnicodeString input =
            icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
        composed = nfc().normalize(input, ec);
        if (U_FAILURE(ec)) {
            throw std::runtime_error("NFC normalization failed");
        }
    }

    // Trim and collapse whitespace runs on the composed string.
    icu::UnicodeString collapsed;
    bool pending_space = false;
    bool seen_content = false;
    for (int32_t i = 0; i < composed.length();) {
        const UChar32 cp = composed.char32At(i);
        i += U16_LENGTH(cp);
        if (is_space(cp)) {
            pending_space = seen_content;
            continue;
        }
        if (pending_space) {
            collapsed.append(static_cast<UChar32>(U' '));
            pending_space = false;
        }
        collapsed.append(cp);
        seen_content = true;
    }

    std::string out;
    collapsed.toUTF8String(out);
    return out;
}

bool is_blank(std::string_view raw) {
    return normalize_text(raw).empty();
}

std::vector<std::string> tokenize(std::string_view raw) {
    const std::string norm = normalize_text(raw);
    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start < norm.size()) {
        std::size_t end = norm.find(' ', start);
        if (end == std::string::npos) {
            end = norm.size();
        }
        if (end > start) {
            tokens.emplace_back(norm.substr(start, end - start));
        }
        start = end + 1;
    }
    return tokens;
}

std::vector<char32_t> to_code_points(std::string_view text) {
    std::vector<char32_t> points;
    points.reserve(text.size());
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 cp = 0;
        U8_NEXT(bytes, i, length, cp);
        if (cp < 0) {
            cp = 0xFFFD;
        }
        points.push_back(static_cast<char32_t>(cp));
    }
    return points;
}

std::size_t count_words(std::string_view raw) {
    return tokenize(raw).size();
}

}  // namespace memkeeper
