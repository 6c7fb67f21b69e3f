#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace memkeeper {

class MemkeeperError : public std::runtime_error {
public:
    explicit MemkeeperError(const std::string& message) : std::runtime_error(message) {}
};

// A type invariant or operation precondition does not hold.
class InvariantViolation : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class EmptyInputError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class EmptyTextError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class LengthMismatchError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class DimensionMismatchError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class DuplicateKeyError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class UnknownLabelError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

// Op table lacks an entry for an evaluated (memory, summary) pair.
class MissingPairError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

// Any failure of an operation classifier: transport errors, timeouts,
// malformed responses, or a broken backend. Carries the offending pair.
class ClassifierFailure : public MemkeeperError {
public:
    ClassifierFailure(const std::string& reason, std::string memory_text, std::string summary_text)
        : MemkeeperError("classifier failure: " + reason),
          memory_text_(std::move(memory_text)),
          summary_text_(std::move(summary_text)) {}

    const std::string& memory_text() const { return memory_text_; }
    const std::string& summary_text() const { return summary_text_; }

    // Set by classify_batch: index of the first failing pair.
    std::optional<std::size_t> batch_index;

private:
    std::string memory_text_;
    std::string summary_text_;
};

class ParseError : public MemkeeperError {
public:
    ParseError(const std::string& message, std::size_t line)
        : MemkeeperError("parse error at line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class SchemaViolation : public MemkeeperError {
public:
    SchemaViolation(const std::string& message, std::string field)
        : MemkeeperError("schema violation [" + field + "]: " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Memory chaining broken: memory_before(i+1) != memory_after(i).
class ChainBreakError : public MemkeeperError {
public:
    ChainBreakError(std::string episode_id, int session_index)
        : MemkeeperError("memory chain break in episode " + episode_id + " at session " +
                         std::to_string(session_index)),
          episode_id_(std::move(episode_id)),
          session_index_(session_index) {}

    const std::string& episode_id() const { return episode_id_; }
    int session_index() const { return session_index_; }

private:
    std::string episode_id_;
    int session_index_;
};

class GeneratorFailure : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class SummarizerFailure : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class MissingGoldError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class ScriptOverflowError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

class ConfigError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

// Another writer is active on the same episode.
class BusyError : public MemkeeperError {
public:
    using MemkeeperError::MemkeeperError;
};

}  // namespace memkeeper
