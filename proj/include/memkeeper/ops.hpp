#pragma once

#include <array>
#include <string_view>

#include "memkeeper/errors.hpp"

namespace memkeeper {

// The four pairwise merge decisions O(m, s).
enum class MemOp {
    Pass,     // keep the old memory sentence only
    Replace,  // keep the new summary sentence only
    Append,   // keep both
    Delete,   // keep neither
};

inline constexpr std::array<MemOp, 4> kAllMemOps = {MemOp::Pass, MemOp::Replace, MemOp::Append,
                                                    MemOp::Delete};

struct OpEffect {
    bool keep_memory;
    bool keep_summary;
};

constexpr OpEffect apply_operation(MemOp op) {
    switch (op) {
        case MemOp::Pass:
            return {true, false};
        case MemOp::Replace:
            return {false, true};
        case MemOp::Append:
            return {true, true};
        case MemOp::Delete:
            return {false, false};
    }
    return {true, true};
}

constexpr std::string_view to_string(MemOp op) {
    switch (op) {
        case MemOp::Pass:
            return "PASS";
        case MemOp::Replace:
            return "REPLACE";
        case MemOp::Append:
            return "APPEND";
        case MemOp::Delete:
            return "DELETE";
    }
    return "APPEND";
}

inline MemOp mem_op_from_string(std::string_view name) {
    for (MemOp op : kAllMemOps) {
        if (to_string(op) == name) {
            return op;
        }
    }
    throw UnknownLabelError("unknown operation label: " + std::string(name));
}

}  // namespace memkeeper
