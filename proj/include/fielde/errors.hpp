#pragma once

#include <stdexcept>
#include <string>

namespace fielde {

// Malformed input text (dataset lines, config files).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Name or id not present where it must be (frozen vocabulary, bad relation).
struct LookupError : std::runtime_error {
    explicit LookupError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched or invalid parameter shapes, non-finite inputs.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable, truncated, or wrong-version checkpoint file.
struct CheckpointError : std::runtime_error {
    explicit CheckpointError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training produced a non-finite loss; message carries the offending batch.
struct TrainingDiverged : std::runtime_error {
    explicit TrainingDiverged(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures, annotated with the path involved.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fielde
