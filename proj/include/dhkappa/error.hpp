#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dhkappa {

enum class ErrorKind {
    InvalidArgument,
    InsufficientAnnotators,
    DegenerateDistribution,
    InconsistentAnnotatorCount,
    UnknownCategory,
    MalformedValue,
    MalformedRow,
    EmptyDataset,
    OracleMismatch,
    Io,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InsufficientAnnotators: return "InsufficientAnnotators";
        case ErrorKind::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorKind::InconsistentAnnotatorCount: return "InconsistentAnnotatorCount";
        case ErrorKind::UnknownCategory: return "UnknownCategory";
        case ErrorKind::MalformedValue: return "MalformedValue";
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::EmptyDataset: return "EmptyDataset";
        case ErrorKind::OracleMismatch: return "OracleMismatch";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

// Every failure in the library is reported through this type. Parse errors
// additionally carry the 1-based line number of the offending input line.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(compose(kind, message, line)), kind_(kind), line_(line) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    static std::string compose(ErrorKind kind, const std::string& message,
                               std::optional<std::size_t> line) {
        std::string out;
        if (line) out += "line " + std::to_string(*line) + ": ";
        out += std::string(to_string(kind)) + ": " + message;
        return out;
    }

    ErrorKind kind_;
    std::optional<std::size_t> line_;
};

}  // namespace dhkappa
