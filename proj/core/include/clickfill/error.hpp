#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clickfill {

enum class ErrorCode {
    DimensionTooLarge,
    EmptyImage,
    ChannelMismatch,
    DimensionMismatch,
    PointOutOfBounds,
    InvalidPrompt,
    InvalidConfig,
    EmptyResult,
    RegionOutOfBounds,
    NoObjectFound,
    EmptyCandidates,
    EmptyMask,
    EmptyPrompt,
    BackendFailure,
    ObjectCoversImage,
    BadMask,
    DecodeError,
    UnknownBackend,
};

// Stable name used on the wire (HTTP error bodies, CLI stderr, JSON reports).
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return to_string(code_); }

private:
    ErrorCode code_;
};

}  // namespace clickfill
