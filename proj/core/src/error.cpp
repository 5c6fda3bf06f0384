#include "clickfill/error.hpp"

namespace clickfill {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PointOutOfBounds: return "PointOutOfBounds";
    case ErrorCode::InvalidPrompt: return "InvalidPrompt";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::RegionOutOfBounds: return "RegionOutOfBounds";
    case ErrorCode::NoObjectFound: return "NoObjectFound";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::EmptyPrompt: return "EmptyPrompt";
    case ErrorCode::BackendFailure: return "BackendFailure";
    case ErrorCode::ObjectCoversImage: return "ObjectCoversImage";
    case ErrorCode::BadMask: return "BadMask";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::UnknownBackend: return "UnknownBackend";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace clickfill
