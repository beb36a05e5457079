#include "conewave/errors.hpp"

namespace conewave {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonPositiveAxis: return "NonPositiveAxis";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::OutsideCone: return "OutsideCone";
        case ErrorCode::DegenerateDirection: return "DegenerateDirection";
        case ErrorCode::DegenerateTangent: return "DegenerateTangent";
        case ErrorCode::DegenerateSpacing: return "DegenerateSpacing";
        case ErrorCode::DomainEdge: return "DomainEdge";
        case ErrorCode::SingularMetric: return "SingularMetric";
        case ErrorCode::BadInitialSpeed: return "BadInitialSpeed";
        case ErrorCode::StrongWindUnsupported: return "StrongWindUnsupported";
        case ErrorCode::EmptyContour: return "EmptyContour";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

} // namespace conewave
