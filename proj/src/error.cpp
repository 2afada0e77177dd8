#include "huto/error.hpp"

namespace huto {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyDate: return "EmptyDate";
        case ErrorCode::InvalidYear: return "InvalidYear";
        case ErrorCode::InvalidDate: return "InvalidDate";
        case ErrorCode::InvalidDuration: return "InvalidDuration";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Underspecified: return "Underspecified";
        case ErrorCode::NotDeictic: return "NotDeictic";
        case ErrorCode::MalformedTriple: return "MalformedTriple";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownPrefix: return "UnknownPrefix";
        case ErrorCode::RuleDivergence: return "RuleDivergence";
        case ErrorCode::NotConvexlyDated: return "NotConvexlyDated";
        case ErrorCode::RangeTooLarge: return "RangeTooLarge";
        case ErrorCode::NotNormalized: return "NotNormalized";
    }
    return "Unknown";
}

}  // namespace huto
