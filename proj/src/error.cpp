#include "symrpr/error.hpp"

namespace symrpr {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidGeometry: return "InvalidGeometry";
        case ErrorCode::InvalidJointPoint: return "InvalidJointPoint";
        case ErrorCode::DegeneratePolynomial: return "DegeneratePolynomial";
        case ErrorCode::LeadingCoefficientZero: return "LeadingCoefficientZero";
        case ErrorCode::OnBifurcationBoundary: return "OnBifurcationBoundary";
        case ErrorCode::AtCusp: return "AtCusp";
        case ErrorCode::OnSingularity: return "OnSingularity";
        case ErrorCode::OnCharacteristicSurface: return "OnCharacteristicSurface";
        case ErrorCode::DifferentAspects: return "DifferentAspects";
        case ErrorCode::PlanInfeasible: return "PlanInfeasible";
        case ErrorCode::SingularityHit: return "SingularityHit";
        case ErrorCode::BranchJump: return "BranchJump";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace symrpr
