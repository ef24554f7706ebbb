#include "hsclab/error.hpp"

namespace hsclab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::Singular: return "singular-point";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownIdentifier: return "unknown-identifier";
    case ErrorCode::VariableIndex: return "variable-index";
    case ErrorCode::HermitianDefect: return "hermitian-defect";
    case ErrorCode::NotPositiveDefinite: return "not-positive-definite";
    case ErrorCode::UnknownName: return "unknown-name";
    case ErrorCode::OutsideBox: return "outside-box";
    case ErrorCode::IllConditioned: return "ill-conditioned";
    case ErrorCode::ZeroVector: return "zero-vector";
    case ErrorCode::ImaginaryResidue: return "imaginary-residue";
    case ErrorCode::HypothesisViolation: return "hypothesis-violation";
    case ErrorCode::NotReached: return "not-reached";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace hsclab
