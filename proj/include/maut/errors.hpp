#pragma once

#include <stdexcept>
#include <string>

namespace maut {

/// Base for all library errors. Verification outcomes are returned as values,
/// never thrown; exceptions mean the operation could not be carried out.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error { using Error::Error; };
struct BoundsError : Error { using Error::Error; };
struct EmptyInputError : Error { using Error::Error; };
struct LengthError : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };
struct PointValidationError : Error { using Error::Error; };
struct CryptoError : Error { using Error::Error; };
struct EnvironmentError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };          // unknown state/symbol
struct TimeRegressionError : Error { using Error::Error; };
struct LatticeError : Error { using Error::Error; };
struct ReferenceError : Error { using Error::Error; };
struct AcyclicityError : Error { using Error::Error; };
struct ProvenanceError : Error { using Error::Error; };
struct DeltaCorruptionError : Error { using Error::Error; };
struct VerificationGateError : Error { using Error::Error; };
struct ConsistencyError : Error { using Error::Error; };     // AORG contradiction
struct JustificationError : Error { using Error::Error; };
struct TraceabilityError : Error { using Error::Error; };
struct UnderivableError : Error { using Error::Error; };
struct DelegationError : Error { using Error::Error; };
struct RevocationError : Error { using Error::Error; };
struct CannotProveError : Error { using Error::Error; };     // level proof j > q
struct NotAMemberError : Error { using Error::Error; };
struct ChainError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace maut
