/**
 * Error type shared by every nervekit module.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nervekit {

enum class Errc {
    // categories and functors
    MissingIdentity,
    NonAssociative,
    IncompleteCompositionTable,
    DanglingEndpoint,
    DuplicateIdentifier,
    BadCompositionEntry,
    NotPreservingComposition,
    NotPreservingIdentity,
    EndpointMismatch,
    ExplosionGuard,
    AnchorNotFound,
    FilterNotClosed,
    NotFound,
    AmbiguousUniversal,
    // double categories
    SharedObjectMismatch,
    MissingIdentitySquare,
    NotPastingClosed,
    CornerMismatch,
    WitnessShapeError,
    WitnessNotFunctorial,
    // simplicial sets
    CapTooSmall,
    CapMismatch,
    NotSimplicial,
    NotFunctorial,
    NotChainMap,
    // model data and moduli
    TwoOutOfThreeViolation,
    NotClosedUnderComposition,
    FactorizationMissing,
    LiftMissing,
    NoTerminalObject,
    UnknownVariant,
    ObjectNotFound,
    NotBicommutative,
    MissingLimit,
    NotFibrant,
    ChoiceNotFunctorial,
    // plumbing
    ParseError,
    InvalidArgument,
    Internal,
};

inline std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::MissingIdentity: return "MissingIdentity";
    case Errc::NonAssociative: return "NonAssociative";
    case Errc::IncompleteCompositionTable: return "IncompleteCompositionTable";
    case Errc::DanglingEndpoint: return "DanglingEndpoint";
    case Errc::DuplicateIdentifier: return "DuplicateIdentifier";
    case Errc::BadCompositionEntry: return "BadCompositionEntry";
    case Errc::NotPreservingComposition: return "NotPreservingComposition";
    case Errc::NotPreservingIdentity: return "NotPreservingIdentity";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::ExplosionGuard: return "ExplosionGuard";
    case Errc::AnchorNotFound: return "AnchorNotFound";
    case Errc::FilterNotClosed: return "FilterNotClosed";
    case Errc::NotFound: return "NotFound";
    case Errc::AmbiguousUniversal: return "AmbiguousUniversal";
    case Errc::SharedObjectMismatch: return "SharedObjectMismatch";
    case Errc::MissingIdentitySquare: return "MissingIdentitySquare";
    case Errc::NotPastingClosed: return "NotPastingClosed";
    case Errc::CornerMismatch: return "CornerMismatch";
    case Errc::WitnessShapeError: return "WitnessShapeError";
    case Errc::WitnessNotFunctorial: return "WitnessNotFunctorial";
    case Errc::CapTooSmall: return "CapTooSmall";
    case Errc::CapMismatch: return "CapMismatch";
    case Errc::NotSimplicial: return "NotSimplicial";
    case Errc::NotFunctorial: return "NotFunctorial";
    case Errc::NotChainMap: return "NotChainMap";
    case Errc::TwoOutOfThreeViolation: return "TwoOutOfThreeViolation";
    case Errc::NotClosedUnderComposition: return "NotClosedUnderComposition";
    case Errc::FactorizationMissing: return "FactorizationMissing";
    case Errc::LiftMissing: return "LiftMissing";
    case Errc::NoTerminalObject: return "NoTerminalObject";
    case Errc::UnknownVariant: return "UnknownVariant";
    case Errc::ObjectNotFound: return "ObjectNotFound";
    case Errc::NotBicommutative: return "NotBicommutative";
    case Errc::MissingLimit: return "MissingLimit";
    case Errc::NotFibrant: return "NotFibrant";
    case Errc::ChoiceNotFunctorial: return "ChoiceNotFunctorial";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

/**
 * Every failure carries a machine-checkable code plus a message naming the
 * offending entries.
 */
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace nervekit
