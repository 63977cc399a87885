#pragma once

#include <stdexcept>
#include <string>

namespace cubedual {

// Base for all library errors so callers can catch everything from one place.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Poc-set axioms failed during construction (a <= a*, or antisymmetry broke).
struct PocViolation : Error {
    using Error::Error;
};

// Input set of halfspaces is not a filter base (some pair conflicts).
struct NotFilterBase : Error {
    using Error::Error;
};

// flip() was asked to move across a non-minimal halfspace.
struct NotMinimal : Error {
    using Error::Error;
};

// A point sits on one of the arrangement's lines.
struct NotGeneric : Error {
    using Error::Error;
};

// Randomized generation could not satisfy its constraints within the retry cap.
struct GenerationFailed : Error {
    using Error::Error;
};

// s_set(x, k) requires x strictly inside halfplane k.
struct XNotInK : Error {
    using Error::Error;
};

// A radius/margin request does not fit inside the window.
struct WindowTooSmall : Error {
    using Error::Error;
};

// Direction vector for a boundary query was (0,0).
struct ZeroDirection : Error {
    using Error::Error;
};

// Requested operation needs vertices beyond what the enumeration holds.
struct FrontierClipped : Error {
    using Error::Error;
};

// Operation requires a complete enumeration but the budget truncated it.
struct IncompleteGraph : Error {
    using Error::Error;
};

// Heights at the queried vertex (or a needed neighbor) are not trusted.
struct UntrustedHeights : Error {
    using Error::Error;
};

// The enumeration contains no consistent vertex to measure heights from.
struct NoConsistentVertex : Error {
    using Error::Error;
};

// Search cap exhausted (height oracle, etc.).
struct CapExceeded : Error {
    using Error::Error;
};

// project_to_side(pi, m) requires m not already in pi.
struct MInPi : Error {
    using Error::Error;
};

// consistent_geodesic endpoints span a segment lying inside a wall.
struct DegenerateSegment : Error {
    using Error::Error;
};

// gate() asked about a halfspace with an empty side in the enumeration.
struct EmptySide : Error {
    using Error::Error;
};

// Malformed input file / unknown schema version.
struct SchemaError : Error {
    using Error::Error;
};

// Internal cross-check failed: two independent routes disagreed.
struct CrossCheckFailed : Error {
    using Error::Error;
};

}  // namespace cubedual
