#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pants {

enum class Errc {
    // word validation
    NotClosed,
    Backtracks,
    SeamRunTooLong,
    ShortBoundarySubword,
    NoBoundaryEdge,
    InvalidLabel,
    InvalidBoundaryRun,
    NoConnectingSeam,
    // paths
    InvalidPath,
    BudgetExceeded,
    // geometry
    NonPositiveLength,
    IdentityElement,
    ParabolicOrElliptic,
    TraceOverflow,
    DomainOverlap,
    NotPrimitive,
    NumericalDegeneracy,
    UnresolvedCrossing,
    // bounds
    HypothesisViolated,
    InvalidArgument,
    // a failed self-check; always a bug
    InternalInconsistency,
};

constexpr std::string_view errc_name(Errc c) {
    switch (c) {
    case Errc::NotClosed: return "NotClosed";
    case Errc::Backtracks: return "Backtracks";
    case Errc::SeamRunTooLong: return "SeamRunTooLong";
    case Errc::ShortBoundarySubword: return "ShortBoundarySubword";
    case Errc::NoBoundaryEdge: return "NoBoundaryEdge";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::InvalidBoundaryRun: return "InvalidBoundaryRun";
    case Errc::NoConnectingSeam: return "NoConnectingSeam";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NonPositiveLength: return "NonPositiveLength";
    case Errc::IdentityElement: return "IdentityElement";
    case Errc::ParabolicOrElliptic: return "ParabolicOrElliptic";
    case Errc::TraceOverflow: return "TraceOverflow";
    case Errc::DomainOverlap: return "DomainOverlap";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::NumericalDegeneracy: return "NumericalDegeneracy";
    case Errc::UnresolvedCrossing: return "UnresolvedCrossing";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    }
    return "Unknown";
}

/// Domain error carrying a machine-readable code. `index` locates the
/// offending position (letter, subword, ...) when one exists.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code),
          index_(index) {}

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

  private:
    Errc code_;
    std::optional<std::size_t> index_;
};

namespace detail {
inline void check_internal(bool ok, const char* what) {
    if (!ok)
        throw Error(Errc::InternalInconsistency, what);
}
} // namespace detail

} // namespace pants
