#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdens {

enum class errc {
    empty_motif,
    non_positive_period,
    duplicate_point,
    inconsistent_corner,
    negative_coordinate,
    discontinuous_sum,
    support_exceeds_reflection,
    k_out_of_range,
    negative_k,
    negative_radius,
    not_generic,
    inconsistent_function,
    invalid_argument,
    parse_error,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
    case errc::empty_motif: return "EmptyMotif";
    case errc::non_positive_period: return "NonPositivePeriod";
    case errc::duplicate_point: return "DuplicatePoint";
    case errc::inconsistent_corner: return "InconsistentCorner";
    case errc::negative_coordinate: return "NegativeCoordinate";
    case errc::discontinuous_sum: return "DiscontinuousSum";
    case errc::support_exceeds_reflection: return "SupportExceedsReflection";
    case errc::k_out_of_range: return "KOutOfRange";
    case errc::negative_k: return "NegativeK";
    case errc::negative_radius: return "NegativeRadius";
    case errc::not_generic: return "NotGeneric";
    case errc::inconsistent_function: return "InconsistentFunction";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace pdens
