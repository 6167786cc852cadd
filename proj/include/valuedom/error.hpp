#pragma once

#include <stdexcept>
#include <string>

namespace valuedom {

/// Machine-readable failure categories. Each value corresponds to one
/// documented error condition of the library surface; the CLI maps any
/// thrown Error to exit status 1.
enum class Errc {
    non_square,
    negative_entry,
    not_converged,
    not_strictly_positive,
    spectral_radius_too_large,
    parse_error,
    shape_mismatch,
    domain_error,
    non_positive_price,
    non_positive_wage,
    non_positive_input,
    non_positive_reduction,
    normalization_violated,
    rate_beyond_technical_max,
    rate_beyond_feasible_max,
    surplus_absent,
    zero_capital_stock,
    bad_rate_order,
    dimension_not_3,
    empty_slice,
    outside_compatibility_interval,
    infeasible_lp,
    share_outside_cone,
    degenerate_collinearity,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::non_square: return "NonSquare";
        case Errc::negative_entry: return "NegativeEntry";
        case Errc::not_converged: return "NotConverged";
        case Errc::not_strictly_positive: return "NotStrictlyPositive";
        case Errc::spectral_radius_too_large: return "SpectralRadiusTooLarge";
        case Errc::parse_error: return "ParseError";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::domain_error: return "DomainError";
        case Errc::non_positive_price: return "NonPositivePrice";
        case Errc::non_positive_wage: return "NonPositiveWage";
        case Errc::non_positive_input: return "NonPositiveInput";
        case Errc::non_positive_reduction: return "NonPositiveReduction";
        case Errc::normalization_violated: return "NormalizationViolated";
        case Errc::rate_beyond_technical_max: return "RateBeyondTechnicalMax";
        case Errc::rate_beyond_feasible_max: return "RateBeyondFeasibleMax";
        case Errc::surplus_absent: return "SurplusAbsent";
        case Errc::zero_capital_stock: return "ZeroCapitalStock";
        case Errc::bad_rate_order: return "BadRateOrder";
        case Errc::dimension_not_3: return "DimensionNot3";
        case Errc::empty_slice: return "EmptySlice";
        case Errc::outside_compatibility_interval: return "OutsideCompatibilityInterval";
        case Errc::infeasible_lp: return "InfeasibleLP";
        case Errc::share_outside_cone: return "ShareOutsideCone";
        case Errc::degenerate_collinearity: return "DegenerateCollinearity";
    }
    return "UnknownError";
}

/// Exception carrying an Errc plus a human-readable message that names the
/// violated assumption (e.g. "Hawkins-Simon violated: rho(A~) = 1.02").
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace valuedom
