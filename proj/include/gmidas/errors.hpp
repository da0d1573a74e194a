#pragma once

#include <stdexcept>
#include <string>

namespace gmidas {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- data loading / validation ---

struct MalformedRow : Error {
    MalformedRow(const std::string& file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line_number(line) {}
    std::size_t line_number;
};

struct DuplicateDate : Error {
    using Error::Error;
};

struct NonPositivePrice : Error {
    using Error::Error;
};

struct WrongKind : Error {
    using Error::Error;
};

struct EmptyPeriod : Error {
    using Error::Error;
};

struct InsufficientLagHistory : Error {
    InsufficientLagHistory(const std::string& what, const std::string& first_usable)
        : Error(what), first_usable_month(first_usable) {}
    std::string first_usable_month;
};

struct RegressorGap : Error {
    using Error::Error;
};

// --- statistics ---

struct TooFewObservations : Error {
    using Error::Error;
};

struct SkewUndefined : Error {
    using Error::Error;
};

struct SingularRegression : Error {
    using Error::Error;
};

// --- model / midas ---

struct InvalidShape : Error {
    using Error::Error;
};

struct NonPositiveTau : Error {
    NonPositiveTau(const std::string& what, std::size_t period)
        : Error(what), period_index(period) {}
    std::size_t period_index;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct InfeasibleParams : Error {
    using Error::Error;
};

// --- estimation ---

struct NoFeasibleStart : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct SingularHessian : Error {
    using Error::Error;
};

// --- forecasting ---

struct EmptySeries : Error {
    using Error::Error;
};

struct RangeBeforeFitWindow : Error {
    using Error::Error;
};

// --- index builder ---

struct DegeneratePanel : Error {
    using Error::Error;
};

// --- configuration / CLI ---

struct InvalidConfig : Error {
    using Error::Error;
};

}  // namespace gmidas
