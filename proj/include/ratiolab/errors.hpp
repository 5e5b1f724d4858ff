#pragma once

#include <stdexcept>
#include <string>

namespace ratiolab {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (non-finite, negative where forbidden, ...).
struct DomainError : Error {
    using Error::Error;
};

// Summary statistics that make the requested inversion ill-posed (e.g. t = 0,
// where the implied pooled SD is unbounded).
struct DegenerateStatisticsError : Error {
    using Error::Error;
};

// Summary statistics that contradict each other (e.g. the reported t and the
// mean difference have opposite signs).
struct InconsistentSummaryError : Error {
    using Error::Error;
};

// Too few observations for the requested analysis.
struct SampleSizeError : Error {
    using Error::Error;
};

// Rank-deficient design matrix.
struct SingularFitError : Error {
    using Error::Error;
};

// Dichotomization produced an empty group.
struct DegenerateSplitError : Error {
    using Error::Error;
};

// Correlation undefined because a column has zero variance.
struct UndefinedCorrelationError : Error {
    using Error::Error;
};

// Positivity fraction undefined (p = n = 0).
struct UndefinedFractionError : Error {
    using Error::Error;
};

// CSV / config parse failure; message lists offending line numbers.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace ratiolab
