#pragma once

#include <stdexcept>
#include <string>

namespace spinflow {

/// Base class for all spinflow errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Hermitian symmetry of a spectral field is broken beyond tolerance.
/// Usually signals a buggy multiplier upstream, not bad input data.
struct SymmetryViolation : Error {
    using Error::Error;
};

/// A helical basis was requested at the zero wavevector.
struct ZeroWavevector : Error {
    using Error::Error;
};

/// A negative power of |D| was applied to a field with nonzero mean mode.
struct NegativePowerAtZeroMode : Error {
    using Error::Error;
};

/// A wave spec's integer wavevector would be removed by dealiasing.
struct UnrepresentableWavevector : Error {
    using Error::Error;
};

/// The solver state exceeded the blow-up sentinel or produced NaN.
struct BlowupDetected : Error {
    BlowupDetected(const std::string& msg, double time) : Error(msg), t(time) {}
    double t;
};

/// weak_strong_gamma was called on two numerically identical fields.
struct IdenticalFields : Error {
    using Error::Error;
};

/// A balance audit requires a uniformly spaced time series.
struct NonUniformSeries : Error {
    using Error::Error;
};

/// Field file I/O failures carry the byte offset where parsing stopped.
struct BadMagic : Error {
    using Error::Error;
};
struct VersionMismatch : Error {
    using Error::Error;
};
struct TruncatedFile : Error {
    using Error::Error;
};

}  // namespace spinflow
