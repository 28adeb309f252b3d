#pragma once

#include <stdexcept>
#include <string>

namespace pairedfd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PAIREDFD_DEFINE_ERROR(Name)              \
    class Name : public Error {                  \
    public:                                      \
        using Error::Error;                      \
    }

// Data model and quadrature.
PAIREDFD_DEFINE_ERROR(DimensionError);
PAIREDFD_DEFINE_ERROR(DegenerateGrid);
PAIREDFD_DEFINE_ERROR(PreprocessRequired);
PAIREDFD_DEFINE_ERROR(PairingError);

// Ranking and null inference.
PAIREDFD_DEFINE_ERROR(DegenerateSample);
PAIREDFD_DEFINE_ERROR(SizeError);
PAIREDFD_DEFINE_ERROR(AllZeroScores);

// FPCA.
PAIREDFD_DEFINE_ERROR(InsufficientCoverage);
PAIREDFD_DEFINE_ERROR(NumericalError);
PAIREDFD_DEFINE_ERROR(EmptyCurve);

// Input parsing.
PAIREDFD_DEFINE_ERROR(SchemaError);
PAIREDFD_DEFINE_ERROR(ManifestError);

#undef PAIREDFD_DEFINE_ERROR

}  // namespace pairedfd
