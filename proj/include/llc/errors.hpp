#pragma once

#include <stdexcept>
#include <string>

namespace llc {

// Base for every failure raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define LLC_ERROR(Name)                                   \
    struct Name : Error {                                 \
        explicit Name(const std::string& m) : Error(m) {} \
    }

LLC_ERROR(InvalidMaterial);
LLC_ERROR(DegenerateBimaterial);
LLC_ERROR(PoleAtNonPositiveInteger);
LLC_ERROR(OnBranchCut);
LLC_ERROR(QuadratureNonConvergence);
LLC_ERROR(PoleOnContour);
LLC_ERROR(LambdaDependenceDetected);
LLC_ERROR(ExtrapolationUnstable);
LLC_ERROR(LoadDecayTooSlow);
LLC_ERROR(NonRealOutput);
LLC_ERROR(ConfigError);

#undef LLC_ERROR

}  // namespace llc
