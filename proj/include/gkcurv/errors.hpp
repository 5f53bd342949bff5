#pragma once
#include <stdexcept>
#include <string>

namespace gkcurv {

/// Base of every error raised by the engine. `kind()` is the stable,
/// machine-readable tag used in reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define GKCURV_DEFINE_ERROR(Name)                                          \
    struct Name : Error {                                                  \
        explicit Name(const std::string& what = "") : Error(#Name, what) {} \
    }

GKCURV_DEFINE_ERROR(DivisionByZero);
GKCURV_DEFINE_ERROR(EvaluationPole);
GKCURV_DEFINE_ERROR(ParseError);
GKCURV_DEFINE_ERROR(ChartMismatch);
GKCURV_DEFINE_ERROR(SingularMap);
GKCURV_DEFINE_ERROR(NotClosed);
GKCURV_DEFINE_ERROR(NotBivector);
GKCURV_DEFINE_ERROR(ZeroSpinor);
GKCURV_DEFINE_ERROR(DegenerateOmega);
GKCURV_DEFINE_ERROR(DecompositionFailed);
GKCURV_DEFINE_ERROR(DimensionMismatch);
GKCURV_DEFINE_ERROR(WrongBidegree);
GKCURV_DEFINE_ERROR(VanishingVolume);
GKCURV_DEFINE_ERROR(ExtractionResidue);
GKCURV_DEFINE_ERROR(NotExactlyIntegrable);
GKCURV_DEFINE_ERROR(NotMeanZero);
GKCURV_DEFINE_ERROR(StepTooSmall);
GKCURV_DEFINE_ERROR(SceneError);
GKCURV_DEFINE_ERROR(NotExact);

#undef GKCURV_DEFINE_ERROR

}  // namespace gkcurv
