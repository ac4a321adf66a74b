#pragma once

#include <stdexcept>
#include <string>

namespace relarea {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define RELAREA_ERROR(Name)                  \
  struct Name : Error {                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

RELAREA_ERROR(SelfIntersecting);
RELAREA_ERROR(DegenerateCurve);
RELAREA_ERROR(OutOfChart);
RELAREA_ERROR(TraceMismatchAtTips);
RELAREA_ERROR(NonIntegrable);
RELAREA_ERROR(MuTooLarge);
RELAREA_ERROR(NoConvergence);
RELAREA_ERROR(MonotonicityLoss);
RELAREA_ERROR(DisconnectedSlice);
RELAREA_ERROR(TransversalityLost);
RELAREA_ERROR(DegenerateCritical);
RELAREA_ERROR(MultipleExtrema);
RELAREA_ERROR(GeometryMismatch);
RELAREA_ERROR(ConfigError);

#undef RELAREA_ERROR

}  // namespace relarea
