#pragma once

#include <stdexcept>
#include <string>

namespace boidol {

/// Base of all library errors; `kind()` is the stable machine name.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define BOIDOL_ERROR(Name)                                                   \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& what) : Error(#Name, what) {}           \
  }

BOIDOL_ERROR(NotProperlyConverging);
BOIDOL_ERROR(TargetNotInLimitSet);
BOIDOL_ERROR(QuadratureUnderresolved);
BOIDOL_ERROR(WindowTooSmall);
BOIDOL_ERROR(AsymmetricGrid);
BOIDOL_ERROR(NoConvergence);
BOIDOL_ERROR(PlanInfeasible);
BOIDOL_ERROR(MissingLimitPoint);
BOIDOL_ERROR(ZoneOverlap);
BOIDOL_ERROR(NyquistViolation);
BOIDOL_ERROR(GridMismatch);
BOIDOL_ERROR(FormatError);

#undef BOIDOL_ERROR

}  // namespace boidol
