#ifndef GEOCUT_ERRORS_HPP_
#define GEOCUT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace geocut {

// Base for all domain errors. `name()` is the short machine-readable tag the
// CLI prints next to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define GEOCUT_DEFINE_ERROR(NAME)                          \
  class NAME##Error : public Error {                       \
   public:                                                 \
    explicit NAME##Error(const std::string& what)          \
        : Error(#NAME, what) {}                            \
  };

GEOCUT_DEFINE_ERROR(EmptySupport)
GEOCUT_DEFINE_ERROR(RejectionStall)
GEOCUT_DEFINE_ERROR(KTooLarge)
GEOCUT_DEFINE_ERROR(UnitWeightOnComplete)
GEOCUT_DEFINE_ERROR(ZeroVolume)
GEOCUT_DEFINE_ERROR(RegimeUnspecified)
GEOCUT_DEFINE_ERROR(InfiniteRadiusUnitWeight)
GEOCUT_DEFINE_ERROR(UnsupportedDimension)
GEOCUT_DEFINE_ERROR(AxisAlignedNormalRequired)
GEOCUT_DEFINE_ERROR(IsolatedNode)
GEOCUT_DEFINE_ERROR(NoConvergence)
GEOCUT_DEFINE_ERROR(LengthMismatch)
GEOCUT_DEFINE_ERROR(SingleCluster)
GEOCUT_DEFINE_ERROR(AllDegenerate)
GEOCUT_DEFINE_ERROR(Precondition)
GEOCUT_DEFINE_ERROR(Config)

#undef GEOCUT_DEFINE_ERROR

}  // namespace geocut

#endif  // GEOCUT_ERRORS_HPP_
