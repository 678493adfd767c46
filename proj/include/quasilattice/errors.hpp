#pragma once

#include <stdexcept>
#include <string>

namespace ql {

// Every library failure derives from Error; name() is the stable identifier the
// CLI prints on exit code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define QL_DEFINE_ERROR(Type)                                  \
  class Type : public Error {                                  \
   public:                                                     \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  };

QL_DEFINE_ERROR(InvalidArgument)
QL_DEFINE_ERROR(OnGridLine)
QL_DEFINE_ERROR(IrregularIntersection)
QL_DEFINE_ERROR(IrregularPentagrid)
QL_DEFINE_ERROR(EmptyWindow)
QL_DEFINE_ERROR(ModulusOutOfRange)
QL_DEFINE_ERROR(PoleAt)
QL_DEFINE_ERROR(BaseCaseUnavailable)
QL_DEFINE_ERROR(NumericallyIllConditioned)
QL_DEFINE_ERROR(NotConverged)
QL_DEFINE_ERROR(TooLarge)
QL_DEFINE_ERROR(MixedParity)
QL_DEFINE_ERROR(TruncationExceedsPatch)

#undef QL_DEFINE_ERROR

}  // namespace ql
