#pragma once

#include <stdexcept>
#include <string>

namespace jordanis {

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define JORDANIS_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

JORDANIS_DEFINE_ERROR(InvalidElement);
JORDANIS_DEFINE_ERROR(NoIdentity);
JORDANIS_DEFINE_ERROR(SingularMatrix);
JORDANIS_DEFINE_ERROR(NotPositiveDefinite);
JORDANIS_DEFINE_ERROR(DegeneratePair);
JORDANIS_DEFINE_ERROR(ZeroAlgebra);
JORDANIS_DEFINE_ERROR(NotAssociativeMetric);
JORDANIS_DEFINE_ERROR(RepeatedEigenvalues);
JORDANIS_DEFINE_ERROR(NotFormallyReal);
JORDANIS_DEFINE_ERROR(MaxResamples);
JORDANIS_DEFINE_ERROR(BadFrame);
JORDANIS_DEFINE_ERROR(NotApplicable);
JORDANIS_DEFINE_ERROR(RankOne);
JORDANIS_DEFINE_ERROR(NotNilpotent);
JORDANIS_DEFINE_ERROR(TrivialAlgebra);
JORDANIS_DEFINE_ERROR(NotJordan);
JORDANIS_DEFINE_ERROR(InternalCheck);
JORDANIS_DEFINE_ERROR(ParseError);

#undef JORDANIS_DEFINE_ERROR

}  // namespace jordanis
