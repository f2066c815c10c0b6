#pragma once

#include <stdexcept>
#include <string>

namespace aflt {

/// Base class of every error raised by the library. `code()` is the
/// machine-readable tag that ends up in reports and CLI output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define AFLT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what = #Name)               \
        : Error(#Name, what) {}                                  \
  };

AFLT_DEFINE_ERROR(ReduciblePolynomial)
AFLT_DEFINE_ERROR(NotSquarefree)
AFLT_DEFINE_ERROR(DegenerateExtension)
AFLT_DEFINE_ERROR(ZeroElement)
AFLT_DEFINE_ERROR(ZeroIdeal)
AFLT_DEFINE_ERROR(FieldMismatch)
AFLT_DEFINE_ERROR(RankNotReached)
AFLT_DEFINE_ERROR(BoundExceeded)
AFLT_DEFINE_ERROR(Uncertified)
AFLT_DEFINE_ERROR(UncertifiedGenerators)
AFLT_DEFINE_ERROR(ExtensionBudgetExceeded)
AFLT_DEFINE_ERROR(EquationNotSatisfied)
AFLT_DEFINE_ERROR(DegenerateTriple)
AFLT_DEFINE_ERROR(WrongShape)
AFLT_DEFINE_ERROR(SingularLambda)
AFLT_DEFINE_ERROR(ThresholdNotMet)
AFLT_DEFINE_ERROR(TowerMismatch)
AFLT_DEFINE_ERROR(NotAUnit)
AFLT_DEFINE_ERROR(ResidueOutsideCyclic)
AFLT_DEFINE_ERROR(InvalidInput)

#undef AFLT_DEFINE_ERROR

}  // namespace aflt
