#pragma once

#include <stdexcept>
#include <string>

namespace itoric {

// All library failures derive from Error; the CLI maps BudgetExceeded to a
// distinct exit code, everything else is a usage or verification error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ITORIC_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

ITORIC_DEFINE_ERROR(BadParameters);
ITORIC_DEFINE_ERROR(DimensionMismatch);
ITORIC_DEFINE_ERROR(CompositeModulus);
ITORIC_DEFINE_ERROR(RankOutOfRange);
ITORIC_DEFINE_ERROR(IndexOutOfRange);
ITORIC_DEFINE_ERROR(BudgetExceeded);
ITORIC_DEFINE_ERROR(PreconditionFailed);
ITORIC_DEFINE_ERROR(NotPure);
ITORIC_DEFINE_ERROR(DimensionTooSmall);
ITORIC_DEFINE_ERROR(NotBalanced);

#undef ITORIC_DEFINE_ERROR

}  // namespace itoric
