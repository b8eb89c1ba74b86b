#pragma once

#include <stdexcept>
#include <string>

namespace abcat {

// Base of every error raised by the library. The CLI maps these onto exit
// codes: BudgetExceeded is a resource error, everything else is an input error.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define ABCAT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

// category syntax
ABCAT_DEFINE_ERROR(SyntaxError)
ABCAT_DEFINE_ERROR(NameError)

// reduction
ABCAT_DEFINE_ERROR(BudgetExceeded)

// grammars
ABCAT_DEFINE_ERROR(UndeclaredSymbol)
ABCAT_DEFINE_ERROR(EmptyRhs)
ABCAT_DEFINE_ERROR(EmptyLanguage)
ABCAT_DEFINE_ERROR(UnknownTerminal)

// gadgets and encoding
ABCAT_DEFINE_ERROR(ShapeError)
ABCAT_DEFINE_ERROR(FreshnessError)
ABCAT_DEFINE_ERROR(EqualCategories)
ABCAT_DEFINE_ERROR(DuplicateCategory)
ABCAT_DEFINE_ERROR(NotGnf2)
ABCAT_DEFINE_ERROR(UncoveredTerminal)
ABCAT_DEFINE_ERROR(UnknownSymbol)

#undef ABCAT_DEFINE_ERROR

}  // namespace abcat
