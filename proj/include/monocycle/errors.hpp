#pragma once
#include <stdexcept>
#include <string>

namespace monocycle {

// One exception type per failure family so callers (and the CLI) can map them.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define MONOCYCLE_ERROR(Name)                                              \
  struct Name : Error {                                                    \
    using Error::Error;                                                    \
    const char* kind() const noexcept override { return #Name; }           \
  };

MONOCYCLE_ERROR(TagError)
MONOCYCLE_ERROR(ArithmeticError)
MONOCYCLE_ERROR(NameError)
MONOCYCLE_ERROR(ScopeError)
MONOCYCLE_ERROR(ParseError)
MONOCYCLE_ERROR(CurvatureError)
MONOCYCLE_ERROR(NotChainMap)
MONOCYCLE_ERROR(FlavorError)
MONOCYCLE_ERROR(DualityError)
MONOCYCLE_ERROR(TrivialityError)
MONOCYCLE_ERROR(FreeError)
MONOCYCLE_ERROR(LiftError)
MONOCYCLE_ERROR(FaithfulnessError)
MONOCYCLE_ERROR(WitnessError)
MONOCYCLE_ERROR(PerversityError)
MONOCYCLE_ERROR(IndeterminateError)
MONOCYCLE_ERROR(StructuralError)
MONOCYCLE_ERROR(EmptyError)
MONOCYCLE_ERROR(PurificationError)

#undef MONOCYCLE_ERROR

}  // namespace monocycle
