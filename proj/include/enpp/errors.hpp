#pragma once

#include <stdexcept>
#include <string>

namespace enpp {

/// Coarse failure class; the CLI maps these onto exit codes 2, 3 and 4.
enum class ErrorCategory { config, numerics, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define ENPP_DEFINE_ERROR(Name, Category)                         \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what)                        \
        : Error(ErrorCategory::Category, #Name ": " + what) {}    \
  };

// spectral_core
ENPP_DEFINE_ERROR(InvalidGrid, config)
ENPP_DEFINE_ERROR(GridMismatch, numerics)
ENPP_DEFINE_ERROR(NonNeutralField, numerics)
ENPP_DEFINE_ERROR(AsymmetricSpectrum, numerics)

// littlewood_paley
ENPP_DEFINE_ERROR(GridTooSmall, config)
ENPP_DEFINE_ERROR(BlockOutOfRange, numerics)

// enpp_dynamics
ENPP_DEFINE_ERROR(InvalidState, numerics)

// integrator
ENPP_DEFINE_ERROR(CflViolation, numerics)
ENPP_DEFINE_ERROR(InvariantDrift, numerics)
ENPP_DEFINE_ERROR(NoContraction, numerics)

// cli
ENPP_DEFINE_ERROR(SchemaError, config)
ENPP_DEFINE_ERROR(ConstraintError, config)
ENPP_DEFINE_ERROR(UnknownPreset, config)
ENPP_DEFINE_ERROR(SnapshotFormatError, io)
ENPP_DEFINE_ERROR(IoError, io)

#undef ENPP_DEFINE_ERROR

}  // namespace enpp
