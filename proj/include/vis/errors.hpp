#pragma once

#include <stdexcept>
#include <string>

namespace vis {

class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define VIS_ERROR(Name)                                                      \
  class Name : public Error {                                                \
  public:                                                                    \
    explicit Name(const std::string& what) : Error(#Name, what) {}           \
  };

VIS_ERROR(NonRationalSpectrum)
VIS_ERROR(NotDiagonalizable)
VIS_ERROR(NotClosedUnderBracket)
VIS_ERROR(NotInvolution)
VIS_ERROR(NotAutomorphism)
VIS_ERROR(NotCartan)
VIS_ERROR(NotHermitianType)
VIS_ERROR(NotTypeStable)
VIS_ERROR(NotStable)
VIS_ERROR(UnsupportedFamily)
VIS_ERROR(UnsupportedRow)
VIS_ERROR(ParameterOutOfRange)
VIS_ERROR(FingerprintMismatch)
VIS_ERROR(RankMismatch)
VIS_ERROR(ConditionFailed)
VIS_ERROR(DegenerateFunctional)
VIS_ERROR(IwasawaNonConvergence)
VIS_ERROR(DatasetError)

#undef VIS_ERROR

} // namespace vis
