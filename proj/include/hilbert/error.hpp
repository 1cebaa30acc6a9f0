#ifndef HILBERT_ERROR_HPP
#define HILBERT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hilbert {

/// Base of every error raised by the engine. `kind()` is the stable name
/// used in reports and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HILBERT_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(#Name, what) {}          \
  };

HILBERT_DEFINE_ERROR(ParseError)
HILBERT_DEFINE_ERROR(DegreeError)
HILBERT_DEFINE_ERROR(SingularPairing)
HILBERT_DEFINE_ERROR(AxiomViolation)
HILBERT_DEFINE_ERROR(UnknownBasisId)
HILBERT_DEFINE_ERROR(InvalidPart)
HILBERT_DEFINE_ERROR(TruncationExceeded)
HILBERT_DEFINE_ERROR(MixedDegree)
HILBERT_DEFINE_ERROR(SingularGram)
HILBERT_DEFINE_ERROR(IndexError)
HILBERT_DEFINE_ERROR(DomainError)
HILBERT_DEFINE_ERROR(OracleMissing)
HILBERT_DEFINE_ERROR(CapExceeded)

#undef HILBERT_DEFINE_ERROR

}  // namespace hilbert

#endif  // HILBERT_ERROR_HPP
