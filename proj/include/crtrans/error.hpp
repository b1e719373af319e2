#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crtrans {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define CRTRANS_DEFINE_ERROR(Name)                                                                 \
  class Name : public Error {                                                                      \
  public:                                                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}                           \
  }

CRTRANS_DEFINE_ERROR(VarSpaceMismatch);
CRTRANS_DEFINE_ERROR(DimensionMismatch);
CRTRANS_DEFINE_ERROR(UnknownVariable);
CRTRANS_DEFINE_ERROR(ZeroDivisor);
CRTRANS_DEFINE_ERROR(ZeroInput);
CRTRANS_DEFINE_ERROR(NotHermitian);
CRTRANS_DEFINE_ERROR(NotOnSurface);
CRTRANS_DEFINE_ERROR(SingularPoint);
CRTRANS_DEFINE_ERROR(NoGraphForm);
CRTRANS_DEFINE_ERROR(DegenerateDefiningFunction);
CRTRANS_DEFINE_ERROR(AllPivotsVanish);
CRTRANS_DEFINE_ERROR(NotMappedIn);
CRTRANS_DEFINE_ERROR(ImageSingular);
CRTRANS_DEFINE_ERROR(ContainedInTarget);
CRTRANS_DEFINE_ERROR(IdentityFailure);
CRTRANS_DEFINE_ERROR(InvalidInput);
CRTRANS_DEFINE_ERROR(NonIntegerExponent);

#undef CRTRANS_DEFINE_ERROR

/// Parse failure with the byte offset of the offending token.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error("SyntaxError at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

} // namespace crtrans
