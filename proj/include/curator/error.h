#ifndef CURATOR_ERROR_H_
#define CURATOR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace curator {

enum class ErrorCode {
  kMissingFile,
  kMalformedSchema,
  kInvalidSpec,
  kConfigSyntax,
  kUnknownKey,
  kMissingKey,
  kInvariantViolation,
  kIncompatibleCombination,
  kEmptyDataset,
  kMissingDomainField,
  kUnknownRelation,
  kUnknownUnit,
  kNonPositiveValue,
  kEmptyInput,
  kDigestMismatch,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

class Error: public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) { }

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace curator

#endif  // CURATOR_ERROR_H_
