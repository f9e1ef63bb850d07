#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hopeedi {

enum class ErrorCode {
  Io,
  MalformedRow,
  UnknownLabel,
  EmptyFile,
  UnlabeledInput,
  TooFewRows,
  BadFraction,
  EmptyCorpus,
  EmptyVocabulary,
  NoProfiles,
  EmptyText,
  DimensionMismatch,
  NonNumericValue,
  RowCountMismatch,
  SingleClass,
  EmptyPredictions,
  LengthMismatch,
  BadArgument,
  BadFormat,
  Config,
};

std::string_view error_code_name(ErrorCode code);

// Every library failure is reported through this type. `line` is 1-based and
// 0 when the failure is not tied to an input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& stage() const noexcept { return stage_; }
  // The message without the code/line prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

  // Returns a copy of this error tagged with a pipeline stage name.
  Error with_stage(std::string stage) const;

  // Config errors map to a different CLI exit status than input errors.
  bool is_config_error() const noexcept { return code_ == ErrorCode::Config; }

 private:
  ErrorCode code_;
  std::size_t line_;
  std::string detail_;
  std::string stage_;
};

}  // namespace hopeedi
