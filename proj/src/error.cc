#include "hopeedi/error.h"

namespace hopeedi {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return "IoError";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::UnlabeledInput: return "UnlabeledInput";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::BadFraction: return "BadFraction";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::NoProfiles: return "NoProfiles";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonNumericValue: return "NonNumericValue";
    case ErrorCode::RowCountMismatch: return "RowCountMismatch";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::EmptyPredictions: return "EmptyPredictions";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::Config: return "ConfigError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           std::size_t line) {
  std::string out(error_code_name(code));
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(format_message(code, message, line)),
      code_(code),
      line_(line),
      detail_(message) {}

Error Error::with_stage(std::string stage) const {
  // Rebuild with the stage prefixed so what() carries it too.
  Error tagged(*this);
  static_cast<std::runtime_error&>(tagged) =
      std::runtime_error("[" + stage + "] " + what());
  tagged.stage_ = std::move(stage);
  return tagged;
}

}  // namespace hopeedi
