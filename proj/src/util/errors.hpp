#pragma once

#include <stdexcept>
#include <string>

namespace ilpg {

enum class ErrorCode {
    // usage / parameter errors
    Usage,
    InvalidInterval,
    // data errors
    MalformedXml,
    MissingIdentifier,
    DuplicateElementId,
    LabelConflict,
    UnknownNode,
    UnknownLaw,
    OrphanElement,
    UnresolvableSourceEid,
    SchemaError,
    IntervalError,
    InfeasibleSpec,
    DataError,
    // environment
    IoError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const { return code_; }

    // process exit code contract: 0 ok, 1 usage, 2 data, 3 I/O
    int exit_code() const {
        switch (code_) {
            case ErrorCode::Usage:
            case ErrorCode::InvalidInterval: return 1;
            case ErrorCode::IoError: return 3;
            default: return 2;
        }
    }

  private:
    ErrorCode code_;
};

} // namespace ilpg
