#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace feemarket {

enum class ErrorCode {
  NonPositiveBid,
  NonFiniteBid,
  EmptyOthers,
  TooFewBidders,
  EmptySupport,
  LengthMismatch,
  InvalidArgument,
  DuplicateTxId,
  MalformedBlock,
  BudgetExceeded,
  IndexOutOfRange,
  FileNotFound,
  MalformedRow,
  EmptyPool,
  IoError,
  InvalidConfig,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Domain error raised by every library entry point. what() is
// "<CodeName>: <detail>" so the CLI can print it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace feemarket
