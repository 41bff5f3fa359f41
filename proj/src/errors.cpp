#include "feemarket/errors.hpp"

namespace feemarket {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveBid: return "NonPositiveBid";
    case ErrorCode::NonFiniteBid: return "NonFiniteBid";
    case ErrorCode::EmptyOthers: return "EmptyOthers";
    case ErrorCode::TooFewBidders: return "TooFewBidders";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateTxId: return "DuplicateTxId";
    case ErrorCode::MalformedBlock: return "MalformedBlock";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

}  // namespace feemarket
