#include "feemarket/bid_vector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "feemarket/errors.hpp"

namespace feemarket {

void validate_bid(double bid) {
  if (!std::isfinite(bid)) {
    throw Error(ErrorCode::NonFiniteBid, "bid is not a finite number");
  }
  if (bid <= 0.0) {
    throw Error(ErrorCode::NonPositiveBid, "bid " + std::to_string(bid) + " is not positive");
  }
}

BidVector BidVector::from(std::vector<double> raw) {
  for (double b : raw) validate_bid(b);
  std::sort(raw.begin(), raw.end(), std::greater<>());
  return BidVector(std::move(raw));
}

BidVector BidVector::with(double bid) const { return with_copies(bid, 1); }

BidVector BidVector::with_copies(double bid, std::size_t copies) const {
  validate_bid(bid);
  std::vector<double> out;
  out.reserve(bids_.size() + copies);
  auto pos = std::upper_bound(bids_.begin(), bids_.end(), bid, std::greater<>());
  out.insert(out.end(), bids_.begin(), pos);
  out.insert(out.end(), copies, bid);
  out.insert(out.end(), pos, bids_.end());
  return BidVector(std::move(out));
}

BidVector BidVector::without(std::size_t i) const {
  if (i >= bids_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(i) + " out of range");
  }
  std::vector<double> out;
  out.reserve(bids_.size() - 1);
  out.insert(out.end(), bids_.begin(), bids_.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), bids_.begin() + static_cast<std::ptrdiff_t>(i) + 1, bids_.end());
  return BidVector(std::move(out));
}

BidVector BidVector::scaled(double factor) const {
  validate_bid(factor);
  std::vector<double> out(bids_);
  for (double& b : out) {
    b *= factor;
    validate_bid(b);
  }
  return BidVector(std::move(out));
}

std::size_t num_at_least(std::span<const double> sorted_desc, double z) noexcept {
  auto it = std::partition_point(sorted_desc.begin(), sorted_desc.end(),
                                 [z](double x) { return x >= z; });
  return static_cast<std::size_t>(it - sorted_desc.begin());
}

}  // namespace feemarket
