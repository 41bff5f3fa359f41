#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace feemarket {

/// Fee bids sorted in descending order. Every bid is finite and strictly
/// positive; the empty vector is allowed.
class BidVector {
 public:
  BidVector() = default;

  /// Validates and sorts. Throws Error{NonFiniteBid} / Error{NonPositiveBid}.
  static BidVector from(std::vector<double> raw);

  std::size_t size() const noexcept { return bids_.size(); }
  bool empty() const noexcept { return bids_.empty(); }

  /// 0-based: operator[](0) is the highest bid.
  double operator[](std::size_t i) const { return bids_[i]; }
  std::span<const double> values() const noexcept { return bids_; }
  const std::vector<double>& to_vector() const noexcept { return bids_; }

  /// Copy with one more bid inserted at its sorted position.
  BidVector with(double bid) const;
  /// Copy with `copies` additional bids of the same value.
  BidVector with_copies(double bid, std::size_t copies) const;
  /// Copy with the bid at (sorted) index i removed.
  BidVector without(std::size_t i) const;
  /// Every bid multiplied by factor (> 0).
  BidVector scaled(double factor) const;

  friend bool operator==(const BidVector&, const BidVector&) = default;

 private:
  explicit BidVector(std::vector<double> sorted) : bids_(std::move(sorted)) {}

  std::vector<double> bids_;
};

/// |{i : bids[i] >= z}| by binary search over a descending range.
std::size_t num_at_least(std::span<const double> sorted_desc, double z) noexcept;

inline std::size_t num_at_least(const BidVector& b, double z) noexcept {
  return num_at_least(b.values(), z);
}

/// Throws unless bid is finite and > 0.
void validate_bid(double bid);

}  // namespace feemarket
