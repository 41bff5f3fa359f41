#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "feemarket/bid_vector.hpp"

namespace feemarket {

/// Revenue-maximizing uniform price for a set of bids.
///
/// With bids b[1] >= ... >= b[n], revenue = max_k k * b[k], k_star is the
/// largest maximizing k and price = b[k_star]. An empty bid set yields all
/// zeros.
struct MonopolisticOutcome {
  double revenue = 0.0;
  std::size_t k_star = 0;
  double price = 0.0;

  friend bool operator==(const MonopolisticOutcome&, const MonopolisticOutcome&) = default;
};

/// Single scan over k in [1, min(n, cap)]; ties resolved by exact floating
/// point equality toward the larger k.
MonopolisticOutcome monopolistic_outcome(std::span<const double> sorted_desc,
                                         std::size_t cap = std::numeric_limits<std::size_t>::max()) noexcept;

inline MonopolisticOutcome monopolistic_outcome(const BidVector& b) noexcept {
  return monopolistic_outcome(b.values());
}

/// Same as monopolistic_outcome with at most `cap` included bids. cap >= 1.
MonopolisticOutcome monopolistic_outcome_capped(const BidVector& b, std::size_t cap);

/// Equilibrium revenue of the pay-your-bid rule with block size l: every
/// included bidder pays the (l+1)-th highest value, so l * b[l+1] when l < n
/// and 0 otherwise (bids drop to an arbitrarily small fee).
double pay_your_bid_revenue(const BidVector& b, std::size_t block_size);

}  // namespace feemarket
