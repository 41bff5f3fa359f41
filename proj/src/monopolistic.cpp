#include "feemarket/monopolistic.hpp"

#include <algorithm>

#include "feemarket/errors.hpp"

namespace feemarket {

MonopolisticOutcome monopolistic_outcome(std::span<const double> sorted_desc, std::size_t cap) noexcept {
  MonopolisticOutcome out;
  const std::size_t last = std::min(sorted_desc.size(), cap);
  for (std::size_t k = 1; k <= last; ++k) {
    const double price = sorted_desc[k - 1];
    const double revenue = static_cast<double>(k) * price;
    if (revenue >= out.revenue) {
      out.revenue = revenue;
      out.k_star = k;
      out.price = price;
    }
  }
  return out;
}

MonopolisticOutcome monopolistic_outcome_capped(const BidVector& b, std::size_t cap) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "cap must be at least 1");
  return monopolistic_outcome(b.values(), cap);
}

double pay_your_bid_revenue(const BidVector& b, std::size_t block_size) {
  if (block_size < 1) throw Error(ErrorCode::InvalidArgument, "block size must be at least 1");
  if (block_size >= b.size()) return 0.0;
  return static_cast<double>(block_size) * b[block_size];
}

}  // namespace feemarket
