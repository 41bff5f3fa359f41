#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "feemarket/bid_vector.hpp"

namespace feemarket {

/// How a strategic user may deviate: shade a single bid, or split demand
/// into several equal bids.
enum class PriceMode { Single, Multibid };

std::string_view to_string(PriceMode mode) noexcept;
/// Accepts "single" / "multibid"; throws Error{InvalidArgument}.
PriceMode parse_price_mode(std::string_view text);

/// Smallest double b with count * b >= revenue under floating point
/// evaluation. This is the canonical representative of revenue / count used
/// wherever a price is derived from a revenue target.
double min_price_covering(double revenue, std::size_t count) noexcept;

/// Monopolistic price of `sorted_desc` with `copies` extra bids of value
/// `bid`, evaluated without materializing the merged vector.
double price_with_inserted(std::span<const double> sorted_desc, double bid, std::size_t copies) noexcept;

/// Lowest single bid that is still included when the other bids are fixed.
/// The minimum lies in {R/m : m > k*} U {others[j]}; the returned value is
/// re-checked by direct evaluation. Throws Error{EmptyOthers}.
double strategic_price(std::span<const double> others);
inline double strategic_price(const BidVector& others) { return strategic_price(others.values()); }

struct MultibidResult {
  double total = 0.0;   ///< u_star * b_star, the user's total payment
  double b_star = 0.0;  ///< per-transaction bid
  std::size_t u_star = 0;

  friend bool operator==(const MultibidResult&, const MultibidResult&) = default;
};

/// Cheapest way to get all of u equal bids included, in closed form.
///
/// With w = others sorted descending and R = R(w), for every rank
/// j in [k*(w), |w|] take f(j) = max(ceil(R / w_j), j + 1); the candidate pays
/// R / f(j) on each of f(j) - j bids. The minimizing j gives (b*, u*).
/// Throws Error{EmptyOthers}.
MultibidResult multibid_price(std::span<const double> others);
inline MultibidResult multibid_price(const BidVector& others) { return multibid_price(others.values()); }

/// Payment of the cheapest winning deviation under `mode`.
double strategic_payment(std::span<const double> others, PriceMode mode);

/// 0 when the user cannot win even strategically, otherwise
/// 1 - p_mode(others) / p_honest(value, others).
double discount_ratio(double value, const BidVector& others, PriceMode mode);

struct DiscountStats {
  double delta_avg = 0.0;
  double delta_max = 0.0;
  std::size_t argmax_user = 0;  ///< index into the sorted bid vector
  std::size_t k_star = 0;       ///< k* of the honest profile
  std::optional<std::vector<double>> per_user;
};

struct DiscountOptions {
  /// Average over a uniform sample (without replacement) of this many users
  /// instead of all of them.
  std::optional<std::size_t> avg_subsample;
  std::uint64_t subsample_seed = 0;
  /// Fill DiscountStats::per_user (forces an exact pass over all users).
  bool keep_per_user = false;
};

/// Per-profile discount statistics. delta_max is taken at the highest
/// bidder. Throws Error{TooFewBidders} when fewer than two bids.
DiscountStats discount_stats(const BidVector& values, PriceMode mode, const DiscountOptions& options = {});

/// delta_i for every user i, in sorted order. O(n^2).
std::vector<double> per_user_discounts(const BidVector& values, PriceMode mode);

/// max over v in support of discount_ratio(v, others, mode).
/// Throws Error{EmptySupport}.
double worst_case_discount(const BidVector& others, std::span<const double> support, PriceMode mode);

}  // namespace feemarket
