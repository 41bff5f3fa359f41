#include "feemarket/strategic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "feemarket/errors.hpp"
#include "feemarket/monopolistic.hpp"
#include "feemarket/rng.hpp"

namespace feemarket {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_others(std::span<const double> others) {
  if (others.empty()) throw Error(ErrorCode::EmptyOthers, "the other bids must be non-empty");
}

// Smallest integer f >= 1 with f * w >= revenue, or nullopt when that
// exceeds 2^53 (such ranks can never beat the u = 1 candidate).
std::optional<std::size_t> min_count_covering(double revenue, double w) {
  const double ratio = std::ceil(revenue / w);
  if (!(ratio < 9007199254740992.0)) return std::nullopt;
  auto f = static_cast<std::size_t>(std::max(ratio, 1.0));
  while (f > 1 && static_cast<double>(f - 1) * w >= revenue) --f;
  while (static_cast<double>(f) * w < revenue) ++f;
  return f;
}

double strategic_price_unchecked(std::span<const double> w) {
  const auto base = monopolistic_outcome(w);
  const std::size_t m = w.size();
  double best = kInf;
  // For b below p^mon(w) the inserted bid wins iff (1 + num(w, b)) * b >= R.
  // On rank interval (w_{j+1}, w_j] that means b >= R / (j + 1).
  for (std::size_t j = base.k_star; j <= m; ++j) {
    const double covering = min_price_covering(base.revenue, j + 1);
    if (covering > w[j - 1]) continue;
    const double next = j < m ? w[j] : 0.0;
    best = std::min(best, std::max(covering, next));
  }
  return best;
}

MultibidResult multibid_price_unchecked(std::span<const double> w) {
  const auto base = monopolistic_outcome(w);
  const std::size_t m = w.size();
  MultibidResult best{kInf, 0.0, 0};
  for (std::size_t j = base.k_star; j <= m; ++j) {
    const auto covering = min_count_covering(base.revenue, w[j - 1]);
    if (!covering) continue;
    const std::size_t f = std::max(*covering, j + 1);
    const double b = min_price_covering(base.revenue, f);
    const std::size_t u = f - j;
    const double total = static_cast<double>(u) * b;
    if (total < best.total) best = MultibidResult{total, b, u};
  }
  return best;
}

}  // namespace

std::string_view to_string(PriceMode mode) noexcept {
  return mode == PriceMode::Single ? "single" : "multibid";
}

PriceMode parse_price_mode(std::string_view text) {
  if (text == "single") return PriceMode::Single;
  if (text == "multibid") return PriceMode::Multibid;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(text) + "' (expected single|multibid)");
}

double min_price_covering(double revenue, std::size_t count) noexcept {
  const double k = static_cast<double>(count);
  double b = revenue / k;
  while (k * b < revenue) b = std::nextafter(b, kInf);
  for (;;) {
    const double lower = std::nextafter(b, 0.0);
    if (lower > 0.0 && k * lower >= revenue) {
      b = lower;
    } else {
      break;
    }
  }
  return b;
}

double price_with_inserted(std::span<const double> w, double bid, std::size_t copies) noexcept {
  std::size_t rank = 0;
  double best = 0.0;
  double price = 0.0;
  auto consider = [&](double x) {
    ++rank;
    const double r = static_cast<double>(rank) * x;
    if (r >= best) {
      best = r;
      price = x;
    }
  };
  std::size_t idx = 0;
  while (idx < w.size() && w[idx] >= bid) consider(w[idx++]);
  for (std::size_t c = 0; c < copies; ++c) consider(bid);
  while (idx < w.size()) consider(w[idx++]);
  return price;
}

double strategic_price(std::span<const double> others) {
  require_others(others);
  const double p = strategic_price_unchecked(others);
  if (!(price_with_inserted(others, p, 1) <= p)) {
    throw std::logic_error("strategic price failed direct re-evaluation");
  }
  return p;
}

MultibidResult multibid_price(std::span<const double> others) {
  require_others(others);
  const auto result = multibid_price_unchecked(others);
  if (!(price_with_inserted(others, result.b_star, result.u_star) <= result.b_star)) {
    throw std::logic_error("multibid price failed direct re-evaluation");
  }
  return result;
}

double strategic_payment(std::span<const double> others, PriceMode mode) {
  require_others(others);
  return mode == PriceMode::Single ? strategic_price_unchecked(others) : multibid_price_unchecked(others).total;
}

double discount_ratio(double value, const BidVector& others, PriceMode mode) {
  validate_bid(value);
  const double payment = strategic_payment(others.values(), mode);
  if (value < payment) return 0.0;
  const double honest = price_with_inserted(others.values(), value, 1);
  return 1.0 - payment / honest;
}

namespace {

double delta_from(double value, double payment, double honest_price) {
  return value < payment ? 0.0 : 1.0 - payment / honest_price;
}

}  // namespace

std::vector<double> per_user_discounts(const BidVector& values, PriceMode mode) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorCode::TooFewBidders, "need at least two bidders");
  const auto v = values.values();
  const double honest = monopolistic_outcome(v).price;

  // others holds v without index i. Moving from i to i + 1 only changes
  // slot i (it held v[i + 1], now v[i]).
  std::vector<double> others(v.begin() + 1, v.end());
  std::vector<double> deltas(n);
  double payment = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) others[i - 1] = v[i - 1];
    // Equal values share the same leave-one-out vector.
    if (i == 0 || v[i] != v[i - 1]) payment = strategic_payment(others, mode);
    deltas[i] = delta_from(v[i], payment, honest);
  }
  return deltas;
}

DiscountStats discount_stats(const BidVector& values, PriceMode mode, const DiscountOptions& options) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorCode::TooFewBidders, "need at least two bidders");
  const auto v = values.values();
  const auto honest = monopolistic_outcome(v);

  DiscountStats stats;
  stats.k_star = honest.k_star;
  stats.argmax_user = 0;

  const bool subsample = options.avg_subsample && *options.avg_subsample < n && !options.keep_per_user;
  if (!subsample) {
    auto deltas = per_user_discounts(values, mode);
    stats.delta_max = deltas.front();
    stats.delta_avg = std::accumulate(deltas.begin(), deltas.end(), 0.0) / static_cast<double>(n);
    if (options.keep_per_user) stats.per_user = std::move(deltas);
    return stats;
  }

  std::vector<double> others(v.begin() + 1, v.end());
  stats.delta_max = delta_from(v[0], strategic_payment(others, mode), honest.price);

  // Partial Fisher-Yates over user indices.
  const std::size_t k = std::max<std::size_t>(*options.avg_subsample, 1);
  std::vector<std::size_t> users(n);
  std::iota(users.begin(), users.end(), std::size_t{0});
  Xoshiro256StarStar rng(options.subsample_seed);
  double sum = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t pick = s + static_cast<std::size_t>(bounded(rng, n - s));
    std::swap(users[s], users[pick]);
    const std::size_t i = users[s];
    std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i), others.begin());
    std::copy(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end(),
              others.begin() + static_cast<std::ptrdiff_t>(i));
    sum += delta_from(v[i], strategic_payment(others, mode), honest.price);
  }
  stats.delta_avg = sum / static_cast<double>(k);
  return stats;
}

double worst_case_discount(const BidVector& others, std::span<const double> support, PriceMode mode) {
  if (support.empty()) throw Error(ErrorCode::EmptySupport, "support must be non-empty");
  double worst = 0.0;
  for (double value : support) worst = std::max(worst, discount_ratio(value, others, mode));
  return worst;
}

}  // namespace feemarket
