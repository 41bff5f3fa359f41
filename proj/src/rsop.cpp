#include "feemarket/rsop.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "feemarket/errors.hpp"
#include "feemarket/monopolistic.hpp"
#include "feemarket/rng.hpp"

namespace feemarket {
namespace {

constexpr double kConjectureSlack = 1e-12;

struct SidePrices {
  double p_A = 0.0;
  double p_B = 0.0;
};

// Fast path for sorted bids and a bitmask partition: one pass builds both
// monopolistic prices, a second counts winners.
double revenue_for_mask(std::span<const double> sorted_desc, std::uint64_t mask) noexcept {
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  double best_a = 0.0;
  double best_b = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
  for (std::size_t i = 0; i < sorted_desc.size(); ++i) {
    const double x = sorted_desc[i];
    if ((mask >> i) & 1U) {
      const double r = static_cast<double>(++count_a) * x;
      if (r >= best_a) {
        best_a = r;
        p_a = x;
      }
    } else {
      const double r = static_cast<double>(++count_b) * x;
      if (r >= best_b) {
        best_b = r;
        p_b = x;
      }
    }
  }
  std::size_t win_a = 0;
  std::size_t win_b = 0;
  for (std::size_t i = 0; i < sorted_desc.size(); ++i) {
    const double x = sorted_desc[i];
    if ((mask >> i) & 1U) {
      win_a += x >= p_b;
    } else {
      win_b += x >= p_a;
    }
  }
  return static_cast<double>(win_a) * p_b + static_cast<double>(win_b) * p_a;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

void check_lengths(std::size_t bids, std::size_t part) {
  if (bids != part) {
    throw Error(ErrorCode::LengthMismatch,
                "partition covers " + std::to_string(part) + " bids, expected " + std::to_string(bids));
  }
}

SidePrices side_prices(std::span<const double> bids, const Partition& part) {
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    (part.assignment[i] == Side::A ? a : b).push_back(bids[i]);
  }
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  return {monopolistic_outcome(a).price, monopolistic_outcome(b).price};
}

Estimate summarize(const std::vector<double>& xs) {
  Estimate e;
  e.samples = xs.size();
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    const double var = ss / static_cast<double>(xs.size() - 1);
    e.stderr_mean = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return e;
}

Estimate exact_expected_revenue(std::span<const double> sorted_desc) {
  const std::size_t n = sorted_desc.size();
  const std::uint64_t total = std::uint64_t{1} << n;
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < total; ++mask) sum += revenue_for_mask(sorted_desc, mask);
  Estimate e;
  e.mean = sum / static_cast<double>(total);
  e.samples = total;
  e.exact = true;
  return e;
}

Estimate sampled_expected_revenue(std::span<const double> bids, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  std::vector<double> revenues;
  revenues.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const Partition part = partition_bids(bids.size(), derive_seed(seed, {s}));
    revenues.push_back(rsop_outcome(bids, part, 0.0).revenue);
  }
  return summarize(revenues);
}

Estimate expected_for(std::span<const double> sorted_desc, const RemovalOptions& options) {
  if (sorted_desc.size() <= kMaxExactPartitionBids) return exact_expected_revenue(sorted_desc);
  return sampled_expected_revenue(sorted_desc, options.samples, options.seed);
}

}  // namespace

Partition partition_bids(std::size_t n, std::uint64_t seed) {
  Partition part;
  part.seed = seed;
  part.assignment.resize(n);
  Xoshiro256StarStar gen(seed);
  for (auto& side : part.assignment) side = (gen() >> 63) ? Side::A : Side::B;
  return part;
}

Partition partition_from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw Error(ErrorCode::InvalidArgument, "mask partitions cover at most 64 bids");
  Partition part;
  part.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) part.assignment[i] = ((mask >> i) & 1U) ? Side::A : Side::B;
  return part;
}

RevenueSplit split_revenue(double revenue, double alpha) {
  check_alpha(alpha);
  RevenueSplit s;
  s.carry = alpha * revenue;
  s.miner = revenue - s.carry;
  // Sterbenz keeps most cases exact; nudge the miner share otherwise.
  for (int step = 0; step < 8 && s.miner + s.carry != revenue; ++step) {
    const double toward = s.miner + s.carry < revenue ? std::numeric_limits<double>::infinity() : 0.0;
    s.miner = std::nextafter(s.miner, toward);
  }
  if (s.miner + s.carry != revenue) {
    s.carry = revenue - s.miner;
  }
  return s;
}

RsopOutcome rsop_outcome(std::span<const double> bids, const Partition& part, double alpha) {
  check_lengths(bids.size(), part.size());
  check_alpha(alpha);
  const SidePrices prices = side_prices(bids, part);
  RsopOutcome out;
  out.p_A = prices.p_A;
  out.p_B = prices.p_B;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (part.assignment[i] == Side::A) {
      if (bids[i] >= out.p_B) out.winners_A.push_back(i);
    } else {
      if (bids[i] >= out.p_A) out.winners_B.push_back(i);
    }
  }
  out.revenue = static_cast<double>(out.winners_A.size()) * out.p_B +
                static_cast<double>(out.winners_B.size()) * out.p_A;
  const RevenueSplit split = split_revenue(out.revenue, alpha);
  out.miner_share = split.miner;
  out.carry_share = split.carry;
  return out;
}

Estimate rsop_expected_revenue(const BidVector& bids, std::size_t samples, std::uint64_t seed,
                               ExpectationMode mode) {
  const bool small = bids.size() <= kMaxExactPartitionBids;
  if (mode == ExpectationMode::Exact && !small) {
    throw Error(ErrorCode::BudgetExceeded, "exact expectation enumerates 2^n partitions; n = " +
                                               std::to_string(bids.size()) + " exceeds " +
                                               std::to_string(kMaxExactPartitionBids));
  }
  if (mode == ExpectationMode::Exact || (mode == ExpectationMode::Auto && small)) {
    return exact_expected_revenue(bids.values());
  }
  return sampled_expected_revenue(bids.values(), samples, seed);
}

TaggedBids false_bid_strategy(const BidVector& bids, std::size_t copies) {
  TaggedBids t;
  t.bids = bids.to_vector();
  t.miner_owned.assign(t.bids.size(), false);
  if (copies == 0) return t;
  if (bids.empty()) throw Error(ErrorCode::InvalidArgument, "no genuine bids to price false bids against");
  const double price = monopolistic_outcome(bids).price;
  t.bids.insert(t.bids.end(), copies, price);
  t.miner_owned.insert(t.miner_owned.end(), copies, true);
  return t;
}

MinerAccount miner_account(const TaggedBids& tagged, const Partition& part, double alpha) {
  check_lengths(tagged.bids.size(), tagged.miner_owned.size());
  const RsopOutcome out = rsop_outcome(tagged.bids, part, alpha);
  MinerAccount acc;
  auto charge = [&](const std::vector<std::size_t>& winners, double price) {
    for (std::size_t i : winners) (tagged.miner_owned[i] ? acc.own_fees : acc.user_fees) += price;
  };
  charge(out.winners_A, out.p_B);
  charge(out.winners_B, out.p_A);
  acc.gross_revenue = out.revenue;
  acc.net = (1.0 - alpha) * acc.user_fees - alpha * acc.own_fees;
  return acc;
}

Estimate expected_miner_net(const TaggedBids& tagged, double alpha, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  std::vector<double> nets;
  nets.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const Partition part = partition_bids(tagged.bids.size(), derive_seed(seed, {s}));
    nets.push_back(miner_account(tagged, part, alpha).net);
  }
  return summarize(nets);
}

RemovalResult remove_bids_search(const BidVector& bids, RemovalMode mode, const RemovalOptions& options) {
  const std::size_t n = bids.size();
  const std::span<const double> all = bids.values();
  RemovalResult result;

  if (mode == RemovalMode::Exhaustive) {
    double pairs = std::pow(3.0, static_cast<double>(n));
    if (n > kMaxExhaustiveRemovalBids || pairs > static_cast<double>(options.budget)) {
      throw Error(ErrorCode::BudgetExceeded, "exhaustive removal over n = " + std::to_string(n) +
                                                 " bids needs 3^n evaluations; budget is " +
                                                 std::to_string(options.budget));
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    result.honest_revenue = exact_expected_revenue(all).mean;
    result.expected_revenue = result.honest_revenue;
    std::uint64_t best_mask = full;
    std::vector<double> kept;
    for (std::uint64_t keep = full; keep-- > 0;) {
      kept.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if ((keep >> i) & 1U) kept.push_back(all[i]);
      }
      const double r = exact_expected_revenue(kept).mean;
      if (r > result.expected_revenue ||
          (r == result.expected_revenue && std::popcount(keep) > std::popcount(best_mask))) {
        result.expected_revenue = r;
        best_mask = keep;
      }
    }
    std::vector<double> best;
    for (std::size_t i = 0; i < n; ++i) {
      if ((best_mask >> i) & 1U) best.push_back(all[i]);
    }
    result.best_subset = BidVector::from(std::move(best));
    return result;
  }

  result.honest_revenue = expected_for(all, options).mean;
  result.expected_revenue = result.honest_revenue;
  std::size_t best_len = n;
  for (std::size_t len = n; len-- > 0;) {
    const double r = expected_for(all.first(len), options).mean;
    if (r > result.expected_revenue) {
      result.expected_revenue = r;
      best_len = len;
    }
  }
  result.best_subset = BidVector::from(std::vector<double>(all.begin(), all.begin() + best_len));
  return result;
}

ConjectureCheck check_conjecture_rsop_leq_monopolistic(const BidVector& bids, std::size_t samples,
                                                      std::uint64_t seed) {
  const std::size_t n = bids.size();
  const double bound = monopolistic_outcome(bids).revenue;
  const double limit = bound * (1.0 + kConjectureSlack);
  ConjectureCheck check;
  auto record = [&](double r, auto make_partition) {
    ++check.partitions_checked;
    if (bound > 0.0) check.max_ratio = std::max(check.max_ratio, r / bound);
    if (r > limit && check.holds) {
      check.holds = false;
      check.witness = make_partition();
    }
  };
  if (n <= kMaxExactPartitionBids) {
    check.exhaustive = true;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      record(revenue_for_mask(bids.values(), mask), [&] { return partition_from_mask(n, mask); });
    }
    return check;
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const Partition part = partition_bids(n, derive_seed(seed, {s}));
    record(rsop_outcome(bids, part, 0.0).revenue, [&] { return part; });
  }
  return check;
}

double rsop_utility(std::span<const double> bids, std::size_t i, double value, const Partition& part) {
  if (i >= bids.size()) throw Error(ErrorCode::IndexOutOfRange, "bidder index " + std::to_string(i));
  const RsopOutcome out = rsop_outcome(bids, part, 0.0);
  const bool in_a = part.assignment[i] == Side::A;
  const auto& winners = in_a ? out.winners_A : out.winners_B;
  if (!std::binary_search(winners.begin(), winners.end(), i)) return 0.0;
  return value - (in_a ? out.p_B : out.p_A);
}

bool truthfulness_probe(const BidVector& values, std::size_t i, std::span<const double> deviations,
                        const Partition& part) {
  if (i >= values.size()) throw Error(ErrorCode::IndexOutOfRange, "bidder index " + std::to_string(i));
  check_lengths(values.size(), part.size());
  std::vector<double> bids = values.to_vector();
  const double v = values[i];
  const double honest = rsop_utility(bids, i, v, part);
  for (double d : deviations) {
    validate_bid(d);
    bids[i] = d;
    if (rsop_utility(bids, i, v, part) > honest) return false;
  }
  return true;
}

}  // namespace feemarket
