#pragma once

// Random Sampling Optimal Price auction: bids are split at random into two
// sides and each side is charged the monopolistic price of the other.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "feemarket/bid_vector.hpp"

namespace feemarket {

enum class Side : std::uint8_t { B = 0, A = 1 };

/// Side assignment for each bid index in canonical order.
struct Partition {
  std::vector<Side> assignment;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return assignment.size(); }
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// One xoshiro256** output per index (seeded as documented in rng.hpp); the
/// top bit selects the side: 1 -> A, 0 -> B.
Partition partition_bids(std::size_t n, std::uint64_t seed);

/// Bit i of mask set -> index i in A. n <= 64.
Partition partition_from_mask(std::size_t n, std::uint64_t mask);

struct RsopOutcome {
  double p_A = 0.0;
  double p_B = 0.0;
  std::vector<std::size_t> winners_A;  ///< indices in A with bid >= p_B
  std::vector<std::size_t> winners_B;  ///< indices in B with bid >= p_A
  double revenue = 0.0;                ///< |A'| p_B + |B'| p_A
  double miner_share = 0.0;            ///< (1 - alpha) of revenue
  double carry_share = 0.0;            ///< alpha of revenue, paid to the next miner
};

struct RevenueSplit {
  double miner = 0.0;
  double carry = 0.0;
};

/// carry = alpha * revenue, miner = revenue - carry, adjusted by at most a
/// few ulps so that miner + carry == revenue holds exactly.
RevenueSplit split_revenue(double revenue, double alpha);

/// Bids in canonical (partition) order, any sort order. An empty side has
/// price 0. Throws Error{LengthMismatch} or Error{InvalidArgument} for alpha
/// outside [0, 1].
RsopOutcome rsop_outcome(std::span<const double> bids, const Partition& part, double alpha);

inline RsopOutcome rsop_outcome(const BidVector& bids, const Partition& part, double alpha) {
  return rsop_outcome(bids.values(), part, alpha);
}

struct Estimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t samples = 0;
  bool exact = false;
};

enum class ExpectationMode { Auto, Exact, Sampled };

/// Largest bid count for which all 2^n partitions are enumerated.
inline constexpr std::size_t kMaxExactPartitionBids = 20;

/// Expected RSOP revenue (alpha plays no role). Auto enumerates every
/// partition when n <= kMaxExactPartitionBids and samples otherwise; sample s
/// uses partition_bids(n, derive_seed(seed, {s})).
Estimate rsop_expected_revenue(const BidVector& bids, std::size_t samples, std::uint64_t seed,
                               ExpectationMode mode = ExpectationMode::Auto);

/// Bids plus bookkeeping of which entries the miner inserted herself.
struct TaggedBids {
  std::vector<double> bids;
  std::vector<bool> miner_owned;
};

/// Appends `copies` bids at the monopolistic price of `bids`, marked as
/// miner-owned. Canonical order: original bids (descending), then the copies.
TaggedBids false_bid_strategy(const BidVector& bids, std::size_t copies);

struct MinerAccount {
  double gross_revenue = 0.0;  ///< every fee in the block
  double user_fees = 0.0;      ///< fees paid by genuine users
  double own_fees = 0.0;       ///< fees the miner pays on her own bids
  /// (1 - alpha) * user_fees - alpha * own_fees: own fees come back to the
  /// miner except for the carried-forward fraction.
  double net = 0.0;
};

MinerAccount miner_account(const TaggedBids& tagged, const Partition& part, double alpha);

/// Monte Carlo mean of miner_account(...).net over sampled partitions.
Estimate expected_miner_net(const TaggedBids& tagged, double alpha, std::size_t samples, std::uint64_t seed);

enum class RemovalMode { Exhaustive, Greedy };

struct RemovalOptions {
  /// Sample count used by greedy mode when a candidate exceeds
  /// kMaxExactPartitionBids.
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  /// Exhaustive mode evaluates sum_k C(n,k) 2^k = 3^n (subset, partition)
  /// pairs; refuse above this.
  std::uint64_t budget = std::uint64_t{1} << 24;
};

inline constexpr std::size_t kMaxExhaustiveRemovalBids = 16;

struct RemovalResult {
  BidVector best_subset;
  double expected_revenue = 0.0;
  double honest_revenue = 0.0;  ///< expected RSOP revenue with every bid kept
};

/// Searches bid subsets for the highest expected RSOP revenue. Exhaustive
/// tries every subset (n <= 16 and within budget, else
/// Error{BudgetExceeded}); greedy only drops suffixes of the sorted vector.
/// Ties keep more bids.
RemovalResult remove_bids_search(const BidVector& bids, RemovalMode mode, const RemovalOptions& options = {});

struct ConjectureCheck {
  bool holds = true;
  std::optional<Partition> witness;  ///< first partition with RSOP > R
  std::size_t partitions_checked = 0;
  double max_ratio = 0.0;  ///< max RSOP / R seen
  bool exhaustive = false;
};

/// Checks RSOP(b) <= R(b) on every partition (n <= kMaxExactPartitionBids)
/// or on `samples` sampled partitions. A relative slack of 1e-12 absorbs
/// rounding in the two revenue formulas.
ConjectureCheck check_conjecture_rsop_leq_monopolistic(const BidVector& bids, std::size_t samples = 4096,
                                                      std::uint64_t seed = 0);

/// Utility of bidder i with true value `value` when the bids (canonical
/// order) are `bids`: value - price if included, else 0.
double rsop_utility(std::span<const double> bids, std::size_t i, double value, const Partition& part);

/// True iff bidding the true value is at least as good for bidder i as
/// every deviation, with the partition held fixed by index.
/// Throws Error{IndexOutOfRange} / Error{LengthMismatch}.
bool truthfulness_probe(const BidVector& values, std::size_t i, std::span<const double> deviations,
                        const Partition& part);

}  // namespace feemarket
