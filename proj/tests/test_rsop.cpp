#include <gtest/gtest.h>

#include <cmath>

#include "feemarket/errors.hpp"
#include "feemarket/monopolistic.hpp"
#include "feemarket/rng.hpp"
#include "feemarket/rsop.hpp"
#include "test_support.hpp"

namespace fm = feemarket;
using fm::BidVector;
using fm::Side;

namespace {

BidVector bv(std::vector<double> raw) { return BidVector::from(std::move(raw)); }

fm::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const fm::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no feemarket::Error thrown";
  return fm::ErrorCode::InvalidArgument;
}

BidVector two_value_instance(std::size_t n) {
  std::vector<double> raw(n, 2.0);
  raw.insert(raw.end(), n, 1.0);
  return BidVector::from(std::move(raw));
}

}  // namespace

TEST(Partition, Deterministic) {
  EXPECT_TRUE(fm::partition_bids(0, 7).assignment.empty());
  EXPECT_EQ(fm::partition_bids(50, 7), fm::partition_bids(50, 7));
  EXPECT_NE(fm::partition_bids(50, 7).assignment, fm::partition_bids(50, 8).assignment);
}

TEST(Partition, MatchesGeneratorTopBits) {
  const auto part = fm::partition_bids(64, 12345);
  fm::Xoshiro256StarStar gen(12345);
  for (Side s : part.assignment) EXPECT_EQ(s == Side::A, (gen() >> 63) == 1);
}

TEST(Partition, Balanced) {
  const auto part = fm::partition_bids(1000000, 99);
  const auto a = std::count(part.assignment.begin(), part.assignment.end(), Side::A);
  const double frac = static_cast<double>(a) / 1e6;
  EXPECT_GE(frac, 0.49);
  EXPECT_LE(frac, 0.51);
  // 6 sigma of Binomial(1e6, 1/2).
  EXPECT_NEAR(frac, 0.5, 6 * 0.0005);
}

TEST(RsopOutcome, SplitHighLow) {
  const auto o = fm::rsop_outcome(bv({10, 1}), fm::partition_from_mask(2, 0b01), 0.0);
  EXPECT_EQ(o.p_A, 10.0);
  EXPECT_EQ(o.p_B, 1.0);
  EXPECT_EQ(o.winners_A, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(o.winners_B.empty());
  EXPECT_EQ(o.revenue, 1.0);
  EXPECT_EQ(o.miner_share, 1.0);
  EXPECT_EQ(o.carry_share, 0.0);
}

TEST(RsopOutcome, SameSideGivesZero) {
  const auto o = fm::rsop_outcome(bv({10, 1}), fm::partition_from_mask(2, 0b11), 0.0);
  EXPECT_EQ(o.p_B, 0.0);
  EXPECT_EQ(o.winners_A, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(o.revenue, 0.0);
}

TEST(RsopOutcome, AlphaOneCarriesEverything) {
  const auto o = fm::rsop_outcome(bv({5, 4, 3, 3, 1}), fm::partition_from_mask(5, 0b10101), 1.0);
  EXPECT_GT(o.revenue, 0.0);
  EXPECT_EQ(o.miner_share, 0.0);
  EXPECT_EQ(o.carry_share, o.revenue);
}

TEST(RsopOutcome, Errors) {
  EXPECT_EQ(code_of([] { fm::rsop_outcome(bv({1, 2}), fm::partition_bids(3, 0), 0.1); }),
            fm::ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of([] { fm::rsop_outcome(bv({1, 2}), fm::partition_bids(2, 0), 1.5); }),
            fm::ErrorCode::InvalidArgument);
}

TEST(RsopProperty, OutcomeInvariants) {
  fm::testing::InstanceGen g(401);
  for (int t = 0; t < 3000; ++t) {
    const auto raw = g.raw(g.size_in(0, 40), t % 2 == 0);
    const auto part = fm::partition_bids(raw.size(), g.next());
    const double alpha = g.continuous();
    const auto o = fm::rsop_outcome(raw, part, alpha);
    std::vector<double> a, b;
    for (std::size_t i = 0; i < raw.size(); ++i) (part.assignment[i] == Side::A ? a : b).push_back(raw[i]);
    ASSERT_EQ(o.p_A, fm::monopolistic_outcome(BidVector::from(a)).price);
    ASSERT_EQ(o.p_B, fm::monopolistic_outcome(BidVector::from(b)).price);
    double fees = 0.0;
    std::size_t wa = 0, wb = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const bool in_a = part.assignment[i] == Side::A;
      const bool wins = raw[i] >= (in_a ? o.p_B : o.p_A);
      const auto& winners = in_a ? o.winners_A : o.winners_B;
      ASSERT_EQ(wins, std::find(winners.begin(), winners.end(), i) != winners.end());
      if (wins) {
        fees += in_a ? o.p_B : o.p_A;
        (in_a ? wa : wb) += 1;
      }
    }
    ASSERT_EQ(o.revenue, static_cast<double>(wa) * o.p_B + static_cast<double>(wb) * o.p_A);
    ASSERT_NEAR(fees, o.revenue, 1e-12 * std::max(1.0, o.revenue));
    ASSERT_EQ(o.miner_share + o.carry_share, o.revenue);
    ASSERT_NEAR(o.carry_share, alpha * o.revenue, 4e-16 * o.revenue);
  }
}

TEST(SplitRevenue, ExactSum) {
  fm::testing::InstanceGen g(402);
  for (int t = 0; t < 100000; ++t) {
    const double r = g.continuous() * 1e6;
    const double alpha = g.continuous();
    const auto s = fm::split_revenue(r, alpha);
    ASSERT_EQ(s.miner + s.carry, r);
    ASSERT_GE(s.miner, 0.0);
  }
  EXPECT_EQ(fm::split_revenue(10, 0.1).carry, 1.0);
}

TEST(ExpectedRevenue, ExactSmallCases) {
  const auto e = fm::rsop_expected_revenue(bv({10, 1}), 1, 0);
  EXPECT_TRUE(e.exact);
  EXPECT_EQ(e.mean, 0.5);
  EXPECT_EQ(fm::rsop_expected_revenue(bv({7}), 1, 0).mean, 0.0);
  EXPECT_EQ(fm::rsop_expected_revenue(bv({2, 2}), 1, 0).mean, 2.0);
  EXPECT_EQ(fm::rsop_expected_revenue(bv({2, 2, 1, 1}), 1, 0).mean, 2.75);
}

TEST(ExpectedRevenue, ExactAgreesWithPerPartitionOutcomes) {
  fm::testing::InstanceGen g(403);
  for (int t = 0; t < 50; ++t) {
    const BidVector b = g.bids(g.size_in(1, 10), t % 2 == 0);
    double sum = 0.0;
    const std::uint64_t total = std::uint64_t{1} << b.size();
    for (std::uint64_t m = 0; m < total; ++m) sum += fm::rsop_outcome(b, fm::partition_from_mask(b.size(), m), 0).revenue;
    ASSERT_NEAR(fm::rsop_expected_revenue(b, 1, 0, fm::ExpectationMode::Exact).mean, sum / static_cast<double>(total),
                1e-12 * std::max(1.0, sum));
  }
}

TEST(ExpectedRevenue, SampledIsReproducibleAndClose) {
  const BidVector b = bv({9, 8, 7, 6, 5, 4, 3, 2, 1, 1, 1, 1});
  const auto exact = fm::rsop_expected_revenue(b, 1, 0, fm::ExpectationMode::Exact);
  const auto s1 = fm::rsop_expected_revenue(b, 20000, 5, fm::ExpectationMode::Sampled);
  const auto s2 = fm::rsop_expected_revenue(b, 20000, 5, fm::ExpectationMode::Sampled);
  EXPECT_EQ(s1.mean, s2.mean);
  EXPECT_FALSE(s1.exact);
  EXPECT_NEAR(s1.mean, exact.mean, 4 * s1.stderr_mean);
  EXPECT_EQ(code_of([&] { fm::rsop_expected_revenue(b, 0, 0, fm::ExpectationMode::Sampled); }),
            fm::ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { fm::rsop_expected_revenue(two_value_instance(11), 1, 0, fm::ExpectationMode::Exact); }),
            fm::ErrorCode::BudgetExceeded);
}

// Expected revenue of n twos and n ones is 2n - E|X - Y| with X, Y
// independent Binomial(n, 1/2); E|X - Y| = n C(2n, n) / 4^n. Reference values
// from tests/oracles/derive_values.py.
TEST(ExpectedRevenue, TwoValueInstanceMatchesExactBinomialValue) {
  struct Case {
    std::size_t n;
    double exact;
  };
  for (const Case c : {Case{1024, 2029.948137}, Case{4096, 8155.892969}}) {
    const auto e = fm::rsop_expected_revenue(two_value_instance(c.n), 1000, 77);
    EXPECT_NEAR(e.mean, c.exact, 3 * e.stderr_mean) << "n=" << c.n;
  }
}

// Every realization pays exactly 2n - |Z|, Z = (twos in A) - (ones in A).
TEST(ExpectedRevenue, TwoValuePerPartitionIdentity) {
  const std::size_t n = 64;
  const BidVector b = two_value_instance(n);
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto part = fm::partition_bids(2 * n, s);
    long z = 0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (part.assignment[i] == Side::A) z += b[i] == 2.0 ? 1 : -1;
    }
    ASSERT_EQ(fm::rsop_outcome(b, part, 0).revenue, static_cast<double>(2 * static_cast<long>(n) - std::labs(z)));
  }
}

TEST(FalseBids, AppendsCopiesAtMonopolisticPrice) {
  const auto t = fm::false_bid_strategy(bv({10, 1}), 3);
  EXPECT_EQ(t.bids, (std::vector<double>{10, 1, 10, 10, 10}));
  EXPECT_EQ(t.miner_owned, (std::vector<bool>{false, false, true, true, true}));
  const auto none = fm::false_bid_strategy(bv({10, 1}), 0);
  EXPECT_EQ(none.bids, (std::vector<double>{10, 1}));
}

TEST(FalseBids, ManyCopiesApproachTheHighValue) {
  const auto t = fm::false_bid_strategy(bv({10, 1}), 100);
  const auto net = fm::expected_miner_net(t, 0.0, 4000, 11);
  const auto honest = fm::rsop_expected_revenue(bv({10, 1}), 1, 0);
  EXPECT_GT(net.mean, 9.5);
  EXPECT_LE(net.mean, 10.0 + 1e-12);
  EXPECT_GT(net.mean, honest.mean);
}

TEST(FalseBids, FullCarryForwardMakesThemUnprofitable) {
  const auto t = fm::false_bid_strategy(bv({10, 1}), 100);
  const auto net = fm::expected_miner_net(t, 1.0, 4000, 12);
  EXPECT_LE(net.mean, 0.0);
  EXPECT_LE(net.mean, fm::rsop_expected_revenue(bv({10, 1}), 1, 0).mean);
}

TEST(FalseBids, AccountingIdentity) {
  const auto t = fm::false_bid_strategy(bv({9, 5, 4, 2, 2, 1}), 4);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto part = fm::partition_bids(t.bids.size(), s);
    const auto acc = fm::miner_account(t, part, 0.3);
    ASSERT_NEAR(acc.user_fees + acc.own_fees, acc.gross_revenue, 1e-12);
    ASSERT_NEAR(acc.net, 0.7 * acc.user_fees - 0.3 * acc.own_fees, 1e-12);
  }
}

TEST(RemoveBids, ExhaustiveSmallInstance) {
  const auto r = fm::remove_bids_search(bv({2, 2, 1, 1}), fm::RemovalMode::Exhaustive);
  // Keeping every bid (11/4) beats keeping only the twos (2).
  EXPECT_EQ(r.best_subset, bv({2, 2, 1, 1}));
  EXPECT_EQ(r.expected_revenue, 2.75);
  EXPECT_EQ(r.honest_revenue, 2.75);
}

TEST(RemoveBids, SingleBid) {
  const auto r = fm::remove_bids_search(bv({3}), fm::RemovalMode::Exhaustive);
  EXPECT_EQ(r.best_subset, bv({3}));
  EXPECT_EQ(r.expected_revenue, 0.0);
}

TEST(RemoveBids, DroppingTheOnesPaysForLargeN) {
  const std::size_t n = 100;
  const auto r = fm::remove_bids_search(two_value_instance(n), fm::RemovalMode::Greedy, {500, 3, 0});
  EXPECT_GT(r.expected_revenue, r.honest_revenue + 2.0);
  // Ones below the point where a side's price drops to 1 change nothing, so
  // ties keep some of them; only the full set of ones must go.
  EXPECT_LT(fm::num_at_least(r.best_subset, 0.5) - fm::num_at_least(r.best_subset, 1.5), n);
  EXPECT_EQ(fm::num_at_least(r.best_subset, 1.5), n);
}

TEST(RemoveBids, ExhaustiveAgreesWithGreedyOnSuffixes) {
  fm::testing::InstanceGen g(404);
  for (int t = 0; t < 20; ++t) {
    const BidVector b = g.bids(g.size_in(1, 8), true);
    const auto ex = fm::remove_bids_search(b, fm::RemovalMode::Exhaustive);
    const auto gr = fm::remove_bids_search(b, fm::RemovalMode::Greedy);
    ASSERT_GE(ex.expected_revenue, gr.expected_revenue);
    ASSERT_EQ(ex.honest_revenue, gr.honest_revenue);
  }
}

TEST(RemoveBids, BudgetEnforced) {
  EXPECT_EQ(code_of([] { fm::remove_bids_search(two_value_instance(9), fm::RemovalMode::Exhaustive); }),
            fm::ErrorCode::BudgetExceeded);
  EXPECT_EQ(code_of([] {
              fm::remove_bids_search(bv({5, 4, 3, 2, 1, 1}), fm::RemovalMode::Exhaustive, {2000, 0, 100});
            }),
            fm::ErrorCode::BudgetExceeded);
}

TEST(Conjecture, SmallExamples) {
  const auto hl = fm::check_conjecture_rsop_leq_monopolistic(bv({10, 1}));
  EXPECT_TRUE(hl.holds);
  EXPECT_TRUE(hl.exhaustive);
  EXPECT_EQ(hl.partitions_checked, 4u);
  EXPECT_EQ(hl.max_ratio, 0.1);
  EXPECT_TRUE(fm::check_conjecture_rsop_leq_monopolistic(BidVector::from(std::vector<double>(8, 1.0))).holds);
  EXPECT_TRUE(fm::check_conjecture_rsop_leq_monopolistic(bv({4})).holds);
}

TEST(Conjecture, RandomInstancesUpToTwelve) {
  fm::testing::InstanceGen g(405);
  for (int t = 0; t < 300; ++t) {
    const BidVector b = g.bids(g.size_in(1, 12), t % 2 == 0);
    const auto c = fm::check_conjecture_rsop_leq_monopolistic(b);
    ASSERT_TRUE(c.holds) << "instance " << t;
    ASSERT_LE(c.max_ratio, 1.0 + 1e-12);
  }
}

TEST(Conjecture, SampledBeyondExhaustiveLimit) {
  const auto c = fm::check_conjecture_rsop_leq_monopolistic(two_value_instance(50), 2000, 1);
  EXPECT_FALSE(c.exhaustive);
  EXPECT_EQ(c.partitions_checked, 2000u);
  EXPECT_TRUE(c.holds);
}

TEST(Truthfulness, Examples) {
  const BidVector v = bv({10, 1});
  const auto split = fm::partition_from_mask(2, 0b01);
  EXPECT_TRUE(fm::truthfulness_probe(v, 0, std::vector<double>{10}, split));
  EXPECT_TRUE(fm::truthfulness_probe(v, 0, std::vector<double>{0.5, 2, 100}, split));
  EXPECT_EQ(fm::rsop_utility(v.values(), 0, 10, split), 9.0);
  EXPECT_EQ(code_of([&] { fm::truthfulness_probe(v, 2, std::vector<double>{1}, split); }),
            fm::ErrorCode::IndexOutOfRange);
}

TEST(Truthfulness, RandomProbes) {
  fm::testing::InstanceGen g(406);
  for (int t = 0; t < 10000; ++t) {
    const bool discrete = t % 2 == 0;
    const BidVector v = g.bids(g.size_in(1, 24), discrete);
    const std::size_t i = g.size_in(0, v.size() - 1);
    const auto part = fm::partition_bids(v.size(), g.next());
    std::vector<double> dev;
    for (int k = 0; k < 4; ++k) dev.push_back(discrete ? g.discrete() : g.continuous());
    dev.push_back(v[i] * 0.5);
    dev.push_back(v[i] * 2.0);
    ASSERT_TRUE(fm::truthfulness_probe(v, i, dev, part)) << "probe " << t;
  }
}
