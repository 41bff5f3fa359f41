#include <gtest/gtest.h>

#include <limits>

#include "feemarket/bid_vector.hpp"
#include "feemarket/errors.hpp"
#include "feemarket/monopolistic.hpp"
#include "feemarket/oracle.hpp"
#include "test_support.hpp"

namespace fm = feemarket;
using fm::BidVector;

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

}  // namespace

TEST(BidVector, SortsDescending) {
  EXPECT_EQ(bv({1, 5, 2}).to_vector(), (std::vector<double>{5, 2, 1}));
  EXPECT_TRUE(bv({}).empty());
}

TEST(BidVector, RejectsBadBids) {
  EXPECT_EQ(code_of([] { bv({3, -1}); }), fm::ErrorCode::NonPositiveBid);
  EXPECT_EQ(code_of([] { bv({0.0}); }), fm::ErrorCode::NonPositiveBid);
  EXPECT_EQ(code_of([] { bv({std::numeric_limits<double>::quiet_NaN()}); }), fm::ErrorCode::NonFiniteBid);
  EXPECT_EQ(code_of([] { bv({std::numeric_limits<double>::infinity()}); }), fm::ErrorCode::NonFiniteBid);
}

TEST(BidVector, EditsKeepOrder) {
  const BidVector b = bv({5, 2, 1});
  EXPECT_EQ(b.with(3).to_vector(), (std::vector<double>{5, 3, 2, 1}));
  EXPECT_EQ(b.with_copies(2, 2).to_vector(), (std::vector<double>{5, 2, 2, 2, 1}));
  EXPECT_EQ(b.without(0).to_vector(), (std::vector<double>{2, 1}));
  EXPECT_EQ(b.scaled(2).to_vector(), (std::vector<double>{10, 4, 2}));
  EXPECT_EQ(code_of([&] { b.without(3); }), fm::ErrorCode::IndexOutOfRange);
}

TEST(NumAtLeast, Examples) {
  const BidVector b = bv({5, 2, 1, 1});
  EXPECT_EQ(fm::num_at_least(b, 1), 4u);
  EXPECT_EQ(fm::num_at_least(b, 2), 2u);
  EXPECT_EQ(fm::num_at_least(b, 6), 0u);
  EXPECT_EQ(fm::num_at_least(b, 1.5), 2u);
}

TEST(Monopolistic, Examples) {
  EXPECT_EQ(fm::monopolistic_outcome(bv({5, 2, 1, 1})), (fm::MonopolisticOutcome{5, 1, 5}));
  EXPECT_EQ(fm::monopolistic_outcome(bv({3, 2, 2, 1})), (fm::MonopolisticOutcome{6, 3, 2}));
  // 1*1 == 2*0.5 goes to the larger k.
  EXPECT_EQ(fm::monopolistic_outcome(bv({1, 0.5})), (fm::MonopolisticOutcome{1, 2, 0.5}));
  EXPECT_EQ(fm::monopolistic_outcome(bv({})), (fm::MonopolisticOutcome{0, 0, 0}));
}

TEST(Monopolistic, AllOnes) {
  for (std::size_t n : {1u, 2u, 7u, 100u}) {
    const auto o = fm::monopolistic_outcome(BidVector::from(std::vector<double>(n, 1.0)));
    EXPECT_EQ(o, (fm::MonopolisticOutcome{static_cast<double>(n), n, 1.0}));
  }
}

TEST(Monopolistic, Capped) {
  EXPECT_EQ(fm::monopolistic_outcome_capped(bv({5, 4, 3, 2, 1}), 2), (fm::MonopolisticOutcome{8, 2, 4}));
  EXPECT_EQ(fm::monopolistic_outcome_capped(bv({5, 2, 1, 1}), 10), fm::monopolistic_outcome(bv({5, 2, 1, 1})));
  EXPECT_EQ(fm::monopolistic_outcome_capped(bv({1, 1, 1}), 1), (fm::MonopolisticOutcome{1, 1, 1}));
  EXPECT_EQ(code_of([] { fm::monopolistic_outcome_capped(bv({1}), 0); }), fm::ErrorCode::InvalidArgument);
}

TEST(PayYourBid, Examples) {
  EXPECT_EQ(fm::pay_your_bid_revenue(bv({5, 4, 3, 2, 1}), 2), 6.0);
  EXPECT_EQ(fm::pay_your_bid_revenue(bv({5, 4, 3}), 3), 0.0);
  EXPECT_EQ(fm::pay_your_bid_revenue(bv({1}), 1), 0.0);
}

TEST(MonopolisticProperty, MatchesBruteForce) {
  fm::testing::InstanceGen g(101);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = g.size_in(0, 64);
    const auto raw = g.raw(n, t % 2 == 0);
    const BidVector b = BidVector::from(raw);
    ASSERT_EQ(fm::monopolistic_outcome(b), fm::oracle::brute_force_monopolistic(raw)) << "instance " << t;
  }
}

TEST(MonopolisticProperty, OutcomeInvariants) {
  fm::testing::InstanceGen g(102);
  for (int t = 0; t < 2000; ++t) {
    const BidVector b = g.bids(g.size_in(1, 40), t % 2 == 0);
    const auto o = fm::monopolistic_outcome(b);
    ASSERT_EQ(o.revenue, static_cast<double>(o.k_star) * o.price);
    ASSERT_EQ(o.price, b[o.k_star - 1]);
    for (std::size_t k = 1; k <= b.size(); ++k) {
      const double r = static_cast<double>(k) * b[k - 1];
      ASSERT_GE(o.revenue, r);
      if (k > o.k_star) {
        ASSERT_LT(r, o.revenue);
      }
    }
  }
}

TEST(MonopolisticProperty, RevenueMonotoneUnderInsertion) {
  fm::testing::InstanceGen g(103);
  for (int t = 0; t < 5000; ++t) {
    const bool discrete = t % 2 == 0;
    const BidVector b = g.bids(g.size_in(0, 32), discrete);
    const double extra = discrete ? g.discrete() : g.continuous();
    ASSERT_GE(fm::monopolistic_outcome(b.with(extra)).revenue, fm::monopolistic_outcome(b).revenue);
  }
}

TEST(MonopolisticProperty, CapAtLeastNIsInactive) {
  fm::testing::InstanceGen g(104);
  for (int t = 0; t < 2000; ++t) {
    const BidVector b = g.bids(g.size_in(1, 40), t % 2 == 0);
    const std::size_t cap = b.size() + g.size_in(0, 5);
    ASSERT_EQ(fm::monopolistic_outcome_capped(b, cap), fm::monopolistic_outcome(b));
  }
}
