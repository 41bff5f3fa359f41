#include <gtest/gtest.h>

#include <string>

#include "feemarket/block.hpp"
#include "feemarket/errors.hpp"

namespace fm = feemarket;

namespace {

fm::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const fm::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no feemarket::Error thrown";
  return fm::ErrorCode::InvalidArgument;
}

std::string hex_with_first_byte(unsigned byte) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string h(64, '0');
  h[0] = kDigits[byte >> 4];
  h[1] = kDigits[byte & 0xF];
  return h;
}

std::string txid(char c) { return std::string(64, c); }

std::string block_json(const std::string& header, double alpha, const std::vector<std::pair<std::string, double>>& txs) {
  std::string s = "{\"header_hash\":\"" + header + "\",\"alpha\":" + std::to_string(alpha) + ",\"transactions\":[";
  for (std::size_t i = 0; i < txs.size(); ++i) {
    s += (i ? "," : "") + std::string("{\"txid\":\"") + txs[i].first + "\",\"bid\":" + std::to_string(txs[i].second) + "}";
  }
  return s + "]}";
}

}  // namespace

TEST(BlockSeed, FirstEightBytesBigEndian) {
  const auto h = fm::parse_hash32("0102030405060708ffffffffffffffffffffffffffffffffffffffffffffffff");
  EXPECT_EQ(fm::block_seed(h), 0x0102030405060708ULL);
  EXPECT_EQ(fm::to_hex(h), "0102030405060708ffffffffffffffffffffffffffffffffffffffffffffffff");
  EXPECT_EQ(fm::to_hex(fm::parse_hash32(std::string(64, 'A'))), std::string(64, 'a'));
}

TEST(BlockParse, Errors) {
  EXPECT_EQ(code_of([] { fm::parse_hash32("abc"); }), fm::ErrorCode::MalformedBlock);
  EXPECT_EQ(code_of([] { fm::parse_hash32(std::string(64, 'g')); }), fm::ErrorCode::MalformedBlock);
  EXPECT_EQ(code_of([] { fm::parse_block_json("not json"); }), fm::ErrorCode::MalformedBlock);
  EXPECT_EQ(code_of([] { fm::parse_block_json("{\"alpha\":0.1,\"transactions\":[]}"); }),
            fm::ErrorCode::MalformedBlock);
  EXPECT_EQ(code_of([] { fm::parse_block_json(block_json(txid('0'), 0.1, {{txid('a'), -1}})); }),
            fm::ErrorCode::MalformedBlock);
  EXPECT_EQ(code_of([] { fm::parse_block_json(block_json(txid('0'), 1.5, {})); }), fm::ErrorCode::MalformedBlock);
  EXPECT_EQ(code_of([] { fm::parse_block_json(block_json(txid('0'), 0.1, {{txid('a'), 1}, {txid('a'), 2}})); }),
            fm::ErrorCode::DuplicateTxId);
  EXPECT_EQ(code_of([] { fm::load_block_file("/nonexistent/block.json"); }), fm::ErrorCode::FileNotFound);
}

TEST(BlockParse, AlphaDefaultsToTenPercent) {
  const auto b = fm::parse_block_json("{\"header_hash\":\"" + txid('0') + "\",\"transactions\":[]}");
  EXPECT_EQ(b.alpha, 0.1);
}

TEST(VerifyBlock, EmptyBlock) {
  const auto v = fm::verify_block(fm::parse_block_json(block_json(txid('1'), 0.1, {})));
  EXPECT_TRUE(v.valid.empty());
  EXPECT_EQ(v.outcome.revenue, 0.0);
}

// Search the first header byte for a seed that separates the two bids.
TEST(VerifyBlock, SplitHighLowPaysTheLowValue) {
  bool found = false;
  for (unsigned byte = 0; byte < 256 && !found; ++byte) {
    const auto block = fm::parse_block_json(block_json(hex_with_first_byte(byte), 0.0, {{txid('a'), 10}, {txid('b'), 1}}));
    const auto part = fm::partition_bids(2, fm::block_seed(block.header_hash));
    if (part.assignment[0] == part.assignment[1]) continue;
    found = true;
    const auto v = fm::verify_block(block);
    EXPECT_EQ(v.outcome.revenue, 1.0);
    ASSERT_EQ(v.valid.size(), 1u);
    EXPECT_EQ(v.valid[0].index, 0u);
    EXPECT_EQ(v.valid[0].fee, 1.0);
    EXPECT_EQ(fm::to_hex(v.valid[0].txid), txid('a'));
  }
  EXPECT_TRUE(found);
}

TEST(VerifyBlock, DeterministicAndFeesSumToRevenue) {
  std::vector<std::pair<std::string, double>> txs;
  const char ids[] = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) txs.emplace_back(txid(ids[i]), 1.0 + (i * 7) % 11);
  const std::string text = block_json("9f" + std::string(62, '3'), 0.25, txs);
  const auto a = fm::verify_block(fm::parse_block_json(text));
  const auto b = fm::verify_block(fm::parse_block_json(text));
  ASSERT_EQ(a.valid.size(), b.valid.size());
  double fees = 0.0;
  for (std::size_t i = 0; i < a.valid.size(); ++i) {
    EXPECT_EQ(a.valid[i].index, b.valid[i].index);
    EXPECT_EQ(a.valid[i].fee, b.valid[i].fee);
    fees += a.valid[i].fee;
  }
  EXPECT_EQ(fees, a.outcome.revenue);
  EXPECT_EQ(a.outcome.miner_share + a.outcome.carry_share, a.outcome.revenue);
  EXPECT_EQ(a.partition.seed, 0x9f33333333333333ULL);
}

TEST(VerifyBlock, LosersAreAbsent) {
  std::vector<std::pair<std::string, double>> txs;
  const char ids[] = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) txs.emplace_back(txid(ids[i]), 1.0 + i);
  const auto block = fm::parse_block_json(block_json(std::string(64, 'e'), 0.1, txs));
  const auto v = fm::verify_block(block);
  for (const auto& t : v.valid) {
    const bool in_a = v.partition.assignment[t.index] == fm::Side::A;
    EXPECT_EQ(t.fee, in_a ? v.outcome.p_B : v.outcome.p_A);
    EXPECT_GE(block.transactions[t.index].bid, t.fee);
  }
  EXPECT_EQ(v.valid.size(), v.outcome.winners_A.size() + v.outcome.winners_B.size());
}
