#include "feemarket/block.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "feemarket/errors.hpp"

namespace feemarket {
namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedBlock, what); }

}  // namespace

Hash32 parse_hash32(std::string_view hex) {
  if (hex.size() != 64) malformed("expected 64 hex characters, got " + std::to_string(hex.size()));
  Hash32 out{};
  for (std::size_t i = 0; i < 32; ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) malformed("non-hex character in \"" + std::string(hex) + "\"");
    out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return out;
}

std::string to_hex(const Hash32& h) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (std::uint8_t byte : h) {
    s.push_back(kDigits[byte >> 4]);
    s.push_back(kDigits[byte & 0xF]);
  }
  return s;
}

void validate_block(const Block& block) {
  if (!(block.alpha >= 0.0 && block.alpha <= 1.0)) malformed("alpha must lie in [0, 1]");
  std::set<Hash32> seen;
  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    const Transaction& tx = block.transactions[i];
    if (!std::isfinite(tx.bid) || tx.bid <= 0.0) {
      malformed("transaction " + std::to_string(i) + " has a non-positive or non-finite bid");
    }
    if (!seen.insert(tx.txid).second) {
      throw Error(ErrorCode::DuplicateTxId, "txid " + to_hex(tx.txid) + " appears more than once");
    }
  }
}

Block parse_block_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");

  Block block;
  const auto hash = doc.find("header_hash");
  if (hash == doc.end() || !hash->is_string()) malformed("missing string field header_hash");
  block.header_hash = parse_hash32(hash->get<std::string>());

  if (const auto alpha = doc.find("alpha"); alpha != doc.end()) {
    if (!alpha->is_number()) malformed("alpha must be a number");
    block.alpha = alpha->get<double>();
  }

  const auto txs = doc.find("transactions");
  if (txs == doc.end() || !txs->is_array()) malformed("missing array field transactions");
  for (const auto& entry : *txs) {
    if (!entry.is_object()) malformed("transaction entries must be objects");
    const auto id = entry.find("txid");
    const auto bid = entry.find("bid");
    if (id == entry.end() || !id->is_string()) malformed("transaction without string txid");
    if (bid == entry.end() || !bid->is_number()) malformed("transaction without numeric bid");
    block.transactions.push_back({parse_hash32(id->get<std::string>()), bid->get<double>()});
  }
  validate_block(block);
  return block;
}

Block load_block_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_block_json(buf.str());
}

std::uint64_t block_seed(const Hash32& header_hash) noexcept {
  std::uint64_t seed = 0;
  for (std::size_t i = 0; i < 8; ++i) seed = (seed << 8) | header_hash[i];
  return seed;
}

BlockVerification verify_block(const Block& block) {
  validate_block(block);
  std::vector<double> bids;
  bids.reserve(block.transactions.size());
  for (const Transaction& tx : block.transactions) bids.push_back(tx.bid);

  BlockVerification v;
  v.partition = partition_bids(bids.size(), block_seed(block.header_hash));
  v.outcome = rsop_outcome(bids, v.partition, block.alpha);

  std::vector<double> fee(bids.size(), -1.0);
  for (std::size_t i : v.outcome.winners_A) fee[i] = v.outcome.p_B;
  for (std::size_t i : v.outcome.winners_B) fee[i] = v.outcome.p_A;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (fee[i] >= 0.0) v.valid.push_back({i, block.transactions[i].txid, fee[i]});
  }
  return v;
}

}  // namespace feemarket
