#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "feemarket/rsop.hpp"

namespace feemarket {

using Hash32 = std::array<std::uint8_t, 32>;

/// Parses 64 hex characters (either case). Throws Error{MalformedBlock}.
Hash32 parse_hash32(std::string_view hex);
std::string to_hex(const Hash32& h);

struct Transaction {
  Hash32 txid{};
  double bid = 0.0;
};

/// Transaction order is the canonical order for partition assignment.
struct Block {
  Hash32 header_hash{};
  double alpha = 0.1;
  std::vector<Transaction> transactions;
};

/// Structural checks only: unique txids (Error{DuplicateTxId}), finite
/// positive bids, alpha in [0, 1] (Error{MalformedBlock}).
void validate_block(const Block& block);

/// Reads {"header_hash", "alpha", "transactions": [{"txid", "bid"}]}.
/// Missing alpha means the default 0.1. Throws Error{MalformedBlock} on bad
/// JSON or fields, Error{DuplicateTxId} on repeated ids.
Block parse_block_json(std::string_view text);
Block load_block_file(const std::string& path);

/// Partition seed: the first 8 bytes of the header hash, big-endian.
std::uint64_t block_seed(const Hash32& header_hash) noexcept;

struct ValidTransaction {
  std::size_t index = 0;  ///< position in the block
  Hash32 txid{};
  double fee = 0.0;  ///< p_B for A-side winners, p_A for B-side winners
};

struct BlockVerification {
  Partition partition;
  RsopOutcome outcome;
  std::vector<ValidTransaction> valid;  ///< in block order
};

/// Deterministic block verification: losing transactions pay nothing and
/// are absent from `valid`.
BlockVerification verify_block(const Block& block);

}  // namespace feemarket
