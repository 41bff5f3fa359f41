#pragma once

// Slow reference computations used to cross-check the closed-form
// mechanisms. Each one works from the raw definitions (sort, enumerate,
// compare) and shares no code path with the fast routines it verifies.

#include <cstddef>
#include <span>

#include "feemarket/bid_vector.hpp"
#include "feemarket/monopolistic.hpp"

namespace feemarket::oracle {

/// Sorts a copy of `bids` and evaluates k * b_k for every k.
MonopolisticOutcome brute_force_monopolistic(std::span<const double> bids);

/// Minimal u * b over u in [1, n] (n = |others| + 1) and candidate bids
/// {R(others)/m : m in [1, n + u]} U {others[j]} U a 10^4-point grid over
/// (0, max bid], keeping only pairs where u copies of b are all included.
/// Intended for n up to a few dozen. Throws Error{EmptyOthers}.
double multibid_oracle(const BidVector& others);

/// Minimal single winning bid over the same candidate set with u = 1.
double strategic_oracle(const BidVector& others);

/// Minimal u * b for one fixed u >= 1 (Error{InvalidArgument} otherwise).
double fixed_copies_oracle(const BidVector& others, std::size_t copies);

}  // namespace feemarket::oracle
