#pragma once

// Value distributions for the simulations, plus ingestion of transaction
// output sums used as a willingness-to-pay proxy.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "feemarket/bid_vector.hpp"

namespace feemarket {

enum class DistributionKind { DiscreteUniform1To100, Uniform01, HalfNormal, Inverse, BitcoinData };

enum class ValueTransform { Log, Sqrt, Identity };

std::string_view to_string(DistributionKind kind) noexcept;
std::string_view to_string(ValueTransform t) noexcept;
ValueTransform parse_transform(std::string_view text);

struct ValuePool {
  std::vector<double> values;
  std::size_t dropped = 0;  ///< rows with x <= 1 under the log transform
};

/// CSV with header `output_sum_satoshi` and one positive number per row;
/// blank lines are skipped. Natural log for Log.
/// Throws Error{FileNotFound}, Error{MalformedRow} (message names the line),
/// Error{EmptyPool}.
ValuePool load_bitcoin_values(const std::string& path, ValueTransform transform);

/// Same, reading from a string (the path is only used in messages).
ValuePool parse_bitcoin_values(std::string_view csv, ValueTransform transform, const std::string& source = "<memory>");

struct ValueDistribution {
  DistributionKind kind = DistributionKind::Uniform01;
  double sigma = 1.0;  ///< half-normal scale
  std::string path;    ///< data file for BitcoinData
  ValueTransform transform = ValueTransform::Identity;
  std::shared_ptr<const std::vector<double>> pool;  ///< loaded BitcoinData values

  /// "uniform_01", "half_normal", "bitcoin_data_log", ...
  std::string label() const;
};

ValueDistribution make_distribution(DistributionKind kind);
ValueDistribution half_normal(double sigma);
/// Loads the pool eagerly.
ValueDistribution bitcoin_data(const std::string& path, ValueTransform transform);
/// Wraps an existing pool (values must be finite and > 0).
ValueDistribution pool_distribution(std::vector<double> values, ValueTransform transform = ValueTransform::Identity);

/// Accepts the labels produced by label(); bitcoin_data_* kinds need `path`.
ValueDistribution parse_distribution(std::string_view label, const std::string& path = {});

/// Inverse-CDF map for the kinds that use one uniform draw: discrete
/// 1 + floor(100 u), uniform u, inverse 1 / (1 - u). u in [0, 1).
/// Throws Error{InvalidArgument} for other kinds.
double value_from_uniform(DistributionKind kind, double u);

/// n i.i.d. draws from Xoshiro256StarStar(seed). Half-normal uses one
/// Box-Muller pair per draw; data kinds resample the pool with replacement.
std::vector<double> sample_values(const ValueDistribution& dist, std::size_t n, std::uint64_t seed);

inline BidVector sample(const ValueDistribution& dist, std::size_t n, std::uint64_t seed) {
  return BidVector::from(sample_values(dist, n, seed));
}

}  // namespace feemarket
