#include "feemarket/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "feemarket/errors.hpp"
#include "feemarket/rng.hpp"

namespace feemarket {
namespace {

constexpr std::string_view kHeader = "output_sum_satoshi";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

double apply_transform(ValueTransform t, double x) {
  switch (t) {
    case ValueTransform::Log:
      return std::log(x);
    case ValueTransform::Sqrt:
      return std::sqrt(x);
    case ValueTransform::Identity:
      return x;
  }
  return x;
}

}  // namespace

std::string_view to_string(DistributionKind kind) noexcept {
  switch (kind) {
    case DistributionKind::DiscreteUniform1To100:
      return "discrete_uniform_1_100";
    case DistributionKind::Uniform01:
      return "uniform_01";
    case DistributionKind::HalfNormal:
      return "half_normal";
    case DistributionKind::Inverse:
      return "inverse";
    case DistributionKind::BitcoinData:
      return "bitcoin_data";
  }
  return "unknown";
}

std::string_view to_string(ValueTransform t) noexcept {
  switch (t) {
    case ValueTransform::Log:
      return "log";
    case ValueTransform::Sqrt:
      return "sqrt";
    case ValueTransform::Identity:
      return "identity";
  }
  return "unknown";
}

ValueTransform parse_transform(std::string_view text) {
  if (text == "log") return ValueTransform::Log;
  if (text == "sqrt") return ValueTransform::Sqrt;
  if (text == "identity") return ValueTransform::Identity;
  throw Error(ErrorCode::InvalidArgument, "unknown transform \"" + std::string(text) + "\"");
}

ValuePool parse_bitcoin_values(std::string_view csv, ValueTransform transform, const std::string& source) {
  ValuePool pool;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!csv.empty()) {
    const std::size_t eol = csv.find('\n');
    const std::string_view line = trim(csv.substr(0, eol));
    csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw Error(ErrorCode::MalformedRow, source + " line " + std::to_string(line_no) + ": expected header " +
                                                 std::string(kHeader));
      }
      header_seen = true;
      continue;
    }
    double x = 0.0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), x);
    if (ec != std::errc{} || end != line.data() + line.size() || !std::isfinite(x) || x <= 0.0) {
      throw Error(ErrorCode::MalformedRow,
                  source + " line " + std::to_string(line_no) + ": \"" + std::string(line) + "\"");
    }
    if (transform == ValueTransform::Log && x <= 1.0) {
      ++pool.dropped;
      continue;
    }
    pool.values.push_back(apply_transform(transform, x));
  }
  if (pool.values.empty()) {
    throw Error(ErrorCode::EmptyPool, source + ": no usable rows (" + std::to_string(pool.dropped) + " dropped)");
  }
  return pool;
}

ValuePool load_bitcoin_values(const std::string& path, ValueTransform transform) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bitcoin_values(buf.str(), transform, path);
}

std::string ValueDistribution::label() const {
  std::string s(to_string(kind));
  if (kind == DistributionKind::BitcoinData) {
    s += '_';
    s += to_string(transform);
  }
  return s;
}

ValueDistribution make_distribution(DistributionKind kind) {
  if (kind == DistributionKind::BitcoinData) {
    throw Error(ErrorCode::InvalidArgument, "bitcoin_data needs a data file");
  }
  ValueDistribution d;
  d.kind = kind;
  return d;
}

ValueDistribution half_normal(double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  ValueDistribution d;
  d.kind = DistributionKind::HalfNormal;
  d.sigma = sigma;
  return d;
}

ValueDistribution bitcoin_data(const std::string& path, ValueTransform transform) {
  ValueDistribution d;
  d.kind = DistributionKind::BitcoinData;
  d.path = path;
  d.transform = transform;
  d.pool = std::make_shared<const std::vector<double>>(load_bitcoin_values(path, transform).values);
  return d;
}

ValueDistribution pool_distribution(std::vector<double> values, ValueTransform transform) {
  if (values.empty()) throw Error(ErrorCode::EmptyPool, "empty value pool");
  for (double v : values) validate_bid(v);
  ValueDistribution d;
  d.kind = DistributionKind::BitcoinData;
  d.transform = transform;
  d.pool = std::make_shared<const std::vector<double>>(std::move(values));
  return d;
}

ValueDistribution parse_distribution(std::string_view label, const std::string& path) {
  if (label == "discrete_uniform_1_100") return make_distribution(DistributionKind::DiscreteUniform1To100);
  if (label == "uniform_01") return make_distribution(DistributionKind::Uniform01);
  if (label == "half_normal") return make_distribution(DistributionKind::HalfNormal);
  if (label == "inverse") return make_distribution(DistributionKind::Inverse);
  constexpr std::string_view prefix = "bitcoin_data_";
  if (label.starts_with(prefix)) {
    if (path.empty()) throw Error(ErrorCode::InvalidConfig, std::string(label) + " needs a data path");
    return bitcoin_data(path, parse_transform(label.substr(prefix.size())));
  }
  throw Error(ErrorCode::InvalidConfig, "unknown distribution \"" + std::string(label) + "\"");
}

double value_from_uniform(DistributionKind kind, double u) {
  switch (kind) {
    case DistributionKind::DiscreteUniform1To100:
      return std::min(100.0, 1.0 + std::floor(u * 100.0));
    case DistributionKind::Uniform01:
      return u;
    case DistributionKind::Inverse:
      return 1.0 / (1.0 - u);
    default:
      throw Error(ErrorCode::InvalidArgument, "kind has no single-uniform inverse CDF");
  }
}

std::vector<double> sample_values(const ValueDistribution& dist, std::size_t n, std::uint64_t seed) {
  Xoshiro256StarStar gen(seed);
  std::vector<double> out;
  out.reserve(n);
  switch (dist.kind) {
    case DistributionKind::Uniform01:
      for (std::size_t i = 0; i < n; ++i) out.push_back(unit_open(gen()));
      break;
    case DistributionKind::DiscreteUniform1To100:
    case DistributionKind::Inverse:
      for (std::size_t i = 0; i < n; ++i) out.push_back(value_from_uniform(dist.kind, unit_closed_open(gen())));
      break;
    case DistributionKind::HalfNormal:
      while (out.size() < n) {
        const double r = std::sqrt(-2.0 * std::log(unit_open(gen())));
        const double z = std::abs(r * std::cos(2.0 * std::numbers::pi * unit_closed_open(gen()))) * dist.sigma;
        if (z > 0.0) out.push_back(z);
      }
      break;
    case DistributionKind::BitcoinData: {
      if (!dist.pool || dist.pool->empty()) throw Error(ErrorCode::EmptyPool, "distribution has no loaded pool");
      const auto& pool = *dist.pool;
      for (std::size_t i = 0; i < n; ++i) out.push_back(pool[bounded(gen, pool.size())]);
      break;
    }
  }
  return out;
}

}  // namespace feemarket
