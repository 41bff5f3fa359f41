#include "feemarket/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>
#include <toml.hpp>

#include "feemarket/errors.hpp"
#include "feemarket/monopolistic.hpp"
#include "feemarket/numfmt.hpp"
#include "feemarket/rng.hpp"
#include "feemarket/rsop.hpp"

namespace feemarket {
namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

struct GridParts {
  bool discounts = false;
  bool rsop = false;
};

// Runs fn(i) for i in [0, count) on `threads` workers. The exception from the
// lowest failing index is rethrown so failures are as deterministic as output.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<std::size_t> effective_subsample(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.avg_subsample) {
    if (*cfg.avg_subsample == 0) return std::nullopt;
    return cfg.avg_subsample;
  }
  if (n > kExactAverageMaxN) return kDefaultAvgSubsample;
  return std::nullopt;
}

ResultRow run_one(const ExperimentConfig& cfg, const ValueDistribution& dist, std::size_t dist_index, int exponent,
                  std::size_t run, GridParts parts) {
  const std::uint64_t seed =
      derive_seed(cfg.base_seed, {dist_index, static_cast<std::uint64_t>(exponent), run});
  const std::size_t n = std::size_t{1} << exponent;
  const BidVector values = sample(dist, n, seed);

  ResultRow row;
  row.distribution = dist.label();
  row.n = n;
  row.run = static_cast<long long>(run);
  row.seed_used = seed;
  const MonopolisticOutcome mono = monopolistic_outcome(values);
  row.k_star = static_cast<double>(mono.k_star);
  row.revenue_monopolistic = mono.revenue;

  if (parts.discounts) {
    DiscountOptions opts;
    opts.avg_subsample = effective_subsample(cfg, n);
    opts.subsample_seed = derive_seed(seed, {1});
    const DiscountStats stats = discount_stats(values, cfg.mode, opts);
    row.delta_avg = stats.delta_avg;
    row.delta_max = stats.delta_max;
  }
  if (parts.rsop) {
    const Partition part = partition_bids(n, derive_seed(seed, {2}));
    const double r = rsop_outcome(values, part, cfg.alpha).revenue;
    row.revenue_rsop = r;
    row.gain_ratio_rsop = r > 0.0 ? mono.revenue / r - 1.0 : std::numeric_limits<double>::infinity();
  }
  return row;
}

GridResult run_grid(const ExperimentConfig& cfg_in, GridParts parts) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.distributions.empty()) cfg.distributions = default_distributions();
  validate_config(cfg);

  const std::size_t exponents = static_cast<std::size_t>(cfg.exponent_max - cfg.exponent_min + 1);
  const std::size_t per_dist = exponents * cfg.runs_per_point;
  const std::size_t total = cfg.distributions.size() * per_dist;
  std::vector<ResultRow> detail(total);
  parallel_for(total, resolve_threads(cfg.threads), [&](std::size_t task) {
    const std::size_t d = task / per_dist;
    const std::size_t rest = task % per_dist;
    const int exponent = cfg.exponent_min + static_cast<int>(rest / cfg.runs_per_point);
    const std::size_t run = rest % cfg.runs_per_point;
    detail[task] = run_one(cfg, cfg.distributions[d], d, exponent, run, parts);
  });
  return summarize(std::move(detail));
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  void add(const std::optional<double>& x) {
    if (x && std::isfinite(*x)) add(*x);
  }
  std::optional<double> mean() const {
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  }
  std::optional<double> stderr_mean() const {
    if (count == 0) return std::nullopt;
    if (count == 1) return 0.0;
    const double c = static_cast<double>(count);
    const double m = sum / c;
    const double var = std::max(0.0, (sum_sq - c * m * m) / (c - 1.0));
    return std::sqrt(var / c);
  }
};

struct GroupMoments {
  std::string distribution;
  std::size_t n = 0;
  Moments delta_avg, delta_max, k_star, revenue_monopolistic, revenue_rsop, gain_ratio, pay_your_bid;
};

// CSV and JSON helpers.

std::string csv_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::string json_optional(const std::optional<double>& x) { return x ? json_number(*x) : std::string("null"); }

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

// Creates missing parent directories.
void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

std::optional<double> json_to_optional(const json& v, const char* field) {
  if (v.is_null()) return std::nullopt;
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw Error(ErrorCode::MalformedRow, std::string("field ") + field + " is not a number");
}

// Config parsing.

// Relative data paths are taken relative to `base`, the config file's directory.
ValueDistribution distribution_from_json(const json& entry, const std::filesystem::path& base) {
  if (entry.is_string()) return parse_distribution(entry.get<std::string>());
  if (!entry.is_object()) bad_config("distributions entries must be labels or tables");
  std::string kind;
  std::string path;
  std::optional<double> sigma;
  ValueTransform transform = ValueTransform::Identity;
  for (const auto& [key, value] : entry.items()) {
    if (key == "kind" && value.is_string()) {
      kind = value.get<std::string>();
    } else if (key == "path" && value.is_string()) {
      path = value.get<std::string>();
    } else if (key == "sigma" && value.is_number()) {
      sigma = value.get<double>();
    } else if (key == "transform" && value.is_string()) {
      transform = parse_transform(value.get<std::string>());
    } else {
      bad_config("unexpected distribution key \"" + key + "\"");
    }
  }
  if (kind == "half_normal") return half_normal(sigma.value_or(1.0));
  if (kind == "bitcoin_data") {
    if (path.empty()) bad_config("bitcoin_data needs a path");
    return bitcoin_data((base / path).string(), transform);
  }
  return parse_distribution(kind, path.empty() ? path : (base / path).string());
}

std::uint64_t json_u64(const json& v, const char* key) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
    bad_config(std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

ExperimentConfig config_from_json(const json& doc, const std::filesystem::path& base) {
  if (!doc.is_object()) bad_config("config must be a table/object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "distributions") {
      if (!value.is_array()) bad_config("distributions must be an array");
      for (const auto& entry : value) cfg.distributions.push_back(distribution_from_json(entry, base));
    } else if (key == "n_exponents") {
      if (!value.is_array() || value.size() != 2) bad_config("n_exponents must be [min, max]");
      cfg.exponent_min = static_cast<int>(json_u64(value[0], "n_exponents"));
      cfg.exponent_max = static_cast<int>(json_u64(value[1], "n_exponents"));
    } else if (key == "runs_per_point") {
      cfg.runs_per_point = json_u64(value, "runs_per_point");
    } else if (key == "mode") {
      if (!value.is_string()) bad_config("mode must be a string");
      try {
        cfg.mode = parse_price_mode(value.get<std::string>());
      } catch (const Error& e) {
        bad_config(e.what());
      }
    } else if (key == "base_seed") {
      cfg.base_seed = json_u64(value, "base_seed");
    } else if (key == "avg_subsample") {
      if (!value.is_null()) cfg.avg_subsample = json_u64(value, "avg_subsample");
    } else if (key == "alpha") {
      if (!value.is_number()) bad_config("alpha must be a number");
      cfg.alpha = value.get<double>();
    } else if (key == "output") {
      if (value.is_string()) {
        cfg.output = value.get<std::string>();
      } else if (value.is_object()) {
        for (const auto& [k, v] : value.items()) {
          if (k == "path" && v.is_string()) {
            cfg.output = v.get<std::string>();
          } else if (k == "format" && v.is_string()) {
            cfg.format = parse_output_format(v.get<std::string>());
          } else {
            bad_config("unexpected output key \"" + k + "\"");
          }
        }
      } else {
        bad_config("output must be a path or {path, format}");
      }
    } else if (key == "format") {
      if (!value.is_string()) bad_config("format must be a string");
      cfg.format = parse_output_format(value.get<std::string>());
    } else if (key == "threads") {
      cfg.threads = json_u64(value, "threads");
    } else {
      bad_config("unknown config key \"" + key + "\"");
    }
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw Error(ErrorCode::InvalidConfig, "unknown output format \"" + std::string(text) + "\"");
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.runs_per_point < 1) bad_config("runs_per_point must be at least 1");
  if (cfg.exponent_min < 1 || cfg.exponent_max < cfg.exponent_min) {
    bad_config("n_exponents must be a non-empty range starting at 1 or above");
  }
  if (cfg.exponent_max > 30) bad_config("n_exponents above 30 are not supported");
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) bad_config("alpha must lie in [0, 1]");
}

std::vector<ValueDistribution> default_distributions() {
  return {make_distribution(DistributionKind::DiscreteUniform1To100), make_distribution(DistributionKind::Uniform01),
          half_normal(1.0), make_distribution(DistributionKind::Inverse)};
}

ExperimentConfig parse_config_json(std::string_view text) { return parse_config_json(text, {}); }

ExperimentConfig parse_config_json(std::string_view text, const std::filesystem::path& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_config(std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(doc, base);
}

ExperimentConfig parse_config_toml(std::string_view text) { return parse_config_toml(text, {}); }

ExperimentConfig parse_config_toml(std::string_view text, const std::filesystem::path& base) {
  toml::table table;
  try {
    table = toml::parse(text);
  } catch (const toml::parse_error& e) {
    bad_config(std::string("invalid TOML: ") + std::string(e.description()));
  }
  std::ostringstream as_json;
  as_json << toml::json_formatter{table};
  return parse_config_json(as_json.str(), base);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  if (path.ends_with(".toml")) return parse_config_toml(buf.str(), base);
  if (path.ends_with(".json")) return parse_config_json(buf.str(), base);
  bad_config("config file must end in .json or .toml: " + path);
}

GridResult summarize(std::vector<ResultRow> detail) {
  std::vector<GroupMoments> groups;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  GridResult out;
  for (const ResultRow& row : detail) {
    const auto key = std::make_pair(row.distribution, row.n);
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.push_back({row.distribution, row.n, {}, {}, {}, {}, {}, {}, {}});
    GroupMoments& g = groups[it->second];
    g.delta_avg.add(row.delta_avg);
    g.delta_max.add(row.delta_max);
    g.k_star.add(row.k_star);
    g.revenue_monopolistic.add(row.revenue_monopolistic);
    g.revenue_rsop.add(row.revenue_rsop);
    g.gain_ratio.add(row.gain_ratio_rsop);
    g.pay_your_bid.add(row.pay_your_bid_revenue);
    if (row.gain_ratio_rsop && std::isinf(*row.gain_ratio_rsop)) ++out.zero_rsop_runs;
  }
  out.rows = std::move(detail);
  for (const GroupMoments& g : groups) {
    ResultRow s;
    s.distribution = g.distribution;
    s.n = g.n;
    s.run = -1;
    s.delta_avg = g.delta_avg.mean();
    s.delta_max = g.delta_max.mean();
    s.k_star = g.k_star.mean().value_or(0.0);
    s.revenue_monopolistic = g.revenue_monopolistic.mean().value_or(0.0);
    s.revenue_rsop = g.revenue_rsop.mean();
    s.gain_ratio_rsop = g.gain_ratio.mean();
    s.pay_your_bid_revenue = g.pay_your_bid.mean();
    out.rows.push_back(std::move(s));

    SummaryErrors e;
    e.distribution = g.distribution;
    e.n = g.n;
    e.delta_avg = g.delta_avg.stderr_mean();
    e.delta_max = g.delta_max.stderr_mean();
    e.k_star = g.k_star.stderr_mean().value_or(0.0);
    e.revenue_monopolistic = g.revenue_monopolistic.stderr_mean().value_or(0.0);
    e.revenue_rsop = g.revenue_rsop.stderr_mean();
    e.gain_ratio_rsop = g.gain_ratio.stderr_mean();
    e.pay_your_bid_revenue = g.pay_your_bid.stderr_mean();
    out.errors.push_back(std::move(e));
  }
  return out;
}

GridResult run_discount_grid(const ExperimentConfig& cfg) { return run_grid(cfg, {true, false}); }

GridResult run_rsop_grid(const ExperimentConfig& cfg) { return run_grid(cfg, {false, true}); }

GridResult run_simulation(const ExperimentConfig& cfg) { return run_grid(cfg, {true, true}); }

RevenueComparison run_revenue_comparison(std::size_t n, const std::vector<std::size_t>& block_sizes,
                                         std::size_t runs, std::uint64_t seed) {
  if (n == 0 || runs == 0 || block_sizes.empty()) {
    throw Error(ErrorCode::InvalidArgument, "revenue comparison needs n, runs and block sizes");
  }
  for (std::size_t l : block_sizes) {
    if (l == 0) throw Error(ErrorCode::InvalidArgument, "block sizes must be at least 1");
  }
  std::vector<std::size_t> ascending(block_sizes);
  std::sort(ascending.begin(), ascending.end());

  RevenueComparison out;
  const ValueDistribution uniform = make_distribution(DistributionKind::Uniform01);
  // rows_by_size[l index][run]
  std::vector<std::vector<ResultRow>> rows_by_size(block_sizes.size());
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t draw_seed = derive_seed(seed, {r});
    const BidVector values = sample(uniform, n, draw_seed);
    double previous = -1.0;
    for (std::size_t l : ascending) {
      const double rev = monopolistic_outcome_capped(values, l).revenue;
      if (rev < previous) out.monotone_every_draw = false;
      previous = rev;
    }
    for (std::size_t j = 0; j < block_sizes.size(); ++j) {
      const std::size_t l = block_sizes[j];
      const MonopolisticOutcome capped = monopolistic_outcome_capped(values, l);
      ResultRow row;
      row.distribution = "uniform_01|block_size=" + std::to_string(l);
      row.n = n;
      row.run = static_cast<long long>(r);
      row.k_star = static_cast<double>(capped.k_star);
      row.revenue_monopolistic = capped.revenue;
      row.pay_your_bid_revenue = pay_your_bid_revenue(values, l);
      row.seed_used = draw_seed;
      rows_by_size[j].push_back(std::move(row));
    }
  }
  std::vector<ResultRow> detail;
  for (auto& rows : rows_by_size) {
    for (auto& row : rows) detail.push_back(std::move(row));
  }
  GridResult grid = summarize(std::move(detail));
  for (const ResultRow& row : grid.rows) {
    if (!row.is_summary()) continue;
    const std::size_t l = std::stoull(row.distribution.substr(row.distribution.find('=') + 1));
    out.points.push_back({l, row.pay_your_bid_revenue.value_or(0.0), row.revenue_monopolistic});
  }
  out.rows = std::move(grid.rows);
  return out;
}

ConjectureCampaign run_conjecture_campaign(std::size_t n_max, std::size_t instances, std::uint64_t seed) {
  if (n_max < 1 || n_max > kMaxExactPartitionBids) {
    throw Error(ErrorCode::InvalidArgument,
                "n_max must lie in [1, " + std::to_string(kMaxExactPartitionBids) + "]");
  }
  const ValueDistribution discrete = make_distribution(DistributionKind::DiscreteUniform1To100);
  const ValueDistribution uniform = make_distribution(DistributionKind::Uniform01);
  ConjectureCampaign out;
  out.instances = instances;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::uint64_t s = derive_seed(seed, {i});
    Xoshiro256StarStar gen(s);
    const std::size_t n = 1 + static_cast<std::size_t>(bounded(gen, n_max));
    const BidVector bids = sample(i % 2 == 0 ? discrete : uniform, n, gen());
    const ConjectureCheck check = check_conjecture_rsop_leq_monopolistic(bids);
    out.partitions_checked += check.partitions_checked;
    out.max_ratio = std::max(out.max_ratio, check.max_ratio);
    if (!check.holds) {
      const RsopOutcome r = rsop_outcome(bids, *check.witness, 0.0);
      out.witnesses.push_back({bids.to_vector(), *check.witness, r.revenue, monopolistic_outcome(bids).revenue});
    }
  }
  return out;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string s(kCsvHeader);
  s += '\n';
  for (const ResultRow& r : rows) {
    s += r.distribution;
    s += ',' + std::to_string(r.n);
    s += ',' + std::to_string(r.run);
    s += ',' + csv_optional(r.delta_avg);
    s += ',' + csv_optional(r.delta_max);
    s += ',' + format_number(r.k_star);
    s += ',' + format_number(r.revenue_monopolistic);
    s += ',' + csv_optional(r.revenue_rsop);
    s += ',' + csv_optional(r.gain_ratio_rsop);
    s += ',' + csv_optional(r.pay_your_bid_revenue);
    s += ',' + std::to_string(r.seed_used);
    s += '\n';
  }
  return s;
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
  std::string s = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& r = rows[i];
    s += i == 0 ? "\n" : ",\n";
    s += "{\"distribution\":" + json_string(r.distribution);
    s += ",\"n\":" + std::to_string(r.n);
    s += ",\"run\":" + std::to_string(r.run);
    s += ",\"delta_avg\":" + json_optional(r.delta_avg);
    s += ",\"delta_max\":" + json_optional(r.delta_max);
    s += ",\"k_star\":" + json_number(r.k_star);
    s += ",\"revenue_monopolistic\":" + json_number(r.revenue_monopolistic);
    s += ",\"revenue_rsop\":" + json_optional(r.revenue_rsop);
    s += ",\"gain_ratio_rsop\":" + json_optional(r.gain_ratio_rsop);
    s += ",\"pay_your_bid_revenue\":" + json_optional(r.pay_your_bid_revenue);
    s += ",\"seed_used\":" + std::to_string(r.seed_used) + "}";
  }
  s += rows.empty() ? "]\n" : "\n]\n";
  return s;
}

std::string errors_to_csv(const std::vector<SummaryErrors>& errors) {
  std::string s(kStderrCsvHeader);
  s += '\n';
  for (const SummaryErrors& e : errors) {
    s += e.distribution;
    s += ',' + std::to_string(e.n);
    s += ',' + csv_optional(e.delta_avg);
    s += ',' + csv_optional(e.delta_max);
    s += ',' + format_number(e.k_star);
    s += ',' + format_number(e.revenue_monopolistic);
    s += ',' + csv_optional(e.revenue_rsop);
    s += ',' + csv_optional(e.gain_ratio_rsop);
    s += ',' + csv_optional(e.pay_your_bid_revenue);
    s += '\n';
  }
  return s;
}

std::vector<ResultRow> rows_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedRow, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::MalformedRow, "expected a JSON array of rows");
  std::vector<ResultRow> rows;
  for (const json& obj : doc) {
    try {
      ResultRow r;
      r.distribution = obj.at("distribution").get<std::string>();
      r.n = obj.at("n").get<std::size_t>();
      r.run = obj.at("run").get<long long>();
      r.delta_avg = json_to_optional(obj.at("delta_avg"), "delta_avg");
      r.delta_max = json_to_optional(obj.at("delta_max"), "delta_max");
      r.k_star = json_to_optional(obj.at("k_star"), "k_star").value_or(0.0);
      r.revenue_monopolistic =
          json_to_optional(obj.at("revenue_monopolistic"), "revenue_monopolistic").value_or(0.0);
      r.revenue_rsop = json_to_optional(obj.at("revenue_rsop"), "revenue_rsop");
      r.gain_ratio_rsop = json_to_optional(obj.at("gain_ratio_rsop"), "gain_ratio_rsop");
      r.pay_your_bid_revenue = json_to_optional(obj.at("pay_your_bid_revenue"), "pay_your_bid_revenue");
      r.seed_used = obj.at("seed_used").get<std::uint64_t>();
      rows.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedRow, std::string("row ") + std::to_string(rows.size()) + ": " + e.what());
    }
  }
  return rows;
}

void emit(const std::vector<ResultRow>& rows, const std::string& path, OutputFormat format) {
  write_file(path, format == OutputFormat::Csv ? rows_to_csv(rows) : rows_to_json(rows));
}

void emit_grid(const GridResult& grid, const std::string& path, OutputFormat format) {
  emit(grid.rows, path, format);
  if (!grid.errors.empty()) write_file(path + ".stderr.csv", errors_to_csv(grid.errors));
}

std::size_t resolve_threads(std::size_t requested) {
  std::size_t n = requested > 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FEEMARKET_THREADS"); env != nullptr) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return std::max<std::size_t>(n, 1);
}

}  // namespace feemarket
