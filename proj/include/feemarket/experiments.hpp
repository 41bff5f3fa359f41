#pragma once

// Monte Carlo grids over (distribution, n = 2^i, run). Every run draws its
// values from seed_used = derive_seed(base_seed, {distribution index, i, run})
// and is independent of scheduling, so output bytes do not depend on the
// thread count.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feemarket/distributions.hpp"
#include "feemarket/rsop.hpp"
#include "feemarket/strategic.hpp"

namespace feemarket {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f) noexcept;
OutputFormat parse_output_format(std::string_view text);

/// Users averaged over when no subsample size is configured and n exceeds
/// kExactAverageMaxN.
inline constexpr std::size_t kDefaultAvgSubsample = 256;
inline constexpr std::size_t kExactAverageMaxN = 4096;

struct ExperimentConfig {
  std::vector<ValueDistribution> distributions;  ///< empty: the four synthetic kinds
  int exponent_min = 3;
  int exponent_max = 14;  ///< 17 for the full grid
  std::size_t runs_per_point = 100;
  PriceMode mode = PriceMode::Multibid;
  std::uint64_t base_seed = 20161028;
  /// Users sampled for delta_avg. Unset: exact up to kExactAverageMaxN,
  /// kDefaultAvgSubsample above. 0 forces exact averages everywhere.
  std::optional<std::size_t> avg_subsample;
  double alpha = 0.1;
  std::string output;
  OutputFormat format = OutputFormat::Csv;
  /// 0 means hardware concurrency. FEEMARKET_THREADS caps either choice.
  std::size_t threads = 0;
};

/// Throws Error{InvalidConfig}.
void validate_config(const ExperimentConfig& cfg);

/// The four synthetic distributions in their fixed order.
std::vector<ValueDistribution> default_distributions();

/// JSON or TOML chosen by extension (.json / .toml). Keys mirror the
/// ExperimentConfig fields; n_exponents is [min, max]; output is either a
/// path string or {path, format}; distributions entries are labels or
/// {kind, sigma, path, transform} tables. A relative data path is resolved
/// against the config file's directory (`base` for the parse_* forms).
/// Throws Error{FileNotFound}, Error{InvalidConfig}.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_json(std::string_view text);
ExperimentConfig parse_config_json(std::string_view text, const std::filesystem::path& base);
ExperimentConfig parse_config_toml(std::string_view text);
ExperimentConfig parse_config_toml(std::string_view text, const std::filesystem::path& base);

struct ResultRow {
  std::string distribution;
  std::size_t n = 0;
  long long run = 0;  ///< -1 for per-(distribution, n) mean rows
  std::optional<double> delta_avg;
  std::optional<double> delta_max;
  double k_star = 0.0;  ///< an integer on detail rows, a mean on summary rows
  double revenue_monopolistic = 0.0;
  std::optional<double> revenue_rsop;
  /// revenue_monopolistic / revenue_rsop - 1; +inf flags a zero RSOP revenue.
  std::optional<double> gain_ratio_rsop;
  std::optional<double> pay_your_bid_revenue;
  std::uint64_t seed_used = 0;

  bool is_summary() const noexcept { return run < 0; }
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "distribution,n,run,delta_avg,delta_max,k_star,revenue_monopolistic,revenue_rsop,gain_ratio_rsop,"
    "pay_your_bid_revenue,seed_used";

/// Standard errors of the summary means, one per summary row.
struct SummaryErrors {
  std::string distribution;
  std::size_t n = 0;
  std::optional<double> delta_avg;
  std::optional<double> delta_max;
  double k_star = 0.0;
  double revenue_monopolistic = 0.0;
  std::optional<double> revenue_rsop;
  std::optional<double> gain_ratio_rsop;
  std::optional<double> pay_your_bid_revenue;
};

inline constexpr std::string_view kStderrCsvHeader =
    "distribution,n,delta_avg_se,delta_max_se,k_star_se,revenue_monopolistic_se,revenue_rsop_se,"
    "gain_ratio_rsop_se,pay_your_bid_revenue_se";

struct GridResult {
  std::vector<ResultRow> rows;  ///< detail rows then summary rows
  std::vector<SummaryErrors> errors;
  std::size_t zero_rsop_runs = 0;  ///< detail rows whose gain ratio is flagged
};

/// discount_stats per run; RSOP columns left empty.
GridResult run_discount_grid(const ExperimentConfig& cfg);
/// R(v), one-partition RSOP(v) and the gain ratio per run; delta columns
/// left empty. Summary gain ratios average the finite rows only.
GridResult run_rsop_grid(const ExperimentConfig& cfg);
/// Both of the above in one pass over the same draws.
GridResult run_simulation(const ExperimentConfig& cfg);

/// Appends mean rows (run = -1) per (distribution, n) in first-seen order.
GridResult summarize(std::vector<ResultRow> detail);

struct RevenuePoint {
  std::size_t block_size = 0;
  double pay_your_bid_mean = 0.0;
  double monopolistic_mean = 0.0;
};

struct RevenueComparison {
  std::vector<RevenuePoint> points;  ///< in block_sizes order
  /// Capped monopolistic revenue never decreased along the sorted block
  /// sizes within any single draw.
  bool monotone_every_draw = true;
  /// Detail and summary rows labelled "uniform_01|block_size=<l>", with the
  /// capped revenue in revenue_monopolistic.
  std::vector<ResultRow> rows;
};

/// uniform_01 values, draw r seeded by derive_seed(seed, {r}); the same draw
/// is reused across block sizes.
RevenueComparison run_revenue_comparison(std::size_t n, const std::vector<std::size_t>& block_sizes,
                                         std::size_t runs, std::uint64_t seed);

struct ConjectureWitness {
  std::vector<double> bids;  ///< sorted descending
  Partition partition;
  double rsop_revenue = 0.0;
  double monopolistic_revenue = 0.0;
};

struct ConjectureCampaign {
  std::size_t instances = 0;
  std::size_t partitions_checked = 0;
  double max_ratio = 0.0;  ///< max RSOP / R over every partition checked
  std::vector<ConjectureWitness> witnesses;

  bool holds() const noexcept { return witnesses.empty(); }
};

/// Checks RSOP <= R exhaustively (n_max <= kMaxExactPartitionBids) on random
/// instances. Instance i draws n uniformly from [1, n_max] and values from
/// discrete_uniform_1_100 (even i) or uniform_01 (odd i), all seeded by
/// derive_seed(seed, {i}). Throws Error{InvalidArgument}.
ConjectureCampaign run_conjecture_campaign(std::size_t n_max, std::size_t instances, std::uint64_t seed);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);
std::string errors_to_csv(const std::vector<SummaryErrors>& errors);
/// Inverse of rows_to_json. Throws Error{MalformedRow}.
std::vector<ResultRow> rows_from_json(std::string_view text);

/// Writes rows to `path` in `format`, creating parent directories. Throws
/// Error{IoError}.
void emit(const std::vector<ResultRow>& rows, const std::string& path, OutputFormat format);

/// emit() plus the standard-error sidecar `<path>.stderr.csv` when errors
/// are present.
void emit_grid(const GridResult& grid, const std::string& path, OutputFormat format);

/// Worker count used for a config (at least 1).
std::size_t resolve_threads(std::size_t requested);

}  // namespace feemarket
