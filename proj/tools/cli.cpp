#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "feemarket/block.hpp"
#include "feemarket/errors.hpp"
#include "feemarket/experiments.hpp"
#include "feemarket/monopolistic.hpp"
#include "feemarket/numfmt.hpp"
#include "feemarket/oracle.hpp"
#include "feemarket/rsop.hpp"
#include "feemarket/strategic.hpp"

namespace feemarket::cli {
namespace {

// Malformed flag values that CLI11 cannot see (e.g. "--bids 1,x").
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_number_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    double x = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw UsageError(std::string(flag) + ": \"" + std::string(item) + "\" is not a number");
    }
    out.push_back(x);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  for (double x : parse_number_list(text, flag)) {
    if (!(x >= 1.0) || x != static_cast<double>(static_cast<std::size_t>(x))) {
      throw UsageError(std::string(flag) + ": expected positive integers");
    }
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

std::string json_array(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + json_number(xs[i]);
  return s + "]";
}

std::string json_array(const std::vector<std::size_t>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

std::string partition_string(const Partition& p) {
  std::string s;
  for (Side side : p.assignment) s += side == Side::A ? 'A' : 'B';
  return s;
}

std::string outcome_fields(const RsopOutcome& o) {
  return "\"p_A\":" + json_number(o.p_A) + ",\"p_B\":" + json_number(o.p_B) +
         ",\"winners_A\":" + json_array(o.winners_A) + ",\"winners_B\":" + json_array(o.winners_B) +
         ",\"revenue\":" + json_number(o.revenue) + ",\"miner_share\":" + json_number(o.miner_share) +
         ",\"carry_share\":" + json_number(o.carry_share);
}

const std::vector<std::string> kModes{"single", "multibid"};
const std::vector<std::string> kFormats{"csv", "json"};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fee-market auction mechanisms: pricing, strategic bidding, RSOP and simulations", "feemarket"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // price
  std::string bids_text;
  std::optional<std::size_t> cap;
  auto* price = app.add_subcommand("price", "Monopolistic price, revenue and k* of a bid list");
  price->add_option("--bids", bids_text, "Comma-separated bids")->required();
  price->add_option("--cap", cap, "Maximum number of included bids")->check(CLI::PositiveNumber);

  // strategic
  std::string others_text;
  std::optional<double> value;
  std::string mode_text = "single";
  auto* strategic = app.add_subcommand("strategic", "Lowest single winning bid against the other bids");
  strategic->add_option("--others", others_text, "Comma-separated bids of the other users")->required();
  strategic->add_option("--value", value, "Also report the discount ratio for this true value");
  strategic->add_option("--mode", mode_text, "Deviation used for the discount ratio")
      ->check(CLI::IsMember(kModes));

  // multibid
  bool with_oracle = false;
  auto* multibid = app.add_subcommand("multibid", "Cheapest split into equal winning bids");
  multibid->add_option("--others", others_text, "Comma-separated bids of the other users")->required();
  multibid->add_flag("--oracle", with_oracle, "Also run the brute-force oracle");

  // rsop
  std::uint64_t seed = 0;
  double alpha = 0.1;
  bool expected = false;
  std::size_t samples = 10000;
  auto* rsop = app.add_subcommand("rsop", "One RSOP auction over bids in the given order");
  rsop->add_option("--bids", bids_text, "Comma-separated bids, in canonical order")->required();
  rsop->add_option("--seed", seed, "Partition seed");
  rsop->add_option("--alpha", alpha, "Fraction of revenue carried to the next block")->check(CLI::Range(0.0, 1.0));
  rsop->add_flag("--expected", expected, "Also report the expected revenue");
  rsop->add_option("--samples", samples, "Partitions sampled when n exceeds the exact limit")
      ->check(CLI::PositiveNumber);

  // verify-block
  std::string file;
  auto* verify = app.add_subcommand("verify-block", "Verify a block file and report valid transactions and fees");
  verify->add_option("--file", file, "Block JSON")->required();

  // simulate
  std::string config_path;
  std::optional<std::string> output;
  std::optional<std::string> format_text;
  std::optional<std::size_t> threads;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::string> sim_mode;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> avg_subsample;
  std::optional<double> sim_alpha;
  bool full_grid = false;
  std::string grid = "all";
  auto* simulate = app.add_subcommand("simulate", "Run the discount and RSOP grids from a config file");
  simulate->add_option("--config", config_path, "JSON or TOML config")->required();
  simulate->add_option("--output", output, "Output path (overrides the config)");
  simulate->add_option("--format", format_text, "csv or json")->check(CLI::IsMember(kFormats));
  simulate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "Base seed");
  simulate->add_option("--mode", sim_mode, "Strategic deviation")->check(CLI::IsMember(kModes));
  simulate->add_option("--runs", runs, "Runs per grid point")->check(CLI::PositiveNumber);
  simulate->add_option("--avg-subsample", avg_subsample, "Users sampled for delta_avg (0 = exact)");
  simulate->add_option("--alpha", sim_alpha, "Carry-forward fraction")->check(CLI::Range(0.0, 1.0));
  simulate->add_flag("--full-grid", full_grid, "Use exponents up to 17");
  simulate->add_option("--grid", grid, "all, discount or rsop")
      ->check(CLI::IsMember(std::vector<std::string>{"all", "discount", "rsop"}));

  // compare-revenue
  std::size_t n = 1000;
  std::string block_sizes_text = "100,500,1000,1500,2000";
  std::size_t cmp_runs = 100;
  std::string cmp_format = "csv";
  auto* compare = app.add_subcommand("compare-revenue", "Pay-your-bid vs capped monopolistic revenue");
  compare->add_option("--n", n, "Users per draw")->check(CLI::PositiveNumber);
  compare->add_option("--block-sizes", block_sizes_text, "Comma-separated block sizes");
  compare->add_option("--runs", cmp_runs, "Draws")->check(CLI::PositiveNumber);
  compare->add_option("--seed", seed, "Base seed");
  compare->add_option("--output", output, "Also write rows here");
  compare->add_option("--format", cmp_format, "csv or json")->check(CLI::IsMember(kFormats));

  // check-conjectures
  std::size_t n_max = 12;
  std::size_t instances = 1000;
  auto* conj = app.add_subcommand("check-conjectures", "Exhaustively check RSOP <= R on random instances");
  conj->add_option("--n-max", n_max, "Largest instance size")->check(CLI::Range(1, 20));
  conj->add_option("--instances", instances, "Number of instances");
  conj->add_option("--seed", seed, "Base seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 2;
  }

  try {
    if (price->parsed()) {
      const BidVector b = BidVector::from(parse_number_list(bids_text, "--bids"));
      const MonopolisticOutcome o = cap ? monopolistic_outcome_capped(b, *cap) : monopolistic_outcome(b);
      out << "{\"revenue\":" << json_number(o.revenue) << ",\"k_star\":" << o.k_star
          << ",\"price\":" << json_number(o.price) << "}\n";
    } else if (strategic->parsed()) {
      const BidVector w = BidVector::from(parse_number_list(others_text, "--others"));
      out << "{\"strategic_price\":" << json_number(strategic_price(w));
      if (value) {
        out << ",\"mode\":\"" << mode_text << "\",\"discount_ratio\":"
            << json_number(discount_ratio(*value, w, parse_price_mode(mode_text)));
      }
      out << "}\n";
    } else if (multibid->parsed()) {
      const BidVector w = BidVector::from(parse_number_list(others_text, "--others"));
      const MultibidResult r = multibid_price(w);
      out << "{\"total\":" << json_number(r.total) << ",\"b_star\":" << json_number(r.b_star)
          << ",\"u_star\":" << r.u_star;
      if (with_oracle) out << ",\"oracle_total\":" << json_number(oracle::multibid_oracle(w));
      out << "}\n";
    } else if (rsop->parsed()) {
      std::vector<double> raw = parse_number_list(bids_text, "--bids");
      for (double x : raw) validate_bid(x);
      const Partition part = partition_bids(raw.size(), seed);
      const RsopOutcome o = rsop_outcome(raw, part, alpha);
      out << "{\"seed\":" << seed << ",\"partition\":\"" << partition_string(part) << "\"," << outcome_fields(o);
      if (expected) {
        const Estimate e = rsop_expected_revenue(BidVector::from(raw), samples, seed);
        out << ",\"expected_revenue\":" << json_number(e.mean) << ",\"expected_stderr\":"
            << json_number(e.stderr_mean) << ",\"expected_exact\":" << (e.exact ? "true" : "false");
      }
      out << "}\n";
    } else if (verify->parsed()) {
      const Block block = load_block_file(file);
      const BlockVerification v = verify_block(block);
      out << "{\"seed\":" << v.partition.seed << ",\"alpha\":" << json_number(block.alpha)
          << ",\"partition\":\"" << partition_string(v.partition) << "\"," << outcome_fields(v.outcome)
          << ",\"valid\":[";
      for (std::size_t i = 0; i < v.valid.size(); ++i) {
        const ValidTransaction& t = v.valid[i];
        out << (i ? "," : "") << "{\"index\":" << t.index << ",\"txid\":\"" << to_hex(t.txid)
            << "\",\"fee\":" << json_number(t.fee) << "}";
      }
      out << "]}\n";
    } else if (simulate->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      if (output) cfg.output = *output;
      if (format_text) cfg.format = parse_output_format(*format_text);
      if (threads) cfg.threads = *threads;
      if (sim_seed) cfg.base_seed = *sim_seed;
      if (sim_mode) cfg.mode = parse_price_mode(*sim_mode);
      if (runs) cfg.runs_per_point = *runs;
      if (avg_subsample) cfg.avg_subsample = *avg_subsample;
      if (sim_alpha) cfg.alpha = *sim_alpha;
      if (full_grid) cfg.exponent_max = 17;
      if (cfg.output.empty()) throw Error(ErrorCode::InvalidConfig, "no output path in config or --output");
      const GridResult result = grid == "discount" ? run_discount_grid(cfg)
                                : grid == "rsop"   ? run_rsop_grid(cfg)
                                                   : run_simulation(cfg);
      emit_grid(result, cfg.output, cfg.format);
      out << "{\"output\":\"" << cfg.output << "\",\"rows\":" << result.rows.size()
          << ",\"zero_rsop_runs\":" << result.zero_rsop_runs << "}\n";
    } else if (compare->parsed()) {
      const RevenueComparison cmp =
          run_revenue_comparison(n, parse_size_list(block_sizes_text, "--block-sizes"), cmp_runs, seed);
      if (output) emit(cmp.rows, *output, parse_output_format(cmp_format));
      out << "{\"n\":" << n << ",\"runs\":" << cmp_runs
          << ",\"monotone_every_draw\":" << (cmp.monotone_every_draw ? "true" : "false") << ",\"points\":[";
      for (std::size_t i = 0; i < cmp.points.size(); ++i) {
        const RevenuePoint& p = cmp.points[i];
        out << (i ? "," : "") << "{\"block_size\":" << p.block_size
            << ",\"pay_your_bid_mean\":" << json_number(p.pay_your_bid_mean)
            << ",\"monopolistic_mean\":" << json_number(p.monopolistic_mean) << "}";
      }
      out << "]}\n";
    } else if (conj->parsed()) {
      const ConjectureCampaign c = run_conjecture_campaign(n_max, instances, seed);
      out << "{\"conjecture\":\"rsop_at_most_monopolistic\",\"result\":\"" << (c.holds() ? "pass" : "fail")
          << "\",\"instances\":" << c.instances << ",\"partitions_checked\":" << c.partitions_checked
          << ",\"max_ratio\":" << json_number(c.max_ratio) << ",\"witnesses\":[";
      for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
        const ConjectureWitness& w = c.witnesses[i];
        out << (i ? "," : "") << "{\"bids\":" << json_array(w.bids) << ",\"partition\":\""
            << partition_string(w.partition) << "\",\"rsop_revenue\":" << json_number(w.rsop_revenue)
            << ",\"monopolistic_revenue\":" << json_number(w.monopolistic_revenue) << "}";
      }
      out << "]}\n";
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace feemarket::cli
