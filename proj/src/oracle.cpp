#include "feemarket/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <vector>

#include "feemarket/errors.hpp"

namespace feemarket::oracle {
namespace {

constexpr std::size_t kGridPoints = 10000;

bool copies_all_included(const std::vector<double>& others, double bid, std::size_t copies) {
  std::vector<double> all(others);
  all.insert(all.end(), copies, bid);
  return brute_force_monopolistic(all).price <= bid;
}

// Rounding of revenue / m to the smallest double whose product with m still
// reaches the revenue, found by stepping ulps from the quotient.
double covering_quotient(double revenue, std::size_t m) {
  const double md = static_cast<double>(m);
  double q = revenue / md;
  while (md * q < revenue) q = std::nextafter(q, std::numeric_limits<double>::infinity());
  while (q > 0.0 && md * std::nextafter(q, 0.0) >= revenue) q = std::nextafter(q, 0.0);
  return q;
}

double min_total(const BidVector& others, std::size_t min_copies, std::size_t max_copies) {
  if (others.empty()) throw Error(ErrorCode::EmptyOthers, "the other bids must be non-empty");
  const std::vector<double>& w = others.to_vector();
  const std::size_t n = w.size() + 1;
  const double revenue = brute_force_monopolistic(w).revenue;
  const double top = w.front();

  std::vector<double> base;
  for (double x : w) base.push_back(x);
  for (std::size_t t = 1; t <= kGridPoints; ++t) {
    base.push_back(top * static_cast<double>(t) / static_cast<double>(kGridPoints));
  }

  std::sort(base.begin(), base.end());

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> candidates;
  for (std::size_t u = min_copies; u <= max_copies; ++u) {
    std::vector<double> quotients;
    for (std::size_t m = n + u; m >= 1; --m) quotients.push_back(covering_quotient(revenue, m));
    candidates.clear();
    std::merge(base.begin(), base.end(), quotients.begin(), quotients.end(), std::back_inserter(candidates));
    // Ascending: the first included bid is the cheapest for this u.
    for (double b : candidates) {
      const double total = static_cast<double>(u) * b;
      if (total >= best) break;
      if (copies_all_included(w, b, u)) {
        best = total;
        break;
      }
    }
  }
  return best;
}

}  // namespace

MonopolisticOutcome brute_force_monopolistic(std::span<const double> bids) {
  std::vector<double> sorted(bids.begin(), bids.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  MonopolisticOutcome out;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    const double r = static_cast<double>(k) * sorted[k - 1];
    if (r > out.revenue || (r == out.revenue && k > out.k_star)) {
      out = {r, k, sorted[k - 1]};
    }
  }
  return out;
}

double multibid_oracle(const BidVector& others) { return min_total(others, 1, others.size() + 1); }

double strategic_oracle(const BidVector& others) { return min_total(others, 1, 1); }

double fixed_copies_oracle(const BidVector& others, std::size_t copies) {
  if (copies < 1) throw Error(ErrorCode::InvalidArgument, "copies must be at least 1");
  return min_total(others, copies, copies);
}

}  // namespace feemarket::oracle
