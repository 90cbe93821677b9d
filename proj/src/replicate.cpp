#include "supertour/replicate.hpp"

#include <cmath>

#include "supertour/baselines.hpp"
#include "supertour/errors.hpp"
#include "supertour/random.hpp"
#include "supertour/tours.hpp"

namespace supertour {

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t r) {
  return substream_seed(mix64(master_seed ^ 0x5265706c69636174ULL), r);
}

ReplicationSummary replicate(const SuperNodeGraph& sg, const EdgeFunction& f,
                             const ReplicationOptions& options) {
  if (options.replications < 2) throw ConfigError("need at least 2 replications");
  ReplicationSummary summary;
  summary.replications = options.replications;
  summary.mu_oracle = oracle_mu(sg.base(), f);
  const double offset = boundary_offset(sg, f);

  std::size_t covered = 0;
  summary.estimates.reserve(options.replications);
  for (std::size_t r = 0; r < options.replications; ++r) {
    const TourSet ts = run_tours(sg, f, options.m, replication_seed(options.master_seed, r),
                                 options.workers);
    const double mu_hat = crawl_estimate(ts, sg) + offset;
    summary.estimates.push_back(mu_hat);
    if (options.m >= 2) {
      const Posterior p = posterior(batch_statistics(ts, sg, offset), mu_hat, options.prior);
      const auto [lo, hi] = credible_interval(p, options.level);
      if (lo <= summary.mu_oracle && summary.mu_oracle <= hi) ++covered;
    }
  }

  const auto R = static_cast<double>(options.replications);
  double mean = 0.0;
  for (double x : summary.estimates) mean += x;
  mean /= R;
  double ss = 0.0;
  for (double x : summary.estimates) ss += (x - mean) * (x - mean);
  summary.mean_mu_hat = mean;
  summary.stderr_mu_hat = std::sqrt(ss / (R - 1.0) / R);
  if (options.m >= 2) summary.coverage = static_cast<double>(covered) / R;
  return summary;
}

}  // namespace supertour
