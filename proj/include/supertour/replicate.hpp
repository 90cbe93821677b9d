#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "supertour/edge_function.hpp"
#include "supertour/estimator.hpp"
#include "supertour/supernode.hpp"

namespace supertour {

struct ReplicationSummary {
  std::size_t replications = 0;
  double mu_oracle = 0.0;
  double mean_mu_hat = 0.0;
  double stderr_mu_hat = 0.0;  // sample sd / sqrt(R)
  /// Fraction of replications whose credible interval covers mu_oracle;
  /// absent when m < 2.
  std::optional<double> coverage;
  std::vector<double> estimates;

  double bias() const noexcept { return mean_mu_hat - mu_oracle; }
  bool within(double sigmas) const noexcept {
    return std::abs(bias()) <= sigmas * stderr_mu_hat;
  }
};

struct ReplicationOptions {
  std::size_t m = 1;
  std::size_t replications = 2;
  std::uint64_t master_seed = 1;
  std::size_t workers = 1;
  double level = 0.95;
  PriorParams prior;
};

/// Master seed of replication r.
std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t r);

/// Runs independent tour sets on a fixed super-node graph and summarizes the
/// point estimates against the exact value.
ReplicationSummary replicate(const SuperNodeGraph& sg, const EdgeFunction& f,
                             const ReplicationOptions& options);

}  // namespace supertour
