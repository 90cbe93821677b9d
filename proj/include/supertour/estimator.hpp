#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "supertour/edge_function.hpp"
#include "supertour/supernode.hpp"
#include "supertour/tours.hpp"

namespace supertour {

/// Conjugate Normal / Inverse-gamma prior: mu | sigma^2 ~ N(mu0, sigma^2/m0),
/// sigma^2 ~ Inv-Gamma(nu0/2, nu0 sigma0^2 / 2).
struct PriorParams {
  double m0 = 0.0;
  double nu0 = 0.0;
  double mu0 = 0.0;
  double sigma0 = 1.0;

  void validate() const;
};

/// Parameters of a non-standardized Student-t.
struct Posterior {
  double nu = 0.0;
  double mu_tilde = 0.0;
  double sigma_tilde = 0.0;
  /// sigma_tilde == 0: the posterior is a point mass at mu_tilde.
  bool degenerate = false;
};

/// Which boundary edges the offset term sums over.
enum class OffsetRule {
  any_endpoint_in_seeds,   // every edge touching I_n (unbiased)
  both_endpoints_in_seeds, // only edges inside I_n
};

/// Sum of f over the original edges selected by `rule`.
double boundary_offset(const SuperNodeGraph& sg, const EdgeFunction& f,
                       OffsetRule rule = OffsetRule::any_endpoint_in_seeds);

/// Crawl term of the estimator, d_S / (2m) * sum_k W_k.
double crawl_estimate(const TourSet& ts, const SuperNodeGraph& sg);

/// Unbiased estimate of sum_{(u,v) in E} f(u, v): crawl term plus the offset.
double point_estimate(const TourSet& ts, const SuperNodeGraph& sg, const EdgeFunction& f,
                      OffsetRule rule = OffsetRule::any_endpoint_in_seeds);

/// floor(sqrt(m)) batch estimates. Batch h uses tours h*m'..(h+1)*m'-1 and
/// equals d_S / (2 m') * (sum of their W) + offset. Tours past m'^2 are left
/// out. Requires m >= 2.
std::vector<double> batch_statistics(const TourSet& ts, const SuperNodeGraph& sg, double offset);

/// Student-t approximate posterior from the batch estimates; mu_hat is the
/// point estimate over all m tours.
Posterior posterior(const std::vector<double>& batches, double mu_hat,
                    const PriorParams& prior = {});

/// Density of the non-standardized t at x, via log-gamma.
double posterior_density(const Posterior& p, double x);

/// Equal-tailed credible interval at `level` in (0, 1). The standardized
/// quantile is found by bisection on the t CDF to 1e-10. A degenerate
/// posterior returns [mu_tilde, mu_tilde].
std::pair<double, double> credible_interval(const Posterior& p, double level);

struct HistogramBin {
  double center;
  double density;
};

struct Histogram {
  double bin_width = 0.0;
  std::vector<HistogramBin> bins;
};

/// Density histogram of the batch values with Freedman-Diaconis bin width.
/// Total mass (sum of density * width) is one.
Histogram empirical_posterior(const std::vector<double>& batches);

struct EstimateReport {
  double mu_hat = 0.0;
  double offset = 0.0;
  double crawl_term = 0.0;
  std::size_t m = 0;
  std::size_t m_prime = 0;
  std::vector<double> batch_values;
  std::optional<Posterior> posterior;  // absent when m < 2
  double map_estimate = 0.0;
  CrawlCost crawl_cost;
};

/// Full report. With `include_offset` false the batches and posterior target
/// the crawl-only statistic (edges not touching I_n).
EstimateReport make_report(const TourSet& ts, const SuperNodeGraph& sg, const EdgeFunction& f,
                           const PriorParams& prior = {}, bool include_offset = true);

}  // namespace supertour
