#include "supertour/estimator.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numbers>

#include "supertour/errors.hpp"

namespace supertour {

void PriorParams::validate() const {
  if (!(m0 >= 0.0) || !(nu0 >= 0.0)) throw ConfigError("prior pseudo-counts must be >= 0");
  if (!(sigma0 > 0.0)) throw ConfigError("prior scale sigma0 must be > 0");
  if (!std::isfinite(mu0)) throw ConfigError("prior mean must be finite");
}

double boundary_offset(const SuperNodeGraph& sg, const EdgeFunction& f, OffsetRule rule) {
  const Graph& g = sg.base();
  EdgeEvaluator eval(f, g);
  double sum = 0.0;
  for (EdgeId id : sg.boundary_edges()) {
    const auto& e = g.edge(id);
    if (rule == OffsetRule::both_endpoints_in_seeds &&
        !(sg.seeds().contains(e.u) && sg.seeds().contains(e.v))) {
      continue;
    }
    sum += eval(e.u, e.v);
  }
  return sum;
}

double crawl_estimate(const TourSet& ts, const SuperNodeGraph& sg) {
  if (ts.m() == 0) throw ConfigError("empty tour set");
  double total = 0.0;
  for (const Tour& t : ts.tours) total += t.w;
  return static_cast<double>(sg.supernode_degree()) / (2.0 * static_cast<double>(ts.m())) * total;
}

double point_estimate(const TourSet& ts, const SuperNodeGraph& sg, const EdgeFunction& f,
                      OffsetRule rule) {
  return crawl_estimate(ts, sg) + boundary_offset(sg, f, rule);
}

std::vector<double> batch_statistics(const TourSet& ts, const SuperNodeGraph& sg, double offset) {
  const std::size_t m = ts.m();
  if (m < 2) throw ConfigError("batch statistics need at least 2 tours");
  auto m_prime = static_cast<std::size_t>(std::sqrt(static_cast<double>(m)));
  while (m_prime * m_prime > m) --m_prime;
  while ((m_prime + 1) * (m_prime + 1) <= m) ++m_prime;

  const double scale = static_cast<double>(sg.supernode_degree()) / (2.0 * static_cast<double>(m_prime));
  std::vector<double> batches(m_prime);
  for (std::size_t h = 0; h < m_prime; ++h) {
    double total = 0.0;
    for (std::size_t k = h * m_prime; k < (h + 1) * m_prime; ++k) total += ts.tours[k].w;
    batches[h] = scale * total + offset;
  }
  return batches;
}

Posterior posterior(const std::vector<double>& batches, double mu_hat, const PriorParams& prior) {
  prior.validate();
  if (batches.size() < 2) throw ConfigError("the posterior needs at least 2 batches");
  const auto mp = static_cast<double>(batches.size());

  double squares = 0.0;
  for (double F : batches) squares += (F - mu_hat) * (F - mu_hat);
  const double shrink = prior.m0 * mp / (prior.m0 + mp) * (mu_hat - prior.mu0) * (mu_hat - prior.mu0);

  Posterior p;
  p.nu = prior.nu0 + mp;
  // Written as a correction to mu_hat so that m0 = 0 returns mu_hat exactly.
  p.mu_tilde = mu_hat + prior.m0 * (prior.mu0 - mu_hat) / (prior.m0 + mp);
  const double variance = (prior.nu0 * prior.sigma0 * prior.sigma0 + squares + shrink) /
                          ((prior.nu0 + mp) * (prior.m0 + mp));
  p.sigma_tilde = std::sqrt(variance);
  p.degenerate = !(p.sigma_tilde > 0.0);
  return p;
}

double posterior_density(const Posterior& p, double x) {
  if (!(p.nu > 0.0) || !(p.sigma_tilde > 0.0)) {
    throw ConfigError("density needs nu > 0 and sigma_tilde > 0");
  }
  const double z = (x - p.mu_tilde) / p.sigma_tilde;
  const double log_norm = std::lgamma(0.5 * (p.nu + 1.0)) - std::lgamma(0.5 * p.nu) -
                          std::log(p.sigma_tilde * std::sqrt(std::numbers::pi * p.nu));
  return std::exp(log_norm - 0.5 * (p.nu + 1.0) * std::log1p(z * z / p.nu));
}

std::pair<double, double> credible_interval(const Posterior& p, double level) {
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("credible level must lie in (0, 1)");
  if (p.degenerate) return {p.mu_tilde, p.mu_tilde};
  if (!(p.nu > 0.0)) throw ConfigError("credible interval needs nu > 0");

  const boost::math::students_t dist(p.nu);
  const double target = 0.5 * (1.0 + level);
  double lo = 0.0;
  double hi = 1.0;
  while (boost::math::cdf(dist, hi) < target) hi *= 2.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (boost::math::cdf(dist, mid) < target ? lo : hi) = mid;
  }
  const double q = 0.5 * (lo + hi);
  return {p.mu_tilde - q * p.sigma_tilde, p.mu_tilde + q * p.sigma_tilde};
}

namespace {

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double prob) {
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Histogram empirical_posterior(const std::vector<double>& batches) {
  if (batches.size() < 2) throw ConfigError("a histogram needs at least 2 batches");
  std::vector<double> sorted(batches);
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double range = sorted.back() - lo;
  const auto n = static_cast<double>(sorted.size());

  Histogram hist;
  if (range == 0.0) {
    hist.bin_width = 1.0;
    hist.bins.push_back({lo, 1.0});
    return hist;
  }
  double width = 2.0 * (quantile(sorted, 0.75) - quantile(sorted, 0.25)) / std::cbrt(n);
  if (!(width > 0.0)) width = range / std::ceil(std::sqrt(n));
  const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(range / width)));
  hist.bin_width = width;

  std::vector<std::size_t> tally(count, 0);
  for (double x : sorted) {
    auto bin = static_cast<std::size_t>((x - lo) / width);
    tally[std::min(bin, count - 1)]++;
  }
  for (std::size_t b = 0; b < count; ++b) {
    hist.bins.push_back({lo + (static_cast<double>(b) + 0.5) * width,
                         static_cast<double>(tally[b]) / (n * width)});
  }
  return hist;
}

EstimateReport make_report(const TourSet& ts, const SuperNodeGraph& sg, const EdgeFunction& f,
                           const PriorParams& prior, bool include_offset) {
  EstimateReport r;
  r.m = ts.m();
  r.offset = boundary_offset(sg, f);
  r.crawl_term = crawl_estimate(ts, sg);
  r.mu_hat = r.crawl_term + r.offset;
  r.crawl_cost = ts.crawl_cost;
  const double target = include_offset ? r.mu_hat : r.crawl_term;
  r.map_estimate = target;
  if (r.m >= 2) {
    r.batch_values = batch_statistics(ts, sg, include_offset ? r.offset : 0.0);
    r.m_prime = r.batch_values.size();
    r.posterior = posterior(r.batch_values, target, prior);
    r.map_estimate = r.posterior->mu_tilde;
  }
  return r;
}

}  // namespace supertour
