#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "support/oracles.hpp"
#include "supertour/baselines.hpp"
#include "supertour/errors.hpp"
#include "supertour/estimator.hpp"
#include "supertour/random.hpp"
#include "supertour/seeds.hpp"
#include "supertour/synthetic.hpp"

using namespace supertour;

namespace {

TourSet constant_tours(std::size_t m, double w) {
  TourSet ts;
  ts.tours.assign(m, Tour{3, w, {}});
  return ts;
}

}  // namespace

TEST_CASE("triangle: offset covers the seed edges and the mean is |E|") {
  const Graph g = synthetic::complete(3);
  const SuperNodeGraph sg(g, SeedSet(g, {0}));
  const auto f = EdgeFunction::parse("constant_one");
  CHECK(boundary_offset(sg, f) == 2.0);
  CHECK(boundary_offset(sg, f, OffsetRule::both_endpoints_in_seeds) == 0.0);

  std::vector<double> estimates;
  for (std::uint64_t r = 0; r < 4000; ++r) {
    const TourSet ts = run_tours(sg, f, 5, r);
    const double crawl = crawl_estimate(ts, sg);
    const double mu = point_estimate(ts, sg, f);
    CHECK(mu == crawl + 2.0);
    estimates.push_back(mu);
  }
  const auto s = oracle::summarize(estimates);
  CHECK(std::abs(s.mean - 3.0) <= 3.0 * s.stderr_mean);
}

TEST_CASE("offset rule: both-endpoint variant counts only edges inside the seeds") {
  const Graph g = synthetic::complete(3);
  const SuperNodeGraph sg(g, SeedSet(g, {0, 1}));
  const auto f = EdgeFunction::parse("constant_one");
  CHECK(boundary_offset(sg, f) == 3.0);
  CHECK(boundary_offset(sg, f, OffsetRule::both_endpoints_in_seeds) == 1.0);
}

TEST_CASE("f = 0 gives an estimate of zero") {
  const Graph g = synthetic::erdos_renyi(30, 0.2, 1);
  const SuperNodeGraph sg(g, select_seeds_uniform(g, 3, 1));
  const auto f = EdgeFunction::parse("zero");
  const TourSet ts = run_tours(sg, f, 64, 3);
  CHECK(point_estimate(ts, sg, f) == 0.0);
  const EstimateReport r = make_report(ts, sg, f);
  REQUIRE(r.posterior);
  CHECK(r.posterior->degenerate);
  CHECK(r.posterior->sigma_tilde == 0.0);
  const auto ci = credible_interval(*r.posterior, 0.95);
  CHECK(ci.first == 0.0);
  CHECK(ci.second == 0.0);
}

TEST_CASE("seeds = V: the offset is the whole answer") {
  const Graph g = synthetic::erdos_renyi(12, 0.4, 2);
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) all[v] = v;
  const SuperNodeGraph sg(g, SeedSet(g, all));
  const auto f = EdgeFunction::parse("degree_product");
  const TourSet ts = run_tours(sg, f, 9, 1);
  CHECK(crawl_estimate(ts, sg) == 0.0);
  CHECK(point_estimate(ts, sg, f) == oracle_mu(g, f));
}

TEST_CASE("batch sizes follow floor(sqrt(m))") {
  const Graph g = synthetic::complete(4);
  const SuperNodeGraph sg(g, SeedSet(g, {0}));
  TourSet four = constant_tours(4, 1.0);
  CHECK(batch_statistics(four, sg, 0.0).size() == 2);
  TourSet five = constant_tours(5, 1.0);
  five.tours[4].w = 1000.0;  // left out of the batches
  const auto b = batch_statistics(five, sg, 0.0);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == b[1]);
  CHECK(batch_statistics(constant_tours(99, 1.0), sg, 0.0).size() == 9);
  CHECK(batch_statistics(constant_tours(100, 1.0), sg, 0.0).size() == 10);
  CHECK_THROWS_AS(batch_statistics(constant_tours(1, 1.0), sg, 0.0), ConfigError);
}

TEST_CASE("constant tours give identical batches") {
  const Graph g = synthetic::complete(5);
  const SuperNodeGraph sg(g, SeedSet(g, {0}));
  const double d_s = static_cast<double>(sg.supernode_degree());
  const auto b = batch_statistics(constant_tours(16, 2.5), sg, 7.0);
  for (double F : b) CHECK(F == doctest::Approx(d_s * 2.5 * 4 / (2.0 * 4) + 7.0));
}

TEST_CASE("batch values are computed per tour") {
  const Graph g = synthetic::complete(5);
  const SuperNodeGraph sg(g, SeedSet(g, {0}));
  TourSet ts = constant_tours(9, 0.0);
  for (std::size_t k = 0; k < 9; ++k) ts.tours[k].w = static_cast<double>(k);
  const auto b = batch_statistics(ts, sg, 1.0);
  const double d_s = static_cast<double>(sg.supernode_degree());
  CHECK(b[0] == doctest::Approx(d_s / 6.0 * (0 + 1 + 2) + 1.0));
  CHECK(b[2] == doctest::Approx(d_s / 6.0 * (6 + 7 + 8) + 1.0));
}

TEST_CASE("posterior hand example") {
  const Posterior p = posterior({1.0, 2.0, 3.0, 4.0}, 2.5, PriorParams{});
  CHECK(p.nu == 4.0);
  CHECK(p.mu_tilde == 2.5);
  CHECK(p.sigma_tilde == doctest::Approx(std::sqrt(5.0) / 4.0).epsilon(1e-15));
  CHECK_FALSE(p.degenerate);
}

TEST_CASE("posterior with an informative prior") {
  PriorParams prior{3.0, 2.0, 10.0, 2.0};
  const std::vector<double> F{1.0, 2.0, 3.0, 4.0};
  const Posterior p = posterior(F, 2.5, prior);
  CHECK(p.nu == 6.0);
  CHECK(p.mu_tilde == doctest::Approx((3.0 * 10.0 + 4.0 * 2.5) / 7.0));
  const double var = (2.0 * 4.0 + 5.0 + 3.0 * 4.0 / 7.0 * 7.5 * 7.5) / (6.0 * 7.0);
  CHECK(p.sigma_tilde == doctest::Approx(std::sqrt(var)));

  prior.m0 = 1e12;
  CHECK(posterior(F, 2.5, prior).mu_tilde == doctest::Approx(10.0).epsilon(1e-9));
  CHECK_THROWS_AS(posterior({1.0}, 1.0), ConfigError);
  CHECK_THROWS_AS(posterior(F, 1.0, PriorParams{-1.0, 0.0, 0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(posterior(F, 1.0, PriorParams{0.0, 0.0, 0.0, 0.0}), ConfigError);
}

TEST_CASE("default prior and square m: mu_tilde equals mu_hat exactly") {
  const Graph g = synthetic::erdos_renyi(50, 0.2, 6);
  const SuperNodeGraph sg(g, select_seeds_uniform(g, 5, 6));
  const auto f = EdgeFunction::parse("degree_product");
  for (std::size_t m : {4, 49, 400}) {
    const TourSet ts = run_tours(sg, f, m, m);
    const EstimateReport r = make_report(ts, sg, f);
    REQUIRE(r.posterior);
    CHECK(r.posterior->mu_tilde == r.mu_hat);
    CHECK(r.map_estimate == r.mu_hat);
    double mean = 0.0;
    for (double F : r.batch_values) mean += F;
    mean /= static_cast<double>(r.batch_values.size());
    CHECK(mean == doctest::Approx(r.mu_hat).epsilon(1e-12));
    CHECK(r.mu_hat == r.offset + crawl_estimate(ts, sg));
  }
}

TEST_CASE("excluding the offset shifts the batches and posterior") {
  const Graph g = synthetic::erdos_renyi(40, 0.2, 9);
  const SuperNodeGraph sg(g, select_seeds_uniform(g, 4, 9));
  const auto f = EdgeFunction::parse("constant_one");
  const TourSet ts = run_tours(sg, f, 100, 2);
  const EstimateReport with = make_report(ts, sg, f, {}, true);
  const EstimateReport without = make_report(ts, sg, f, {}, false);
  CHECK(without.mu_hat == with.mu_hat);
  CHECK(without.posterior->mu_tilde == doctest::Approx(with.posterior->mu_tilde - with.offset));
  CHECK(without.posterior->sigma_tilde == doctest::Approx(with.posterior->sigma_tilde));
  for (std::size_t h = 0; h < with.batch_values.size(); ++h) {
    CHECK(without.batch_values[h] == doctest::Approx(with.batch_values[h] - with.offset));
  }
}

TEST_CASE("m = 1 has no posterior") {
  const Graph g = synthetic::complete(4);
  const SuperNodeGraph sg(g, SeedSet(g, {0}));
  const auto f = EdgeFunction::parse("constant_one");
  const EstimateReport r = make_report(run_tours(sg, f, 1, 1), sg, f);
  CHECK_FALSE(r.posterior.has_value());
  CHECK(r.batch_values.empty());
  CHECK(r.map_estimate == r.mu_hat);
}

TEST_CASE("t density: symmetry, normalization and the normal limit") {
  const Posterior p{7.0, 3.0, 0.5, false};
  for (double a : {0.1, 0.7, 2.0, 5.0}) {
    CHECK(posterior_density(p, 3.0 + a) == doctest::Approx(posterior_density(p, 3.0 - a)));
  }
  double error = 0.0;
  const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return posterior_density(p, x); }, -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity(), 15, 1e-12, &error);
  CHECK(std::abs(mass - 1.0) <= 1e-8);

  // Against the normal, the t density's relative deviation at z is
  // (z^4 - 2 z^2 - 1) / (4 nu) to first order: 1.75e-6 at nu = 1e6, z = 2.
  for (double nu : {1e6, 1e7}) {
    const Posterior wide{nu, -1.0, 2.0, false};
    for (double k : {-2.0, 2.0}) {
      const double x = -1.0 + k * 2.0;
      const double normal = std::exp(-0.5 * k * k) / (2.0 * std::sqrt(2.0 * std::numbers::pi));
      const double deviation = posterior_density(wide, x) / normal - 1.0;
      const double leading = (k * k * k * k - 2.0 * k * k - 1.0) / (4.0 * nu);
      CHECK(deviation == doctest::Approx(leading).epsilon(1e-4));
      if (nu >= 1e7) CHECK(std::abs(deviation) <= 1e-6);
    }
  }
  CHECK_THROWS_AS(posterior_density(Posterior{0.0, 0.0, 1.0, false}, 0.0), ConfigError);
}

TEST_CASE("credible interval quantiles") {
  // t quantiles: t_{0.975, 4} = 2.776445105, t_{0.95, 10} = 1.812461123.
  const Posterior p{4.0, 10.0, 2.0, false};
  const auto ci = credible_interval(p, 0.95);
  CHECK(ci.first == doctest::Approx(10.0 - 2.0 * 2.776445105).epsilon(1e-9));
  CHECK(ci.second == doctest::Approx(10.0 + 2.0 * 2.776445105).epsilon(1e-9));
  const auto ci90 = credible_interval(Posterior{10.0, 0.0, 1.0, false}, 0.90);
  CHECK(ci90.second == doctest::Approx(1.812461123).epsilon(1e-9));
  CHECK_THROWS_AS(credible_interval(p, 0.0), ConfigError);
  CHECK_THROWS_AS(credible_interval(p, 1.0), ConfigError);
}

TEST_CASE("posterior scale shrinks like 1/sqrt(m') for batches of fixed spread") {
  Rng rng(8);
  std::vector<double> scaled;
  for (std::size_t mp : {100, 10000, 1000000}) {
    std::vector<double> batches(mp);
    for (double& F : batches) F = rng.uniform() * std::sqrt(12.0);  // unit variance
    double mean = 0.0;
    for (double F : batches) mean += F;
    mean /= static_cast<double>(mp);
    scaled.push_back(posterior(batches, mean).sigma_tilde * std::sqrt(static_cast<double>(mp)));
  }
  for (double s : scaled) CHECK(s == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("on tours the batch spread itself shrinks, so sigma_tilde * m' settles") {
  const Graph g = synthetic::erdos_renyi(40, 0.2, 3);
  const SuperNodeGraph sg(g, select_seeds_uniform(g, 4, 3));
  const auto f = EdgeFunction::parse("constant_one");
  std::vector<double> scaled;
  for (std::size_t m : {10000, 1000000}) {
    const EstimateReport r = make_report(run_tours(sg, f, m, 5, 4), sg, f);
    scaled.push_back(r.posterior->sigma_tilde * static_cast<double>(r.m_prime));
  }
  CHECK(scaled[0] / scaled[1] == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("empirical histogram") {
  const Histogram flat = empirical_posterior({4.0, 4.0, 4.0});
  CHECK(flat.bins.size() == 1);
  CHECK(flat.bins[0].center == 4.0);

  const Graph g = synthetic::erdos_renyi(100, 0.1, 1);
  const SuperNodeGraph sg(g, select_seeds_uniform(g, 10, 1));
  const auto f = EdgeFunction::parse("constant_one");
  const EstimateReport r = make_report(run_tours(sg, f, 250000, 3, 4), sg, f);
  const Histogram h = empirical_posterior(r.batch_values);
  double mass = 0.0;
  for (const auto& b : h.bins) mass += b.density * h.bin_width;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  // Mode within one bin of mu_tilde.
  auto mode = std::max_element(h.bins.begin(), h.bins.end(),
                               [](const auto& a, const auto& b) { return a.density < b.density; });
  CHECK(std::abs(mode->center - r.posterior->mu_tilde) <= 1.5 * h.bin_width);
  CHECK_THROWS_AS(empirical_posterior({1.0}), ConfigError);
}

TEST_CASE("relative error falls with m") {
  const Graph g = synthetic::erdos_renyi(100, 0.1, 17);
  const SuperNodeGraph sg(g, select_seeds_uniform(g, 10, 17));
  const auto f = EdgeFunction::parse("degree_product");
  const double truth = oracle_mu(g, f);
  int good = 0;
  for (std::uint64_t run = 0; run < 50; ++run) {
    const double mu = point_estimate(run_tours(sg, f, 100000, 1000 + run, 4), sg, f);
    good += std::abs(mu / truth - 1.0) <= 0.02;
  }
  CHECK(good >= 48);
}
