#include "supertour/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supertour/errors.hpp"

namespace supertour {

SpectralProfile decompose(const SuperNodeGraph& sg, std::size_t cap) {
  const auto n = static_cast<Eigen::Index>(sg.node_count());
  if (sg.node_count() > cap) {
    throw ConfigError("contracted graph has " + std::to_string(sg.node_count()) +
                      " nodes; dense spectral analysis is limited to " + std::to_string(cap) +
                      " (use a desk-scale graph)");
  }

  if (sg.total_degree() == 0) throw ConfigError("contracted graph has no edges; nothing to analyze");

  SpectralProfile sp;
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
  for (NodeId a = 0; a < sg.node_count(); ++a) {
    for (const Slot& s : sg.neighbors(a)) adjacency(a, s.neighbor) += 1.0;
  }
  sp.degree = adjacency.rowwise().sum();
  sp.d_tot = sp.degree.sum();
  sp.d_supernode = sp.degree(SuperNodeGraph::kSuperNode);
  sp.pi = sp.degree / sp.d_tot;
  sp.transition = sp.degree.cwiseInverse().asDiagonal() * adjacency;

  const Eigen::VectorXd inv_sqrt = sp.degree.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd sym = inv_sqrt.asDiagonal() * adjacency * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");

  // Eigen returns ascending order.
  sp.lambdas = solver.eigenvalues().reverse();
  sp.w = solver.eigenvectors().rowwise().reverse();
  // Fix the sign of the leading vector so that w_1 = sqrt(pi).
  if (sp.w.col(0).sum() < 0.0) sp.w.col(0) *= -1.0;

  if (n > 1 && sp.lambdas(1) > 1.0 - 1e-10) {
    throw Error("second eigenvalue equals 1: the contracted graph is disconnected");
  }
  sp.delta = 1.0 - sp.lambda2();

  const double root_tot = std::sqrt(sp.d_tot);
  sp.v_right = root_tot * inv_sqrt.asDiagonal() * sp.w;
  sp.u_left = sp.degree.cwiseSqrt().asDiagonal() * sp.w / root_tot;

  sp.fundamental = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double coeff = sp.lambdas(i) / (1.0 - sp.lambdas(i));
    sp.fundamental.noalias() += coeff * sp.v_right.col(i) * sp.u_left.col(i).transpose();
  }
  return sp;
}

double supernode_green_sum(const SpectralProfile& sp) {
  double sum = 0.0;
  const auto s = static_cast<Eigen::Index>(SuperNodeGraph::kSuperNode);
  for (Eigen::Index i = 1; i < sp.lambdas.size(); ++i) {
    sum += sp.w(s, i) * sp.w(s, i) / (1.0 - sp.lambdas(i));
  }
  return sum;
}

ReturnTimeMoments return_time_moments(const SpectralProfile& sp) {
  const double pi_s = sp.pi(SuperNodeGraph::kSuperNode);
  const double green = supernode_green_sum(sp);
  ReturnTimeMoments r;
  r.mean = 1.0 / pi_s;
  r.second_moment = (2.0 * green + pi_s) / (pi_s * pi_s);
  r.variance = r.second_moment - r.mean * r.mean;
  r.variance_bound = 2.0 / (sp.delta * pi_s * pi_s) + 1.0 / pi_s;
  return r;
}

Eigen::MatrixXd contracted_edge_values(const SuperNodeGraph& sg, const EdgeFunction& f) {
  const auto n = static_cast<Eigen::Index>(sg.node_count());
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
  EdgeEvaluator eval(f, sg.base());
  for (NodeId a = 1; a < sg.node_count(); ++a) {
    for (const Slot& s : sg.neighbors(a)) {
      if (s.neighbor != SuperNodeGraph::kSuperNode) {
        values(a, s.neighbor) = eval(sg.original(a), sg.original(s.neighbor));
      }
    }
  }
  return values;
}

namespace {

// Edge-weighted inner products shared by the variance formulas.
struct EdgeMoments {
  Eigen::MatrixXd values;      // F
  Eigen::VectorXd head_weight; // c_b = sum_a pi_a p_ab F(a,b), so <f, x> = c . x
  Eigen::VectorXd f_hat;       // f^(a) = sum_b p_ab F(a,b)
  double mean = 0.0;           // E_pi f
  double self = 0.0;           // <f, f>
  double with_hat = 0.0;       // <f, f^>
  double edge_sum = 0.0;       // mu' = sum over G' edges
};

EdgeMoments edge_moments(const SpectralProfile& sp, const SuperNodeGraph& sg, const EdgeFunction& f) {
  EdgeMoments em;
  em.values = contracted_edge_values(sg, f);
  const Eigen::MatrixXd flow = sp.pi.asDiagonal() * sp.transition;  // pi_a p_ab
  const Eigen::MatrixXd weighted = flow.cwiseProduct(em.values);
  em.head_weight = weighted.colwise().sum().transpose();
  em.f_hat = sp.transition.cwiseProduct(em.values).rowwise().sum();
  em.mean = weighted.sum();
  em.self = weighted.cwiseProduct(em.values).sum();
  em.with_hat = em.head_weight.dot(em.f_hat);
  // Each undirected edge appears twice in flow * d_tot (once per orientation).
  em.edge_sum = 0.5 * sp.d_tot * em.mean;
  return em;
}

double asymptotic_variance_from(const SpectralProfile& sp, const EdgeMoments& em) {
  double spectral = 0.0;
  for (Eigen::Index i = 1; i < sp.lambdas.size(); ++i) {
    const double coeff = sp.lambdas(i) / (1.0 - sp.lambdas(i));
    spectral += coeff * em.head_weight.dot(sp.v_right.col(i)) * sp.u_left.col(i).dot(em.f_hat);
  }
  return em.self + 2.0 * em.with_hat - 3.0 * em.mean * em.mean + 2.0 * spectral;
}

double lower_from(const SpectralProfile& sp, const EdgeMoments& em, double sigma_a_sq) {
  const auto moments = return_time_moments(sp);
  const double mean_w = 2.0 * em.edge_sum / sp.d_supernode;
  return moments.mean * sigma_a_sq - mean_w * mean_w - em.mean * em.mean * moments.second_moment;
}

UpperBounds upper_from(const SpectralProfile& sp, const EdgeMoments& em, double bound) {
  const double b2 = bound * bound;
  const double ds = sp.d_supernode;
  const double dt = sp.d_tot;
  UpperBounds u;
  u.exact = (2.0 * dt * dt * b2 * supernode_green_sum(sp) - 4.0 * em.edge_sum * em.edge_sum) /
                (ds * ds) -
            b2 * dt / ds + b2;
  u.loose = b2 * (2.0 * dt * dt / (ds * ds * sp.delta) + 1.0);
  return u;
}

void check_bound(double bound, double max_value) {
  if (!(bound >= max_value - 1e-12 * std::max(1.0, std::abs(max_value)))) {
    throw ConfigError("bound B = " + std::to_string(bound) + " is below max f = " +
                      std::to_string(max_value));
  }
}

}  // namespace

double max_edge_value(const SuperNodeGraph& sg, const EdgeFunction& f) {
  EdgeEvaluator eval(f, sg.base());
  double best = 0.0;
  for (EdgeId id : sg.interior_edges()) best = std::max(best, eval.edge(id));
  return best;
}

UpperBounds variance_upper(const SpectralProfile& sp, const SuperNodeGraph& sg,
                           const EdgeFunction& f, double bound) {
  check_bound(bound, max_edge_value(sg, f));
  return upper_from(sp, edge_moments(sp, sg, f), bound);
}

double asymptotic_variance(const SpectralProfile& sp, const SuperNodeGraph& sg,
                           const EdgeFunction& f) {
  return asymptotic_variance_from(sp, edge_moments(sp, sg, f));
}

double asymptotic_variance_fundamental(const SpectralProfile& sp, const SuperNodeGraph& sg,
                                       const EdgeFunction& f) {
  const EdgeMoments em = edge_moments(sp, sg, f);
  // Pi f^ = (pi . f^) 1 = E_pi f * 1, and <f, 1> = E_pi f.
  const double mean_sq = em.mean * em.mean;
  const double with_z = em.head_weight.dot(sp.fundamental * em.f_hat);
  return em.self - mean_sq + 2.0 * (with_z - mean_sq);
}

double variance_lower(const SpectralProfile& sp, const SuperNodeGraph& sg, const EdgeFunction& f) {
  const EdgeMoments em = edge_moments(sp, sg, f);
  return lower_from(sp, em, asymptotic_variance_from(sp, em));
}

VarianceBounds variance_bounds(const SpectralProfile& sp, const SuperNodeGraph& sg,
                               const EdgeFunction& f, std::optional<double> bound) {
  const EdgeMoments em = edge_moments(sp, sg, f);
  const double max_value = max_edge_value(sg, f);
  VarianceBounds vb;
  if (!bound) bound = f.bound_hint;
  if (bound) {
    check_bound(*bound, max_value);
    vb.bound = *bound;
  } else {
    vb.bound = max_value;
    vb.bound_empirical = true;
  }
  const UpperBounds upper = upper_from(sp, em, vb.bound);
  vb.upper_exact = upper.exact;
  vb.upper_loose = upper.loose;
  vb.sigma_a_sq = asymptotic_variance_from(sp, em);
  vb.lower_raw = lower_from(sp, em, vb.sigma_a_sq);
  vb.lower = std::max(vb.lower_raw, 0.0);
  vb.mean_w = 2.0 * em.edge_sum / sp.d_supernode;
  return vb;
}

}  // namespace supertour
