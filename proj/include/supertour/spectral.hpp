#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>

#include "supertour/edge_function.hpp"
#include "supertour/supernode.hpp"

namespace supertour {

/// Dense eigen-data of the simple random walk on G'.
///
/// P = D^-1 A (multiplicities kept) and S = D^1/2 P D^-1/2 share eigenvalues,
/// stored in decreasing order with lambdas[0] = 1. Columns of `w` are
/// orthonormal eigenvectors of S. Right eigenvectors of P are
/// v_i = sqrt(d_tot) D^-1/2 w_i and left ones u_i = D^1/2 w_i / sqrt(d_tot),
/// so u_i' v_j = [i == j], v_1 = 1 and u_1 = pi.
struct SpectralProfile {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd w;
  Eigen::MatrixXd u_left;
  Eigen::MatrixXd v_right;
  Eigen::VectorXd degree;
  Eigen::VectorXd pi;
  Eigen::MatrixXd transition;  // P
  /// Fundamental matrix I + sum_{i>=2} lambda_i / (1 - lambda_i) v_i u_i'.
  Eigen::MatrixXd fundamental;
  double delta = 0.0;  // 1 - lambda_2
  double d_tot = 0.0;
  double d_supernode = 0.0;

  double lambda2() const { return lambdas.size() > 1 ? lambdas(1) : 1.0; }
};

inline constexpr std::size_t kDefaultSpectralCap = 3000;

/// Eigendecomposition of the walk on G'. Throws ConfigError when |V'| exceeds
/// `cap` and Error when a second unit eigenvalue shows G' is disconnected.
SpectralProfile decompose(const SuperNodeGraph& sg, std::size_t cap = kDefaultSpectralCap);

/// sum_{i>=2} w_{S,i}^2 / (1 - lambda_i).
double supernode_green_sum(const SpectralProfile& sp);

struct ReturnTimeMoments {
  double mean = 0.0;            // 1 / pi_S
  double second_moment = 0.0;   // (2 G + pi_S) / pi_S^2, G = supernode_green_sum
  double variance = 0.0;
  double variance_bound = 0.0;  // 2 / (delta pi_S^2) + 1 / pi_S
};

ReturnTimeMoments return_time_moments(const SpectralProfile& sp);

/// f on G' as a dense matrix: F(a, b) = f(original a, original b) for interior
/// pairs joined by an edge, zero on the super-node row and column.
Eigen::MatrixXd contracted_edge_values(const SuperNodeGraph& sg, const EdgeFunction& f);

struct UpperBounds {
  double exact = 0.0;
  double loose = 0.0;
};

/// Upper bounds on Var(W) for 0 <= f <= B:
///   exact = (2 d_tot^2 B^2 G - 4 mu'^2) / d_S^2 - B^2 d_tot / d_S + B^2
///   loose = B^2 (2 d_tot^2 / (d_S^2 delta) + 1)
/// with mu' the sum of f over G' edges. Throws ConfigError when B is below
/// the largest edge value.
UpperBounds variance_upper(const SpectralProfile& sp, const SuperNodeGraph& sg,
                           const EdgeFunction& f, double bound);

/// Largest value of f over the edges of G'.
double max_edge_value(const SuperNodeGraph& sg, const EdgeFunction& f);

/// Limit of Var_pi(sum_{t<=n} f(Y_{t-1}, Y_t)) / n for the stationary walk on
/// G', spectral form:
///   <f,f> + 2<f,f^> - 3 (E_pi f)^2
///     + 2 sum_{i>=2} lambda_i / (1 - lambda_i) <f, v_i> (u_i' f^)
/// where <g,h> = sum_{a,b} pi_a p_ab g(a,b) h(a,b), node vectors act on the
/// head of the edge, and f^(a) = sum_b p_ab f(a,b).
double asymptotic_variance(const SpectralProfile& sp, const SuperNodeGraph& sg,
                           const EdgeFunction& f);

/// Same limit through the fundamental matrix:
///   <f,f> - <f, Pi f^> + 2 <f, (Z - Pi) f^>.
double asymptotic_variance_fundamental(const SpectralProfile& sp, const SuperNodeGraph& sg,
                                       const EdgeFunction& f);

/// Lower bound on Var(W) for f >= 0:
///   (d_tot / d_S) sigma_a^2 - E[W]^2 - (E_pi f)^2 E[xi^2].
/// Obtained from the renewal-reward identity nu^2 = sigma_a^2 E[xi] by dropping
/// the non-negative cross term 2 E_pi f E[W xi]. May be negative.
double variance_lower(const SpectralProfile& sp, const SuperNodeGraph& sg, const EdgeFunction& f);

struct VarianceBounds {
  double bound = 0.0;           // B used for the upper bounds
  bool bound_empirical = false; // B taken as max f over G' edges
  double upper_exact = 0.0;
  double upper_loose = 0.0;
  double lower_raw = 0.0;
  double lower = 0.0;           // max(lower_raw, 0)
  double sigma_a_sq = 0.0;
  double mean_w = 0.0;          // E[W] = 2 mu' / d_S
};

/// Every bound at once. B defaults to the function's bound hint, or to the
/// empirical maximum when it has none.
VarianceBounds variance_bounds(const SpectralProfile& sp, const SuperNodeGraph& sg,
                               const EdgeFunction& f, std::optional<double> bound = std::nullopt);

}  // namespace supertour
