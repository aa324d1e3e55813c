#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "core/decode.hpp"
#include "core/matrix.hpp"

namespace latq {

class Lattice;

struct EstimateOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency; the result does not depend on it
};

// Seeded Monte Carlo moments of the quantization error over the Voronoi
// region. Samples are drawn uniformly over the fundamental parallelepiped
// (x = u B, u in [0,1)^n), which is uniform modulo the lattice.
struct MomentEstimate {
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double volume = 0;
  double e_hat = 0;  // mean squared error, identically trace(r_hat)
  double g_hat = 0;  // e_hat / (n V^(2/n))
  double se_e = 0;
  double se_g = 0;
  Eigen::MatrixXd r_hat;  // error covariance estimate
  Eigen::MatrixXd r_se;   // per-entry standard errors of r_hat
};

struct WhitenessReport {
  MomentEstimate est;
  double rho = 0;  // trace/n
  Eigen::MatrixXd rbar;
  double anisotropy = 0;     // ||rbar||_F / (trace/sqrt(n))
  double anisotropy_se = 0;  // scale of the statistic under the white null
  double eigen_spread = 0;   // (lambda_max - lambda_min)/rho
  double eigen_spread_se = 0;
};

MomentEstimate estimate_moments(const PointDecoder& dec, const GeneratorMatrix& basis,
                                const EstimateOptions& opts);
MomentEstimate estimate_moments(const Lattice& lat, const EstimateOptions& opts);
// Arbitrary generator: decodes with the generic sphere decoder.
MomentEstimate estimate_moments(const GeneratorMatrix& basis, const EstimateOptions& opts);

WhitenessReport whiteness(MomentEstimate est);
WhitenessReport whiteness(const Lattice& lat, const EstimateOptions& opts);
WhitenessReport whiteness(const GeneratorMatrix& basis, const EstimateOptions& opts);

}  // namespace latq
