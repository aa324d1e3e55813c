#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "core/estimate.hpp"
#include "core/matrix.hpp"

namespace latq {

class Lattice;

enum class Verdict { improved, not_improved, inconclusive };
const char* verdict_name(Verdict v);

struct ExperimentReport {
  std::string name;
  double parameter = 0;  // beta or epsilon
  double baseline_g = 0;
  double baseline_se = 0;  // zero when the baseline is closed-form
  double perturbed_g = 0;
  double perturbed_se = 0;
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  // product_factorization_check extras
  bool decode_agree = true;
  double max_d2_mismatch = 0;
  double e_additivity_sigma = 0;
  double max_offblock_sigma = 0;
  double max_edim_sigma = 0;  // per-dimension error balance; meaningful at a_opt
};

// R - (tr R / n) I.
SymmetricMatrix traceless_part(const SymmetricMatrix& r);

// Estimates the error covariance of L(B), maps the lattice through
// A_beta = exp(beta * Rbar), and re-estimates with the sphere decoder. For
// anisotropic lattices and small beta < 0 the NSM must drop.
ExperimentReport whitening_experiment(const GeneratorMatrix& basis, double beta,
                                      const EstimateOptions& opts);

// Baseline: closed-form NSM of the optimally scaled product. Perturbed: MC
// estimate for [[B1, 0], [eps*H, a_opt*B2]].
ExperimentReport saddle_experiment(const Lattice& l1, const Lattice& l2,
                                   const Eigen::MatrixXd& h_direction, double epsilon,
                                   const EstimateOptions& opts);

// Componentwise vs sphere decoding on the assembled generator, E-additivity,
// and vanishing off-block covariance.
ExperimentReport product_factorization_check(
    const std::vector<std::pair<std::shared_ptr<const Lattice>, double>>& parts,
    const EstimateOptions& opts, std::uint64_t decode_trials = 10000);

}  // namespace latq
