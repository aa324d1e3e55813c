#include "core/experiments.hpp"

#include <cmath>

#include "core/catalog.hpp"
#include "core/compose.hpp"
#include "core/decode.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace latq {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::improved: return "improved";
    case Verdict::not_improved: return "not-improved";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

Verdict judge(double base_g, double base_se, double pert_g, double pert_se) {
  if (pert_g + 3 * pert_se < base_g - 3 * base_se) return Verdict::improved;
  if (pert_g - 3 * pert_se > base_g + 3 * base_se) return Verdict::not_improved;
  return Verdict::inconclusive;
}

}  // namespace

SymmetricMatrix traceless_part(const SymmetricMatrix& r) {
  const int n = r.dim();
  return SymmetricMatrix(r.mat() - (r.trace() / n) * Eigen::MatrixXd::Identity(n, n));
}

ExperimentReport whitening_experiment(const GeneratorMatrix& basis, double beta,
                                      const EstimateOptions& opts) {
  MomentEstimate base = estimate_moments(basis, opts);
  SymmetricMatrix rbar = traceless_part(SymmetricMatrix(base.r_hat));
  SymmetricMatrix a_beta = sym_matrix_exp(rbar, beta);
  GeneratorMatrix perturbed(basis.rows() * a_beta.mat());
  MomentEstimate pert = estimate_moments(perturbed, opts);

  ExperimentReport rep;
  rep.name = "whitening";
  rep.parameter = beta;
  rep.baseline_g = base.g_hat;
  rep.baseline_se = base.se_g;
  rep.perturbed_g = pert.g_hat;
  rep.perturbed_se = pert.se_g;
  rep.verdict = judge(rep.baseline_g, rep.baseline_se, rep.perturbed_g, rep.perturbed_se);
  rep.samples = opts.samples;
  rep.seed = opts.seed;
  return rep;
}

ExperimentReport saddle_experiment(const Lattice& l1, const Lattice& l2,
                                   const Eigen::MatrixXd& h_direction, double epsilon,
                                   const EstimateOptions& opts) {
  if (!l1.golden() || !l2.golden())
    raise(Errc::invalid_argument, "saddle experiment needs components with golden NSMs");
  const int n1 = l1.dim(), n2 = l2.dim();
  if (h_direction.rows() != n2 || h_direction.cols() != n1)
    raise(Errc::dimension_mismatch, "saddle experiment: H direction must be n2 x n1");
  double g1 = l1.golden()->value, g2 = l2.golden()->value;
  double a_opt = optimal_scale({n1, l1.volume(), std::nullopt, g1}, {n2, l2.volume(), std::nullopt, g2});

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  b.topLeftCorner(n1, n1) = l1.basis().rows();
  b.bottomLeftCorner(n2, n1) = epsilon * h_direction;
  b.bottomRightCorner(n2, n2) = a_opt * l2.basis().rows();
  MomentEstimate pert = estimate_moments(GeneratorMatrix(std::move(b)), opts);

  ExperimentReport rep;
  rep.name = "saddle";
  rep.parameter = epsilon;
  rep.baseline_g = optimal_product_nsm({{n1, g1}, {n2, g2}});
  rep.baseline_se = 0;
  rep.perturbed_g = pert.g_hat;
  rep.perturbed_se = pert.se_g;
  rep.verdict = judge(rep.baseline_g, rep.baseline_se, rep.perturbed_g, rep.perturbed_se);
  rep.samples = opts.samples;
  rep.seed = opts.seed;
  return rep;
}

ExperimentReport product_factorization_check(
    const std::vector<std::pair<std::shared_ptr<const Lattice>, double>>& parts,
    const EstimateOptions& opts, std::uint64_t decode_trials) {
  if (parts.empty()) raise(Errc::invalid_argument, "product check: empty part list");
  std::vector<std::pair<const GeneratorMatrix*, double>> blocks;
  std::vector<std::pair<std::shared_ptr<const PointDecoder>, double>> decs;
  for (const auto& [lat, a] : parts) {
    blocks.emplace_back(&lat->basis(), a);
    decs.emplace_back(lat->decoder_ptr(), a);
  }
  GeneratorMatrix gen = product_generator(blocks);
  const int n = gen.dim();
  auto prod_dec = make_product_decoder(decs);
  auto sphere = make_sphere_decoder(gen);

  ExperimentReport rep;
  rep.name = "product-factorization";
  rep.samples = opts.samples;
  rep.seed = opts.seed;

  // (1) componentwise decoding matches exact sphere decoding in d2.
  Eigen::RowVectorXd x(n);
  double ub[kMaxDecodeDim];
  for (std::uint64_t t = 0; t < decode_trials; ++t) {
    fill_unit_doubles(opts.seed ^ 0x9e3779b97f4a7c15ULL, t, ub, n);
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += ub[i] * gen.rows()(i, j);
      x(j) = s;
    }
    double da = prod_dec->decode(x).d2;
    double db = sphere->decode(x).d2;
    rep.max_d2_mismatch = std::max(rep.max_d2_mismatch, std::abs(da - db));
  }
  rep.decode_agree = rep.max_d2_mismatch <= 1e-9;

  // (2) E additivity and block covariance of the product estimate.
  MomentEstimate whole = estimate_moments(*prod_dec, gen, opts);
  double e_parts = 0, var_parts = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    EstimateOptions part_opts = opts;
    part_opts.seed = opts.seed + 1 + static_cast<std::uint64_t>(i);
    MomentEstimate pe = estimate_moments(*parts[i].first, part_opts);
    const double a2 = parts[i].second * parts[i].second;
    e_parts += a2 * pe.e_hat;
    var_parts += a2 * a2 * pe.se_e * pe.se_e;
  }
  double se_sum = std::sqrt(whole.se_e * whole.se_e + var_parts);
  rep.e_additivity_sigma = std::abs(whole.e_hat - e_parts) / se_sum;

  int off_i = 0;
  for (std::size_t bi = 0; bi < parts.size(); ++bi) {
    const int di = parts[bi].first->dim();
    int off_j = 0;
    for (std::size_t bj = 0; bj < parts.size(); ++bj) {
      const int dj = parts[bj].first->dim();
      if (bi != bj) {
        for (int i = 0; i < di; ++i)
          for (int j = 0; j < dj; ++j) {
            double se = whole.r_se(off_i + i, off_j + j);
            double sigma = se > 0 ? std::abs(whole.r_hat(off_i + i, off_j + j)) / se : 0.0;
            rep.max_offblock_sigma = std::max(rep.max_offblock_sigma, sigma);
          }
      }
      off_j += dj;
    }
    off_i += di;
  }

  // (3) per-dimension error balance across blocks (tight only at a_opt).
  const double per_dim = whole.e_hat / n;
  int off = 0;
  for (const auto& [lat, a] : parts) {
    const int d = lat->dim();
    double e_blk = 0, var_blk = 0;
    for (int i = 0; i < d; ++i) {
      e_blk += whole.r_hat(off + i, off + i);
      var_blk += whole.r_se(off + i, off + i) * whole.r_se(off + i, off + i);
    }
    double sigma = std::abs(e_blk / d - per_dim) / (std::sqrt(var_blk) / d + 1e-300);
    rep.max_edim_sigma = std::max(rep.max_edim_sigma, sigma);
    off += d;
  }

  rep.baseline_g = whole.g_hat;
  rep.baseline_se = whole.se_g;
  rep.perturbed_g = whole.g_hat;
  rep.perturbed_se = whole.se_g;
  bool pass = rep.decode_agree && rep.e_additivity_sigma <= 3.0 && rep.max_offblock_sigma <= 3.0;
  rep.verdict = pass ? Verdict::improved : Verdict::not_improved;
  return rep;
}

}  // namespace latq
