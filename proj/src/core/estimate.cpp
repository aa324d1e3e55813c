#include "core/estimate.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace latq {

namespace {

constexpr std::uint64_t kBlock = 4096;

struct Partial {
  std::vector<double> r;   // sum of e_i e_j
  std::vector<double> r2;  // sum of (e_i e_j)^2
  double d4 = 0;           // sum of (||e||^2)^2

  void init(int n) {
    r.assign(static_cast<std::size_t>(n) * n, 0.0);
    r2.assign(static_cast<std::size_t>(n) * n, 0.0);
    d4 = 0;
  }
  void add(const Partial& o) {
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += o.r[k];
    for (std::size_t k = 0; k < r2.size(); ++k) r2[k] += o.r2[k];
    d4 += o.d4;
  }
};

// Index-ordered pairwise combination of per-block partial sums; the result is
// independent of how blocks were distributed across workers.
Partial combine(std::vector<Partial>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(parts[lo]);
  std::size_t mid = lo + (hi - lo) / 2;
  Partial a = combine(parts, lo, mid);
  Partial b = combine(parts, mid, hi);
  a.add(b);
  return a;
}

}  // namespace

MomentEstimate estimate_moments(const PointDecoder& dec, const GeneratorMatrix& basis,
                                const EstimateOptions& opts) {
  const int n = basis.dim();
  if (dec.dim() != n) raise(Errc::dimension_mismatch, "estimator: decoder/basis dimension mismatch");
  if (opts.samples < 1) raise(Errc::invalid_argument, "estimator: sample count must be positive");
  if (n > kMaxDecodeDim) raise(Errc::invalid_argument, "estimator: dimension cap exceeded");

  // Column-major copy of B so x = u B walks contiguous memory.
  std::vector<double> bt(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bt[static_cast<std::size_t>(j) * n + i] = basis.rows()(i, j);

  const std::uint64_t nblocks = (opts.samples + kBlock - 1) / kBlock;
  std::vector<Partial> parts(nblocks);

  auto run_block = [&](std::uint64_t b) {
    Partial& p = parts[b];
    p.init(n);
    double ub[kMaxDecodeDim], x[kMaxDecodeDim], pt[kMaxDecodeDim], e[kMaxDecodeDim];
    long long uu[kMaxDecodeDim];
    const std::uint64_t end = std::min(opts.samples, (b + 1) * kBlock);
    for (std::uint64_t idx = b * kBlock; idx < end; ++idx) {
      fill_unit_doubles(opts.seed, idx, ub, n);
      for (int j = 0; j < n; ++j) {
        const double* col = &bt[static_cast<std::size_t>(j) * n];
        double s = 0;
        for (int i = 0; i < n; ++i) s += ub[i] * col[i];
        x[j] = s;
      }
      dec.decode_raw(x, uu, pt);
      double d2 = 0;
      for (int i = 0; i < n; ++i) {
        e[i] = x[i] - pt[i];
        d2 += e[i] * e[i];
      }
      p.d4 += d2 * d2;
      for (int i = 0; i < n; ++i) {
        double* rrow = &p.r[static_cast<std::size_t>(i) * n];
        double* r2row = &p.r2[static_cast<std::size_t>(i) * n];
        for (int j = 0; j < n; ++j) {
          double v = e[i] * e[j];
          rrow[j] += v;
          r2row[j] += v * v;
        }
      }
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  unsigned nthreads = opts.threads > 0 ? static_cast<unsigned>(opts.threads) : (hw ? hw : 1);
  nthreads = static_cast<unsigned>(std::min<std::uint64_t>(nthreads, nblocks));
  if (nthreads <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr fail;
    std::mutex fail_mu;
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        try {
          for (std::uint64_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) run_block(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(fail_mu);
          if (!fail) fail = std::current_exception();
          next.store(nblocks);
        }
      });
    for (auto& th : pool) th.join();
    if (fail) std::rethrow_exception(fail);
  }

  Partial total = combine(parts, 0, nblocks);
  const double invn = 1.0 / static_cast<double>(opts.samples);

  MomentEstimate est;
  est.n = n;
  est.samples = opts.samples;
  est.seed = opts.seed;
  est.volume = basis.volume();
  est.r_hat.resize(n, n);
  est.r_se.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double mean = total.r[static_cast<std::size_t>(i) * n + j] * invn;
      est.r_hat(i, j) = mean;
      double var = 0;
      if (opts.samples > 1) {
        var = (total.r2[static_cast<std::size_t>(i) * n + j] -
               static_cast<double>(opts.samples) * mean * mean) /
              static_cast<double>(opts.samples - 1);
        var = std::max(var, 0.0);
      }
      est.r_se(i, j) = std::sqrt(var * invn);
    }
  double trace = 0;
  for (int i = 0; i < n; ++i) trace += est.r_hat(i, i);
  est.e_hat = trace;
  double var_d2 = 0;
  if (opts.samples > 1) {
    var_d2 = (total.d4 - static_cast<double>(opts.samples) * est.e_hat * est.e_hat) /
             static_cast<double>(opts.samples - 1);
    var_d2 = std::max(var_d2, 0.0);
  }
  est.se_e = std::sqrt(var_d2 * invn);
  const double norm = static_cast<double>(n) * std::pow(est.volume, 2.0 / n);
  est.g_hat = est.e_hat / norm;
  est.se_g = est.se_e / norm;
  if (!(est.g_hat > 0)) raise(Errc::inconsistent_moments, "estimator produced nonpositive NSM");
  return est;
}

MomentEstimate estimate_moments(const Lattice& lat, const EstimateOptions& opts) {
  return estimate_moments(lat.decoder(), lat.basis(), opts);
}

MomentEstimate estimate_moments(const GeneratorMatrix& basis, const EstimateOptions& opts) {
  auto dec = make_sphere_decoder(basis);
  return estimate_moments(*dec, basis, opts);
}

WhitenessReport whiteness(MomentEstimate est) {
  const int n = est.n;
  WhitenessReport rep;
  rep.rho = est.e_hat / n;
  rep.rbar = est.r_hat - rep.rho * Eigen::MatrixXd::Identity(n, n);
  const double denom = est.e_hat / std::sqrt(static_cast<double>(n));
  rep.anisotropy = rep.rbar.norm() / denom;
  rep.anisotropy_se = est.r_se.norm() / denom;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(est.r_hat);
  rep.eigen_spread = (es.eigenvalues()(n - 1) - es.eigenvalues()(0)) / rep.rho;
  auto lambda_se = [&](int which) {
    Eigen::VectorXd v = es.eigenvectors().col(which);
    double s2 = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double c = v(i) * v(j) * est.r_se(i, j);
        s2 += c * c;
      }
    return std::sqrt(s2);
  };
  rep.eigen_spread_se = std::hypot(lambda_se(n - 1), lambda_se(0)) / rep.rho;
  rep.est = std::move(est);
  return rep;
}

WhitenessReport whiteness(const Lattice& lat, const EstimateOptions& opts) {
  return whiteness(estimate_moments(lat, opts));
}

WhitenessReport whiteness(const GeneratorMatrix& basis, const EstimateOptions& opts) {
  return whiteness(estimate_moments(basis, opts));
}

}  // namespace latq
