#include "core/decode.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/lll.hpp"

namespace latq {

namespace {

inline long long round_half_down(double v) {
  // Nearest integer, exact halves toward the smaller integer; this makes the
  // tie winner the lexicographically smallest coordinate vector.
  return static_cast<long long>(std::ceil(v - 0.5));
}

inline bool lex_less(const long long* a, const long long* b, int n) {
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void resolve_u(const double* point, const Eigen::MatrixXd& binv, long long* u) {
  const int n = static_cast<int>(binv.rows());
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += point[i] * binv(i, j);
    u[j] = std::llround(s);
  }
}

class CubicDecoder final : public PointDecoder {
 public:
  explicit CubicDecoder(int n) : PointDecoder(n) {}
  void decode_raw(const double* x, long long* u, double* point) const override {
    for (int i = 0; i < dim(); ++i) {
      u[i] = round_half_down(x[i]);
      point[i] = static_cast<double>(u[i]);
    }
  }
};

class DnDecoder final : public PointDecoder {
 public:
  explicit DnDecoder(const GeneratorMatrix& basis)
      : PointDecoder(basis.dim()), binv_(basis.rows().inverse()) {
    if (basis.dim() < 2) raise(Errc::invalid_argument, "D_n requires n >= 2");
  }

  void decode_raw(const double* x, long long* u, double* point) const override {
    const int n = dim();
    long long sum = 0;
    int worst = 0;
    double worst_abs = -1.0, worst_delta = 0.0;
    for (int i = 0; i < n; ++i) {
      long long g = round_half_down(x[i]);
      double d = x[i] - static_cast<double>(g);
      point[i] = static_cast<double>(g);
      sum += g;
      if (std::abs(d) > worst_abs) {
        worst_abs = std::abs(d);
        worst_delta = d;
        worst = i;
      }
    }
    if (sum % 2 != 0) point[worst] += worst_delta > 0 ? 1.0 : -1.0;
    resolve_u(point, binv_, u);
  }

 private:
  Eigen::MatrixXd binv_;
};

// Closest zero-sum integer vector to y (which lies in the zero-sum hyperplane):
// round every coordinate, then repair the coordinate-sum deficit where the
// rounding residuals make the repair cheapest.
void zero_sum_closest(const double* y, int m, long long* f) {
  double delta[kMaxDecodeDim + 1];
  int idx[kMaxDecodeDim + 1];
  long long def = 0;
  for (int i = 0; i < m; ++i) {
    f[i] = round_half_down(y[i]);
    delta[i] = y[i] - static_cast<double>(f[i]);
    idx[i] = i;
    def += f[i];
  }
  if (def > 0) {
    std::sort(idx, idx + m, [&](int a, int b) {
      if (delta[a] != delta[b]) return delta[a] < delta[b];
      return a < b;
    });
    for (long long k = 0; k < def; ++k) f[idx[k]] -= 1;
  } else if (def < 0) {
    std::sort(idx, idx + m, [&](int a, int b) {
      if (delta[a] != delta[b]) return delta[a] > delta[b];
      return a < b;
    });
    for (long long k = 0; k < -def; ++k) f[idx[k]] += 1;
  }
}

// Shared state for the hyperplane realization of A_n and its dual: T is the
// isometry mapping basis coordinates to the zero-sum hyperplane in R^(n+1).
struct EmbeddedAn {
  Eigen::MatrixXd t;     // n x (n+1), orthonormal rows
  Eigen::MatrixXd binv;

  EmbeddedAn(const GeneratorMatrix& basis, bool dual) {
    const int n = basis.dim();
    Eigen::MatrixXd m(n, n + 1);  // rows e_i - e_{i+1}
    m.setZero();
    for (int i = 0; i < n; ++i) {
      m(i, i) = 1;
      m(i, i + 1) = -1;
    }
    Eigen::MatrixXd gram = basis.gram();
    Eigen::MatrixXd cartan = m * m.transpose();
    Eigen::MatrixXd frame = dual ? Eigen::MatrixXd(cartan.inverse()) : cartan;
    if ((gram - frame).cwiseAbs().maxCoeff() > 1e-6 * frame.cwiseAbs().maxCoeff())
      raise(Errc::invalid_argument, "basis does not realize the expected A_n geometry");
    Eigen::MatrixXd mrows = dual ? Eigen::MatrixXd(cartan.inverse() * m) : m;
    t = basis.rows().inverse() * mrows;
    binv = basis.rows().inverse();
  }
};

class AnDecoder final : public PointDecoder {
 public:
  explicit AnDecoder(const GeneratorMatrix& basis) : PointDecoder(basis.dim()), e_(basis, false) {}

  void decode_raw(const double* x, long long* u, double* point) const override {
    const int n = dim();
    const int m = n + 1;
    double y[kMaxDecodeDim + 1];
    long long f[kMaxDecodeDim + 1];
    for (int t = 0; t < m; ++t) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += x[j] * e_.t(j, t);
      y[t] = s;
    }
    zero_sum_closest(y, m, f);
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int t = 0; t < m; ++t) s += e_.t(j, t) * static_cast<double>(f[t]);
      point[j] = s;
    }
    resolve_u(point, e_.binv, u);
  }

 private:
  EmbeddedAn e_;
};

class AnDualDecoder final : public PointDecoder {
 public:
  explicit AnDualDecoder(const GeneratorMatrix& basis) : PointDecoder(basis.dim()), e_(basis, true) {
    const int m = dim() + 1;
    glues_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int t = 0; t < m; ++t)
        glues_[static_cast<std::size_t>(i) * m + t] =
            static_cast<double>(i) / m - ((t >= m - i) ? 1.0 : 0.0);
  }

  void decode_raw(const double* x, long long* u, double* point) const override {
    const int n = dim();
    const int m = n + 1;
    double y[kMaxDecodeDim + 1], ys[kMaxDecodeDim + 1], cand[kMaxDecodeDim + 1];
    double best_cand[kMaxDecodeDim + 1];
    long long f[kMaxDecodeDim + 1];
    long long cand_u[kMaxDecodeDim], best_u[kMaxDecodeDim];
    double cand_pt[kMaxDecodeDim], best_pt[kMaxDecodeDim];
    for (int t = 0; t < m; ++t) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += x[j] * e_.t(j, t);
      y[t] = s;
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double* g = &glues_[static_cast<std::size_t>(i) * m];
      for (int t = 0; t < m; ++t) ys[t] = y[t] - g[t];
      zero_sum_closest(ys, m, f);
      double d2 = 0;
      for (int t = 0; t < m; ++t) {
        cand[t] = static_cast<double>(f[t]) + g[t];
        double e = y[t] - cand[t];
        d2 += e * e;
      }
      double slack = 1e-12 * (1.0 + std::min(best, d2));
      if (d2 < best - slack || best == std::numeric_limits<double>::infinity()) {
        best = d2;
        std::memcpy(best_cand, cand, sizeof(double) * static_cast<std::size_t>(m));
        to_frame(cand, best_pt, best_u);
      } else if (d2 <= best + slack) {
        to_frame(cand, cand_pt, cand_u);
        if (lex_less(cand_u, best_u, n)) {
          best = std::min(best, d2);
          std::memcpy(best_cand, cand, sizeof(double) * static_cast<std::size_t>(m));
          std::memcpy(best_pt, cand_pt, sizeof(double) * static_cast<std::size_t>(n));
          std::memcpy(best_u, cand_u, sizeof(long long) * static_cast<std::size_t>(n));
        }
      }
    }
    std::memcpy(point, best_pt, sizeof(double) * static_cast<std::size_t>(n));
    std::memcpy(u, best_u, sizeof(long long) * static_cast<std::size_t>(n));
  }

 private:
  void to_frame(const double* cand, double* pt, long long* uu) const {
    const int n = dim();
    const int m = n + 1;
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int t = 0; t < m; ++t) s += e_.t(j, t) * cand[t];
      pt[j] = s;
    }
    resolve_u(pt, e_.binv, uu);
  }

  EmbeddedAn e_;
  std::vector<double> glues_;
};

class CosetDecoder final : public PointDecoder {
 public:
  CosetDecoder(std::shared_ptr<const PointDecoder> base, std::vector<Eigen::RowVectorXd> offsets,
               const GeneratorMatrix& basis)
      : PointDecoder(basis.dim()),
        base_(std::move(base)),
        offsets_(std::move(offsets)),
        binv_(basis.rows().inverse()) {
    if (!base_ || base_->dim() != dim())
      raise(Errc::dimension_mismatch, "coset base decoder dimension mismatch");
    for (const auto& o : offsets_)
      if (o.size() != dim()) raise(Errc::dimension_mismatch, "coset offset dimension mismatch");
    if (offsets_.empty()) raise(Errc::invalid_argument, "coset decoder needs offsets");
  }

  void decode_raw(const double* x, long long* u, double* point) const override {
    const int n = dim();
    double xs[kMaxDecodeDim], ps[kMaxDecodeDim], cand_pt[kMaxDecodeDim];
    long long us[kMaxDecodeDim], cand_u[kMaxDecodeDim];
    double best = std::numeric_limits<double>::infinity();
    for (const auto& off : offsets_) {
      for (int i = 0; i < n; ++i) xs[i] = x[i] - off(i);
      base_->decode_raw(xs, us, ps);
      double d2 = 0;
      for (int i = 0; i < n; ++i) {
        cand_pt[i] = ps[i] + off(i);
        double e = x[i] - cand_pt[i];
        d2 += e * e;
      }
      double slack = 1e-12 * (1.0 + std::min(best, d2));
      if (d2 < best - slack) {
        best = d2;
        std::memcpy(point, cand_pt, sizeof(double) * static_cast<std::size_t>(n));
        resolve_u(point, binv_, u);
      } else if (d2 <= best + slack) {
        resolve_u(cand_pt, binv_, cand_u);
        if (lex_less(cand_u, u, n)) {
          best = std::min(best, d2);
          std::memcpy(point, cand_pt, sizeof(double) * static_cast<std::size_t>(n));
          std::memcpy(u, cand_u, sizeof(long long) * static_cast<std::size_t>(n));
        }
      }
    }
  }

 private:
  std::shared_ptr<const PointDecoder> base_;
  std::vector<Eigen::RowVectorXd> offsets_;
  Eigen::MatrixXd binv_;
};

class SphereDecoder final : public PointDecoder {
 public:
  SphereDecoder(const GeneratorMatrix& basis, const SphereOptions& opts)
      : PointDecoder(basis.dim()), b_(basis.rows()), node_cap_(opts.node_cap) {
    const int n = dim();
    if (n > kMaxDecodeDim) raise(Errc::invalid_argument, "sphere decoder dimension cap exceeded");
    LllResult red = lll_reduce_with_transform(b_, opts.delta);
    u_ = red.transform;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(red.basis.transpose());
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      if (r(i, i) < 0) {
        r.row(i) *= -1.0;
        q.col(i) *= -1.0;
      }
      if (!(std::abs(r(i, i)) > 0)) raise(Errc::singular_matrix, "sphere decoder: rank-deficient basis");
    }
    rflat_.resize(static_cast<std::size_t>(n) * n);
    qtflat_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        rflat_[static_cast<std::size_t>(i) * n + j] = r(i, j);
        qtflat_[static_cast<std::size_t>(i) * n + j] = q(j, i);
      }
  }

  void decode_raw(const double* x, long long* u, double* point) const override {
    const int n = dim();
    const double* R = rflat_.data();
    double y[kMaxDecodeDim], c[kMaxDecodeDim], above[kMaxDecodeDim];
    long long uu[kMaxDecodeDim], step[kMaxDecodeDim];
    long long best_ured[kMaxDecodeDim], best_uorig[kMaxDecodeDim], cand_uorig[kMaxDecodeDim];
    for (int i = 0; i < n; ++i) {
      double s = 0;
      const double* qrow = &qtflat_[static_cast<std::size_t>(i) * n];
      for (int j = 0; j < n; ++j) s += qrow[j] * x[j];
      y[i] = s;
    }
    auto enter = [&](int lev) {
      const double* rrow = &R[static_cast<std::size_t>(lev) * n];
      double s = 0;
      for (int t = lev + 1; t < n; ++t) s += rrow[t] * static_cast<double>(uu[t]);
      c[lev] = (y[lev] - s) / rrow[lev];
      uu[lev] = std::llround(c[lev]);
      step[lev] = (c[lev] >= static_cast<double>(uu[lev])) ? 1 : -1;
    };
    auto advance = [&](int lev) {
      uu[lev] += step[lev];
      step[lev] = -step[lev] + (step[lev] > 0 ? -1 : 1);
    };

    double best = std::numeric_limits<double>::infinity();
    bool have_best = false;
    int lev = n - 1;
    above[n - 1] = 0.0;
    enter(lev);
    long long nodes = 0;
    while (true) {
      if (++nodes > node_cap_) raise(Errc::search_budget, "sphere decoder node budget exceeded");
      double t = R[static_cast<std::size_t>(lev) * n + lev] * (static_cast<double>(uu[lev]) - c[lev]);
      double d = above[lev] + t * t;
      double slack = 1e-12 * (1.0 + (have_best ? best : d));
      if (!have_best || d <= best + slack) {
        if (lev == 0) {
          if (!have_best || d < best - slack) {
            best = d;
            have_best = true;
            std::memcpy(best_ured, uu, sizeof(long long) * static_cast<std::size_t>(n));
            to_original(best_ured, best_uorig);
          } else if (d <= best + slack) {
            to_original(uu, cand_uorig);
            if (lex_less(cand_uorig, best_uorig, n)) {
              best = std::min(best, d);
              std::memcpy(best_ured, uu, sizeof(long long) * static_cast<std::size_t>(n));
              std::memcpy(best_uorig, cand_uorig, sizeof(long long) * static_cast<std::size_t>(n));
            }
          }
          advance(0);
        } else {
          above[lev - 1] = d;
          --lev;
          enter(lev);
        }
      } else {
        ++lev;
        if (lev == n) break;
        advance(lev);
      }
    }
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += static_cast<double>(best_uorig[i]) * b_(i, j);
      point[j] = s;
      u[j] = best_uorig[j];
    }
  }

 private:
  void to_original(const long long* ured, long long* uorig) const {
    const int n = dim();
    for (int j = 0; j < n; ++j) {
      long long s = 0;
      for (int i = 0; i < n; ++i) s += ured[i] * u_(i, j);
      uorig[j] = s;
    }
  }

  Eigen::MatrixXd b_;
  TransformMatrix u_;
  std::vector<double> rflat_, qtflat_;
  long long node_cap_;
};

class ProductDecoder final : public PointDecoder {
 public:
  explicit ProductDecoder(std::vector<std::pair<std::shared_ptr<const PointDecoder>, double>> parts)
      : PointDecoder(total_dim(parts)), parts_(std::move(parts)) {}

  void decode_raw(const double* x, long long* u, double* point) const override {
    double xs[kMaxDecodeDim], ps[kMaxDecodeDim];
    long long us[kMaxDecodeDim];
    int off = 0;
    for (const auto& [dec, a] : parts_) {
      const int d = dec->dim();
      for (int i = 0; i < d; ++i) xs[i] = x[off + i] / a;
      dec->decode_raw(xs, us, ps);
      for (int i = 0; i < d; ++i) {
        u[off + i] = us[i];
        point[off + i] = a * ps[i];
      }
      off += d;
    }
  }

 private:
  static int total_dim(const std::vector<std::pair<std::shared_ptr<const PointDecoder>, double>>& parts) {
    int n = 0;
    for (const auto& [dec, a] : parts) {
      if (!dec) raise(Errc::invalid_argument, "product decoder: null component");
      if (!(a > 0)) raise(Errc::invalid_argument, "product decoder: scale must be positive");
      n += dec->dim();
    }
    if (n < 1 || n > kMaxDecodeDim) raise(Errc::invalid_argument, "product decoder dimension out of range");
    return n;
  }

  std::vector<std::pair<std::shared_ptr<const PointDecoder>, double>> parts_;
};

}  // namespace

DecodeResult PointDecoder::decode(const Eigen::RowVectorXd& x) const {
  if (x.size() != dim()) raise(Errc::dimension_mismatch, "decode: input dimension mismatch");
  DecodeResult res;
  res.u.resize(static_cast<std::size_t>(dim()));
  res.point.resize(dim());
  decode_raw(x.data(), res.u.data(), res.point.data());
  res.error = x - res.point;
  res.d2 = res.error.squaredNorm();
  return res;
}

std::shared_ptr<const PointDecoder> make_cubic_decoder(int n) {
  if (n < 1 || n > kMaxDecodeDim) raise(Errc::invalid_argument, "cubic decoder dimension out of range");
  return std::make_shared<CubicDecoder>(n);
}

std::shared_ptr<const PointDecoder> make_dn_decoder(const GeneratorMatrix& basis) {
  return std::make_shared<DnDecoder>(basis);
}

std::shared_ptr<const PointDecoder> make_an_decoder(const GeneratorMatrix& basis) {
  return std::make_shared<AnDecoder>(basis);
}

std::shared_ptr<const PointDecoder> make_an_dual_decoder(const GeneratorMatrix& basis) {
  return std::make_shared<AnDualDecoder>(basis);
}

std::shared_ptr<const PointDecoder> make_coset_decoder(std::shared_ptr<const PointDecoder> base,
                                                       std::vector<Eigen::RowVectorXd> offsets,
                                                       const GeneratorMatrix& basis) {
  return std::make_shared<CosetDecoder>(std::move(base), std::move(offsets), basis);
}

std::shared_ptr<const PointDecoder> make_sphere_decoder(const GeneratorMatrix& basis,
                                                        const SphereOptions& opts) {
  return std::make_shared<SphereDecoder>(basis, opts);
}

std::shared_ptr<const PointDecoder> make_product_decoder(
    std::vector<std::pair<std::shared_ptr<const PointDecoder>, double>> parts) {
  return std::make_shared<ProductDecoder>(std::move(parts));
}

DecodeResult closest_point(const Lattice& lat, const Eigen::RowVectorXd& x) {
  return lat.decoder().decode(x);
}

DecodeResult sphere_decode(const GeneratorMatrix& basis, const Eigen::RowVectorXd& x,
                           const SphereOptions& opts) {
  SphereDecoder dec(basis, opts);
  return dec.decode(x);
}

DecodeResult closest_product(
    const std::vector<std::pair<std::shared_ptr<const Lattice>, double>>& parts,
    const Eigen::RowVectorXd& x) {
  std::vector<std::pair<std::shared_ptr<const PointDecoder>, double>> decs;
  decs.reserve(parts.size());
  for (const auto& [lat, a] : parts) decs.emplace_back(lat->decoder_ptr(), a);
  ProductDecoder dec(std::move(decs));
  return dec.decode(x);
}

SuboptimalQuantizer::SuboptimalQuantizer(const GeneratorMatrix& b1, const GeneratorMatrix& b2,
                                         Eigen::MatrixXd h)
    : dec1_(make_sphere_decoder(b1)),
      dec2_(make_sphere_decoder(b2)),
      h_(std::move(h)),
      block_([&] {
        const int n1 = b1.dim(), n2 = b2.dim();
        if (h_.rows() != n2 || h_.cols() != n1)
          raise(Errc::dimension_mismatch, "suboptimal quantizer: H must be n2 x n1");
        Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
        blk.topLeftCorner(n1, n1) = b1.rows();
        blk.bottomLeftCorner(n2, n1) = h_;
        blk.bottomRightCorner(n2, n2) = b2.rows();
        return GeneratorMatrix(std::move(blk));
      }()) {}

DecodeResult SuboptimalQuantizer::quantize(const Eigen::RowVectorXd& x) const {
  const int n1 = dec1_->dim(), n2 = dec2_->dim();
  if (x.size() != n1 + n2) raise(Errc::dimension_mismatch, "quantize: input dimension mismatch");
  DecodeResult r2 = dec2_->decode(x.tail(n2));
  // z1 = xh2 B2^-1 H written as u2 H, which is the same vector without the
  // inverse round-trip.
  Eigen::RowVectorXd u2d(n2);
  for (int i = 0; i < n2; ++i) u2d(i) = static_cast<double>(r2.u[static_cast<std::size_t>(i)]);
  Eigen::RowVectorXd z1 = u2d * h_;
  DecodeResult r1 = dec1_->decode(x.head(n1) - z1);
  DecodeResult out;
  out.u.reserve(static_cast<std::size_t>(n1 + n2));
  out.u.insert(out.u.end(), r1.u.begin(), r1.u.end());
  out.u.insert(out.u.end(), r2.u.begin(), r2.u.end());
  out.point.resize(n1 + n2);
  out.point.head(n1) = r1.point + z1;
  out.point.tail(n2) = r2.point;
  out.error = x - out.point;
  out.d2 = out.error.squaredNorm();
  return out;
}

DecodeResult quantize_suboptimal(const GeneratorMatrix& b1, const GeneratorMatrix& b2,
                                 const Eigen::MatrixXd& h, const Eigen::RowVectorXd& x) {
  SuboptimalQuantizer q(b1, b2, h);
  return q.quantize(x);
}

}  // namespace latq
