#include "core/lll.hpp"

#include <cmath>

#include "core/error.hpp"

namespace latq {

namespace {

struct GramSchmidt {
  Eigen::MatrixXd mu;      // mu(i,j) for j < i
  Eigen::VectorXd bstar2;  // squared norms of the orthogonalized rows

  void compute(const Eigen::MatrixXd& b) {
    const int n = static_cast<int>(b.rows());
    Eigen::MatrixXd star = b;
    mu.setZero(n, n);
    bstar2.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        mu(i, j) = b.row(i).dot(star.row(j)) / bstar2(j);
        star.row(i) -= mu(i, j) * star.row(j);
      }
      bstar2(i) = star.row(i).squaredNorm();
      if (!(bstar2(i) > 0)) raise(Errc::singular_matrix, "LLL: basis is not full rank");
    }
  }
};

}  // namespace

LllResult lll_reduce_with_transform(const Eigen::MatrixXd& basis, double delta) {
  const int n = static_cast<int>(basis.rows());
  LllResult res;
  res.basis = basis;
  res.transform = TransformMatrix::Identity(n, n);

  GramSchmidt gs;
  gs.compute(res.basis);

  int k = 1;
  long iterations = 0;
  while (k < n) {
    if (++iterations > 1000000) raise(Errc::invalid_argument, "LLL failed to converge");
    for (int j = k - 1; j >= 0; --j) {
      double m = gs.mu(k, j);
      if (std::abs(m) <= 0.5) continue;
      if (!(std::abs(m) < 9e15)) raise(Errc::invalid_argument, "LLL: transform overflow");
      long long q = std::llround(m);
      res.basis.row(k) -= static_cast<double>(q) * res.basis.row(j);
      res.transform.row(k) -= q * res.transform.row(j);
      for (int t = 0; t < j; ++t) gs.mu(k, t) -= static_cast<double>(q) * gs.mu(j, t);
      gs.mu(k, j) -= static_cast<double>(q);
    }
    if (gs.bstar2(k) >= (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.bstar2(k - 1)) {
      ++k;
    } else {
      res.basis.row(k).swap(res.basis.row(k - 1));
      res.transform.row(k).swap(res.transform.row(k - 1));
      gs.compute(res.basis);
      k = std::max(k - 1, 1);
    }
  }
  return res;
}

GeneratorMatrix lll_reduce(const GeneratorMatrix& b, double delta) {
  LllResult r = lll_reduce_with_transform(b.rows(), delta);
  return b.transformed(r.transform);
}

}  // namespace latq
