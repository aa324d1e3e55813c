#include "core/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace latq {

namespace {

Eigen::MatrixXd from_exact(int n, const std::vector<Rational>& e) {
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = to_double(e[static_cast<std::size_t>(i) * n + j]);
  return b;
}

// Fraction-free Bareiss determinant after clearing denominators.
Rational exact_det(int n, const std::vector<Rational>& e) {
  std::vector<BigInt> a(e.size());
  BigInt denom = 1;
  for (int i = 0; i < n; ++i) {
    BigInt row_lcm = 1;
    for (int j = 0; j < n; ++j) {
      const BigInt& d = denominator(e[static_cast<std::size_t>(i) * n + j]);
      row_lcm = lcm(row_lcm, d);
    }
    for (int j = 0; j < n; ++j) {
      const Rational& r = e[static_cast<std::size_t>(i) * n + j];
      a[static_cast<std::size_t>(i) * n + j] = numerator(r) * (row_lcm / denominator(r));
    }
    denom *= row_lcm;
  }
  auto at = [&](int i, int j) -> BigInt& { return a[static_cast<std::size_t>(i) * n + j]; };
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return Rational(0);
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return Rational(sign * at(n - 1, n - 1), denom);
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(Eigen::MatrixXd rows) : b_(std::move(rows)) {
  if (b_.rows() != b_.cols() || b_.rows() < 1)
    raise(Errc::invalid_argument, "generator matrix must be square and nonempty");
  check_invertible();
}

GeneratorMatrix::GeneratorMatrix(int n, std::vector<Rational> exact_rows)
    : b_(from_exact(n, exact_rows)), exact_(std::move(exact_rows)) {
  if (n < 1 || exact_->size() != static_cast<std::size_t>(n) * n)
    raise(Errc::invalid_argument, "exact entry count does not match dimension");
  check_invertible();
}

void GeneratorMatrix::check_invertible() const {
  double row_norm_prod = 1.0;
  for (int i = 0; i < dim(); ++i) row_norm_prod *= b_.row(i).norm();
  double det = b_.partialPivLu().determinant();
  if (!(std::abs(det) > 1e-12 * row_norm_prod))
    raise(Errc::singular_matrix, "generator matrix is singular within tolerance");
}

const std::vector<Rational>& GeneratorMatrix::exact() const {
  if (!exact_) raise(Errc::invalid_argument, "generator matrix has no exact entries");
  return *exact_;
}

double GeneratorMatrix::volume() const {
  if (exact_) {
    Rational d = exact_det(dim(), *exact_);
    if (d < 0) d = -d;
    return to_double(d);
  }
  double det = b_.partialPivLu().determinant();
  double row_norm_prod = 1.0;
  for (int i = 0; i < dim(); ++i) row_norm_prod *= b_.row(i).norm();
  if (!(std::abs(det) > 1e-12 * row_norm_prod))
    raise(Errc::singular_matrix, "generator matrix is singular within tolerance");
  return std::abs(det);
}

GeneratorMatrix GeneratorMatrix::scaled(double a) const {
  if (!(a > 0)) raise(Errc::invalid_argument, "scale must be positive");
  return GeneratorMatrix(a * b_);
}

GeneratorMatrix GeneratorMatrix::dual() const {
  Eigen::MatrixXd inv = b_.inverse();
  return GeneratorMatrix(inv.transpose());
}

GeneratorMatrix GeneratorMatrix::transformed(
    const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>& u) const {
  const int n = dim();
  if (u.rows() != n || u.cols() != n) raise(Errc::dimension_mismatch, "transform size mismatch");
  Eigen::MatrixXd ud = u.cast<double>();
  if (!exact_) return GeneratorMatrix(ud * b_);
  std::vector<Rational> out(static_cast<std::size_t>(n) * n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (u(i, k) == 0) continue;
      const Rational f(u(i, k));
      for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(i) * n + j] += f * (*exact_)[static_cast<std::size_t>(k) * n + j];
    }
  return GeneratorMatrix(n, std::move(out));
}

double volume(const GeneratorMatrix& b) { return b.volume(); }

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    raise(Errc::invalid_argument, "symmetric matrix must be square and nonempty");
  double scale = m_.cwiseAbs().maxCoeff();
  double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1e-300))
    raise(Errc::invalid_argument, "matrix is not symmetric within tolerance");
  m_ = 0.5 * (m_ + m_.transpose().eval());
}

SymmetricMatrix sym_matrix_exp(const SymmetricMatrix& m, double beta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.mat());
  Eigen::VectorXd w = (beta * es.eigenvalues().array()).exp().matrix();
  Eigen::MatrixXd r = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
  return SymmetricMatrix(0.5 * (r + r.transpose().eval()));
}

GeneratorMatrix read_matrix(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n < 1) raise(Errc::parse_error, "matrix file: bad dimension line");
  std::vector<Rational> exact(static_cast<std::size_t>(n) * n);
  Eigen::MatrixXd b(n, n);
  bool all_exact = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) raise(Errc::parse_error, "matrix file: truncated entries");
      if (auto r = parse_exact_entry(tok)) {
        exact[static_cast<std::size_t>(i) * n + j] = *r;
        b(i, j) = to_double(*r);
      } else {
        all_exact = false;
        try {
          std::size_t pos = 0;
          b(i, j) = std::stod(tok, &pos);
          if (pos != tok.size()) raise(Errc::parse_error, "matrix file: bad entry '" + tok + "'");
        } catch (const Error&) {
          throw;
        } catch (const std::exception&) {
          raise(Errc::parse_error, "matrix file: bad entry '" + tok + "'");
        }
      }
    }
  if (all_exact) return GeneratorMatrix(n, std::move(exact));
  return GeneratorMatrix(std::move(b));
}

GeneratorMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open matrix file: " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const GeneratorMatrix& b) {
  const int n = b.dim();
  out << n << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << " ";
      if (b.has_exact()) {
        out << format_exact(b.exact()[static_cast<std::size_t>(i) * n + j]);
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", b.rows()(i, j));
        out << buf;
      }
    }
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const GeneratorMatrix& b) {
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open matrix file for writing: " + path);
  write_matrix(out, b);
}

}  // namespace latq
