#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace latq {

// Square invertible generator matrix, row convention: lattice points are u*B
// for integer row vectors u. Entries may optionally be backed by exact
// rationals (all-or-nothing, row-major).
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(Eigen::MatrixXd rows);
  GeneratorMatrix(int n, std::vector<Rational> exact_rows);

  int dim() const { return static_cast<int>(b_.rows()); }
  const Eigen::MatrixXd& rows() const { return b_; }
  bool has_exact() const { return exact_.has_value(); }
  const std::vector<Rational>& exact() const;

  // |det B| via Bareiss on the exact entries when available.
  double volume() const;

  GeneratorMatrix scaled(double a) const;
  // Rows of the dual basis, B* = (B^T)^-1, so that B* B^T = I.
  GeneratorMatrix dual() const;
  // Left-multiplies by an integer matrix, preserving exact entries.
  GeneratorMatrix transformed(const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>& u) const;

  Eigen::MatrixXd gram() const { return b_ * b_.transpose(); }

 private:
  void check_invertible() const;

  Eigen::MatrixXd b_;
  std::optional<std::vector<Rational>> exact_;
};

double volume(const GeneratorMatrix& b);

// Real symmetric matrix; symmetry is validated on construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Eigen::MatrixXd m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double trace() const { return m_.trace(); }

 private:
  Eigen::MatrixXd m_;
};

// exp(beta*M) through the eigendecomposition of the symmetric input. For
// traceless M the result has unit determinant.
SymmetricMatrix sym_matrix_exp(const SymmetricMatrix& m, double beta);

// Lattice matrix text format: first line n, then n lines of n entries, each a
// decimal literal or exact rational p/q.
GeneratorMatrix read_matrix(std::istream& in);
GeneratorMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const GeneratorMatrix& b);
void write_matrix_file(const std::string& path, const GeneratorMatrix& b);

}  // namespace latq
