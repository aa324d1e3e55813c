#pragma once

#include <Eigen/Dense>

#include <memory>
#include <utility>
#include <vector>

#include "core/matrix.hpp"

namespace latq {

class Lattice;

inline constexpr int kMaxDecodeDim = 64;

struct DecodeResult {
  std::vector<long long> u;   // integer coordinates, point = u*B
  Eigen::RowVectorXd point;
  Eigen::RowVectorXd error;   // x - point
  double d2 = 0.0;            // squared Euclidean error
};

// Closest-point quantizer for one lattice. Implementations are immutable and
// reentrant; decode_raw is the allocation-free entry point for sampling loops.
class PointDecoder {
 public:
  virtual ~PointDecoder() = default;
  int dim() const { return dim_; }

  DecodeResult decode(const Eigen::RowVectorXd& x) const;
  virtual void decode_raw(const double* x, long long* u, double* point) const = 0;

 protected:
  explicit PointDecoder(int dim) : dim_(dim) {}

 private:
  int dim_;
};

struct SphereOptions {
  double delta = 0.75;             // LLL parameter for preprocessing
  long long node_cap = 10000000;   // explicit failure beyond this many search nodes
};

std::shared_ptr<const PointDecoder> make_cubic_decoder(int n);
// basis must be the standard D_n coordinates (integer vectors with even sum).
std::shared_ptr<const PointDecoder> make_dn_decoder(const GeneratorMatrix& basis);
// basis may be any full-rank realization of A_n / A_n*; decoding runs in the
// zero-sum hyperplane embedding and maps back through an isometry.
std::shared_ptr<const PointDecoder> make_an_decoder(const GeneratorMatrix& basis);
std::shared_ptr<const PointDecoder> make_an_dual_decoder(const GeneratorMatrix& basis);
// Union-of-cosets minimization: min over offsets of offset + base(x - offset).
// Integer coordinates are resolved against `basis`.
std::shared_ptr<const PointDecoder> make_coset_decoder(std::shared_ptr<const PointDecoder> base,
                                                       std::vector<Eigen::RowVectorXd> offsets,
                                                       const GeneratorMatrix& basis);
std::shared_ptr<const PointDecoder> make_sphere_decoder(const GeneratorMatrix& basis,
                                                        const SphereOptions& opts = {});
std::shared_ptr<const PointDecoder> make_product_decoder(
    std::vector<std::pair<std::shared_ptr<const PointDecoder>, double>> parts);

// Minimum-distance quantization through the lattice's own decoder strategy.
// Ties resolve to the lexicographically smallest integer vector.
DecodeResult closest_point(const Lattice& lat, const Eigen::RowVectorXd& x);

// Exact closest point by Schnorr-Euchner enumeration on the LLL-reduced basis.
DecodeResult sphere_decode(const GeneratorMatrix& basis, const Eigen::RowVectorXd& x,
                           const SphereOptions& opts = {});

// Componentwise decoding of a product lattice; block i of x is decoded in its
// scaled component.
DecodeResult closest_product(const std::vector<std::pair<std::shared_ptr<const Lattice>, double>>& parts,
                             const Eigen::RowVectorXd& x);

// The four-step suboptimal quantizer for the block generator [[B1,0],[H,B2]]:
//   xh2 = Q2(x2),  z1 = xh2 B2^-1 H,  xh1 = Q1(x1 - z1),  out = [xh1+z1, xh2].
class SuboptimalQuantizer {
 public:
  SuboptimalQuantizer(const GeneratorMatrix& b1, const GeneratorMatrix& b2, Eigen::MatrixXd h);

  DecodeResult quantize(const Eigen::RowVectorXd& x) const;
  const GeneratorMatrix& block_generator() const { return block_; }
  int dim() const { return block_.dim(); }

 private:
  std::shared_ptr<const PointDecoder> dec1_, dec2_;
  Eigen::MatrixXd h_;
  GeneratorMatrix block_;
};

DecodeResult quantize_suboptimal(const GeneratorMatrix& b1, const GeneratorMatrix& b2,
                                 const Eigen::MatrixXd& h, const Eigen::RowVectorXd& x);

}  // namespace latq
