#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/decode.hpp"
#include "core/matrix.hpp"

namespace latq {

enum class DecoderKind { none, cubic, d_family, a_family, coset_union, generic_sphere, product };
const char* decoder_kind_name(DecoderKind k);

struct GoldenNsm {
  double value;
  int digits;  // printed precision: 9 exact, 5 numerical estimate
  std::string source;
};

// Named lattice: generator matrix, optional golden NSM constant, and its
// decoder strategy. Entries without a published generator carry constants only.
class Lattice {
 public:
  Lattice(std::string name, GeneratorMatrix basis, DecoderKind kind,
          std::shared_ptr<const PointDecoder> dec, std::optional<GoldenNsm> golden);
  static Lattice constant_only(std::string name, int dim, GoldenNsm golden);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  bool has_basis() const { return basis_.has_value(); }
  const GeneratorMatrix& basis() const;
  double volume() const { return basis().volume(); }

  const std::optional<GoldenNsm>& golden() const { return golden_; }
  DecoderKind decoder_kind() const { return kind_; }
  bool has_decoder() const { return decoder_ != nullptr; }
  const PointDecoder& decoder() const;
  std::shared_ptr<const PointDecoder> decoder_ptr() const;

 private:
  Lattice() = default;

  std::string name_;
  int dim_ = 0;
  std::optional<GeneratorMatrix> basis_;
  DecoderKind kind_ = DecoderKind::none;
  std::shared_ptr<const PointDecoder> decoder_;
  std::optional<GoldenNsm> golden_;
};

// Resolves standard names: Z, Z<n>, A<n>, A<n>*, D<n>, D<n>*, D<n>+ (even n),
// E6, E7, E8 and their duals, K12, L16, L24, AE9, A11^3. Results are cached;
// the registry is immutable after construction.
std::shared_ptr<const Lattice> get_lattice(const std::string& name);

// The named entries from the best-quantizer table.
const std::vector<std::string>& catalog_names();

// Wraps an external generator with a sphere decoder.
std::shared_ptr<const Lattice> lattice_from_generator(std::string name, GeneratorMatrix basis);

}  // namespace latq
