#pragma once

#include <cstdint>
#include <vector>

namespace latq {

// Generator rows of binary codes as bitmasks (bit j = coordinate j).
std::vector<std::uint32_t> golay24_generator();       // extended binary Golay [24,12,8]
std::vector<std::uint32_t> reed_muller_1_4_generator();  // RM(1,4) = [16,5,8]

struct CodeStats {
  int length = 0;
  int dimension = 0;
  int min_weight = 0;
  bool self_dual = false;
  bool doubly_even = false;  // all weights divisible by 4
};

CodeStats analyze_code(const std::vector<std::uint32_t>& gen, int length);

// Row-echelon basis (upper triangular up to column pivots) of the integer row
// lattice spanned by `rows`. The lattice must contain modulus*Z^n; entries are
// kept reduced modulo that multiple, so int64 arithmetic never overflows.
std::vector<std::vector<long long>> hnf_basis(std::vector<std::vector<long long>> rows, int n,
                                              long long modulus);

// Integer bases (row convention) of the code-based catalog lattices.
std::vector<std::vector<long long>> coxeter_todd_eisenstein_basis();  // 12x12, coords (a1,b1,...,a6,b6)
std::vector<std::vector<long long>> barnes_wall_16_basis();           // 16x16, construction B on RM(1,4)
std::vector<std::vector<long long>> leech_basis();                    // 24x24, in units of 1 (volume 8^12)

}  // namespace latq
